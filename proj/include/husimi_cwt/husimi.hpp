#pragma once
// Entangled Husimi distribution F_h(sigma, gamma, kappa) of a two-mode state,
// by four routes behind one interface:
//
//   overlap (B)          |<psi|sigma,gamma>_kappa|^2, quadrature-free recurrence;
//                        the production path.
//   cwt (A)              Gaussian-weighted complex wavelet transform of the
//                        vacuum wavefunction with psi as mother wavelet, at the
//                        phase-point-mapped (mu, z, z_tilde).
//   smoothing (C)        Gaussian-smoothed two-mode Wigner function, 4D quadrature.
//   coherent-closed (D)  normally ordered closed form, coherent states only.
//
// Routes A, C and D exist to certify route B; their agreement is the library's
// acceptance battery.

#include <cmath>
#include <complex>
#include <stdexcept>
#include <vector>

#include "husimi_cwt/cwt.hpp"
#include "husimi_cwt/eta_rep.hpp"
#include "husimi_cwt/fock.hpp"
#include "husimi_cwt/quadrature.hpp"
#include "husimi_cwt/series_hermite.hpp"

namespace husimi_cwt {

/// Husimi phase-space evaluation point.
struct PhasePoint {
    cplx sigma;
    cplx gamma;
    double kappa = 1.0;

    void validate() const {
        if (!(kappa > 0.0)) throw std::invalid_argument("PhasePoint: kappa must be > 0");
    }
};

/// Parameters of the two-mode squeezed coherent state |sigma,gamma>_kappa.
struct SqueezedCoherentParams {
    cplx A;         // a1^dag coefficient, (kappa sigma + gamma)/(1+kappa)
    cplx B;         // a2^dag coefficient, (gamma^* - kappa sigma^*)/(1+kappa)
    double Lambda;  // pair coefficient (kappa-1)/(kappa+1), |Lambda| < 1
    double C;       // normalization, 2 sqrt(kappa)/(1+kappa) * exp(-(|gamma|^2+kappa|sigma|^2)/(2(kappa+1)))

    static SqueezedCoherentParams from(const PhasePoint& p) {
        p.validate();
        const double k = p.kappa;
        SqueezedCoherentParams out;
        out.A = (k * p.sigma + p.gamma) / (1.0 + k);
        out.B = (std::conj(p.gamma) - k * std::conj(p.sigma)) / (1.0 + k);
        out.Lambda = (k - 1.0) / (k + 1.0);
        out.C = (2.0 * std::sqrt(k) / (1.0 + k)) *
                std::exp(-(std::norm(p.gamma) + k * std::norm(p.sigma)) / (2.0 * (k + 1.0)));
        return out;
    }
};

/// Phase point -> CWT query: mu = sqrt(kappa), z = -(kappa sigma + gamma)/sqrt(kappa),
/// z_tilde = (gamma^* - kappa sigma^*)/sqrt(kappa). z_tilde != conj(z) in general;
/// that is the genuine analytic continuation of the transform.
inline CwtQuery map_phase_point(const PhasePoint& p) {
    p.validate();
    const double sk = std::sqrt(p.kappa);
    CwtQuery q;
    q.mu = sk;
    q.z = -(p.kappa * p.sigma + p.gamma) / sk;
    q.z_tilde = (std::conj(p.gamma) - p.kappa * std::conj(p.sigma)) / sk;
    return q;
}

namespace detail {

// sum conj(c[m][n]) u[m][n]; route B amplitude is C * this.
inline cplx squeezed_overlap_core(const TwoModeState& psi, const SqueezedCoherentParams& sc) {
    const std::vector<cplx> u = abl_expansion(sc.A, sc.B, sc.Lambda, psi.cutoff);
    cplx acc(0.0, 0.0);
    for (size_t k = 0; k < u.size(); ++k) acc += std::conj(psi.coeffs[k]) * u[k];
    return acc;
}

}  // namespace detail

/// |sigma,gamma>_kappa on the truncated basis; reports captured norm.
inline TwoModeState squeezed_coherent_fock(const PhasePoint& p, int cutoff) {
    const SqueezedCoherentParams sc = SqueezedCoherentParams::from(p);
    const std::vector<cplx> u = detail::abl_expansion(sc.A, sc.B, sc.Lambda, cutoff);
    TwoModeState out(cutoff);
    for (size_t k = 0; k < u.size(); ++k) out.coeffs[k] = sc.C * u[k];
    out.captured_norm = out.squared_norm();
    return out;
}

/// Route B: |<psi|sigma,gamma>_kappa|^2.
inline double husimi_route_overlap(const TwoModeState& psi, const PhasePoint& p) {
    const SqueezedCoherentParams sc = SqueezedCoherentParams::from(p);
    return sc.C * sc.C * std::norm(detail::squeezed_overlap_core(psi, sc));
}

/// Route A: e^{-|gamma|^2/kappa} | int (d^2 eta / (sqrt(kappa) pi)) e^{-|eta|^2/2}
/// conj_psi((eta - z)/sqrt(kappa), (eta^* - z_tilde)/sqrt(kappa)) |^2.
inline double husimi_route_cwt(const TwoModeState& psi, const PhasePoint& p, const QuadratureRule& rule) {
    const CwtQuery q = map_phase_point(p);
    const TwoModeState vac = make_fock(0, 0, 0);
    const cplx integral = cwt_point(vac, psi, q, rule);
    return std::exp(-std::norm(p.gamma) / p.kappa) * std::norm(integral);
}

namespace detail {

// Largest occupied (m, n) indices; Fock-sparse states shrink the Wigner series.
inline int wigner_support(const TwoModeState& psi) {
    int N = 0;
    for (int m = 0; m <= psi.cutoff; ++m)
        for (int n = 0; n <= psi.cutoff; ++n)
            if (psi(m, n) != cplx(0.0, 0.0)) {
                if (m > N) N = m;
                if (n > N) N = n;
            }
    return N;
}

// Normally ordered expectation tensor T[p][q][r][s] = <psi| a1+^p a2+^q a1^r a2^s |psi>.
inline std::vector<cplx> wigner_expectation_tensor(const TwoModeState& psi, int N) {
    const int d = N + 1;
    std::vector<cplx> T(static_cast<size_t>(d) * d * d * d, cplx(0.0, 0.0));
    auto idx = [d](int p, int q, int r, int s) {
        return ((static_cast<size_t>(p) * d + static_cast<size_t>(q)) * d + static_cast<size_t>(r)) * d +
               static_cast<size_t>(s);
    };
    for (int p = 0; p <= N; ++p)
        for (int q = 0; q <= N; ++q)
            for (int r = 0; r <= N; ++r)
                for (int s = 0; s <= N; ++s) {
                    cplx acc(0.0, 0.0);
                    for (int m0 = 0; m0 + std::max(p, r) <= N; ++m0)
                        for (int n0 = 0; n0 + std::max(q, s) <= N; ++n0) {
                            const cplx lhs = std::conj(psi(m0 + p, n0 + q));
                            const cplx rhs = psi(m0 + r, n0 + s);
                            if (lhs == cplx(0.0, 0.0) || rhs == cplx(0.0, 0.0)) continue;
                            const double ladder = sqrt_factorial(m0 + p) * sqrt_factorial(n0 + q) *
                                                  sqrt_factorial(m0 + r) * sqrt_factorial(n0 + s) /
                                                  (factorial(m0) * factorial(n0));
                            acc += lhs * rhs * ladder;
                        }
                    T[idx(p, q, r, s)] = acc;
                }
    return T;
}

constexpr int kWignerSupportCap = 8;  // series degree cap 4*support

}  // namespace detail

/// Two-mode Wigner function <psi| Delta_w(sigma', gamma') |psi>, from the
/// normally ordered Gaussian form: the exponent is expanded as a SeriesPoly in
/// the four commuting symbols (a1^dag, a2^dag, a1, a2), exponentiated to total
/// degree 4N, and contracted against exact ladder expectations. Oracle-grade
/// reference path; the smoothing route uses the equivalent cached evaluator below.
inline double wigner_value(const TwoModeState& psi, cplx sigma_p, cplx gamma_p) {
    const int N = detail::wigner_support(psi);
    if (N > detail::kWignerSupportCap)
        throw std::runtime_error("wigner_value: state support " + std::to_string(N) +
                                 " exceeds the series degree cap (support must be <= " +
                                 std::to_string(detail::kWignerSupportCap) + ")");
    const std::vector<cplx> T = detail::wigner_expectation_tensor(psi, N);
    const int d = N + 1;

    // exponent of the normally ordered Gaussian, constant term factored out;
    // symbols ordered (a1^dag, a2^dag, a1, a2)
    SeriesPoly expo(4, 4 * N);
    expo.add_term({1, 0, 1, 0}, cplx(-2.0, 0.0));
    expo.add_term({0, 1, 0, 1}, cplx(-2.0, 0.0));
    expo.add_term({1, 0, 0, 0}, sigma_p + gamma_p);
    expo.add_term({0, 0, 1, 0}, std::conj(sigma_p) + std::conj(gamma_p));
    expo.add_term({0, 1, 0, 0}, std::conj(gamma_p) - std::conj(sigma_p));
    expo.add_term({0, 0, 0, 1}, gamma_p - sigma_p);
    const SeriesPoly series = poly_exp(expo);

    cplx acc(0.0, 0.0);
    for (const auto& [key, coeff] : series.terms()) {
        const auto e = SeriesPoly::unpack(key);
        if (e[0] > N || e[1] > N || e[2] > N || e[3] > N) continue;
        acc += coeff * T[((static_cast<size_t>(e[0]) * d + static_cast<size_t>(e[1])) * d + static_cast<size_t>(e[2])) * d +
                         static_cast<size_t>(e[3])];
    }
    const double gauss = std::exp(-std::norm(sigma_p) - std::norm(gamma_p));
    return gauss / (kPi * kPi) * acc.real();
}

/// Wigner values with the per-state expectation tensor hoisted out of the
/// evaluation loop. The exponent has no a1^dag a2^dag or a1 a2 cross terms, so
/// its exponential-series coefficients factorize per (creator, annihilator)
/// pair; equality with wigner_value is pinned by tests.
class WignerEvaluator {
  public:
    explicit WignerEvaluator(const TwoModeState& psi) : N_(detail::wigner_support(psi)) {
        if (N_ > detail::kWignerSupportCap)
            throw std::runtime_error("WignerEvaluator: state support " + std::to_string(N_) +
                                     " exceeds the series degree cap (support must be <= " +
                                     std::to_string(detail::kWignerSupportCap) + ")");
        tensor_ = detail::wigner_expectation_tensor(psi, N_);
    }

    int support() const { return N_; }

    double value(cplx sigma_p, cplx gamma_p) const {
        const int d = N_ + 1;
        const cplx u = sigma_p + gamma_p;
        const cplx v = std::conj(sigma_p) + std::conj(gamma_p);
        const cplx w = std::conj(gamma_p) - std::conj(sigma_p);
        const cplx x = gamma_p - sigma_p;
        std::vector<cplx> U(static_cast<size_t>(d)), V(static_cast<size_t>(d)), W(static_cast<size_t>(d)), X(static_cast<size_t>(d));
        U[0] = V[0] = W[0] = X[0] = cplx(1.0, 0.0);
        for (int k = 1; k <= N_; ++k) {
            const double invk = 1.0 / static_cast<double>(k);
            U[static_cast<size_t>(k)] = U[static_cast<size_t>(k - 1)] * u * invk;
            V[static_cast<size_t>(k)] = V[static_cast<size_t>(k - 1)] * v * invk;
            W[static_cast<size_t>(k)] = W[static_cast<size_t>(k - 1)] * w * invk;
            X[static_cast<size_t>(k)] = X[static_cast<size_t>(k - 1)] * x * invk;
        }
        // f1[p][r] = [a1dag^p a1^r] exp(-2 a1dag a1 + u a1dag + v a1), f2 likewise
        std::vector<cplx> f1(static_cast<size_t>(d) * static_cast<size_t>(d)), f2(static_cast<size_t>(d) * static_cast<size_t>(d));
        for (int p = 0; p <= N_; ++p)
            for (int r = 0; r <= N_; ++r) {
                cplx s1(0.0, 0.0), s2(0.0, 0.0);
                double jfac = 1.0, pw = 1.0;
                for (int j = 0; j <= std::min(p, r); ++j) {
                    if (j > 0) {
                        jfac *= static_cast<double>(j);
                        pw *= -2.0;
                    }
                    const double cj = pw / jfac;
                    s1 += cj * U[static_cast<size_t>(p - j)] * V[static_cast<size_t>(r - j)];
                    s2 += cj * W[static_cast<size_t>(p - j)] * X[static_cast<size_t>(r - j)];
                }
                f1[static_cast<size_t>(p) * static_cast<size_t>(d) + static_cast<size_t>(r)] = s1;
                f2[static_cast<size_t>(p) * static_cast<size_t>(d) + static_cast<size_t>(r)] = s2;
            }
        cplx acc(0.0, 0.0);
        for (int p = 0; p <= N_; ++p)
            for (int q = 0; q <= N_; ++q)
                for (int r = 0; r <= N_; ++r) {
                    const cplx f1pr = f1[static_cast<size_t>(p) * static_cast<size_t>(d) + static_cast<size_t>(r)];
                    if (f1pr == cplx(0.0, 0.0)) continue;
                    for (int s = 0; s <= N_; ++s) {
                        const cplx t = tensor_[((static_cast<size_t>(p) * d + static_cast<size_t>(q)) * d +
                                                static_cast<size_t>(r)) * d + static_cast<size_t>(s)];
                        if (t == cplx(0.0, 0.0)) continue;
                        acc += f1pr * f2[static_cast<size_t>(q) * static_cast<size_t>(d) + static_cast<size_t>(s)] * t;
                    }
                }
        return std::exp(-std::norm(sigma_p) - std::norm(gamma_p)) / (kPi * kPi) * acc.real();
    }

  private:
    int N_;
    std::vector<cplx> tensor_;
};

/// Route C: 4 int d^2 s' d^2 g' F_w(s', g') e^{-kappa|s'-sigma|^2 - |g'-gamma|^2/kappa}.
inline double husimi_route_smoothing(const TwoModeState& psi, const PhasePoint& p, const QuadratureRule& rule) {
    p.validate();
    const WignerEvaluator wig(psi);
    const cplx val = integrate_c2([&wig](cplx sp, cplx gp) { return cplx(wig.value(sp, gp), 0.0); },
                                  p.sigma, p.gamma, p.kappa, rule);
    return 4.0 * val.real();
}

/// Route D: exact normally ordered expectation in |alpha, beta>,
/// (4 kappa/(1+kappa)^2) exp{-(|alpha+beta^*-gamma|^2 + kappa |alpha-beta^*-sigma|^2)/(1+kappa)}.
inline double husimi_coherent_closed_form(cplx alpha, cplx beta, const PhasePoint& p) {
    p.validate();
    const double k = p.kappa;
    const cplx wg = alpha + std::conj(beta) - p.gamma;
    const cplx ws = alpha - std::conj(beta) - p.sigma;
    const double expo = -(std::norm(wg) + k * std::norm(ws)) / (1.0 + k);
    return 4.0 * k / ((1.0 + k) * (1.0 + k)) * std::exp(expo);
}

/// int F_h d^2 sigma d^2 gamma / (4 pi^2) via route B on a Gaussian-adapted
/// tensor grid; equals 1 for normalized psi. The Gaussian envelope of route B
/// is the integrator weight, so the remaining integrand is polynomial and the
/// rule is exact once its order beats the state's occupation.
inline double normalization_check(const TwoModeState& psi, double kappa, const QuadratureRule& rule) {
    if (!(kappa > 0.0)) throw std::invalid_argument("normalization_check: kappa must be > 0");
    const double cs = kappa / (kappa + 1.0);
    const double cg = 1.0 / (kappa + 1.0);
    const double c0sq = 4.0 * kappa / ((1.0 + kappa) * (1.0 + kappa));
    auto f = [&](cplx sigma, cplx gamma) {
        const SqueezedCoherentParams sc = SqueezedCoherentParams::from(PhasePoint{sigma, gamma, kappa});
        return cplx(c0sq * std::norm(detail::squeezed_overlap_core(psi, sc)), 0.0);
    };
    const cplx val = integrate_c2_general(f, cplx(0.0, 0.0), cplx(0.0, 0.0), cs, cg, rule);
    return val.real() / (4.0 * kPi * kPi);
}

}  // namespace husimi_cwt
