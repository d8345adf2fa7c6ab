#pragma once
// Complex wavelet transform of two-mode state wavefunctions, in integral form
// and as the matrix element of the two-mode squeezing-displacing operator
// U2(mu, z) = S2(mu) D(z) on the truncated Fock space.
//
// The operator route is restricted to the ordinary case z_tilde = conj(z):
// the displacement with complexified parameters is non-unitary and has no
// independent operator anchor. Continued queries are exercised through the
// Husimi routes instead.

#include <cmath>
#include <complex>
#include <stdexcept>

#include "husimi_cwt/detail/linalg.hpp"
#include "husimi_cwt/eta_rep.hpp"
#include "husimi_cwt/fock.hpp"
#include "husimi_cwt/quadrature.hpp"

namespace husimi_cwt {

/// Dilation mu = e^lambda plus complexified translation pair. For the ordinary
/// CWT z_tilde = conj(z); the Husimi phase-point map produces z_tilde != conj(z).
struct CwtQuery {
    double mu = 1.0;
    cplx z;
    cplx z_tilde;

    static CwtQuery ordinary(double mu, cplx z) { return {mu, z, std::conj(z)}; }
    double lambda() const { return std::log(mu); }
    void validate() const {
        if (!(mu > 0.0) || !std::isfinite(std::log(mu)))
            throw std::invalid_argument("CwtQuery: mu must be positive and finite");
    }
};

/// (1/mu) int (d^2 eta / pi) <eta|g> conj_psi((eta - z)/mu, (eta^* - z_tilde)/mu).
/// The e^{-|eta|^2/2} of <eta|g> and the |eta|^2 part of the continued
/// Gaussian are owned by the plane integrator; the leftover linear exponent
/// is folded into the integrand to keep every factor representable.
template <typename Rule = QuadratureRule>
cplx cwt_point(const TwoModeState& g, const TwoModeState& psi, const CwtQuery& q, const QuadratureRule& rule) {
    q.validate();
    const double mu = q.mu;
    const double inv_2mu2 = 0.5 / (mu * mu);
    const cplx z = q.z, zt = q.z_tilde;
    const double c = 0.5 + inv_2mu2;  // e^{-|eta|^2/2} * e^{-|eta|^2/(2 mu^2)}
    auto f = [&](cplx eta) {
        const cplx etac = std::conj(eta);
        const cplx xi = (eta - z) / mu;
        const cplx xit = (etac - zt) / mu;
        const cplx lin = (eta * zt + z * etac - z * zt) * inv_2mu2;
        return eta_wavefunction_series(g, eta) * conj_wavefunction_series(psi, xi, xit) * std::exp(lin);
    };
    return integrate_plane(f, c, rule) / mu;
}

/// S2(mu) = exp[(a1^dag a2^dag - a1 a2) ln mu] as a dense truncated matrix
/// (scaling-and-squaring exponential; oracle path, not a production path).
inline ModeOperatorMatrix squeeze_op_fock(double mu, int cutoff) {
    if (!(mu > 0.0)) throw std::invalid_argument("squeeze_op_fock: mu must be > 0");
    detail::check_cutoff(cutoff, "squeeze_op_fock");
    const double lam = std::log(mu);
    const auto a = detail::single_mode_annihilator(cutoff);
    const auto ad = detail::single_mode_creator(cutoff);
    const ModeOperatorMatrix up = detail::kron_two_mode(ad, ad, cutoff);
    const ModeOperatorMatrix dn = detail::kron_two_mode(a, a, cutoff);
    ModeOperatorMatrix gen(cutoff);
    for (size_t k = 0; k < gen.entries.size(); ++k)
        gen.entries[k] = lam * (up.entries[k] - dn.entries[k]);
    ModeOperatorMatrix out(cutoff);
    out.entries = detail::expm(gen.dim, gen.entries);
    return out;
}

/// Two-mode displacement D(z) = D1(-z/2) D2(z^*/2); each single-mode factor is
/// exponentiated, then combined onto the flattened basis.
inline ModeOperatorMatrix displace_op_fock(cplx z, int cutoff) {
    detail::check_cutoff(cutoff, "displace_op_fock");
    const int d = cutoff + 1;
    const auto a = detail::single_mode_annihilator(cutoff);
    const auto ad = detail::single_mode_creator(cutoff);
    std::vector<cplx> g1(a.size()), g2(a.size());
    const cplx zc = std::conj(z);
    for (size_t k = 0; k < a.size(); ++k) {
        g1[k] = -(z * 0.5) * ad[k] + (zc * 0.5) * a[k];
        g2[k] = (zc * 0.5) * ad[k] - (z * 0.5) * a[k];
    }
    const auto d1 = detail::expm(d, g1);
    const auto d2 = detail::expm(d, g2);
    return detail::kron_two_mode(d1, d2, cutoff);
}

/// <psi| S2(mu) D(z) |g> on the truncated space; ordinary query only.
inline cplx cwt_operator_route(const TwoModeState& psi, const TwoModeState& g, double mu, cplx z) {
    if (psi.cutoff != g.cutoff) throw std::invalid_argument("cwt_operator_route: cutoff mismatch");
    const ModeOperatorMatrix S = squeeze_op_fock(mu, g.cutoff);
    const ModeOperatorMatrix D = displace_op_fock(z, g.cutoff);
    return inner_product(psi, S.apply(D.apply(g)));
}

namespace detail {

// Fock expansion u[m][n] of exp(A a1^dag + B a2^dag + Lambda a1^dag a2^dag)|00>,
// u[0][0] = 1, via the coupled recurrences
//   sqrt(m+1) u[m+1][n] = A u[m][n] + Lambda sqrt(n) u[m][n-1]
//   sqrt(n+1) u[m][n+1] = B u[m][n] + Lambda sqrt(m) u[m-1][n]
// Both are evaluated and cross-checked; disagreement means a broken build.
inline std::vector<cplx> abl_expansion(cplx A, cplx B, double Lambda, int cutoff) {
    const int d = cutoff + 1;
    std::vector<cplx> u(static_cast<size_t>(d) * static_cast<size_t>(d), cplx(0.0, 0.0));
    auto U = [&u, d](int m, int n) -> cplx& { return u[static_cast<size_t>(m) * static_cast<size_t>(d) + static_cast<size_t>(n)]; };
    U(0, 0) = cplx(1.0, 0.0);
    for (int n = 1; n <= cutoff; ++n) U(0, n) = B * U(0, n - 1) / std::sqrt(static_cast<double>(n));
    for (int m = 1; m <= cutoff; ++m) {
        U(m, 0) = A * U(m - 1, 0) / std::sqrt(static_cast<double>(m));
        for (int n = 1; n <= cutoff; ++n)
            U(m, n) = (A * U(m - 1, n) + Lambda * std::sqrt(static_cast<double>(n)) * U(m - 1, n - 1)) /
                      std::sqrt(static_cast<double>(m));
    }
    // column recurrence as a correctness assertion
    for (int m = 0; m <= cutoff; ++m)
        for (int n = 1; n <= cutoff; ++n) {
            const cplx rhs = (B * U(m, n - 1) +
                              (m > 0 ? Lambda * std::sqrt(static_cast<double>(m)) * U(m - 1, n - 1) : cplx(0.0, 0.0))) /
                             std::sqrt(static_cast<double>(n));
            if (std::abs(rhs - U(m, n)) > 1e-12 * (1.0 + std::abs(U(m, n))))
                throw std::logic_error("abl_expansion: row/column recurrences disagree");
        }
    return u;
}

}  // namespace detail

/// Closed form of U2(mu, z)|00>: sech(lambda) e^{-z z_tilde / (2(1+mu^2))}
/// exp{a1^dag a2^dag tanh(lambda) + (z_tilde a2^dag - z a1^dag) sech(lambda)/2}|00>,
/// continued in (z, z_tilde). At z = z_tilde = 0 this is the two-mode squeezed vacuum.
inline TwoModeState u2_vacuum(double mu, cplx z, cplx z_tilde, int cutoff) {
    if (!(mu > 0.0)) throw std::invalid_argument("u2_vacuum: mu must be > 0");
    detail::check_cutoff(cutoff, "u2_vacuum");
    const double mu2 = mu * mu;
    const double sech = 2.0 * mu / (1.0 + mu2);
    const double tanh = (mu2 - 1.0) / (mu2 + 1.0);
    const cplx A = -0.5 * z * sech;
    const cplx B = 0.5 * z_tilde * sech;
    const cplx pref = sech * std::exp(-z * z_tilde / (2.0 * (1.0 + mu2)));
    const std::vector<cplx> u = detail::abl_expansion(A, B, tanh, cutoff);
    TwoModeState out(cutoff);
    for (size_t k = 0; k < out.coeffs.size(); ++k) out.coeffs[k] = pref * u[k];
    out.captured_norm = out.squared_norm();
    return out;
}

}  // namespace husimi_cwt
