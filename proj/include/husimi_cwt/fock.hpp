#pragma once
// Truncated two-mode Fock space: states, builders, inner products and
// dense matrices for the mode operators.

#include <array>
#include <cmath>
#include <complex>
#include <stdexcept>
#include <string>
#include <vector>

namespace husimi_cwt {

using cplx = std::complex<double>;

// Factorial tables are doubles; 171! overflows, desk-scale cutoffs are <= 30.
inline constexpr int kMaxCutoff = 170;

namespace detail {

inline const std::array<double, kMaxCutoff + 1>& factorial_table() {
    static const std::array<double, kMaxCutoff + 1> table = [] {
        std::array<double, kMaxCutoff + 1> t{};
        t[0] = 1.0;
        for (int k = 1; k <= kMaxCutoff; ++k) t[k] = t[k - 1] * static_cast<double>(k);
        return t;
    }();
    return table;
}

inline const std::array<double, kMaxCutoff + 1>& sqrt_factorial_table() {
    static const std::array<double, kMaxCutoff + 1> table = [] {
        std::array<double, kMaxCutoff + 1> t{};
        for (int k = 0; k <= kMaxCutoff; ++k) t[k] = std::sqrt(factorial_table()[k]);
        return t;
    }();
    return table;
}

inline void check_cutoff(int cutoff, const char* where) {
    if (cutoff < 0 || cutoff > kMaxCutoff)
        throw std::invalid_argument(std::string(where) + ": cutoff " + std::to_string(cutoff) +
                                    " outside [0, " + std::to_string(kMaxCutoff) + "]");
}

}  // namespace detail

inline double factorial(int k) { return detail::factorial_table().at(static_cast<size_t>(k)); }
inline double sqrt_factorial(int k) { return detail::sqrt_factorial_table().at(static_cast<size_t>(k)); }

// Flattened two-mode basis index; fixed convention for all modules.
inline int flat_index(int m, int n, int cutoff) { return m * (cutoff + 1) + n; }

/// Complex coefficient matrix c[m][n] over the truncated basis |m,n>, 0 <= m,n <= cutoff.
/// Builders may return sub-normalized truncations; they record the captured norm
/// (sum |c|^2 at build time) instead of silently renormalizing.
struct TwoModeState {
    int cutoff = 0;
    std::vector<cplx> coeffs;    // (cutoff+1)^2, row-major (m,n) -> m*(cutoff+1)+n
    double captured_norm = 0.0;

    TwoModeState() = default;
    explicit TwoModeState(int cutoff_) : cutoff(cutoff_) {
        detail::check_cutoff(cutoff_, "TwoModeState");
        coeffs.assign(static_cast<size_t>((cutoff_ + 1) * (cutoff_ + 1)), cplx(0.0, 0.0));
    }

    int dim() const { return (cutoff + 1) * (cutoff + 1); }

    cplx& operator()(int m, int n) { return coeffs[static_cast<size_t>(flat_index(m, n, cutoff))]; }
    cplx operator()(int m, int n) const { return coeffs[static_cast<size_t>(flat_index(m, n, cutoff))]; }

    double squared_norm() const {
        double s = 0.0;
        for (const cplx& c : coeffs) s += std::norm(c);
        return s;
    }

    /// Scale to unit norm. Idempotent up to roundoff.
    TwoModeState& normalize() {
        const double n2 = squared_norm();
        if (n2 <= 0.0) throw std::runtime_error("normalize: zero state");
        const double inv = 1.0 / std::sqrt(n2);
        for (cplx& c : coeffs) c *= inv;
        captured_norm = squared_norm();
        return *this;
    }
};

/// Basis ket |m,n>.
inline TwoModeState make_fock(int m, int n, int cutoff) {
    detail::check_cutoff(cutoff, "make_fock");
    if (m < 0 || m > cutoff)
        throw std::invalid_argument("make_fock: m=" + std::to_string(m) + " outside [0, " +
                                    std::to_string(cutoff) + "]");
    if (n < 0 || n > cutoff)
        throw std::invalid_argument("make_fock: n=" + std::to_string(n) + " outside [0, " +
                                    std::to_string(cutoff) + "]");
    TwoModeState s(cutoff);
    s(m, n) = cplx(1.0, 0.0);
    s.captured_norm = 1.0;
    return s;
}

/// Two-mode coherent state |alpha,beta>, c[m][n] = e^{-(|a|^2+|b|^2)/2} a^m b^n / sqrt(m! n!).
/// Rejects truncations that capture less than 0.999 of the norm.
inline TwoModeState make_coherent(cplx alpha, cplx beta, int cutoff) {
    detail::check_cutoff(cutoff, "make_coherent");
    TwoModeState s(cutoff);
    const double pref = std::exp(-0.5 * (std::norm(alpha) + std::norm(beta)));
    std::vector<cplx> am(static_cast<size_t>(cutoff) + 1), bn(static_cast<size_t>(cutoff) + 1);
    am[0] = cplx(1.0, 0.0);
    bn[0] = cplx(1.0, 0.0);
    for (int k = 1; k <= cutoff; ++k) {
        am[static_cast<size_t>(k)] = am[static_cast<size_t>(k - 1)] * alpha / std::sqrt(static_cast<double>(k));
        bn[static_cast<size_t>(k)] = bn[static_cast<size_t>(k - 1)] * beta / std::sqrt(static_cast<double>(k));
    }
    for (int m = 0; m <= cutoff; ++m)
        for (int n = 0; n <= cutoff; ++n)
            s(m, n) = pref * am[static_cast<size_t>(m)] * bn[static_cast<size_t>(n)];
    s.captured_norm = s.squared_norm();
    if (s.captured_norm < 0.999)
        throw std::invalid_argument("make_coherent: captured norm " + std::to_string(s.captured_norm) +
                                    " < 0.999 at cutoff " + std::to_string(cutoff) +
                                    "; truncation too aggressive for |alpha|,|beta|");
    return s;
}

/// Two-mode squeezed vacuum, c[n][n] = sech(r) tanh(r)^n.
inline TwoModeState make_tmsv(double r, int cutoff) {
    detail::check_cutoff(cutoff, "make_tmsv");
    TwoModeState s(cutoff);
    const double th = std::tanh(r);
    double c = 1.0 / std::cosh(r);
    for (int n = 0; n <= cutoff; ++n) {
        s(n, n) = cplx(c, 0.0);
        c *= th;
    }
    s.captured_norm = s.squared_norm();
    return s;
}

inline cplx inner_product(const TwoModeState& s1, const TwoModeState& s2) {
    if (s1.cutoff != s2.cutoff)
        throw std::invalid_argument("inner_product: cutoff mismatch " + std::to_string(s1.cutoff) +
                                    " vs " + std::to_string(s2.cutoff));
    cplx acc(0.0, 0.0);
    for (size_t i = 0; i < s1.coeffs.size(); ++i) acc += std::conj(s1.coeffs[i]) * s2.coeffs[i];
    return acc;
}

/// a*s1 + b*s2 over a shared cutoff.
inline TwoModeState superpose(cplx a, const TwoModeState& s1, cplx b, const TwoModeState& s2) {
    if (s1.cutoff != s2.cutoff)
        throw std::invalid_argument("superpose: cutoff mismatch");
    TwoModeState out(s1.cutoff);
    for (size_t i = 0; i < out.coeffs.size(); ++i) out.coeffs[i] = a * s1.coeffs[i] + b * s2.coeffs[i];
    out.captured_norm = out.squared_norm();
    return out;
}

enum class ModeOp { a1, a2, a1_dag, a2_dag, q1_minus_q2, p1_plus_p2 };

/// Dense matrix on the flattened two-mode basis, entries[i*dim+j] = <i|Op|j>.
struct ModeOperatorMatrix {
    int cutoff = 0;
    int dim = 0;
    std::vector<cplx> entries;

    ModeOperatorMatrix() = default;
    explicit ModeOperatorMatrix(int cutoff_)
        : cutoff(cutoff_), dim((cutoff_ + 1) * (cutoff_ + 1)) {
        detail::check_cutoff(cutoff_, "ModeOperatorMatrix");
        entries.assign(static_cast<size_t>(dim) * static_cast<size_t>(dim), cplx(0.0, 0.0));
    }

    cplx& at(int i, int j) { return entries[static_cast<size_t>(i) * static_cast<size_t>(dim) + static_cast<size_t>(j)]; }
    cplx at(int i, int j) const { return entries[static_cast<size_t>(i) * static_cast<size_t>(dim) + static_cast<size_t>(j)]; }

    TwoModeState apply(const TwoModeState& s) const {
        if (s.cutoff != cutoff) throw std::invalid_argument("ModeOperatorMatrix::apply: cutoff mismatch");
        TwoModeState out(cutoff);
        for (int i = 0; i < dim; ++i) {
            cplx acc(0.0, 0.0);
            const cplx* row = &entries[static_cast<size_t>(i) * static_cast<size_t>(dim)];
            for (int j = 0; j < dim; ++j) acc += row[j] * s.coeffs[static_cast<size_t>(j)];
            out.coeffs[static_cast<size_t>(i)] = acc;
        }
        out.captured_norm = out.squared_norm();
        return out;
    }

    // Row-vector product v.M, for bra-side checks.
    std::vector<cplx> apply_left(const std::vector<cplx>& v) const {
        if (static_cast<int>(v.size()) != dim)
            throw std::invalid_argument("ModeOperatorMatrix::apply_left: size mismatch");
        std::vector<cplx> out(static_cast<size_t>(dim), cplx(0.0, 0.0));
        for (int i = 0; i < dim; ++i) {
            const cplx vi = v[static_cast<size_t>(i)];
            if (vi == cplx(0.0, 0.0)) continue;
            const cplx* row = &entries[static_cast<size_t>(i) * static_cast<size_t>(dim)];
            for (int j = 0; j < dim; ++j) out[static_cast<size_t>(j)] += vi * row[j];
        }
        return out;
    }

    ModeOperatorMatrix adjoint() const {
        ModeOperatorMatrix out(cutoff);
        for (int i = 0; i < dim; ++i)
            for (int j = 0; j < dim; ++j) out.at(j, i) = std::conj(at(i, j));
        return out;
    }
};

namespace detail {

// Single-mode ladder matrices, (cutoff+1)x(cutoff+1), row-major.
inline std::vector<cplx> single_mode_annihilator(int cutoff) {
    const int d = cutoff + 1;
    std::vector<cplx> a(static_cast<size_t>(d) * static_cast<size_t>(d), cplx(0.0, 0.0));
    for (int m = 1; m <= cutoff; ++m)
        a[static_cast<size_t>(m - 1) * static_cast<size_t>(d) + static_cast<size_t>(m)] = std::sqrt(static_cast<double>(m));
    return a;
}

inline std::vector<cplx> single_mode_creator(int cutoff) {
    const int d = cutoff + 1;
    std::vector<cplx> a(static_cast<size_t>(d) * static_cast<size_t>(d), cplx(0.0, 0.0));
    for (int m = 0; m < cutoff; ++m)
        a[static_cast<size_t>(m + 1) * static_cast<size_t>(d) + static_cast<size_t>(m)] = std::sqrt(static_cast<double>(m + 1));
    return a;
}

// Kronecker product of two single-mode matrices onto the flattened two-mode basis.
// Mode 1 is the outer index: (A (x) B)[(m,n),(m',n')] = A[m][m'] B[n][n'].
inline ModeOperatorMatrix kron_two_mode(const std::vector<cplx>& A, const std::vector<cplx>& B, int cutoff) {
    const int d = cutoff + 1;
    ModeOperatorMatrix out(cutoff);
    for (int m = 0; m < d; ++m)
        for (int mp = 0; mp < d; ++mp) {
            const cplx a = A[static_cast<size_t>(m) * static_cast<size_t>(d) + static_cast<size_t>(mp)];
            if (a == cplx(0.0, 0.0)) continue;
            for (int n = 0; n < d; ++n)
                for (int np = 0; np < d; ++np) {
                    const cplx b = B[static_cast<size_t>(n) * static_cast<size_t>(d) + static_cast<size_t>(np)];
                    if (b == cplx(0.0, 0.0)) continue;
                    out.at(flat_index(m, n, cutoff), flat_index(mp, np, cutoff)) = a * b;
                }
        }
    return out;
}

inline std::vector<cplx> single_mode_identity(int cutoff) {
    const int d = cutoff + 1;
    std::vector<cplx> id(static_cast<size_t>(d) * static_cast<size_t>(d), cplx(0.0, 0.0));
    for (int m = 0; m < d; ++m) id[static_cast<size_t>(m) * static_cast<size_t>(d) + static_cast<size_t>(m)] = cplx(1.0, 0.0);
    return id;
}

}  // namespace detail

/// Mode operators on the flattened basis. Q_j = (a_j + a_j^dag)/sqrt(2),
/// P_j = (a_j - a_j^dag)/(sqrt(2) i).
inline ModeOperatorMatrix mode_operator(ModeOp which, int cutoff) {
    if (cutoff < 1) throw std::invalid_argument("mode_operator: cutoff must be >= 1");
    detail::check_cutoff(cutoff, "mode_operator");
    const auto a = detail::single_mode_annihilator(cutoff);
    const auto ad = detail::single_mode_creator(cutoff);
    const auto id = detail::single_mode_identity(cutoff);
    switch (which) {
        case ModeOp::a1:
            return detail::kron_two_mode(a, id, cutoff);
        case ModeOp::a2:
            return detail::kron_two_mode(id, a, cutoff);
        case ModeOp::a1_dag:
            return detail::kron_two_mode(ad, id, cutoff);
        case ModeOp::a2_dag:
            return detail::kron_two_mode(id, ad, cutoff);
        case ModeOp::q1_minus_q2: {
            const ModeOperatorMatrix a1 = detail::kron_two_mode(a, id, cutoff);
            const ModeOperatorMatrix a1d = detail::kron_two_mode(ad, id, cutoff);
            const ModeOperatorMatrix a2 = detail::kron_two_mode(id, a, cutoff);
            const ModeOperatorMatrix a2d = detail::kron_two_mode(id, ad, cutoff);
            ModeOperatorMatrix out(cutoff);
            const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
            for (size_t k = 0; k < out.entries.size(); ++k)
                out.entries[k] = inv_sqrt2 * (a1.entries[k] + a1d.entries[k] - a2.entries[k] - a2d.entries[k]);
            return out;
        }
        case ModeOp::p1_plus_p2: {
            const ModeOperatorMatrix a1 = detail::kron_two_mode(a, id, cutoff);
            const ModeOperatorMatrix a1d = detail::kron_two_mode(ad, id, cutoff);
            const ModeOperatorMatrix a2 = detail::kron_two_mode(id, a, cutoff);
            const ModeOperatorMatrix a2d = detail::kron_two_mode(id, ad, cutoff);
            ModeOperatorMatrix out(cutoff);
            const cplx minus_i_over_sqrt2 = cplx(0.0, -1.0) / std::sqrt(2.0);
            for (size_t k = 0; k < out.entries.size(); ++k)
                out.entries[k] = minus_i_over_sqrt2 *
                                 (a1.entries[k] - a1d.entries[k] + a2.entries[k] - a2d.entries[k]);
            return out;
        }
    }
    throw std::logic_error("mode_operator: unreachable");
}

}  // namespace husimi_cwt
