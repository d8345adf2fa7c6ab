#pragma once
// Exact truncated multivariate power-series algebra, plus the two-variable
// Hermite polynomials that carry the entangled-representation wavefunctions.
//
// Hermite convention (note the PLUS cross term, not the classical -st one):
//     exp(s*x + t*y + s*t) = sum_{m,n} s^m t^n H_{m,n}(x, y) / (m! n!)
// This matches the +a1^dag a2^dag term of the entangled basis, so
// <eta|m,n> = e^{-|eta|^2/2} H_{m,n}(eta^*, -eta) / sqrt(m! n!) without
// extra signs. H_{m,0} = x^m, H_{0,n} = y^n, and
//     H_{m+1,n} = x H_{m,n} + n H_{m,n-1}.

#include <array>
#include <cmath>
#include <complex>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "husimi_cwt/fock.hpp"

namespace husimi_cwt {

/// Sparse truncated power series in up to 4 variables with complex coefficients.
/// All arithmetic truncates at max_total_degree, so products of valid series
/// stay valid.
class SeriesPoly {
  public:
    using Exponents = std::array<int, 4>;

    SeriesPoly(int nvars, int max_total_degree) : nvars_(nvars), max_deg_(max_total_degree) {
        if (nvars < 1 || nvars > 4) throw std::invalid_argument("SeriesPoly: nvars must be in [1,4]");
        if (max_total_degree < 0 || max_total_degree > 255)
            throw std::invalid_argument("SeriesPoly: max_total_degree must be in [0,255]");
    }

    int nvars() const { return nvars_; }
    int max_total_degree() const { return max_deg_; }

    void add_term(const Exponents& e, cplx coeff) {
        int deg = 0;
        for (int v = 0; v < 4; ++v) {
            if (e[static_cast<size_t>(v)] < 0) throw std::invalid_argument("SeriesPoly: negative exponent");
            if (v >= nvars_ && e[static_cast<size_t>(v)] != 0)
                throw std::invalid_argument("SeriesPoly: exponent on unused variable");
            deg += e[static_cast<size_t>(v)];
        }
        if (deg > max_deg_) return;  // truncation
        terms_[pack(e)] += coeff;
    }

    cplx coeff(const Exponents& e) const {
        auto it = terms_.find(pack(e));
        return it == terms_.end() ? cplx(0.0, 0.0) : it->second;
    }

    const std::map<uint32_t, cplx>& terms() const { return terms_; }

    bool has_nonzero_constant() const {
        auto it = terms_.find(0);
        return it != terms_.end() && it->second != cplx(0.0, 0.0);
    }

    static uint32_t pack(const Exponents& e) {
        return (static_cast<uint32_t>(e[0]) << 24) | (static_cast<uint32_t>(e[1]) << 16) |
               (static_cast<uint32_t>(e[2]) << 8) | static_cast<uint32_t>(e[3]);
    }
    static Exponents unpack(uint32_t key) {
        return {static_cast<int>(key >> 24) & 0xff, static_cast<int>(key >> 16) & 0xff,
                static_cast<int>(key >> 8) & 0xff, static_cast<int>(key) & 0xff};
    }
    static int total_degree(uint32_t key) {
        const Exponents e = unpack(key);
        return e[0] + e[1] + e[2] + e[3];
    }

  private:
    int nvars_;
    int max_deg_;
    std::map<uint32_t, cplx> terms_;
};

inline SeriesPoly poly_add(const SeriesPoly& a, const SeriesPoly& b) {
    if (a.nvars() != b.nvars() || a.max_total_degree() != b.max_total_degree())
        throw std::invalid_argument("poly_add: incompatible series");
    SeriesPoly out = a;
    for (const auto& [key, c] : b.terms()) out.add_term(SeriesPoly::unpack(key), c);
    return out;
}

inline SeriesPoly poly_scale(const SeriesPoly& a, cplx s) {
    SeriesPoly out(a.nvars(), a.max_total_degree());
    for (const auto& [key, c] : a.terms()) out.add_term(SeriesPoly::unpack(key), c * s);
    return out;
}

inline SeriesPoly poly_mul(const SeriesPoly& a, const SeriesPoly& b) {
    if (a.nvars() != b.nvars() || a.max_total_degree() != b.max_total_degree())
        throw std::invalid_argument("poly_mul: incompatible series");
    SeriesPoly out(a.nvars(), a.max_total_degree());
    for (const auto& [ka, ca] : a.terms()) {
        if (ca == cplx(0.0, 0.0)) continue;
        const auto ea = SeriesPoly::unpack(ka);
        const int da = ea[0] + ea[1] + ea[2] + ea[3];
        for (const auto& [kb, cb] : b.terms()) {
            if (da + SeriesPoly::total_degree(kb) > out.max_total_degree()) continue;
            const auto eb = SeriesPoly::unpack(kb);
            out.add_term({ea[0] + eb[0], ea[1] + eb[1], ea[2] + eb[2], ea[3] + eb[3]}, ca * cb);
        }
    }
    return out;
}

/// Truncated exponential sum_{k=0}^{max_total_degree} p^k / k!. The argument
/// must have a zero constant term (factor constants out first), which makes
/// the sum exact within the degree bound.
inline SeriesPoly poly_exp(const SeriesPoly& p) {
    if (p.has_nonzero_constant())
        throw std::invalid_argument("poly_exp: argument has a nonzero constant term");
    SeriesPoly result(p.nvars(), p.max_total_degree());
    result.add_term({0, 0, 0, 0}, cplx(1.0, 0.0));
    SeriesPoly term = result;
    for (int k = 1; k <= p.max_total_degree(); ++k) {
        term = poly_scale(poly_mul(term, p), cplx(1.0 / static_cast<double>(k), 0.0));
        if (term.terms().empty()) break;
        result = poly_add(result, term);
    }
    return result;
}

/// H_{m,n}(x, y) at a fixed argument pair, 0 <= m,n <= N.
struct Hermite2Table {
    int N = 0;
    std::vector<cplx> values;  // (N+1)^2, row-major

    cplx operator()(int m, int n) const { return values[static_cast<size_t>(m) * static_cast<size_t>(N + 1) + static_cast<size_t>(n)]; }
};

inline Hermite2Table hermite2_table(int N, cplx x, cplx y) {
    if (N < 0) throw std::invalid_argument("hermite2_table: N must be >= 0");
    Hermite2Table t;
    t.N = N;
    const size_t d = static_cast<size_t>(N) + 1;
    t.values.assign(d * d, cplx(0.0, 0.0));
    auto H = [&t, d](int m, int n) -> cplx& { return t.values[static_cast<size_t>(m) * d + static_cast<size_t>(n)]; };
    H(0, 0) = cplx(1.0, 0.0);
    for (int n = 1; n <= N; ++n) H(0, n) = y * H(0, n - 1);
    for (int m = 1; m <= N; ++m) {
        H(m, 0) = x * H(m - 1, 0);
        for (int n = 1; n <= N; ++n)
            H(m, n) = x * H(m - 1, n) + static_cast<double>(n) * H(m - 1, n - 1);
    }
    return t;
}

inline cplx hermite2(int m, int n, cplx x, cplx y) {
    if (m < 0 || n < 0) throw std::invalid_argument("hermite2: m,n must be >= 0");
    // small rectangle via the row recurrence
    const size_t d = static_cast<size_t>(n) + 1;
    std::vector<cplx> prev(d), cur(d);
    prev[0] = cplx(1.0, 0.0);
    for (int j = 1; j <= n; ++j) prev[static_cast<size_t>(j)] = y * prev[static_cast<size_t>(j - 1)];
    if (m == 0) return prev[static_cast<size_t>(n)];
    for (int i = 1; i <= m; ++i) {
        cur[0] = x * prev[0];
        for (int j = 1; j <= n; ++j)
            cur[static_cast<size_t>(j)] = x * prev[static_cast<size_t>(j)] + static_cast<double>(j) * prev[static_cast<size_t>(j - 1)];
        prev.swap(cur);
    }
    return prev[static_cast<size_t>(n)];
}

}  // namespace husimi_cwt
