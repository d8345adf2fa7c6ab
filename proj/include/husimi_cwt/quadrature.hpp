#pragma once
// Gauss-Hermite rules (weight e^{-t^2}) and tensored integrators over
// Gaussian-weighted complex-plane integrals.
//
// Weight-splitting contract: each integrator owns exactly the Gaussian named
// in its signature; every remaining factor belongs to the integrand.

#include <algorithm>
#include <cmath>
#include <complex>
#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

#include "husimi_cwt/fock.hpp"

namespace husimi_cwt {

inline constexpr double kPi = 3.14159265358979323846;

namespace detail {

// Neumaier-compensated accumulator; deterministic for a fixed visit order.
struct CompensatedSum {
    double sum = 0.0;
    double comp = 0.0;
    void add(double x) {
        const double t = sum + x;
        if (std::abs(sum) >= std::abs(x))
            comp += (sum - t) + x;
        else
            comp += (x - t) + sum;
        sum = t;
    }
    double value() const { return sum + comp; }
};

struct CompensatedCplx {
    CompensatedSum re, im;
    void add(cplx z) {
        re.add(z.real());
        im.add(z.imag());
    }
    cplx value() const { return {re.value(), im.value()}; }
};

}  // namespace detail

/// Nodes and weights for int e^{-t^2} f(t) dt on the real line.
struct QuadratureRule {
    int order = 0;
    std::vector<double> nodes;
    std::vector<double> weights;
};

namespace detail {

// Symmetric tridiagonal QL with implicit shifts; d is the diagonal, e the
// off-diagonal (e[0..n-2]), zf accumulates the first component of each
// eigenvector. On return d holds eigenvalues in no particular order.
inline void tridiag_ql_first_components(std::vector<double>& d, std::vector<double>& e, std::vector<double>& zf) {
    const int n = static_cast<int>(d.size());
    if (n == 1) return;
    e.push_back(0.0);  // e[n-1] sentinel
    for (int l = 0; l < n; ++l) {
        int iter = 0;
        int m = l;
        do {
            for (m = l; m < n - 1; ++m) {
                const double dd = std::abs(d[static_cast<size_t>(m)]) + std::abs(d[static_cast<size_t>(m + 1)]);
                if (std::abs(e[static_cast<size_t>(m)]) <= 1e-320 + 2.3e-16 * dd) break;
            }
            if (m != l) {
                if (iter++ == 60) throw std::runtime_error("gauss_hermite: eigenvalue iteration stalled");
                double g = (d[static_cast<size_t>(l + 1)] - d[static_cast<size_t>(l)]) / (2.0 * e[static_cast<size_t>(l)]);
                double r = std::hypot(g, 1.0);
                g = d[static_cast<size_t>(m)] - d[static_cast<size_t>(l)] +
                    e[static_cast<size_t>(l)] / (g + (g >= 0.0 ? std::abs(r) : -std::abs(r)));
                double s = 1.0, c = 1.0, p = 0.0;
                int i = m - 1;
                for (; i >= l; --i) {
                    double f = s * e[static_cast<size_t>(i)];
                    const double b = c * e[static_cast<size_t>(i)];
                    r = std::hypot(f, g);
                    e[static_cast<size_t>(i + 1)] = r;
                    if (r == 0.0) {
                        d[static_cast<size_t>(i + 1)] -= p;
                        e[static_cast<size_t>(m)] = 0.0;
                        break;
                    }
                    s = f / r;
                    c = g / r;
                    g = d[static_cast<size_t>(i + 1)] - p;
                    r = (d[static_cast<size_t>(i)] - g) * s + 2.0 * c * b;
                    p = s * r;
                    d[static_cast<size_t>(i + 1)] = g + p;
                    g = c * r - b;
                    f = zf[static_cast<size_t>(i + 1)];
                    zf[static_cast<size_t>(i + 1)] = s * zf[static_cast<size_t>(i)] + c * f;
                    zf[static_cast<size_t>(i)] = c * zf[static_cast<size_t>(i)] - s * f;
                }
                if (r == 0.0 && i >= l) continue;
                d[static_cast<size_t>(l)] -= p;
                e[static_cast<size_t>(l)] = g;
                e[static_cast<size_t>(m)] = 0.0;
            }
        } while (m != l);
    }
    e.pop_back();
}

}  // namespace detail

/// Rule by Golub-Welsch: eigen-decomposition of the Hermite Jacobi matrix
/// (zero diagonal, off-diagonal sqrt(j/2)); weights from the squared first
/// eigenvector components times sqrt(pi). Robust through order 256.
inline QuadratureRule gauss_hermite(int order) {
    if (order < 1 || order > 256)
        throw std::invalid_argument("gauss_hermite: order " + std::to_string(order) + " outside [1,256]");
    std::vector<double> d(static_cast<size_t>(order), 0.0);
    std::vector<double> e(static_cast<size_t>(order > 1 ? order - 1 : 0));
    for (int j = 1; j < order; ++j) e[static_cast<size_t>(j - 1)] = std::sqrt(j / 2.0);
    std::vector<double> zf(static_cast<size_t>(order), 0.0);
    zf[0] = 1.0;
    detail::tridiag_ql_first_components(d, e, zf);

    std::vector<int> idx(static_cast<size_t>(order));
    for (int i = 0; i < order; ++i) idx[static_cast<size_t>(i)] = i;
    std::sort(idx.begin(), idx.end(), [&d](int a, int b) { return d[static_cast<size_t>(a)] < d[static_cast<size_t>(b)]; });

    QuadratureRule rule;
    rule.order = order;
    rule.nodes.resize(static_cast<size_t>(order));
    rule.weights.resize(static_cast<size_t>(order));
    const double mu0 = std::sqrt(kPi);
    for (int i = 0; i < order; ++i) {
        rule.nodes[static_cast<size_t>(i)] = d[static_cast<size_t>(idx[static_cast<size_t>(i)])];
        const double z0 = zf[static_cast<size_t>(idx[static_cast<size_t>(i)])];
        rule.weights[static_cast<size_t>(i)] = mu0 * z0 * z0;
    }
    // enforce exact mirror symmetry about 0
    for (int i = 0; i < order / 2; ++i) {
        const int j = order - 1 - i;
        const double x = 0.5 * (rule.nodes[static_cast<size_t>(j)] - rule.nodes[static_cast<size_t>(i)]);
        rule.nodes[static_cast<size_t>(i)] = -x;
        rule.nodes[static_cast<size_t>(j)] = x;
        const double w = 0.5 * (rule.weights[static_cast<size_t>(i)] + rule.weights[static_cast<size_t>(j)]);
        rule.weights[static_cast<size_t>(i)] = w;
        rule.weights[static_cast<size_t>(j)] = w;
    }
    if (order % 2 == 1) rule.nodes[static_cast<size_t>(order / 2)] = 0.0;
    return rule;
}

/// int (d^2 eta / pi) e^{-c |eta|^2} f(eta) over the complex plane, c > 0.
/// The integrator owns e^{-c|eta|^2}; any remaining Gaussian factor belongs to f.
template <typename F>
cplx integrate_plane(F&& f, double c, const QuadratureRule& rule) {
    if (!(c > 0.0)) throw std::invalid_argument("integrate_plane: c must be > 0");
    const double inv_sqrt_c = 1.0 / std::sqrt(c);
    detail::CompensatedCplx acc;
    for (size_t i = 0; i < rule.nodes.size(); ++i) {
        const double x = rule.nodes[i] * inv_sqrt_c;
        detail::CompensatedCplx row;
        for (size_t j = 0; j < rule.nodes.size(); ++j) {
            const double y = rule.nodes[j] * inv_sqrt_c;
            row.add(rule.weights[j] * f(cplx(x, y)));
        }
        acc.add(rule.weights[i] * row.value());
    }
    return acc.value() / (kPi * c);
}

/// int d^2 sigma' d^2 gamma' e^{-cs |sigma'-sigma0|^2 - cg |gamma'-gamma0|^2} f(sigma', gamma'),
/// 4-fold tensor rule. Generalized weights; see integrate_c2 for the smoothing kernel shape.
template <typename F>
cplx integrate_c2_general(F&& f, cplx sigma0, cplx gamma0, double cs, double cg, const QuadratureRule& rule) {
    if (!(cs > 0.0) || !(cg > 0.0)) throw std::invalid_argument("integrate_c2_general: weights must be > 0");
    const double ss = 1.0 / std::sqrt(cs);
    const double sg = 1.0 / std::sqrt(cg);
    const size_t n = rule.nodes.size();
    detail::CompensatedCplx acc;
    for (size_t i1 = 0; i1 < n; ++i1) {
        const double sr = sigma0.real() + rule.nodes[i1] * ss;
        detail::CompensatedCplx a1;
        for (size_t i2 = 0; i2 < n; ++i2) {
            const cplx sigma(sr, sigma0.imag() + rule.nodes[i2] * ss);
            detail::CompensatedCplx a2;
            for (size_t i3 = 0; i3 < n; ++i3) {
                const double gr = gamma0.real() + rule.nodes[i3] * sg;
                detail::CompensatedCplx a3;
                for (size_t i4 = 0; i4 < n; ++i4) {
                    const cplx gamma(gr, gamma0.imag() + rule.nodes[i4] * sg);
                    a3.add(rule.weights[i4] * f(sigma, gamma));
                }
                a2.add(rule.weights[i3] * a3.value());
            }
            a1.add(rule.weights[i2] * a2.value());
        }
        acc.add(rule.weights[i1] * a1.value());
    }
    // Jacobian (1/cs)(1/cg) from the per-axis substitutions
    return acc.value() / (cs * cg);
}

/// Smoothing-kernel integral int d^2 s' d^2 g' e^{-kappa|s'-sigma|^2 - |g'-gamma|^2/kappa} f(s', g').
template <typename F>
cplx integrate_c2(F&& f, cplx sigma, cplx gamma, double kappa, const QuadratureRule& rule) {
    if (!(kappa > 0.0)) throw std::invalid_argument("integrate_c2: kappa must be > 0");
    return integrate_c2_general(std::forward<F>(f), sigma, gamma, kappa, 1.0 / kappa, rule);
}

}  // namespace husimi_cwt
