#pragma once
// Entangled-state-representation wavefunctions <eta|psi>, their analytic
// continuation for complexified translation arguments, and the admissibility
// diagnostic.
//
// Continuation rule: the integration variable eta always stays on the real
// plane with honest conjugation; only translation parameters are continued.
// The conjugated wavefunction is continued by promoting its conjugate-slot
// dependence to an independent variable xi_tilde, and |.|^2 continues to
// xi * xi_tilde (not |xi|^2). With xi_tilde = conj(xi) the continued formulas
// reduce to the ordinary ones exactly.

#include <cmath>
#include <complex>
#include <stdexcept>

#include "husimi_cwt/fock.hpp"
#include "husimi_cwt/quadrature.hpp"
#include "husimi_cwt/series_hermite.hpp"

namespace husimi_cwt {

using EtaPoint = cplx;  // eta = eta1 + i eta2

/// Independent (xi, xi_tilde) slots of a continued wavefunction argument.
struct ContinuedArg {
    cplx xi;
    cplx xi_tilde;
};

/// <eta|m,n> = e^{-|eta|^2/2} H_{m,n}(eta^*, -eta) / sqrt(m! n!).
inline cplx eta_overlap_fock(int m, int n, EtaPoint eta) {
    if (m < 0 || n < 0) throw std::invalid_argument("eta_overlap_fock: m,n must be >= 0");
    const double gauss = std::exp(-0.5 * std::norm(eta));
    return gauss * hermite2(m, n, std::conj(eta), -eta) / (sqrt_factorial(m) * sqrt_factorial(n));
}

/// Hermite-weighted coefficient sum of <eta|psi> without the Gaussian prefactor:
/// eta_wavefunction = e^{-|eta|^2/2} * eta_wavefunction_series.
inline cplx eta_wavefunction_series(const TwoModeState& psi, EtaPoint eta) {
    const Hermite2Table H = hermite2_table(psi.cutoff, std::conj(eta), -eta);
    cplx acc(0.0, 0.0);
    for (int m = 0; m <= psi.cutoff; ++m) {
        const double fm = sqrt_factorial(m);
        for (int n = 0; n <= psi.cutoff; ++n) {
            const cplx c = psi(m, n);
            if (c == cplx(0.0, 0.0)) continue;
            acc += c * H(m, n) / (fm * sqrt_factorial(n));
        }
    }
    return acc;
}

/// psi(eta) = <eta|psi>.
inline cplx eta_wavefunction(const TwoModeState& psi, EtaPoint eta) {
    return std::exp(-0.5 * std::norm(eta)) * eta_wavefunction_series(psi, eta);
}

/// Continued conj(psi) series sum without the Gaussian prefactor:
/// conj_wavefunction_continued = e^{-xi xi_tilde / 2} * conj_wavefunction_series.
inline cplx conj_wavefunction_series(const TwoModeState& psi, cplx xi, cplx xi_tilde) {
    const Hermite2Table H = hermite2_table(psi.cutoff, xi, -xi_tilde);
    cplx acc(0.0, 0.0);
    for (int m = 0; m <= psi.cutoff; ++m) {
        const double fm = sqrt_factorial(m);
        for (int n = 0; n <= psi.cutoff; ++n) {
            const cplx c = psi(m, n);
            if (c == cplx(0.0, 0.0)) continue;
            acc += std::conj(c) * H(m, n) / (fm * sqrt_factorial(n));
        }
    }
    return acc;
}

/// conj(psi(.)) with the conjugate slot promoted to the independent variable:
/// e^{-xi xi_tilde/2} sum conj(c[m][n]) H_{m,n}(xi, -xi_tilde) / sqrt(m! n!).
inline cplx conj_wavefunction_continued(const TwoModeState& psi, const ContinuedArg& arg) {
    return std::exp(-0.5 * arg.xi * arg.xi_tilde) * conj_wavefunction_series(psi, arg.xi, arg.xi_tilde);
}

/// Diagnostic int (d^2 eta / 2 pi) <eta|psi>. Nonzero values are reported,
/// never raised: the Husimi theorem does not require admissibility.
inline cplx admissibility_integral(const TwoModeState& psi, const QuadratureRule& rule) {
    const cplx val = integrate_plane([&psi](cplx eta) { return eta_wavefunction_series(psi, eta); }, 0.5, rule);
    return 0.5 * val;  // d^2eta/pi -> d^2eta/(2 pi)
}

}  // namespace husimi_cwt
