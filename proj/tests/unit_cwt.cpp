#include "doctest.h"

#include <cmath>
#include <complex>
#include <random>

#include "husimi_cwt/cwt.hpp"
#include "husimi_cwt/detail/linalg.hpp"
#include "oracles.hpp"

using namespace husimi_cwt;

TEST_CASE("CwtQuery validation and lambda") {
    CHECK_THROWS_AS(CwtQuery::ordinary(0.0, cplx(0, 0)).validate(), std::invalid_argument);
    CHECK(CwtQuery::ordinary(std::exp(1.0), cplx(0, 0)).lambda() == doctest::Approx(1.0));
}

TEST_CASE("cwt_point closed-form anchors") {
    const QuadratureRule rule = gauss_hermite(48);
    const TwoModeState vac = make_fock(0, 0, 0);
    CHECK(std::abs(cwt_point(vac, vac, CwtQuery::ordinary(1.0, cplx(0, 0)), rule) - 1.0) < 1e-12);
    CHECK(std::abs(cwt_point(vac, make_fock(1, 0, 4), CwtQuery::ordinary(1.0, cplx(0, 0)), rule)) < 1e-14);
    CHECK(std::abs(cwt_point(vac, vac, CwtQuery::ordinary(2.0, cplx(0, 0)), rule) - 0.8) < 1e-10);
}

TEST_CASE("cwt_point scaling consistency sech(lambda) = 2 mu / (1 + mu^2)") {
    const QuadratureRule rule = gauss_hermite(64);
    const TwoModeState vac = make_fock(0, 0, 0);
    for (double mu : {0.5, 1.0, 2.0, 4.0}) {
        const cplx got = cwt_point(vac, vac, CwtQuery::ordinary(mu, cplx(0, 0)), rule);
        CHECK(std::abs(got - 2.0 * mu / (1.0 + mu * mu)) < 1e-9);
    }
}

TEST_CASE("cwt_point is linear in g and anti-linear in psi") {
    std::mt19937 rng(31u);
    std::uniform_real_distribution<double> coef(-1.0, 1.0);
    const QuadratureRule rule = gauss_hermite(32);
    const CwtQuery q = CwtQuery::ordinary(1.3, cplx(0.2, -0.4));
    for (int trial = 0; trial < 3; ++trial) {
        const TwoModeState g1 = make_fock(0, 0, 3), g2 = make_fock(1, 1, 3);
        const TwoModeState p1 = make_fock(1, 0, 3), p2 = make_fock(0, 1, 3);
        const cplx a(coef(rng), coef(rng)), b(coef(rng), coef(rng));

        const cplx lhs_g = cwt_point(superpose(a, g1, b, g2), p1, q, rule);
        const cplx rhs_g = a * cwt_point(g1, p1, q, rule) + b * cwt_point(g2, p1, q, rule);
        CHECK(std::abs(lhs_g - rhs_g) < 1e-12);

        const cplx lhs_p = cwt_point(g1, superpose(a, p1, b, p2), q, rule);
        const cplx rhs_p = std::conj(a) * cwt_point(g1, p1, q, rule) + std::conj(b) * cwt_point(g1, p2, q, rule);
        CHECK(std::abs(lhs_p - rhs_p) < 1e-12);
    }
}

TEST_CASE("squeeze_op_fock at mu=1 is the identity") {
    const ModeOperatorMatrix S = squeeze_op_fock(1.0, 6);
    double worst = 0.0;
    for (int i = 0; i < S.dim; ++i)
        for (int j = 0; j < S.dim; ++j)
            worst = std::max(worst, std::abs(S.at(i, j) - (i == j ? cplx(1, 0) : cplx(0, 0))));
    CHECK(worst < 1e-14);
}

TEST_CASE("squeeze_op_fock vacuum element and TMSV column") {
    const int cutoff = 20;
    const ModeOperatorMatrix S = squeeze_op_fock(2.0, cutoff);
    CHECK(std::abs(S.at(0, 0) - 0.8) < 1e-10);  // sech(ln 2) = 4/5
    const TwoModeState squeezed = S.apply(make_fock(0, 0, cutoff));
    const TwoModeState tmsv = make_tmsv(std::log(2.0), cutoff);
    // components need tanh(ln 2)^{2(cutoff+1-n)} headroom below the boundary
    for (int m = 0; m <= 8; ++m)
        for (int n = 0; n <= 8; ++n) CHECK(std::abs(squeezed(m, n) - tmsv(m, n)) < 1e-9);
}

TEST_CASE("displace_op_fock at z=0 is the identity") {
    const ModeOperatorMatrix D = displace_op_fock(cplx(0, 0), 5);
    double worst = 0.0;
    for (int i = 0; i < D.dim; ++i)
        for (int j = 0; j < D.dim; ++j)
            worst = std::max(worst, std::abs(D.at(i, j) - (i == j ? cplx(1, 0) : cplx(0, 0))));
    CHECK(worst < 1e-14);
}

TEST_CASE("displacement shifts the entangled basis: D(z)|eta> = |eta - z>") {
    const int cutoff = 25;
    const cplx eta(0.3, 0.1), z(0.2, 0.0);
    const ModeOperatorMatrix D = displace_op_fock(z, cutoff);
    TwoModeState ket(cutoff);
    for (int m = 0; m <= cutoff; ++m)
        for (int n = 0; n <= cutoff; ++n) ket(m, n) = std::conj(eta_overlap_fock(m, n, eta));  // <m,n|eta>
    const TwoModeState shifted = D.apply(ket);
    // |eta> has O(1) weight at every pair occupation, so the dropped boundary
    // columns pollute nearby rows; compare well inside the truncation
    for (int m = 0; m <= 16; ++m)
        for (int n = 0; n <= 16; ++n)
            CHECK(std::abs(shifted(m, n) - std::conj(eta_overlap_fock(m, n, eta - z))) < 1e-7);
}

TEST_CASE("displacement is unitary away from the truncation boundary") {
    const int cutoff = 25;
    const ModeOperatorMatrix D = displace_op_fock(cplx(0.4, -0.3), cutoff);
    const ModeOperatorMatrix Dd = D.adjoint();
    std::vector<cplx> prod;
    detail::matmul(D.dim, Dd.entries, D.entries, prod);
    double worst = 0.0;
    for (int m = 0; m <= cutoff; ++m)
        for (int n = 0; n <= cutoff; ++n) {
            if (m + n > cutoff - 2) continue;
            for (int mp = 0; mp <= cutoff; ++mp)
                for (int np = 0; np <= cutoff; ++np) {
                    if (mp + np > cutoff - 2) continue;
                    const size_t i = static_cast<size_t>(flat_index(m, n, cutoff));
                    const size_t j = static_cast<size_t>(flat_index(mp, np, cutoff));
                    const cplx want = (i == j) ? cplx(1, 0) : cplx(0, 0);
                    worst = std::max(worst, std::abs(prod[i * static_cast<size_t>(D.dim) + j] - want));
                }
        }
    CHECK(worst < 1e-8);
}

TEST_CASE("cwt_operator_route anchors") {
    CHECK(std::abs(cwt_operator_route(make_fock(0, 0, 20), make_fock(0, 0, 20), 2.0, cplx(0, 0)) - 0.8) < 1e-10);
    CHECK(std::abs(cwt_operator_route(make_fock(1, 0, 12), make_fock(0, 0, 12), 1.0, cplx(0, 0))) < 1e-12);
}

TEST_CASE("integral and operator routes agree on ordinary queries") {
    const int cutoff = 14;
    const QuadratureRule rule = gauss_hermite(64);
    const struct {
        TwoModeState psi, g;
        double mu;
        cplx z;
    } cases[] = {
        {make_fock(1, 0, cutoff), make_fock(0, 0, cutoff), 1.25, cplx(0.3, -0.2)},
        {make_coherent(cplx(0.3, 0.1), cplx(-0.2, 0.2), cutoff), make_fock(1, 1, cutoff), 0.8, cplx(-0.4, 0.1)},
        {make_fock(2, 1, cutoff), make_coherent(cplx(0.2, -0.3), cplx(0.1, 0.0), cutoff), 1.0, cplx(0.5, 0.3)},
    };
    for (const auto& c : cases) {
        const cplx integral = cwt_point(c.g, c.psi, CwtQuery::ordinary(c.mu, c.z), rule);
        const cplx matrix = cwt_operator_route(c.psi, c.g, c.mu, c.z);
        CHECK(std::abs(integral - matrix) < 1e-7);
    }
}

TEST_CASE("u2_vacuum reduces to the squeezed vacuum at z=0") {
    const TwoModeState u = u2_vacuum(1.7, cplx(0, 0), cplx(0, 0), 16);
    const TwoModeState tmsv = make_tmsv(std::log(1.7), 16);
    for (size_t k = 0; k < u.coeffs.size(); ++k) CHECK(std::abs(u.coeffs[k] - tmsv.coeffs[k]) < 1e-14);
}

TEST_CASE("u2_vacuum at mu=1 is a displaced vacuum") {
    const cplx z(0.4, 0.0);
    const TwoModeState u = u2_vacuum(1.0, z, z, 20);
    const TwoModeState displaced = displace_op_fock(z, 20).apply(make_fock(0, 0, 20));
    for (size_t k = 0; k < u.coeffs.size(); ++k) CHECK(std::abs(u.coeffs[k] - displaced.coeffs[k]) < 1e-9);
}

TEST_CASE("u2_vacuum vacuum component matches the closed form and the operator route") {
    const double mu = 1.6;
    const cplx z(0.5, -0.3);
    const TwoModeState u = u2_vacuum(mu, z, std::conj(z), 20);
    const double sech = 2.0 * mu / (1.0 + mu * mu);
    const cplx want = sech * std::exp(-std::norm(z) / (2.0 * (1.0 + mu * mu)));
    CHECK(std::abs(u(0, 0) - want) < 1e-12);
    const cplx op = cwt_operator_route(make_fock(0, 0, 20), make_fock(0, 0, 20), mu, z);
    CHECK(std::abs(u(0, 0) - op) < 1e-8);
}

TEST_CASE("factorization U2 = S2 D applied to the vacuum") {
    const int cutoff = 25;
    for (double mu : {0.5, 1.0, 2.0}) {
        const cplx z(0.6, -0.5);
        const TwoModeState lhs = squeeze_op_fock(mu, cutoff).apply(displace_op_fock(z, cutoff).apply(make_fock(0, 0, cutoff)));
        const TwoModeState rhs = u2_vacuum(mu, z, std::conj(z), cutoff);
        // exp of the truncated generator pollutes boundary components; the
        // measured agreement region at this cutoff is m,n <= 14
        double worst = 0.0;
        for (int m = 0; m <= 14; ++m)
            for (int n = 0; n <= 14; ++n) worst = std::max(worst, std::abs(lhs(m, n) - rhs(m, n)));
        CHECK(worst < 1e-8);
    }
}
