#include "doctest.h"

#include <cmath>
#include <complex>
#include <random>

#include "husimi_cwt/series_hermite.hpp"

using namespace husimi_cwt;

TEST_CASE("poly_exp of the zero series is 1") {
    const SeriesPoly zero(2, 5);
    const SeriesPoly e = poly_exp(zero);
    CHECK(std::abs(e.coeff({0, 0, 0, 0}) - 1.0) == 0.0);
    CHECK(e.terms().size() == 1);
}

TEST_CASE("poly_exp reproduces the Taylor series of exp(x)") {
    SeriesPoly p(1, 3);
    p.add_term({1, 0, 0, 0}, cplx(1.0, 0.0));
    const SeriesPoly e = poly_exp(p);
    CHECK(std::abs(e.coeff({0, 0, 0, 0}) - 1.0) < 1e-15);
    CHECK(std::abs(e.coeff({1, 0, 0, 0}) - 1.0) < 1e-15);
    CHECK(std::abs(e.coeff({2, 0, 0, 0}) - 0.5) < 1e-15);
    CHECK(std::abs(e.coeff({3, 0, 0, 0}) - 1.0 / 6.0) < 1e-15);
}

TEST_CASE("poly_exp rejects a nonzero constant term") {
    SeriesPoly p(1, 3);
    p.add_term({0, 0, 0, 0}, cplx(0.5, 0.0));
    CHECK_THROWS_AS(poly_exp(p), std::invalid_argument);
}

TEST_CASE("exp(x+y) exp(-x-y) = 1 within the degree bound") {
    SeriesPoly p(2, 6), q(2, 6);
    p.add_term({1, 0, 0, 0}, cplx(1.0, 0.0));
    p.add_term({0, 1, 0, 0}, cplx(1.0, 0.0));
    q.add_term({1, 0, 0, 0}, cplx(-1.0, 0.0));
    q.add_term({0, 1, 0, 0}, cplx(-1.0, 0.0));
    const SeriesPoly prod = poly_mul(poly_exp(p), poly_exp(q));
    for (const auto& [key, c] : prod.terms()) {
        const cplx want = (key == 0) ? cplx(1.0, 0.0) : cplx(0.0, 0.0);
        CHECK(std::abs(c - want) < 1e-12);
    }
}

TEST_CASE("poly_exp(p+q) = poly_exp(p) poly_exp(q) within truncation") {
    std::mt19937 rng(99u);
    std::uniform_real_distribution<double> coef(-1.0, 1.0);
    SeriesPoly p(2, 6), q(2, 6);
    p.add_term({1, 0, 0, 0}, cplx(coef(rng), coef(rng)));
    p.add_term({1, 1, 0, 0}, cplx(coef(rng), coef(rng)));
    q.add_term({0, 1, 0, 0}, cplx(coef(rng), coef(rng)));
    q.add_term({2, 0, 0, 0}, cplx(coef(rng), coef(rng)));
    const SeriesPoly lhs = poly_exp(poly_add(p, q));
    const SeriesPoly rhs = poly_mul(poly_exp(p), poly_exp(q));
    for (const auto& [key, c] : lhs.terms()) CHECK(std::abs(c - rhs.coeff(SeriesPoly::unpack(key))) < 1e-12);
    for (const auto& [key, c] : rhs.terms()) CHECK(std::abs(c - lhs.coeff(SeriesPoly::unpack(key))) < 1e-12);
}

TEST_CASE("hermite2 seeds and low orders") {
    CHECK(hermite2(0, 0, cplx(2, 1), cplx(-1, 3)) == cplx(1.0, 0.0));
    const cplx x(0.3, -1.1), y(1.7, 0.2);
    CHECK(std::abs(hermite2(1, 0, x, y) - x) < 1e-15);
    CHECK(std::abs(hermite2(0, 3, x, y) - y * y * y) < 1e-14);
    CHECK(std::abs(hermite2(1, 1, x, y) - (x * y + 1.0)) < 1e-14);
    CHECK(std::abs(hermite2(2, 1, x, y) - (x * x * y + 2.0 * x)) < 1e-13);
}

TEST_CASE("hermite2 recurrence matches the generating-function oracle") {
    std::mt19937 rng(4321u);
    std::uniform_real_distribution<double> coord(-2.0, 2.0);
    for (int trial = 0; trial < 20; ++trial) {
        const cplx x(coord(rng), coord(rng));
        const cplx y(coord(rng), coord(rng));
        SeriesPoly p(2, 20);
        p.add_term({1, 0, 0, 0}, x);
        p.add_term({0, 1, 0, 0}, y);
        p.add_term({1, 1, 0, 0}, cplx(1.0, 0.0));
        const SeriesPoly gen = poly_exp(p);
        for (int m = 0; m <= 10; ++m)
            for (int n = 0; n <= 10; ++n) {
                const cplx oracle = gen.coeff({m, n, 0, 0}) * factorial(m) * factorial(n);
                const cplx rec = hermite2(m, n, x, y);
                CHECK(std::abs(rec - oracle) <= 1e-10 * (1.0 + std::abs(oracle)));
            }
    }
}

TEST_CASE("column recurrence H_{m,n+1} = y H_{m,n} + m H_{m-1,n} holds") {
    std::mt19937 rng(11u);
    std::uniform_real_distribution<double> coord(-2.0, 2.0);
    for (int trial = 0; trial < 5; ++trial) {
        const cplx x(coord(rng), coord(rng));
        const cplx y(coord(rng), coord(rng));
        const Hermite2Table t = hermite2_table(9, x, y);
        for (int m = 1; m <= 8; ++m)
            for (int n = 0; n <= 8; ++n) {
                const cplx rhs = y * t(m, n) + static_cast<double>(m) * t(m - 1, n);
                CHECK(std::abs(t(m, n + 1) - rhs) <= 1e-10 * (1.0 + std::abs(rhs)));
            }
    }
}

TEST_CASE("hermite2_table basics and symmetry") {
    const Hermite2Table t0 = hermite2_table(0, cplx(5, 5), cplx(-3, 2));
    CHECK(t0(0, 0) == cplx(1.0, 0.0));

    const Hermite2Table t = hermite2_table(2, cplx(1, 0), cplx(1, 0));
    CHECK(std::abs(t(1, 1) - 2.0) < 1e-15);

    const cplx x(0.4, 0.9), y(-1.2, 0.1);
    const Hermite2Table a = hermite2_table(6, x, y);
    const Hermite2Table b = hermite2_table(6, y, x);
    for (int m = 0; m <= 6; ++m)
        for (int n = 0; n <= 6; ++n) CHECK(std::abs(a(m, n) - b(n, m)) < 1e-11 * (1.0 + std::abs(a(m, n))));

    for (int m = 0; m <= 6; ++m)
        for (int n = 0; n <= 6; ++n) CHECK(std::abs(a(m, n) - hermite2(m, n, x, y)) < 1e-13 * (1.0 + std::abs(a(m, n))));
}
