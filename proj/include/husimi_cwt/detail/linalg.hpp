#pragma once
// Dense complex matrix helpers for the operator-route oracles: a cache-friendly
// complex GEMM (split into four real GEMMs so the compiler vectorizes) and a
// scaling-and-squaring matrix exponential whose Taylor phase walks the sparse
// structure of the generator.

#include <cmath>
#include <complex>
#include <cstddef>
#include <stdexcept>
#include <vector>

namespace husimi_cwt::detail {

using cplx = std::complex<double>;

// C = A * B, all n x n row-major.
inline void matmul(int n, const std::vector<cplx>& A, const std::vector<cplx>& B, std::vector<cplx>& C) {
    const size_t nn = static_cast<size_t>(n) * static_cast<size_t>(n);
    if (A.size() != nn || B.size() != nn) throw std::invalid_argument("matmul: size mismatch");
    std::vector<double> ar(nn), ai(nn), br(nn), bi(nn), cr(nn, 0.0), ci(nn, 0.0);
    for (size_t k = 0; k < nn; ++k) {
        ar[k] = A[k].real();
        ai[k] = A[k].imag();
        br[k] = B[k].real();
        bi[k] = B[k].imag();
    }
    for (int i = 0; i < n; ++i) {
        const size_t in = static_cast<size_t>(i) * static_cast<size_t>(n);
        for (int k = 0; k < n; ++k) {
            const size_t kn = static_cast<size_t>(k) * static_cast<size_t>(n);
            const double arik = ar[in + static_cast<size_t>(k)];
            const double aiik = ai[in + static_cast<size_t>(k)];
            if (arik == 0.0 && aiik == 0.0) continue;
            const double* brk = &br[kn];
            const double* bik = &bi[kn];
            double* cri = &cr[in];
            double* cii = &ci[in];
            for (int j = 0; j < n; ++j) {
                cri[j] += arik * brk[j] - aiik * bik[j];
                cii[j] += arik * bik[j] + aiik * brk[j];
            }
        }
    }
    C.resize(nn);
    for (size_t k = 0; k < nn; ++k) C[k] = cplx(cr[k], ci[k]);
}

inline double one_norm(int n, const std::vector<cplx>& A) {
    double best = 0.0;
    for (int j = 0; j < n; ++j) {
        double col = 0.0;
        for (int i = 0; i < n; ++i) col += std::abs(A[static_cast<size_t>(i) * static_cast<size_t>(n) + static_cast<size_t>(j)]);
        if (col > best) best = col;
    }
    return best;
}

// exp(A) by scaling and squaring; Taylor terms are accumulated with
// sparse(A) x dense products, series tolerance 1e-14 relative.
inline std::vector<cplx> expm(int n, const std::vector<cplx>& A) {
    const size_t nn = static_cast<size_t>(n) * static_cast<size_t>(n);
    if (A.size() != nn) throw std::invalid_argument("expm: size mismatch");

    const double norm = one_norm(n, A);
    int s = 0;
    double theta = norm;
    while (theta > 4.0 && s < 60) {
        theta *= 0.5;
        ++s;
    }
    const double scale = std::ldexp(1.0, -s);

    // sparse triplets of the scaled generator
    struct Trip {
        int i, j;
        cplx v;
    };
    std::vector<Trip> sp;
    sp.reserve(256);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            const cplx v = A[static_cast<size_t>(i) * static_cast<size_t>(n) + static_cast<size_t>(j)] * scale;
            if (v != cplx(0.0, 0.0)) sp.push_back({i, j, v});
        }

    std::vector<cplx> E(nn, cplx(0.0, 0.0)), T(nn, cplx(0.0, 0.0)), Tn(nn);
    for (int i = 0; i < n; ++i) {
        E[static_cast<size_t>(i) * static_cast<size_t>(n) + static_cast<size_t>(i)] = cplx(1.0, 0.0);
        T[static_cast<size_t>(i) * static_cast<size_t>(n) + static_cast<size_t>(i)] = cplx(1.0, 0.0);
    }
    for (int k = 1; k <= 80; ++k) {
        std::fill(Tn.begin(), Tn.end(), cplx(0.0, 0.0));
        const double invk = 1.0 / static_cast<double>(k);
        for (const Trip& t : sp) {
            const cplx w = t.v * invk;
            const cplx* trow = &T[static_cast<size_t>(t.j) * static_cast<size_t>(n)];
            cplx* orow = &Tn[static_cast<size_t>(t.i) * static_cast<size_t>(n)];
            for (int j = 0; j < n; ++j) orow[j] += w * trow[j];
        }
        T.swap(Tn);
        double tmax = 0.0, emax = 0.0;
        for (size_t q = 0; q < nn; ++q) {
            E[q] += T[q];
            const double ta = std::abs(T[q]);
            const double ea = std::abs(E[q]);
            if (ta > tmax) tmax = ta;
            if (ea > emax) emax = ea;
        }
        if (tmax <= 1e-14 * (emax > 0.0 ? emax : 1.0) && k >= 4) break;
    }
    for (int k = 0; k < s; ++k) {
        matmul(n, E, E, Tn);
        E.swap(Tn);
    }
    return E;
}

}  // namespace husimi_cwt::detail
