#pragma once

#include <cmath>
#include <complex>
#include <random>
#include <vector>

#include "qaoakit/state.hpp"

namespace qaoakit::testing {

// Complex Hermitian Jacobi eigensolver, used as an independent oracle for
// matrix exponentials: A = V diag(lambda) V^dagger.
struct EigenResult {
    std::vector<double> values;
    DenseMatrix vectors;  // columns
};

inline EigenResult jacobi_eigen(DenseMatrix a) {
    const std::size_t n = a.dim;
    DenseMatrix v = DenseMatrix::identity(n);
    for (int sweep = 0; sweep < 200; ++sweep) {
        double off = 0.0;
        std::size_t p = 0, q = 1;
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t j = i + 1; j < n; ++j) {
                if (std::abs(a(i, j)) > off) {
                    off = std::abs(a(i, j));
                    p = i;
                    q = j;
                }
            }
        }
        if (off < 1e-14) break;
        const cplx z = a(p, q);
        const double az = std::abs(z);
        const double phi = std::arg(z);
        const double app = a(p, p).real(), aqq = a(q, q).real();
        double t;
        if (std::abs(app - aqq) < 1e-300) {
            t = 1.0;
        } else {
            const double tau = (app - aqq) / (2 * az);
            t = (tau >= 0 ? 1.0 : -1.0) / (std::abs(tau) + std::sqrt(tau * tau + 1));
        }
        const double c = 1.0 / std::sqrt(t * t + 1), s = t * c;
        const cplx gpq = -s * std::polar(1.0, phi);
        const cplx gqp = s * std::polar(1.0, -phi);
        // A <- G^dagger A G, V <- V G with G = I except the (p,q) block.
        for (std::size_t k = 0; k < n; ++k) {
            const cplx akp = a(k, p), akq = a(k, q);
            a(k, p) = akp * c + akq * gqp;
            a(k, q) = akp * gpq + akq * c;
        }
        for (std::size_t k = 0; k < n; ++k) {
            const cplx apk = a(p, k), aqk = a(q, k);
            a(p, k) = c * apk + std::conj(gqp) * aqk;
            a(q, k) = std::conj(gpq) * apk + c * aqk;
        }
        for (std::size_t k = 0; k < n; ++k) {
            const cplx vkp = v(k, p), vkq = v(k, q);
            v(k, p) = vkp * c + vkq * gqp;
            v(k, q) = vkp * gpq + vkq * c;
        }
    }
    EigenResult res;
    res.vectors = v;
    for (std::size_t i = 0; i < n; ++i) res.values.push_back(a(i, i).real());
    return res;
}

// exp(-i theta H) through the eigendecomposition oracle.
inline DenseMatrix expm_eigen_oracle(const DenseMatrix& h, double theta) {
    const EigenResult eig = jacobi_eigen(h);
    const std::size_t n = h.dim;
    DenseMatrix out(n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            cplx acc = 0.0;
            for (std::size_t k = 0; k < n; ++k) {
                acc += eig.vectors(i, k) * std::polar(1.0, -theta * eig.values[k]) *
                       std::conj(eig.vectors(j, k));
            }
            out(i, j) = acc;
        }
    }
    return out;
}

inline AmplitudeVector random_state(int n_qubits, std::mt19937_64& rng) {
    AmplitudeVector s(n_qubits);
    std::normal_distribution<double> gauss(0.0, 1.0);
    double norm = 0.0;
    for (auto& a : s.amps) {
        a = cplx{gauss(rng), gauss(rng)};
        norm += std::norm(a);
    }
    norm = std::sqrt(norm);
    for (auto& a : s.amps) a /= norm;
    return s;
}

}  // namespace qaoakit::testing
