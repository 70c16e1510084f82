#pragma once

#include <complex>
#include <cstdint>
#include <vector>

namespace qaoakit {

using cplx = std::complex<double>;
using basis_t = std::uint64_t;

// Default tolerances: state-level checks vs closed-form matrix identities.
inline constexpr double state_tol = 1e-10;
inline constexpr double matrix_tol = 1e-12;

// Dense operators above this dimension are refused rather than approximated.
inline constexpr std::size_t dense_dim_cap = std::size_t{1} << 14;

// Diagonal-phase tables are cached up to this many qubits.
inline constexpr int diag_cache_max_qubits = 20;

struct DenseMatrix {
    std::size_t dim = 0;
    std::vector<cplx> a;  // row-major, a[r * dim + c]

    DenseMatrix() = default;
    explicit DenseMatrix(std::size_t d) : dim(d), a(d * d, cplx{0.0, 0.0}) {}

    cplx& operator()(std::size_t r, std::size_t c) { return a[r * dim + c]; }
    const cplx& operator()(std::size_t r, std::size_t c) const { return a[r * dim + c]; }

    static DenseMatrix identity(std::size_t d) {
        DenseMatrix m(d);
        for (std::size_t i = 0; i < d; ++i) m(i, i) = 1.0;
        return m;
    }
};

DenseMatrix matmul(const DenseMatrix& x, const DenseMatrix& y);
std::vector<cplx> matvec(const DenseMatrix& m, const std::vector<cplx>& v);
double max_abs_diff(const DenseMatrix& x, const DenseMatrix& y);
double frobenius_diff(const DenseMatrix& x, const DenseMatrix& y);
bool is_unitary(const DenseMatrix& m, double tol);
bool is_hermitian(const DenseMatrix& m, double tol);

}  // namespace qaoakit
