#pragma once

// Dense complex kernels shared by every other header: Kronecker products,
// direct sums, structured two-site updates and range extraction.
//
// Composite index convention (used everywhere in zfock): for a product
// space A (x) B the pair (i, j) sits at i * dim(B) + j, rows and columns
// alike. Row = output slot.

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace zfock
{

using Complex = std::complex<double>;
using CMatrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;
using Index = Eigen::Index;

/// Raised for every violated precondition in the library.
class Error : public std::runtime_error
{
public:
    using std::runtime_error::runtime_error;
};

inline constexpr double default_tol = 1e-10;

inline CMatrix identity(Index n) { return CMatrix::Identity(n, n); }

inline Index ipow(Index base, int exp)
{
    Index r = 1;
    for (int i = 0; i < exp; ++i) r *= base;
    return r;
}

inline bool all_finite(const CMatrix& m)
{
    for (Index j = 0; j < m.cols(); ++j)
        for (Index i = 0; i < m.rows(); ++i)
            if (!std::isfinite(m(i, j).real()) || !std::isfinite(m(i, j).imag())) return false;
    return true;
}

/// Kronecker product a (x) b in the row-major composite convention.
inline CMatrix tensor_product(const CMatrix& a, const CMatrix& b)
{
    CMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
    for (Index j = 0; j < a.cols(); ++j)
        for (Index i = 0; i < a.rows(); ++i)
            out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    return out;
}

inline CMatrix tensor_power(const CMatrix& a, int n)
{
    CMatrix out = CMatrix::Identity(1, 1);
    for (int k = 0; k < n; ++k) out = tensor_product(out, a);
    return out;
}

/// Block-diagonal a (+) b.
inline CMatrix direct_sum(const CMatrix& a, const CMatrix& b)
{
    if (a.rows() != a.cols() || b.rows() != b.cols())
        throw Error("direct_sum: inputs must be square");
    CMatrix out = CMatrix::Zero(a.rows() + b.rows(), a.rows() + b.rows());
    out.topLeftCorner(a.rows(), a.cols()) = a;
    out.bottomRightCorner(b.rows(), b.cols()) = b;
    return out;
}

inline double frobenius(const CMatrix& m) { return m.size() == 0 ? 0.0 : m.norm(); }

/// Largest singular value.
inline double op_norm(const CMatrix& m)
{
    if (m.size() == 0) return 0.0;
    const double fro = m.norm();
    if (fro == 0.0) return 0.0;
    if (m.rows() == 1 || m.cols() == 1) return fro;
    // eigenvalues of the smaller Gram matrix are cheaper than an SVD
    CMatrix g = m.rows() <= m.cols() ? CMatrix(m * m.adjoint()) : CMatrix(m.adjoint() * m);
    Eigen::SelfAdjointEigenSolver<CMatrix> es(g, Eigen::EigenvaluesOnly);
    return std::sqrt(std::max(0.0, es.eigenvalues().maxCoeff()));
}

inline double max_abs(const CMatrix& m) { return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff(); }

inline double unitarity_residual(const CMatrix& m)
{
    return frobenius(m.adjoint() * m - identity(m.cols()));
}

/// Numerical rank from singular values above `tol` (absolute).
inline Index numerical_rank(const CMatrix& m, double tol)
{
    if (m.size() == 0) return 0;
    Eigen::JacobiSVD<CMatrix> svd(m);
    Index r = 0;
    for (Index i = 0; i < svd.singularValues().size(); ++i)
        if (svd.singularValues()(i) > tol) ++r;
    return r;
}

/// Columns form an orthonormal basis of the range of the projector `p`.
/// Eigenvalues are classified against 1/2; any eigenvalue farther than
/// `tol` from {0, 1} means `p` is not a projector at this tolerance.
inline CMatrix orthonormal_range_basis(const CMatrix& p, double tol)
{
    if (p.rows() != p.cols()) throw Error("orthonormal_range_basis: matrix must be square");
    if (p.rows() == 0) return CMatrix(0, 0);
    const double herm = frobenius(p - p.adjoint());
    if (herm > tol)
        throw Error("orthonormal_range_basis: matrix not self-adjoint (residual " + std::to_string(herm) + ")");
    CMatrix sym = 0.5 * (p + p.adjoint());
    Eigen::SelfAdjointEigenSolver<CMatrix> es(sym);
    if (es.info() != Eigen::Success) throw Error("orthonormal_range_basis: eigensolver failed");
    const auto& ev = es.eigenvalues();
    std::vector<Index> keep;
    for (Index i = 0; i < ev.size(); ++i)
    {
        const double v = ev(i);
        if (std::min(std::abs(v), std::abs(v - 1.0)) > tol)
            throw Error("orthonormal_range_basis: eigenvalue " + std::to_string(v) + " is not within tol of {0,1}");
        if (v > 0.5) keep.push_back(i);
    }
    CMatrix basis(p.rows(), static_cast<Index>(keep.size()));
    for (std::size_t k = 0; k < keep.size(); ++k) basis.col(static_cast<Index>(k)) = es.eigenvectors().col(keep[k]);
    return basis;
}

/// In-place x <- (1_{D^slot} (x) g (x) 1_{D^(n-slot-2)}) x for a D^2 x D^2
/// matrix g acting on tensor slots (slot, slot+1), 0-based. Rows of x
/// index (C^D)^{(x) n}.
inline void apply_two_site_left(const CMatrix& g, Index d, int n, int slot, CMatrix& x)
{
    const Index pair = d * d;
    const Index right = ipow(d, n - slot - 2);
    const Index left = ipow(d, slot);
    const Index block = pair * right;
    if (x.rows() != left * block) throw Error("apply_two_site_left: row dimension mismatch");
    CMatrix tmp(block, x.cols());
    for (Index l = 0; l < left; ++l)
    {
        const Index off = l * block;
        tmp.setZero();
        for (Index q = 0; q < pair; ++q)
        {
            const auto src = x.block(off + q * right, 0, right, x.cols());
            for (Index p = 0; p < pair; ++p)
            {
                const Complex c = g(p, q);
                if (c != Complex(0.0)) tmp.block(p * right, 0, right, x.cols()) += c * src;
            }
        }
        x.block(off, 0, block, x.cols()) = tmp;
    }
}

/// In-place x <- x (1 (x) g (x) 1), the column counterpart of apply_two_site_left.
inline void apply_two_site_right(const CMatrix& g, Index d, int n, int slot, CMatrix& x)
{
    const Index pair = d * d;
    const Index right = ipow(d, n - slot - 2);
    const Index left = ipow(d, slot);
    const Index block = pair * right;
    if (x.cols() != left * block) throw Error("apply_two_site_right: column dimension mismatch");
    CMatrix tmp(x.rows(), block);
    for (Index l = 0; l < left; ++l)
    {
        const Index off = l * block;
        tmp.setZero();
        for (Index q = 0; q < pair; ++q)
        {
            const auto src = x.block(0, off + q * right, x.rows(), right);
            for (Index p = 0; p < pair; ++p)
            {
                const Complex c = g(q, p);
                if (c != Complex(0.0)) tmp.block(0, p * right, x.rows(), right) += c * src;
            }
        }
        x.block(0, off, x.rows(), block) = tmp;
    }
}

/// Permutation matrix sending basis vector `from` to basis vector images[from].
inline CMatrix permutation_matrix(const std::vector<Index>& images)
{
    const auto n = static_cast<Index>(images.size());
    CMatrix m = CMatrix::Zero(n, n);
    for (Index j = 0; j < n; ++j) m(images[static_cast<std::size_t>(j)], j) = 1.0;
    return m;
}

} // namespace zfock
