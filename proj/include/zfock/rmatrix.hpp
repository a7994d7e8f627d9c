#pragma once

// Constant R-matrices: normal forms, box-sum / box-product, internal-space
// lifts, the dimension-two families and crossing symmetry.
//
// An RMatrix on C^d stores a d^2 x d^2 matrix whose entry at row
// (a*d + b), column (c*d + e) is <e_a (x) e_b, S(e_c (x) e_e)>, i.e.
// S^{ab}_{ce} with 0-based labels.

#include <array>
#include <string>
#include <utility>
#include <vector>

#include "tensor.hpp"

namespace zfock
{

struct RMatrix
{
    Index base_dim = 0;
    CMatrix mat;

    RMatrix() = default;
    RMatrix(Index d, CMatrix m) : base_dim(d), mat(std::move(m))
    {
        if (mat.rows() != d * d || mat.cols() != d * d)
            throw Error("RMatrix: matrix must be d^2 x d^2 (d = " + std::to_string(d) + ")");
        if (!all_finite(mat)) throw Error("RMatrix: non-finite entry");
    }

    /// S^{a b}_{c e}
    Complex operator()(Index a, Index b, Index c, Index e) const
    {
        return mat(a * base_dim + b, c * base_dim + e);
    }
};

struct NormalFormBlock
{
    int sign = 1;
    Index dim = 1;
};

using NormalFormSpec = std::vector<NormalFormBlock>;

struct CheckReport
{
    double unitarity = 0.0;
    double involutivity = 0.0;
    double yang_baxter = 0.0;
    double tol = default_tol;

    bool unitary() const { return unitarity <= tol; }
    bool involutive() const { return involutivity <= tol; }
    bool yang_baxter_ok() const { return yang_baxter <= tol; }
    bool all() const { return unitary() && involutive() && yang_baxter_ok(); }
};

inline RMatrix flip(Index d)
{
    CMatrix m = CMatrix::Zero(d * d, d * d);
    for (Index a = 0; a < d; ++a)
        for (Index b = 0; b < d; ++b) m(a * d + b, b * d + a) = 1.0;
    return {d, m};
}

inline RMatrix scalar_identity(Index d, Complex factor = 1.0)
{
    return {d, factor * identity(d * d)};
}

/// S (+) R (+) flip on (H (+) K)^{(x)2}: S on H(x)H, R on K(x)K and the
/// tensor flip between the mixed sectors H(x)K and K(x)H.
inline RMatrix box_sum(const RMatrix& s, const RMatrix& r)
{
    const Index ds = s.base_dim;
    const Index dr = r.base_dim;
    const Index d = ds + dr;
    CMatrix m = CMatrix::Zero(d * d, d * d);
    auto in_h = [ds](Index x) { return x < ds; };
    for (Index a = 0; a < d; ++a)
        for (Index b = 0; b < d; ++b)
            for (Index c = 0; c < d; ++c)
                for (Index e = 0; e < d; ++e)
                {
                    Complex v = 0.0;
                    if (in_h(c) && in_h(e))
                    {
                        if (in_h(a) && in_h(b)) v = s(a, b, c, e);
                    }
                    else if (!in_h(c) && !in_h(e))
                    {
                        if (!in_h(a) && !in_h(b)) v = r(a - ds, b - ds, c - ds, e - ds);
                    }
                    else if (a == e && b == c)
                    {
                        v = 1.0;
                    }
                    m(a * d + b, c * d + e) = v;
                }
    return {d, m};
}

/// F_2 (S (x) R) F_2 acting on (H (x) K)^{(x)2}, base index h * dim K + k.
inline RMatrix box_product(const RMatrix& s, const RMatrix& r)
{
    const Index ds = s.base_dim;
    const Index dr = r.base_dim;
    const Index d = ds * dr;
    CMatrix m = CMatrix::Zero(d * d, d * d);
    for (Index h1 = 0; h1 < ds; ++h1)
        for (Index h2 = 0; h2 < ds; ++h2)
            for (Index h3 = 0; h3 < ds; ++h3)
                for (Index h4 = 0; h4 < ds; ++h4)
                {
                    const Complex sv = s(h1, h2, h3, h4);
                    if (sv == Complex(0.0)) continue;
                    for (Index k1 = 0; k1 < dr; ++k1)
                        for (Index k2 = 0; k2 < dr; ++k2)
                            for (Index k3 = 0; k3 < dr; ++k3)
                                for (Index k4 = 0; k4 < dr; ++k4)
                                {
                                    const Index row = (h1 * dr + k1) * d + (h2 * dr + k2);
                                    const Index col = (h3 * dr + k3) * d + (h4 * dr + k4);
                                    m(row, col) = sv * r(k1, k2, k3, k4);
                                }
                }
    return {d, m};
}

/// Iterated box-sum of the blocks eps_i * 1 on C^{d_i} (x) C^{d_i}.
inline RMatrix make_normal_form(const NormalFormSpec& spec)
{
    if (spec.empty()) throw Error("make_normal_form: empty block list");
    RMatrix out;
    bool first = true;
    for (const auto& blk : spec)
    {
        if (blk.dim < 1) throw Error("make_normal_form: block dimension must be >= 1");
        if (blk.sign != 1 && blk.sign != -1) throw Error("make_normal_form: block sign must be +1 or -1");
        RMatrix b = scalar_identity(blk.dim, static_cast<double>(blk.sign));
        out = first ? b : box_sum(out, b);
        first = false;
    }
    return out;
}

/// S (box-product) flip on C^m: the R-matrix acting directly on (H (x) L)^{(x)2}.
inline RMatrix lift_with_internal(const RMatrix& s, Index m)
{
    if (m < 1) throw Error("lift_with_internal: internal dimension must be >= 1");
    if (m == 1) return s;
    return box_product(s, flip(m));
}

inline double yang_baxter_residual(const RMatrix& s)
{
    const Index d = s.base_dim;
    const CMatrix s1 = tensor_product(s.mat, identity(d));
    const CMatrix s2 = tensor_product(identity(d), s.mat);
    return frobenius(s1 * s2 * s1 - s2 * s1 * s2);
}

inline CheckReport check_rmatrix(const RMatrix& s, double tol = default_tol)
{
    CheckReport rep;
    rep.tol = tol;
    const CMatrix id = identity(s.mat.rows());
    rep.unitarity = frobenius(s.mat.adjoint() * s.mat - id);
    rep.involutivity = frobenius(s.mat * s.mat - id);
    rep.yang_baxter = yang_baxter_residual(s);
    return rep;
}

inline void require_involutive(const RMatrix& s, double tol, const char* where)
{
    const double res = frobenius(s.mat * s.mat - identity(s.mat.rows()));
    if (res > tol)
        throw Error(std::string(where) + ": R-matrix is not involutive (residual " + std::to_string(res) + ")");
}

/// Crossing partner: hat S^{ab}_{ce} = S^{ca}_{eb}.
inline RMatrix crossing_partner(const RMatrix& s)
{
    const Index d = s.base_dim;
    CMatrix m(d * d, d * d);
    for (Index a = 0; a < d; ++a)
        for (Index b = 0; b < d; ++b)
            for (Index c = 0; c < d; ++c)
                for (Index e = 0; e < d; ++e) m(a * d + b, c * d + e) = s(c, a, e, b);
    return {d, m};
}

/// Entrywise distance between S and its crossing partner; zero iff crossing symmetric.
inline double crossing_residual(const RMatrix& s) { return max_abs(crossing_partner(s).mat - s.mat); }

enum class Dim2Kind { R1, R2, R3, R4 };

struct Dim2Params
{
    Complex p{1.0, 0.0};
    Complex q{1.0, 0.0};
    Complex r{1.0, 0.0};
    Complex s{1.0, 0.0};
};

inline Dim2Kind parse_dim2_kind(const std::string& name)
{
    if (name == "R1") return Dim2Kind::R1;
    if (name == "R2") return Dim2Kind::R2;
    if (name == "R3") return Dim2Kind::R3;
    if (name == "R4") return Dim2Kind::R4;
    throw Error("unknown dimension-2 family '" + name + "'");
}

/// The four dimension-two representatives (rows/columns ordered 00, 01, 10, 11).
inline RMatrix make_dim2(Dim2Kind kind, const Dim2Params& prm, double tol = default_tol)
{
    auto unit = [tol](Complex z, const char* what) {
        if (std::abs(std::abs(z) - 1.0) > tol)
            throw Error(std::string("make_dim2: parameter ") + what + " must have unit modulus");
    };
    CMatrix m = CMatrix::Zero(4, 4);
    switch (kind)
    {
    case Dim2Kind::R1:
        unit(prm.q, "q");
        m = prm.q * identity(4);
        break;
    case Dim2Kind::R2:
        unit(prm.p, "p");
        unit(prm.q, "q");
        unit(prm.r, "r");
        unit(prm.s, "s");
        m(0, 0) = prm.p;
        m(1, 2) = prm.q;
        m(2, 1) = prm.r;
        m(3, 3) = prm.s;
        break;
    case Dim2Kind::R3:
        unit(prm.q, "q");
        unit(prm.p * prm.r, "p*r");
        m(0, 3) = prm.p;
        m(1, 1) = prm.q;
        m(2, 2) = prm.q;
        m(3, 0) = prm.r;
        break;
    case Dim2Kind::R4:
    {
        unit(prm.q, "q");
        const Complex f = prm.q / std::sqrt(2.0);
        m << 1.0, 1.0, 0.0, 0.0,
            -1.0, 1.0, 0.0, 0.0,
            0.0, 0.0, 1.0, -1.0,
            0.0, 0.0, 1.0, 1.0;
        m *= f;
        break;
    }
    }
    return {2, m};
}

/// (Q (x) Q) S (Q* (x) Q*).
inline RMatrix conjugate(const RMatrix& s, const CMatrix& q, double tol = default_tol)
{
    if (q.rows() != s.base_dim || q.cols() != s.base_dim)
        throw Error("conjugate: Q must be d x d");
    const double u = unitarity_residual(q);
    if (u > tol) throw Error("conjugate: Q is not unitary (residual " + std::to_string(u) + ")");
    const CMatrix qq = tensor_product(q, q);
    return {s.base_dim, qq * s.mat * qq.adjoint()};
}

/// Basis permutation identifying ((H (+) K) (x) L)^{(x)2} with (H~ (+) K~)^{(x)2},
/// where H~ = H (x) L. Maps the composite index of the left space to the
/// composite index of the right space.
inline CMatrix distributivity_permutation(Index dh, Index dk, Index m)
{
    const Index one = (dh + dk) * m;
    std::vector<Index> single(static_cast<std::size_t>(one));
    for (Index x = 0; x < dh + dk; ++x)
        for (Index l = 0; l < m; ++l)
        {
            const Index from = x * m + l;
            const Index to = x < dh ? x * m + l : dh * m + (x - dh) * m + l;
            single[static_cast<std::size_t>(from)] = to;
        }
    std::vector<Index> pair(static_cast<std::size_t>(one * one));
    for (Index a = 0; a < one; ++a)
        for (Index b = 0; b < one; ++b)
            pair[static_cast<std::size_t>(a * one + b)] =
                single[static_cast<std::size_t>(a)] * one + single[static_cast<std::size_t>(b)];
    return permutation_matrix(pair);
}

/// || P lift(S boxplus R, m) P* - lift(S, m) boxplus lift(R, m) ||.
inline double distributivity_residual(const RMatrix& s, const RMatrix& r, Index m)
{
    const CMatrix p = distributivity_permutation(s.base_dim, r.base_dim, m);
    const RMatrix lhs = lift_with_internal(box_sum(s, r), m);
    const RMatrix rhs = box_sum(lift_with_internal(s, m), lift_with_internal(r, m));
    return frobenius(p * lhs.mat * p.adjoint() - rhs.mat);
}

} // namespace zfock
