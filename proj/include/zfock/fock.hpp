#pragma once

// Truncated S-symmetric Fock space. Levels n = 0..N are stored as
// orthonormal bases B_n of range(P_n) inside (C^D)^{(x) n}, D the lifted
// one-particle dimension; every operator lives in these level coordinates.
//
// Creation puts the new particle in the first tensor slot:
//   z*(psi) v = sqrt(n+1) P_{n+1} (psi (x) v).

#include <string>
#include <vector>

#include "symgroup.hpp"

namespace zfock
{

struct FockOptions
{
    double tol = default_tol;
    Index ambient_cap = 4096;  // largest (base_dim)^N built densely
};

struct TruncatedFock
{
    RMatrix r;
    int max_level = 0;
    std::vector<CMatrix> bases;  // bases[n]: D^n x m_n
    std::vector<Index> level_dims;

    Index base_dim() const { return r.base_dim; }

    Index total_dim() const
    {
        Index t = 0;
        for (auto m : level_dims) t += m;
        return t;
    }

    Index offset(int level) const
    {
        Index t = 0;
        for (int n = 0; n < level; ++n) t += level_dims[static_cast<std::size_t>(n)];
        return t;
    }

    Index dim(int level) const { return level_dims[static_cast<std::size_t>(level)]; }
};

inline TruncatedFock build_truncated_fock(const RMatrix& r, int max_level, const FockOptions& opt = {})
{
    if (max_level < 0) throw Error("build_truncated_fock: negative truncation level");
    require_involutive(r, opt.tol, "build_truncated_fock");
    if (ipow(r.base_dim, max_level) > opt.ambient_cap)
        throw Error("build_truncated_fock: (base_dim)^N = " + std::to_string(ipow(r.base_dim, max_level)) +
                    " exceeds the dense-size cap " + std::to_string(opt.ambient_cap));
    TruncatedFock f;
    f.r = r;
    f.max_level = max_level;
    const auto projs = recursive_projectors(r, max_level, opt.tol);
    for (int n = 0; n <= max_level; ++n)
    {
        f.bases.push_back(orthonormal_range_basis(projs[static_cast<std::size_t>(n)], opt.tol));
        f.level_dims.push_back(f.bases.back().cols());
    }
    return f;
}

enum class LadderKind { create, annihilate };

struct LadderOperator
{
    LadderKind kind = LadderKind::create;
    CVector psi;
    // create: blocks[n] is m_{n+1} x m_n; annihilate: blocks[n] is m_n x m_{n+1}
    std::vector<CMatrix> blocks;
};

/// C_n = sqrt(n+1) B_{n+1}^* (psi (x) B_n), n = 0..N-1.
inline std::vector<CMatrix> creation_blocks(const TruncatedFock& f, const CVector& psi)
{
    if (psi.size() != f.base_dim())
        throw Error("ladder_operator: vector length " + std::to_string(psi.size()) + " differs from base_dim " +
                    std::to_string(f.base_dim()));
    std::vector<CMatrix> out;
    for (int n = 0; n < f.max_level; ++n)
    {
        const CMatrix lifted = tensor_product(psi, f.bases[static_cast<std::size_t>(n)]);
        out.push_back(std::sqrt(static_cast<double>(n + 1)) * (f.bases[static_cast<std::size_t>(n + 1)].adjoint() * lifted));
    }
    return out;
}

inline LadderOperator ladder_operator(const TruncatedFock& f, const CVector& psi, LadderKind kind)
{
    LadderOperator op;
    op.kind = kind;
    op.psi = psi;
    op.blocks = creation_blocks(f, psi);
    if (kind == LadderKind::annihilate)
        for (auto& b : op.blocks) b = b.adjoint().eval();
    return op;
}

inline CVector basis_vector(Index dim, Index k)
{
    CVector v = CVector::Zero(dim);
    v(k) = 1.0;
    return v;
}

/// Creation blocks for every one-particle basis vector: result[label][n].
inline std::vector<std::vector<CMatrix>> basis_creation_blocks(const TruncatedFock& f)
{
    std::vector<std::vector<CMatrix>> out;
    for (Index a = 0; a < f.base_dim(); ++a) out.push_back(creation_blocks(f, basis_vector(f.base_dim(), a)));
    return out;
}

/// A vector of the truncated Fock space supported on a single level.
struct LevelVector
{
    int level = 0;
    CVector coords;
};

inline LevelVector vacuum() { return {0, CVector::Ones(1)}; }

/// U_n : (C^{dh} (x) C^{dl})^{(x) n} -> (C^{dh})^{(x) n} (x) (C^{dl})^{(x) n}.
inline CMatrix disentangle_unitary(Index dh, Index dl, int n)
{
    const Index total = ipow(dh * dl, n);
    const Index lpow = ipow(dl, n);
    std::vector<Index> images(static_cast<std::size_t>(total));
    for (Index idx = 0; idx < total; ++idx)
    {
        Index rest = idx;
        Index hpart = 0;
        Index lpart = 0;
        Index hscale = 1;
        Index lscale = 1;
        // decode from the last slot backwards
        for (int slot = n - 1; slot >= 0; --slot)
        {
            const Index pair = rest % (dh * dl);
            rest /= dh * dl;
            hpart += (pair / dl) * hscale;
            lpart += (pair % dl) * lscale;
            hscale *= dh;
            lscale *= dl;
        }
        images[static_cast<std::size_t>(idx)] = hpart * lpow + lpart;
    }
    return permutation_matrix(images);
}

/// Columns: z*_{a_1} ... z*_{a_n} Omega in level-n coordinates, words
/// (a_1, ..., a_n) in lexicographic order.
inline CMatrix creation_monomials(const std::vector<std::vector<CMatrix>>& blocks, Index labels, int n,
                                  const std::vector<Index>& level_dims)
{
    CMatrix cur = CMatrix::Ones(1, 1);
    for (int k = 0; k < n; ++k)
    {
        const Index rows = level_dims[static_cast<std::size_t>(k + 1)];
        CMatrix next(rows, labels * cur.cols());
        for (Index a = 0; a < labels; ++a)
            next.block(0, a * cur.cols(), rows, cur.cols()) =
                blocks[static_cast<std::size_t>(a)][static_cast<std::size_t>(k)] * cur;
        cur = std::move(next);
    }
    return cur;
}

/// m_n minus the rank of the creation monomials on the vacuum, per level.
inline std::vector<Index> cyclicity_defect(const TruncatedFock& f, double rank_tol = 1e-8)
{
    const auto blocks = basis_creation_blocks(f);
    std::vector<Index> out;
    for (int n = 0; n <= f.max_level; ++n)
    {
        if (f.dim(n) == 0)
        {
            out.push_back(0);
            continue;
        }
        const CMatrix mono = creation_monomials(blocks, f.base_dim(), n, f.level_dims);
        out.push_back(f.dim(n) - numerical_rank(mono, rank_tol));
    }
    return out;
}

/// max_n || sum_k z*(e_k) z(e_k) - n || on levels 0..N.
inline double number_operator_residual(const TruncatedFock& f)
{
    const auto blocks = basis_creation_blocks(f);
    double worst = 0.0;
    for (int n = 1; n <= f.max_level; ++n)
    {
        CMatrix acc = CMatrix::Zero(f.dim(n), f.dim(n));
        for (const auto& b : blocks)
            acc += b[static_cast<std::size_t>(n - 1)] * b[static_cast<std::size_t>(n - 1)].adjoint();
        worst = std::max(worst, frobenius(acc - static_cast<double>(n) * identity(f.dim(n))));
    }
    return worst;
}

/// Level dimensions of a tensor product graded by total particle number.
inline std::vector<Index> convolve_dims(const std::vector<Index>& a, const std::vector<Index>& b, int max_level)
{
    std::vector<Index> out(static_cast<std::size_t>(max_level + 1), 0);
    for (int n = 0; n <= max_level; ++n)
        for (int i = 0; i <= n; ++i)
        {
            const auto ia = static_cast<std::size_t>(i);
            const auto jb = static_cast<std::size_t>(n - i);
            if (ia < a.size() && jb < b.size()) out[static_cast<std::size_t>(n)] += a[ia] * b[jb];
        }
    return out;
}

} // namespace zfock
