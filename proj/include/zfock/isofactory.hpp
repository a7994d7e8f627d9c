#pragma once

// Equivalence of R-matrices and their Fock representations: explicit
// intertwiners, character comparison, the factorisation unitary
//   V : F(S~ boxplus R~) -> F(S~) (x) F(R~)
// and probes that tell CAR-like from CCR-like exchange patterns.

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "fock.hpp"
#include "zamrep.hpp"

namespace zfock
{

// ---------------------------------------------------------------------------
// Intertwiners
// ---------------------------------------------------------------------------

enum class IntertwinerKind { type1, type2, type3 };

struct IntertwinerFamily
{
    std::vector<CMatrix> levels;  // Y_0 .. Y_N

    int max_level() const { return static_cast<int>(levels.size()) - 1; }
};

namespace detail
{

inline void require_unitary(const CMatrix& q, double tol, const char* where)
{
    if (q.rows() != q.cols()) throw Error(std::string(where) + ": Q must be square");
    const double u = unitarity_residual(q);
    if (u > tol) throw Error(std::string(where) + ": Q is not unitary (residual " + std::to_string(u) + ")");
}

inline double type2_commutator(const RMatrix& s, const CMatrix& q)
{
    const CMatrix qq = tensor_product(q, q);
    return frobenius(s.mat * qq - qq * s.mat);
}

} // namespace detail

/// The R-matrix that the chosen intertwiner maps S to.
inline RMatrix intertwiner_target(IntertwinerKind kind, const std::optional<CMatrix>& q, const RMatrix& s,
                                  double tol = default_tol)
{
    const Index d = s.base_dim;
    switch (kind)
    {
    case IntertwinerKind::type1:
        if (!q) throw Error("intertwiner: type1 needs Q");
        return conjugate(s, *q, tol);
    case IntertwinerKind::type2:
    {
        if (!q) throw Error("intertwiner: type2 needs Q");
        detail::require_unitary(*q, tol, "intertwiner");
        const CMatrix w = tensor_product(identity(d), *q);
        return {d, w * s.mat * w.adjoint()};
    }
    case IntertwinerKind::type3:
    {
        const CMatrix f = flip(d).mat;
        return {d, f * s.mat * f};
    }
    }
    throw Error("intertwiner: unknown kind");
}

/// Y_n for the three explicit families:
///   type1: Q^{(x) n}
///   type2: 1 (x) Q (x) Q^2 (x) ... (x) Q^{n-1}, needs [S, Q (x) Q] = 0
///   type3: D^{FSF}(iota)^{-1} D^F(iota), iota the total inversion
inline CMatrix intertwiner(IntertwinerKind kind, const std::optional<CMatrix>& q, const RMatrix& s, int n,
                           double tol = default_tol)
{
    if (n < 0) throw Error("intertwiner: negative level");
    const Index d = s.base_dim;
    switch (kind)
    {
    case IntertwinerKind::type1:
        if (!q) throw Error("intertwiner: type1 needs Q");
        if (q->rows() != d) throw Error("intertwiner: Q must be d x d");
        detail::require_unitary(*q, tol, "intertwiner");
        return tensor_power(*q, n);
    case IntertwinerKind::type2:
    {
        if (!q) throw Error("intertwiner: type2 needs Q");
        if (q->rows() != d) throw Error("intertwiner: Q must be d x d");
        detail::require_unitary(*q, tol, "intertwiner");
        const double c = detail::type2_commutator(s, *q);
        if (c > tol) throw Error("intertwiner: type2 needs [S, Q (x) Q] = 0 (residual " + std::to_string(c) + ")");
        CMatrix y = CMatrix::Ones(1, 1);
        CMatrix qk = identity(d);
        for (int k = 0; k < n; ++k)
        {
            y = tensor_product(y, qk);
            qk = (qk * *q).eval();
        }
        return y;
    }
    case IntertwinerKind::type3:
    {
        if (n < 2) return identity(ipow(d, n));
        const auto iota = Permutation::total_inversion(n);
        const RMatrix fsf = intertwiner_target(IntertwinerKind::type3, std::nullopt, s, tol);
        const CMatrix dfsf = rep_permutation(RepresentationContext(fsf, n, tol), iota);
        const CMatrix dflip = rep_permutation(RepresentationContext(flip(d), n, tol), iota);
        return dfsf.adjoint() * dflip;
    }
    }
    throw Error("intertwiner: unknown kind");
}

inline IntertwinerFamily intertwiner_family(IntertwinerKind kind, const std::optional<CMatrix>& q, const RMatrix& s,
                                            int max_level, double tol = default_tol)
{
    IntertwinerFamily fam;
    for (int n = 0; n <= max_level; ++n) fam.levels.push_back(intertwiner(kind, q, s, n, tol));
    return fam;
}

struct IntertwinerCheck
{
    double residual = 0.0;   // max ||Y_n D^S(t_i) - D^R(t_i) Y_n||
    double unitarity = 0.0;  // max ||Y_n^* Y_n - 1||
};

inline IntertwinerCheck verify_intertwiner_full(const IntertwinerFamily& y, const RMatrix& s, const RMatrix& r)
{
    if (s.base_dim != r.base_dim) throw Error("verify_intertwiner: base dimensions differ");
    const Index d = s.base_dim;
    IntertwinerCheck out;
    for (int n = 0; n <= y.max_level(); ++n)
    {
        const CMatrix& yn = y.levels[static_cast<std::size_t>(n)];
        const Index dim = ipow(d, n);
        if (yn.rows() != dim || yn.cols() != dim)
            throw Error("verify_intertwiner: level " + std::to_string(n) + " has the wrong size");
        out.unitarity = std::max(out.unitarity, unitarity_residual(yn));
        for (int i = 0; i + 1 < n; ++i)
        {
            CMatrix lhs = yn;
            apply_two_site_right(s.mat, d, n, i, lhs);
            CMatrix rhs = yn;
            apply_two_site_left(r.mat, d, n, i, rhs);
            out.residual = std::max(out.residual, frobenius(lhs - rhs));
        }
    }
    return out;
}

inline double verify_intertwiner(const IntertwinerFamily& y, const RMatrix& s, const RMatrix& r)
{
    return verify_intertwiner_full(y, s, r).residual;
}

// ---------------------------------------------------------------------------
// Characters
// ---------------------------------------------------------------------------

struct CharacterLevel
{
    int n = 0;
    bool equivalent = true;
    double max_deviation = 0.0;
    std::vector<std::vector<int>> classes;
    std::vector<Complex> left;
    std::vector<Complex> right;
};

struct CharacterReport
{
    std::vector<CharacterLevel> levels;

    bool equivalent() const
    {
        for (const auto& l : levels)
            if (!l.equivalent) return false;
        return true;
    }
};

inline Complex character(const RepresentationContext& ctx, const Permutation& pi)
{
    return rep_permutation(ctx, pi).trace();
}

/// Compares tr D^S and tr D^R on one representative per conjugacy class.
inline CharacterReport characters_equivalent(const RMatrix& s, const RMatrix& r, int n_max, double tol = 1e-8)
{
    CharacterReport rep;
    for (int n = 1; n <= n_max; ++n)
    {
        const RepresentationContext cs(s, n);
        const RepresentationContext cr(r, n);
        CharacterLevel lvl;
        lvl.n = n;
        for (const auto& type : partitions(n))
        {
            const auto pi = cycle_type_representative(type);
            const Complex a = character(cs, pi);
            const Complex b = character(cr, pi);
            lvl.classes.push_back(type);
            lvl.left.push_back(a);
            lvl.right.push_back(b);
            lvl.max_deviation = std::max(lvl.max_deviation, std::abs(a - b));
        }
        lvl.equivalent = lvl.max_deviation <= tol;
        rep.levels.push_back(std::move(lvl));
    }
    return rep;
}

// ---------------------------------------------------------------------------
// Factorisation unitary
// ---------------------------------------------------------------------------

/// Graded tensor product F(S) (x) F(R) truncated at total particle number N.
/// Level n is the direct sum over i = 0..n of F_S(i) (x) F_R(n-i).
struct ProductFock
{
    TruncatedFock left;
    TruncatedFock right;
    int max_level = 0;
    std::vector<Index> level_dims;

    Index block_offset(int n, int i) const
    {
        Index off = 0;
        for (int k = 0; k < i; ++k) off += left.dim(k) * right.dim(n - k);
        return off;
    }

    Index dim(int n) const { return level_dims[static_cast<std::size_t>(n)]; }
    Index labels() const { return left.base_dim() + right.base_dim(); }
};

inline ProductFock make_product_fock(TruncatedFock left, TruncatedFock right, int max_level)
{
    ProductFock p;
    p.left = std::move(left);
    p.right = std::move(right);
    p.max_level = max_level;
    p.level_dims = convolve_dims(p.left.level_dims, p.right.level_dims, max_level);
    return p;
}

/// Creation blocks z*(e_x) (x) 1 for x < dim H~, 1 (x) z*(e_{x - dim H~}) otherwise; result[x][n].
inline std::vector<std::vector<CMatrix>> product_creation_blocks(const ProductFock& p)
{
    const auto lb = basis_creation_blocks(p.left);
    const auto rb = basis_creation_blocks(p.right);
    const Index a = p.left.base_dim();
    std::vector<std::vector<CMatrix>> out(static_cast<std::size_t>(p.labels()));
    for (Index x = 0; x < p.labels(); ++x)
        for (int n = 0; n < p.max_level; ++n)
        {
            CMatrix m = CMatrix::Zero(p.dim(n + 1), p.dim(n));
            for (int i = 0; i <= n; ++i)
            {
                const int j = n - i;
                const Index col = p.block_offset(n, i);
                if (x < a)
                {
                    const CMatrix& c = lb[static_cast<std::size_t>(x)][static_cast<std::size_t>(i)];
                    const CMatrix blk = tensor_product(c, identity(p.right.dim(j)));
                    m.block(p.block_offset(n + 1, i + 1), col, blk.rows(), blk.cols()) = blk;
                }
                else
                {
                    const CMatrix& c = rb[static_cast<std::size_t>(x - a)][static_cast<std::size_t>(j)];
                    const CMatrix blk = tensor_product(identity(p.left.dim(i)), c);
                    m.block(p.block_offset(n + 1, i), col, blk.rows(), blk.cols()) = blk;
                }
            }
            out[static_cast<std::size_t>(x)].push_back(std::move(m));
        }
    return out;
}

struct FactorizationReport
{
    std::vector<CMatrix> v;  // V_n : level n of the box-sum space -> level n of the product
    std::vector<Index> boxsum_dims;
    std::vector<Index> product_dims;
    std::vector<Index> convolution_dims;
    double unitarity = 0.0;         // max ||V^* V - 1||
    double co_unitarity = 0.0;      // max ||V V^* - 1||
    double vacuum = 0.0;            // ||V Omega - Omega (x) Omega||
    double creation = 0.0;          // max ||V z*(e_x) V^* - z_(x)*(e_x)||, levels <= N-1
    double annihilation = 0.0;      // same for z(e_x)

    bool dims_match() const { return boxsum_dims == product_dims && product_dims == convolution_dims; }
};

namespace detail
{

/// Gram-Schmidt on the columns of a, with the same column operations applied
/// to b. Returns (Q_a, Q_b); throws if a column is dependent in one matrix
/// but not in the other.
inline std::pair<CMatrix, CMatrix> simultaneous_orthonormalize(const CMatrix& a, const CMatrix& b, double rel_tol)
{
    if (a.cols() != b.cols()) throw Error("build_factorization_unitary: monomial counts differ");
    std::vector<CVector> qa;
    std::vector<CVector> qb;
    const double scale = std::max(1.0, a.colwise().norm().maxCoeff());
    for (Index j = 0; j < a.cols(); ++j)
    {
        CVector x = a.col(j);
        CVector y = b.col(j);
        for (int pass = 0; pass < 2; ++pass)
            for (std::size_t k = 0; k < qa.size(); ++k)
            {
                const Complex c = qa[k].dot(x);
                x -= c * qa[k];
                y -= c * qb[k];
            }
        const double nx = x.norm();
        const double ny = y.norm();
        const bool keep_a = nx > rel_tol * scale;
        const bool keep_b = ny > rel_tol * scale;
        if (keep_a != keep_b)
            throw Error("build_factorization_unitary: rank mismatch at monomial " + std::to_string(j) +
                        " (residuals " + std::to_string(nx) + " vs " + std::to_string(ny) + ")");
        if (!keep_a) continue;
        qa.push_back(x / nx);
        qb.push_back(y / nx);
    }
    CMatrix ma(a.rows(), static_cast<Index>(qa.size()));
    CMatrix mb(b.rows(), static_cast<Index>(qb.size()));
    for (std::size_t k = 0; k < qa.size(); ++k)
    {
        ma.col(static_cast<Index>(k)) = qa[k];
        mb.col(static_cast<Index>(k)) = qb[k];
    }
    return {ma, mb};
}

} // namespace detail

struct FactorizationOptions
{
    double tol = default_tol;
    double rank_tol = 1e-9;
    Index monomial_cap = 1 << 16;
    FockOptions fock;
};

/// Builds V level by level from the creation monomials on both vacua.
inline FactorizationReport build_factorization_unitary(const RMatrix& s, const RMatrix& r, Index m, int max_level,
                                                       const FactorizationOptions& opt = {})
{
    if (max_level < 0) throw Error("build_factorization_unitary: negative truncation level");
    require_involutive(s, opt.tol, "build_factorization_unitary");
    require_involutive(r, opt.tol, "build_factorization_unitary");
    const RMatrix sl = lift_with_internal(s, m);
    const RMatrix rl = lift_with_internal(r, m);
    const Index labels = sl.base_dim + rl.base_dim;
    if (ipow(labels, max_level) > opt.monomial_cap)
        throw Error("build_factorization_unitary: too many monomials for N = " + std::to_string(max_level));

    const TruncatedFock boxf = build_truncated_fock(box_sum(sl, rl), max_level, opt.fock);
    const ProductFock prod = make_product_fock(build_truncated_fock(sl, max_level, opt.fock),
                                               build_truncated_fock(rl, max_level, opt.fock), max_level);
    const auto cb = basis_creation_blocks(boxf);
    const auto cp = product_creation_blocks(prod);

    FactorizationReport rep;
    rep.boxsum_dims = boxf.level_dims;
    rep.product_dims = prod.level_dims;
    rep.convolution_dims = convolve_dims(prod.left.level_dims, prod.right.level_dims, max_level);

    for (int n = 0; n <= max_level; ++n)
    {
        const CMatrix a = creation_monomials(cb, labels, n, boxf.level_dims);
        const CMatrix b = creation_monomials(cp, labels, n, prod.level_dims);
        const auto [qa, qb] = detail::simultaneous_orthonormalize(a, b, opt.rank_tol);
        if (qa.cols() != boxf.dim(n) || qb.cols() != prod.dim(n))
            throw Error("build_factorization_unitary: monomials do not span level " + std::to_string(n) + " (rank " +
                        std::to_string(qa.cols()) + ", dims " + std::to_string(boxf.dim(n)) + " / " +
                        std::to_string(prod.dim(n)) + ")");
        CMatrix vn = qb * qa.adjoint();
        rep.unitarity = std::max(rep.unitarity, frobenius(vn.adjoint() * vn - identity(vn.cols())));
        rep.co_unitarity = std::max(rep.co_unitarity, frobenius(vn * vn.adjoint() - identity(vn.rows())));
        rep.v.push_back(std::move(vn));
    }
    rep.vacuum = std::abs(rep.v[0](0, 0) - Complex(1.0));

    for (int n = 0; n < max_level; ++n)
    {
        const CMatrix& v0 = rep.v[static_cast<std::size_t>(n)];
        const CMatrix& v1 = rep.v[static_cast<std::size_t>(n + 1)];
        for (Index x = 0; x < labels; ++x)
        {
            const CMatrix& zb = cb[static_cast<std::size_t>(x)][static_cast<std::size_t>(n)];
            const CMatrix& zp = cp[static_cast<std::size_t>(x)][static_cast<std::size_t>(n)];
            rep.creation = std::max(rep.creation, op_norm(v1 * zb * v0.adjoint() - zp));
            rep.annihilation = std::max(rep.annihilation, op_norm(v0 * zb.adjoint() * v1.adjoint() - zp.adjoint()));
        }
    }
    return rep;
}

// ---------------------------------------------------------------------------
// Exchange pattern probe
// ---------------------------------------------------------------------------

enum class PairPattern { car, ccr, null, none };

inline const char* to_string(PairPattern p)
{
    switch (p)
    {
    case PairPattern::car: return "CAR";
    case PairPattern::ccr: return "CCR";
    case PairPattern::null: return "null";
    case PairPattern::none: return "none";
    }
    return "?";
}

struct PairProbe
{
    Index alpha = 0;
    Index beta = 0;
    double anticommutator = 0.0;
    double commutator = 0.0;
    double product = 0.0;
    PairPattern pattern = PairPattern::none;
};

struct PatternReport
{
    std::vector<PairProbe> pairs;
    std::string overall;  // "CAR-like", "CCR-like", "mixed" or "trivial"

    const PairProbe& pair(Index a, Index b) const
    {
        for (const auto& p : pairs)
            if (p.alpha == a && p.beta == b) return p;
        throw Error("PatternReport: no such pair");
    }
};

/// Norms of {z_a, z_b}, [z_a, z_b] and z_a z_b on input levels 2..N (the
/// two-annihilator words vanish below level 2), pairs a <= b.
inline PatternReport exchange_pattern(const TruncatedFock& f, double tol = default_tol)
{
    const FockOperators ops(f);
    const Index d = f.base_dim();
    PatternReport rep;
    bool any_car = false;
    bool any_ccr = false;
    bool any_none = false;
    for (Index a = 0; a < d; ++a)
        for (Index b = a; b < d; ++b)
        {
            PairProbe p;
            p.alpha = a;
            p.beta = b;
            for (int n = 2; n <= f.max_level; ++n)
            {
                const CMatrix ab = ops.annihilate(a, n - 2) * ops.annihilate(b, n - 1);
                const CMatrix ba = ops.annihilate(b, n - 2) * ops.annihilate(a, n - 1);
                p.anticommutator = std::max(p.anticommutator, op_norm(ab + ba));
                p.commutator = std::max(p.commutator, op_norm(ab - ba));
                p.product = std::max(p.product, op_norm(ab));
            }
            if (a == b)
                p.pattern = p.product <= tol ? PairPattern::car : PairPattern::ccr;
            else if (p.product <= tol)
                p.pattern = PairPattern::null;
            else if (p.anticommutator <= tol)
                p.pattern = PairPattern::car;
            else if (p.commutator <= tol)
                p.pattern = PairPattern::ccr;
            else
                p.pattern = PairPattern::none;
            any_car |= p.pattern == PairPattern::car;
            any_ccr |= p.pattern == PairPattern::ccr;
            any_none |= p.pattern == PairPattern::none;
            rep.pairs.push_back(p);
        }
    if (any_none || (any_car && any_ccr))
        rep.overall = "mixed";
    else if (any_car)
        rep.overall = "CAR-like";
    else if (any_ccr)
        rep.overall = "CCR-like";
    else
        rep.overall = "trivial";
    return rep;
}

struct ObstructionReport
{
    PatternReport left;
    PatternReport right;
    bool patterns_differ = false;
};

inline ObstructionReport rep_obstruction_probe(const RMatrix& s, const RMatrix& r, Index m, int max_level = 4,
                                               double tol = default_tol)
{
    if (s.base_dim != r.base_dim) throw Error("rep_obstruction_probe: base dimensions differ");
    ObstructionReport rep;
    rep.left = exchange_pattern(build_truncated_fock(lift_with_internal(s, m), max_level), tol);
    rep.right = exchange_pattern(build_truncated_fock(lift_with_internal(r, m), max_level), tol);
    rep.patterns_differ = rep.left.overall != rep.right.overall;
    for (std::size_t k = 0; k < rep.left.pairs.size() && !rep.patterns_differ; ++k)
        rep.patterns_differ = rep.left.pairs[k].pattern != rep.right.pairs[k].pattern;
    return rep;
}

// ---------------------------------------------------------------------------
// Strong isomorphism for conjugated R-matrices
// ---------------------------------------------------------------------------

struct StrongIsoReport
{
    double creation = 0.0;      // max ||Y z*_S(e_a) Y^* - z*_R(Q~ e_a)||
    double annihilation = 0.0;  // max ||Y z_S(e_a) Y^* - z_R(Q~ e_a)||
    double unitarity = 0.0;     // max ||Y_n^* Y_n - 1||

    double worst() const { return std::max({creation, annihilation, unitarity}); }
};

/// R = conjugate(S, Q); Y_n = (Q (x) 1_m)^{(x) n} restricted to the symmetric levels.
inline StrongIsoReport conjugation_isomorphism_check(const RMatrix& s, const CMatrix& q, Index m, int max_level,
                                              double tol = default_tol)
{
    const RMatrix r = conjugate(s, q, tol);
    const TruncatedFock fs = build_truncated_fock(lift_with_internal(s, m), max_level);
    const TruncatedFock fr = build_truncated_fock(lift_with_internal(r, m), max_level);
    const CMatrix qt = tensor_product(q, identity(m));
    std::vector<CMatrix> y;
    StrongIsoReport rep;
    for (int n = 0; n <= max_level; ++n)
    {
        y.push_back(fr.bases[static_cast<std::size_t>(n)].adjoint() * tensor_power(qt, n) *
                    fs.bases[static_cast<std::size_t>(n)]);
        rep.unitarity = std::max(rep.unitarity, unitarity_residual(y.back()));
    }
    const Index labels = fs.base_dim();
    for (Index a = 0; a < labels; ++a)
    {
        const CVector ea = basis_vector(labels, a);
        const auto cs = creation_blocks(fs, ea);
        const auto cr = creation_blocks(fr, qt * ea);
        for (int n = 0; n < max_level; ++n)
        {
            const auto k = static_cast<std::size_t>(n);
            rep.creation = std::max(rep.creation, op_norm(y[k + 1] * cs[k] * y[k].adjoint() - cr[k]));
            rep.annihilation =
                std::max(rep.annihilation, op_norm(y[k] * cs[k].adjoint() * y[k + 1].adjoint() - cr[k].adjoint()));
        }
    }
    return rep;
}

} // namespace zfock
