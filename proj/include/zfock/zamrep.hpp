#pragma once

// Checks that the Fock ladder operators represent the exchange algebra:
// relation residuals, agreement of vacuum matrix elements with the
// symbolic Wick oracle, and positivity of the vacuum functional.

#include <array>
#include <optional>
#include <random>

#include "fock.hpp"
#include "wick.hpp"

namespace zfock
{

/// Precomputed creation blocks of a truncated Fock space for all basis labels.
class FockOperators
{
public:
    explicit FockOperators(const TruncatedFock& f) : f_(&f), blocks_(basis_creation_blocks(f)) {}

    const TruncatedFock& fock() const { return *f_; }
    Index labels() const { return f_->base_dim(); }

    /// z*_a restricted to level n (m_{n+1} x m_n).
    const CMatrix& create(Index a, int n) const { return blocks_[static_cast<std::size_t>(a)][static_cast<std::size_t>(n)]; }

    /// z_a restricted to level n+1 (m_n x m_{n+1}).
    CMatrix annihilate(Index a, int n) const { return create(a, n).adjoint(); }

    const std::vector<std::vector<CMatrix>>& blocks() const { return blocks_; }

    /// pi(w) Omega, applying letters right to left. Fails if the word climbs
    /// above the truncation level.
    LevelVector apply(const AlgebraWord& w) const
    {
        LevelVector v = vacuum();
        const Index m = internal_dim_;
        for (auto it = w.letters.rbegin(); it != w.letters.rend(); ++it)
        {
            const Index label = it->base * m + it->internal;
            if (label < 0 || label >= labels()) throw Error("FockOperators::apply: letter label out of range");
            if (it->kind == LetterKind::create)
            {
                if (v.level >= f_->max_level) throw Error("FockOperators::apply: word exceeds truncation depth");
                v.coords = create(label, v.level) * v.coords;
                ++v.level;
            }
            else
            {
                if (v.level == 0) return {0, CVector::Zero(1)};
                v.coords = create(label, v.level - 1).adjoint() * v.coords;
                --v.level;
            }
        }
        v.coords *= w.coefficient;
        return v;
    }

    /// <Omega, pi(w) Omega>
    Complex vacuum_element(const AlgebraWord& w) const
    {
        // unbalanced words end off the vacuum level
        std::ptrdiff_t balance = 0;
        for (const auto& l : w.letters) balance += l.kind == LetterKind::create ? 1 : -1;
        if (balance != 0) return 0.0;
        const LevelVector v = apply(w);
        return v.level == 0 ? v.coords(0) : Complex(0.0);
    }

    void set_internal_dim(Index m) { internal_dim_ = m; }

private:
    const TruncatedFock* f_;
    std::vector<std::vector<CMatrix>> blocks_;
    Index internal_dim_ = 1;
};

/// Factors of a box-sum Fock space, used for the sector-resolved relations.
struct BoxSumSectors
{
    RMatrix left;   // lifted, labels 0..left.base_dim-1
    RMatrix right;  // lifted, labels left.base_dim..
};

struct RelationResiduals
{
    double exchange = 0.0;     // z_a z_b - S^{ba}_{ec} z_c z_e
    double contraction = 0.0;  // z_a z*_b - S^{ac}_{be} z*_c z_e - delta_ab
    int max_input_level = -1;  // residuals asserted on levels 0..max_input_level
    std::optional<std::array<double, 6>> sectors;

    double worst() const
    {
        double w = std::max(exchange, contraction);
        if (sectors)
            for (double s : *sectors) w = std::max(w, s);
        return w;
    }
};

inline RelationResiduals relation_residuals(const TruncatedFock& f, const std::optional<BoxSumSectors>& split = {})
{
    RelationResiduals rep;
    const FockOperators ops(f);
    const Index d = f.base_dim();
    const RMatrix& s = f.r;
    rep.max_input_level = f.max_level - 2;
    std::array<double, 6> sec{};
    Index split_at = 0;
    if (split)
    {
        split_at = split->left.base_dim;
        if (split_at + split->right.base_dim != d) throw Error("relation_residuals: sector dimensions do not add up");
    }
    auto idx = [d](Index a, Index b) { return static_cast<std::size_t>(a * d + b); };

    for (int n = 0; n <= f.max_level - 2; ++n)
    {
        // pp[a][b] = z_a z_b on level n, qq[c][e] = z*_c z_e on level n
        std::vector<CMatrix> pp;
        std::vector<CMatrix> qq;
        if (n >= 2)
            for (Index a = 0; a < d; ++a)
                for (Index b = 0; b < d; ++b) pp.push_back(ops.annihilate(a, n - 2) * ops.annihilate(b, n - 1));
        if (n >= 1)
            for (Index c = 0; c < d; ++c)
                for (Index e = 0; e < d; ++e) qq.push_back(ops.create(c, n - 1) * ops.annihilate(e, n - 1));
        const CMatrix id = identity(f.dim(n));

        for (Index a = 0; a < d; ++a)
            for (Index b = 0; b < d; ++b)
            {
                if (n >= 2)
                {
                    CMatrix res = pp[idx(a, b)];
                    for (Index c = 0; c < d; ++c)
                        for (Index e = 0; e < d; ++e)
                        {
                            const Complex coeff = s(b, a, e, c);
                            if (coeff != Complex(0.0)) res -= coeff * pp[idx(c, e)];
                        }
                    rep.exchange = std::max(rep.exchange, op_norm(res));
                }
                CMatrix res = ops.annihilate(a, n) * ops.create(b, n);
                if (a == b) res -= id;
                if (n >= 1)
                    for (Index c = 0; c < d; ++c)
                        for (Index e = 0; e < d; ++e)
                        {
                            const Complex coeff = s(a, c, b, e);
                            if (coeff != Complex(0.0)) res -= coeff * qq[idx(c, e)];
                        }
                rep.contraction = std::max(rep.contraction, op_norm(res));
            }

        if (!split) continue;
        // sector relations: (1)-(2) on the left block, (3)-(4) on the right
        // block, (5)-(6) cross-sector commutation
        for (int side = 0; side < 2; ++side)
        {
            const RMatrix& blk = side == 0 ? split->left : split->right;
            const Index lo = side == 0 ? 0 : split_at;
            const Index k = blk.base_dim;
            for (Index a = 0; a < k; ++a)
                for (Index b = 0; b < k; ++b)
                {
                    if (n >= 2)
                    {
                        CMatrix res = pp[idx(lo + a, lo + b)];
                        for (Index c = 0; c < k; ++c)
                            for (Index e = 0; e < k; ++e)
                            {
                                const Complex coeff = blk(b, a, e, c);
                                if (coeff != Complex(0.0)) res -= coeff * pp[idx(lo + c, lo + e)];
                            }
                        auto& slot = sec[static_cast<std::size_t>(side * 2)];
                        slot = std::max(slot, op_norm(res));
                    }
                    CMatrix res = ops.annihilate(lo + a, n) * ops.create(lo + b, n);
                    if (a == b) res -= id;
                    if (n >= 1)
                        for (Index c = 0; c < k; ++c)
                            for (Index e = 0; e < k; ++e)
                            {
                                const Complex coeff = blk(a, c, b, e);
                                if (coeff != Complex(0.0)) res -= coeff * qq[idx(lo + c, lo + e)];
                            }
                    auto& slot = sec[static_cast<std::size_t>(side * 2 + 1)];
                    slot = std::max(slot, op_norm(res));
                }
        }
        for (Index a = 0; a < split_at; ++a)
            for (Index e = split_at; e < d; ++e)
            {
                if (n >= 2) sec[4] = std::max(sec[4], op_norm(pp[idx(a, e)] - pp[idx(e, a)]));
                CMatrix res = ops.annihilate(a, n) * ops.create(e, n);
                if (n >= 1) res -= qq[idx(e, a)];
                sec[5] = std::max(sec[5], op_norm(res));
            }
    }
    if (split) rep.sectors = sec;
    return rep;
}

struct GnsReport
{
    std::size_t words = 0;
    double max_deviation = 0.0;
    std::string worst_word;
    bool pass = true;
};

/// Compares <Omega, pi(w) Omega> with the Wick oracle for each word.
inline GnsReport gns_match(const TruncatedFock& f, Index internal_dim, const std::vector<AlgebraWord>& words,
                           double tol = default_tol)
{
    FockOperators ops(f);
    ops.set_internal_dim(internal_dim);
    WickOracle oracle(f.r, internal_dim);
    GnsReport rep;
    for (const auto& w : words)
    {
        const Complex fock_value = ops.vacuum_element(w);
        const Complex wick_value = oracle.vacuum_expectation(w);
        const double dev = std::abs(fock_value - wick_value);
        ++rep.words;
        if (dev > rep.max_deviation || rep.worst_word.empty())
        {
            rep.max_deviation = std::max(rep.max_deviation, dev);
            rep.worst_word = to_string(w);
        }
    }
    rep.pass = rep.max_deviation <= tol;
    return rep;
}

struct PositivityReport
{
    double min_eigenvalue = 0.0;
    double hermiticity_deviation = 0.0;
    int trials = 0;
};

/// Random polynomial of up to `max_terms` words of length <= max_len.
inline WickPolynomial random_polynomial(std::mt19937_64& rng, Index labels, Index internal_dim, int max_len,
                                        int max_terms = 4)
{
    std::uniform_int_distribution<int> terms(1, max_terms);
    std::uniform_int_distribution<int> len(0, max_len);
    std::uniform_int_distribution<Index> lab(0, labels - 1);
    std::uniform_int_distribution<int> kind(0, 1);
    std::normal_distribution<double> gauss;
    WickPolynomial p;
    const int t = terms(rng);
    for (int i = 0; i < t; ++i)
    {
        AlgebraWord w;
        const int l = len(rng);
        for (int j = 0; j < l; ++j)
        {
            const Index x = lab(rng);
            w.letters.push_back(Letter{kind(rng) == 0 ? LetterKind::create : LetterKind::annihilate, x / internal_dim,
                                       x % internal_dim});
        }
        w.coefficient = Complex(gauss(rng), gauss(rng));
        p.add(w);
    }
    return p;
}

/// Gram matrix G_ij = omega(X_i^* X_j) of `trials` random polynomials,
/// evaluated with the Wick oracle only; returns its smallest eigenvalue and
/// the largest |omega(X^*) - conj(omega(X))|.
inline PositivityReport positivity_probe(const RMatrix& lifted, Index internal_dim, int trials, std::uint64_t seed,
                                         int max_len = 3)
{
    std::mt19937_64 rng(seed);
    WickOracle oracle(lifted, internal_dim);
    std::vector<WickPolynomial> polys;
    for (int i = 0; i < trials; ++i) polys.push_back(random_polynomial(rng, lifted.base_dim, internal_dim, max_len));

    PositivityReport rep;
    rep.trials = trials;
    CMatrix gram(trials, trials);
    for (int i = 0; i < trials; ++i)
    {
        const auto xi = polys[static_cast<std::size_t>(i)].adjoint();
        for (int j = 0; j < trials; ++j)
        {
            Complex acc = 0.0;
            for (const auto& [li, ci] : xi.terms())
                for (const auto& [lj, cj] : polys[static_cast<std::size_t>(j)].terms())
                    acc += oracle.vacuum_expectation(AlgebraWord{li, ci} * AlgebraWord{lj, cj});
            gram(i, j) = acc;
        }
        const Complex direct = oracle.vacuum_expectation(polys[static_cast<std::size_t>(i)]);
        const Complex adj = oracle.vacuum_expectation(xi);
        rep.hermiticity_deviation = std::max(rep.hermiticity_deviation, std::abs(adj - std::conj(direct)));
    }
    if (trials > 0)
    {
        Eigen::SelfAdjointEigenSolver<CMatrix> es(0.5 * (gram + gram.adjoint()), Eigen::EigenvaluesOnly);
        rep.min_eigenvalue = es.eigenvalues().minCoeff();
    }
    return rep;
}

} // namespace zfock
