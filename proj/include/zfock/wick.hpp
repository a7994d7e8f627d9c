#pragma once

// Symbolic Wick ordering for the exchange algebra generated by Z_a, Z*_a
// with relation
//   Z_a Z*_b = S^{a c}_{b e} Z*_c Z_e + delta_{ab} 1.
// The vacuum functional omega keeps only the identity coefficient of the
// normal-ordered form: omega(Z* X) = omega(X Z) = 0, omega(1) = 1.
//
// Letters carry orthonormal-basis labels; with an internal space C^m a
// label (a, l) is the composite a * m + l and S is the lifted R-matrix.

#include <map>
#include <string>
#include <vector>

#include "rmatrix.hpp"

namespace zfock
{

enum class LetterKind { create, annihilate };

struct Letter
{
    LetterKind kind = LetterKind::annihilate;
    Index base = 0;
    Index internal = 0;

    bool operator<(const Letter& o) const
    {
        if (kind != o.kind) return kind < o.kind;
        if (base != o.base) return base < o.base;
        return internal < o.internal;
    }
    bool operator==(const Letter& o) const { return kind == o.kind && base == o.base && internal == o.internal; }
};

struct AlgebraWord
{
    std::vector<Letter> letters;
    Complex coefficient{1.0, 0.0};

    std::size_t size() const { return letters.size(); }

    /// Reversed word with starred and unstarred letters exchanged.
    AlgebraWord adjoint() const
    {
        AlgebraWord w;
        w.coefficient = std::conj(coefficient);
        for (auto it = letters.rbegin(); it != letters.rend(); ++it)
        {
            Letter l = *it;
            l.kind = l.kind == LetterKind::create ? LetterKind::annihilate : LetterKind::create;
            w.letters.push_back(l);
        }
        return w;
    }

    AlgebraWord operator*(const AlgebraWord& rhs) const
    {
        AlgebraWord w;
        w.coefficient = coefficient * rhs.coefficient;
        w.letters = letters;
        w.letters.insert(w.letters.end(), rhs.letters.begin(), rhs.letters.end());
        return w;
    }
};

inline std::string to_string(const AlgebraWord& w)
{
    std::string s;
    for (const auto& l : w.letters)
    {
        if (!s.empty()) s += ' ';
        s += l.kind == LetterKind::create ? "Z*" : "Z";
        s += std::to_string(l.base);
        if (l.internal != 0) s += "." + std::to_string(l.internal);
    }
    return s.empty() ? "1" : s;
}

/// Finite linear combination of words; zero coefficients are dropped.
class WickPolynomial
{
public:
    using Terms = std::map<std::vector<Letter>, Complex>;

    void add(const AlgebraWord& w)
    {
        terms_[w.letters] += w.coefficient;
        normalize();
    }

    void normalize(double eps = 0.0)
    {
        for (auto it = terms_.begin(); it != terms_.end();)
            it = std::abs(it->second) <= eps ? terms_.erase(it) : std::next(it);
    }

    WickPolynomial adjoint() const
    {
        WickPolynomial p;
        for (const auto& [letters, c] : terms_) p.add(AlgebraWord{letters, c}.adjoint());
        return p;
    }

    const Terms& terms() const { return terms_; }
    std::size_t size() const { return terms_.size(); }

private:
    Terms terms_;
};

enum class ReductionStrategy { leftmost, rightmost };

/// Evaluates omega on words by recursive application of the exchange
/// relation. Each step removes one (annihilate, create) inversion, so the
/// recursion terminates; results are memoised per strategy.
class WickOracle
{
public:
    WickOracle(RMatrix lifted, Index internal_dim, std::size_t length_cap = 8)
        : s_(std::move(lifted)), m_(internal_dim), cap_(length_cap)
    {
        if (m_ < 1 || s_.base_dim % m_ != 0)
            throw Error("WickOracle: internal dimension must divide the lifted base dimension");
    }

    const RMatrix& rmatrix() const { return s_; }
    Index internal_dim() const { return m_; }
    Index labels() const { return s_.base_dim; }

    Complex vacuum_expectation(const AlgebraWord& w, ReductionStrategy strategy = ReductionStrategy::leftmost)
    {
        if (w.size() > cap_)
            throw Error("wick_vacuum_expectation: word length " + std::to_string(w.size()) + " exceeds cap " +
                        std::to_string(cap_));
        return w.coefficient * eval(encode(w), strategy);
    }

    Complex vacuum_expectation(const WickPolynomial& p, ReductionStrategy strategy = ReductionStrategy::leftmost)
    {
        Complex acc = 0.0;
        for (const auto& [letters, c] : p.terms()) acc += vacuum_expectation(AlgebraWord{letters, c}, strategy);
        return acc;
    }

private:
    // code = 2 * label + (annihilate ? 1 : 0)
    std::vector<int> encode(const AlgebraWord& w) const
    {
        std::vector<int> out;
        const Index dbase = s_.base_dim / m_;
        for (const auto& l : w.letters)
        {
            if (l.base < 0 || l.base >= dbase || l.internal < 0 || l.internal >= m_)
                throw Error("wick_vacuum_expectation: letter label out of range");
            const Index label = l.base * m_ + l.internal;
            out.push_back(static_cast<int>(2 * label + (l.kind == LetterKind::annihilate ? 1 : 0)));
        }
        return out;
    }

    static bool is_annihilator(int code) { return (code & 1) != 0; }
    static Index label(int code) { return code >> 1; }

    Complex eval(const std::vector<int>& word, ReductionStrategy strategy)
    {
        if (word.empty()) return 1.0;
        if (!is_annihilator(word.front()) || is_annihilator(word.back())) return 0.0;
        auto& memo = memo_[strategy == ReductionStrategy::leftmost ? 0 : 1];
        if (auto it = memo.find(word); it != memo.end()) return it->second;

        std::size_t pos = word.size();
        for (std::size_t i = 0; i + 1 < word.size(); ++i)
        {
            const std::size_t j = strategy == ReductionStrategy::leftmost ? i : word.size() - 2 - i;
            if (is_annihilator(word[j]) && !is_annihilator(word[j + 1]))
            {
                pos = j;
                break;
            }
        }
        // first letter annihilates and last creates, so an inversion exists
        const Index a = label(word[pos]);
        const Index b = label(word[pos + 1]);
        Complex result = 0.0;
        if (a == b)
        {
            std::vector<int> shorter;
            shorter.reserve(word.size() - 2);
            shorter.insert(shorter.end(), word.begin(), word.begin() + static_cast<std::ptrdiff_t>(pos));
            shorter.insert(shorter.end(), word.begin() + static_cast<std::ptrdiff_t>(pos + 2), word.end());
            result += eval(shorter, strategy);
        }
        std::vector<int> swapped = word;
        const Index d = s_.base_dim;
        for (Index c = 0; c < d; ++c)
            for (Index e = 0; e < d; ++e)
            {
                const Complex coeff = s_(a, c, b, e);
                if (coeff == Complex(0.0)) continue;
                swapped[pos] = static_cast<int>(2 * c);
                swapped[pos + 1] = static_cast<int>(2 * e + 1);
                result += coeff * eval(swapped, strategy);
            }
        memo.emplace(word, result);
        return result;
    }

    RMatrix s_;
    Index m_;
    std::size_t cap_;
    std::map<std::vector<int>, Complex> memo_[2];
};

/// One-shot convenience wrapper around WickOracle.
inline Complex wick_vacuum_expectation(const RMatrix& lifted, Index internal_dim, const AlgebraWord& w,
                                       ReductionStrategy strategy = ReductionStrategy::leftmost)
{
    WickOracle oracle(lifted, internal_dim);
    return oracle.vacuum_expectation(w, strategy);
}

/// All words of length 0..max_len over `labels` composite labels (internal
/// label folded into base, i.e. m = 1 view), shortest first.
inline std::vector<AlgebraWord> enumerate_words(Index labels, int max_len, Index internal_dim = 1)
{
    std::vector<AlgebraWord> out;
    out.push_back(AlgebraWord{});
    std::vector<AlgebraWord> layer = {AlgebraWord{}};
    for (int len = 1; len <= max_len; ++len)
    {
        std::vector<AlgebraWord> next;
        for (const auto& w : layer)
            for (int kind = 0; kind < 2; ++kind)
                for (Index x = 0; x < labels; ++x)
                {
                    AlgebraWord v = w;
                    v.letters.push_back(Letter{kind == 0 ? LetterKind::create : LetterKind::annihilate,
                                               x / internal_dim, x % internal_dim});
                    next.push_back(std::move(v));
                }
        out.insert(out.end(), next.begin(), next.end());
        layer = std::move(next);
    }
    return out;
}

} // namespace zfock
