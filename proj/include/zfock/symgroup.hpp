#pragma once

// Permutations, the representation D_n generated by an involutive R-matrix
// and the symmetrisation projectors P_n.
//
// A permutation acts on tensor slots: the factor in slot j is moved to slot
// images[j]. Composition is (a * b)[j] = a[b[j]] (b acts first), so that
// rep(a * b) = rep(a) rep(b). Generator t_i (0-based) swaps slots i, i+1 and
// is represented by the R-matrix acting on those two slots.

#include <algorithm>
#include <numeric>
#include <string>
#include <vector>

#include "rmatrix.hpp"

namespace zfock
{

class Permutation
{
public:
    Permutation() = default;

    explicit Permutation(std::vector<int> images) : images_(std::move(images))
    {
        std::vector<bool> seen(images_.size(), false);
        for (int v : images_)
        {
            if (v < 0 || static_cast<std::size_t>(v) >= images_.size() || seen[static_cast<std::size_t>(v)])
                throw Error("Permutation: images are not a bijection of 0..n-1");
            seen[static_cast<std::size_t>(v)] = true;
        }
    }

    static Permutation identity(int n)
    {
        std::vector<int> v(static_cast<std::size_t>(n));
        std::iota(v.begin(), v.end(), 0);
        return Permutation(std::move(v));
    }

    /// Adjacent transposition of slots i and i+1 (0-based).
    static Permutation transposition(int n, int i)
    {
        if (i < 0 || i + 1 >= n) throw Error("Permutation::transposition: slot out of range");
        auto p = identity(n);
        std::swap(p.images_[static_cast<std::size_t>(i)], p.images_[static_cast<std::size_t>(i + 1)]);
        return p;
    }

    /// Reverses the order of all n slots.
    static Permutation total_inversion(int n)
    {
        std::vector<int> v(static_cast<std::size_t>(n));
        for (int j = 0; j < n; ++j) v[static_cast<std::size_t>(j)] = n - 1 - j;
        return Permutation(std::move(v));
    }

    int size() const { return static_cast<int>(images_.size()); }
    int operator[](int j) const { return images_[static_cast<std::size_t>(j)]; }
    const std::vector<int>& images() const { return images_; }

    Permutation operator*(const Permutation& rhs) const
    {
        if (rhs.size() != size()) throw Error("Permutation: size mismatch in composition");
        std::vector<int> v(images_.size());
        for (std::size_t j = 0; j < v.size(); ++j) v[j] = images_[static_cast<std::size_t>(rhs.images_[j])];
        return Permutation(std::move(v));
    }

    Permutation inverse() const
    {
        std::vector<int> v(images_.size());
        for (std::size_t j = 0; j < v.size(); ++j) v[static_cast<std::size_t>(images_[j])] = static_cast<int>(j);
        return Permutation(std::move(v));
    }

    int inversions() const
    {
        int c = 0;
        for (std::size_t i = 0; i < images_.size(); ++i)
            for (std::size_t j = i + 1; j < images_.size(); ++j)
                if (images_[i] > images_[j]) ++c;
        return c;
    }

    /// Generator indices (s_1, ..., s_r) with this = t_{s_r} * ... * t_{s_1},
    /// i.e. apply t_{s_1} first. Obtained by bubble sort; r = inversions().
    std::vector<int> reduced_word() const
    {
        std::vector<int> arr = images_;
        std::vector<int> word;
        bool swapped = true;
        while (swapped)
        {
            swapped = false;
            for (std::size_t i = 0; i + 1 < arr.size(); ++i)
                if (arr[i] > arr[i + 1])
                {
                    // arr <- arr * t_i
                    std::swap(arr[i], arr[i + 1]);
                    word.push_back(static_cast<int>(i));
                    swapped = true;
                }
        }
        return word;
    }

    bool operator==(const Permutation& o) const { return images_ == o.images_; }

private:
    std::vector<int> images_;
};

/// sigma_k in S_n: moves slot 1 to slot k and shifts slots 2..k down by one
/// (1-based k, sigma_1 = identity). Equals t_{k-1} ... t_1.
inline Permutation sigma_cycle(int n, int k)
{
    if (n < 1 || k < 1 || k > n) throw Error("sigma_cycle: need 1 <= k <= n");
    auto v = Permutation::identity(n).images();
    v[0] = k - 1;
    for (int j = 1; j < k; ++j) v[static_cast<std::size_t>(j)] = j - 1;
    return Permutation(std::move(v));
}

/// All permutations of n letters in lexicographic order of their images.
inline std::vector<Permutation> all_permutations(int n)
{
    std::vector<Permutation> out;
    auto v = Permutation::identity(n).images();
    do out.emplace_back(v);
    while (std::next_permutation(v.begin(), v.end()));
    return out;
}

/// Partitions of n in decreasing lexicographic order, parts non-increasing.
inline std::vector<std::vector<int>> partitions(int n)
{
    std::vector<std::vector<int>> out;
    std::vector<int> cur;
    auto rec = [&](auto&& self, int rest, int max_part) -> void {
        if (rest == 0)
        {
            out.push_back(cur);
            return;
        }
        for (int p = std::min(rest, max_part); p >= 1; --p)
        {
            cur.push_back(p);
            self(self, rest - p, p);
            cur.pop_back();
        }
    };
    rec(rec, n, n);
    return out;
}

/// A permutation of the given cycle type, cycles on consecutive slots.
inline Permutation cycle_type_representative(const std::vector<int>& type)
{
    const int n = std::accumulate(type.begin(), type.end(), 0);
    auto v = Permutation::identity(n).images();
    int start = 0;
    for (int len : type)
    {
        for (int j = 0; j < len; ++j) v[static_cast<std::size_t>(start + j)] = start + (j + 1) % len;
        start += len;
    }
    return Permutation(std::move(v));
}

struct RepresentationContext
{
    RMatrix r;  // already lifted by the internal space, if any
    int n = 0;

    RepresentationContext(RMatrix rm, int level, double tol = default_tol) : r(std::move(rm)), n(level)
    {
        if (level < 0) throw Error("RepresentationContext: negative level");
        require_involutive(r, tol, "RepresentationContext");
    }

    Index base_dim() const { return r.base_dim; }
    Index space_dim() const { return ipow(r.base_dim, n); }
};

/// Left-multiplies x by D_n(t_i).
inline void apply_generator(const RepresentationContext& ctx, int i, CMatrix& x)
{
    apply_two_site_left(ctx.r.mat, ctx.r.base_dim, ctx.n, i, x);
}

/// D_n(pi), built along the bubble-sort reduced word of pi.
inline CMatrix rep_permutation(const RepresentationContext& ctx, const Permutation& pi)
{
    if (pi.size() != ctx.n) throw Error("rep_permutation: permutation size differs from level");
    CMatrix x = identity(ctx.space_dim());
    for (int g : pi.reduced_word()) apply_generator(ctx, g, x);
    return x;
}

/// D_n(t_i) as a dense matrix.
inline CMatrix rep_generator(const RepresentationContext& ctx, int i)
{
    CMatrix x = identity(ctx.space_dim());
    apply_generator(ctx, i, x);
    return x;
}

enum class ProjectorMethod { brute, recursive };

struct ProjectorOptions
{
    ProjectorMethod method = ProjectorMethod::recursive;
    int brute_cap = 8;
};

namespace detail
{

/// Mean of D_n over S_n. Walks all n! permutations in Steinhaus-Johnson-Trotter
/// order; consecutive elements differ by a right factor t_i, so each step is
/// a single two-site column update.
inline CMatrix brute_projector(const RepresentationContext& ctx)
{
    const int n = ctx.n;
    const Index dim = ctx.space_dim();
    CMatrix current = identity(dim);
    CMatrix sum = current;
    double count = 1.0;
    if (n >= 2)
    {
        std::vector<int> perm(static_cast<std::size_t>(n));
        std::iota(perm.begin(), perm.end(), 0);
        std::vector<int> dir(static_cast<std::size_t>(n), -1);
        for (;;)
        {
            int mobile_pos = -1;
            for (int j = 0; j < n; ++j)
            {
                const int nb = j + dir[static_cast<std::size_t>(perm[static_cast<std::size_t>(j)])];
                if (nb < 0 || nb >= n) continue;
                if (perm[static_cast<std::size_t>(nb)] < perm[static_cast<std::size_t>(j)] &&
                    (mobile_pos < 0 || perm[static_cast<std::size_t>(j)] > perm[static_cast<std::size_t>(mobile_pos)]))
                    mobile_pos = j;
            }
            if (mobile_pos < 0) break;
            const int value = perm[static_cast<std::size_t>(mobile_pos)];
            const int nb = mobile_pos + dir[static_cast<std::size_t>(value)];
            std::swap(perm[static_cast<std::size_t>(mobile_pos)], perm[static_cast<std::size_t>(nb)]);
            apply_two_site_right(ctx.r.mat, ctx.r.base_dim, n, std::min(mobile_pos, nb), current);
            sum += current;
            count += 1.0;
            for (int v = value + 1; v < n; ++v) dir[static_cast<std::size_t>(v)] = -dir[static_cast<std::size_t>(v)];
        }
    }
    return sum / count;
}

} // namespace detail

/// P_n = (1/n) sum_k D_n(sigma_k) (1 (x) P_{n-1}), starting from P_1 = 1.
/// Returns P_0, ..., P_n.
inline std::vector<CMatrix> recursive_projectors(const RMatrix& r, int n, double tol = default_tol)
{
    require_involutive(r, tol, "recursive_projectors");
    const Index d = r.base_dim;
    std::vector<CMatrix> out;
    out.push_back(identity(1));
    if (n >= 1) out.push_back(identity(d));
    for (int level = 2; level <= n; ++level)
    {
        CMatrix y = tensor_product(identity(d), out.back());
        CMatrix sum = y;
        // D(sigma_k) = D(t_{k-1}) D(sigma_{k-1})
        for (int k = 2; k <= level; ++k)
        {
            apply_two_site_left(r.mat, d, level, k - 2, y);
            sum += y;
        }
        out.push_back(sum / static_cast<double>(level));
    }
    return out;
}

inline CMatrix projector(const RepresentationContext& ctx, const ProjectorOptions& opt = {})
{
    if (opt.method == ProjectorMethod::brute)
    {
        if (ctx.n > opt.brute_cap)
            throw Error("projector: brute-force enumeration refused for n = " + std::to_string(ctx.n) +
                        " (cap " + std::to_string(opt.brute_cap) + ")");
        return detail::brute_projector(ctx);
    }
    return recursive_projectors(ctx.r, ctx.n).back();
}

inline CMatrix projector(const RepresentationContext& ctx, ProjectorMethod method)
{
    ProjectorOptions opt;
    opt.method = method;
    return projector(ctx, opt);
}

} // namespace zfock
