#pragma once

// Independent reference computations for the tests. Everything here is
// written with plain loops so that it shares no code path with the library.

#include <cmath>
#include <complex>
#include <random>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace oracle
{

using C = std::complex<double>;
using M = Eigen::MatrixXcd;

inline M kron(const M& a, const M& b)
{
    M out = M::Zero(a.rows() * b.rows(), a.cols() * b.cols());
    for (Eigen::Index i = 0; i < a.rows(); ++i)
        for (Eigen::Index j = 0; j < a.cols(); ++j)
            for (Eigen::Index k = 0; k < b.rows(); ++k)
                for (Eigen::Index l = 0; l < b.cols(); ++l) out(i * b.rows() + k, j * b.cols() + l) = a(i, j) * b(k, l);
    return out;
}

inline M eye(Eigen::Index n) { return M::Identity(n, n); }

/// g acting on slots (slot, slot+1) of (C^d)^{(x) n}.
inline M embed_two_site(const M& g, Eigen::Index d, int n, int slot)
{
    Eigen::Index left = 1;
    for (int k = 0; k < slot; ++k) left *= d;
    Eigen::Index right = 1;
    for (int k = slot + 2; k < n; ++k) right *= d;
    return kron(kron(eye(left), g), eye(right));
}

inline long long binomial(long long n, long long k)
{
    if (k < 0 || k > n) return 0;
    long long r = 1;
    for (long long i = 1; i <= k; ++i) r = r * (n - k + i) / i;
    return r;
}

/// Slot permutation matrix: basis vector e_{i_0} (x) ... (x) e_{i_{n-1}} is
/// sent to the vector whose slot images[j] carries i_j.
inline M slot_permutation(const std::vector<int>& images, Eigen::Index d)
{
    const int n = static_cast<int>(images.size());
    Eigen::Index dim = 1;
    for (int k = 0; k < n; ++k) dim *= d;
    M out = M::Zero(dim, dim);
    std::vector<Eigen::Index> digits(static_cast<std::size_t>(n));
    for (Eigen::Index idx = 0; idx < dim; ++idx)
    {
        Eigen::Index rest = idx;
        for (int k = n - 1; k >= 0; --k)
        {
            digits[static_cast<std::size_t>(k)] = rest % d;
            rest /= d;
        }
        std::vector<Eigen::Index> target(static_cast<std::size_t>(n));
        for (int j = 0; j < n; ++j) target[static_cast<std::size_t>(images[static_cast<std::size_t>(j)])] = digits[static_cast<std::size_t>(j)];
        Eigen::Index to = 0;
        for (int k = 0; k < n; ++k) to = to * d + target[static_cast<std::size_t>(k)];
        out(to, idx) = 1.0;
    }
    return out;
}

/// Jordan-Wigner annihilators a_0..a_{d-1} on the 2^d-dimensional fermionic
/// Fock space; occupation of mode k is bit (d-1-k) of the basis index.
inline std::vector<M> jordan_wigner(int d)
{
    M lower(2, 2);
    lower << 0, 1, 0, 0;  // |0><1|
    M z(2, 2);
    z << 1, 0, 0, -1;
    std::vector<M> out;
    for (int k = 0; k < d; ++k)
    {
        M op = M::Ones(1, 1);
        for (int j = 0; j < d; ++j) op = kron(op, j < k ? z : (j == k ? lower : eye(2)));
        out.push_back(op);
    }
    return out;
}

/// Truncated bosonic annihilator on span{|0>, ..., |N>}.
inline M boson_annihilator(int max_level)
{
    M a = M::Zero(max_level + 1, max_level + 1);
    for (int n = 1; n <= max_level; ++n) a(n - 1, n) = std::sqrt(static_cast<double>(n));
    return a;
}

inline M random_matrix(std::mt19937_64& rng, Eigen::Index rows, Eigen::Index cols)
{
    std::normal_distribution<double> g;
    M m(rows, cols);
    for (Eigen::Index i = 0; i < rows; ++i)
        for (Eigen::Index j = 0; j < cols; ++j) m(i, j) = C(g(rng), g(rng));
    return m;
}

inline M random_unitary(std::mt19937_64& rng, Eigen::Index n)
{
    Eigen::HouseholderQR<M> qr(random_matrix(rng, n, n));
    return qr.householderQ() * M::Identity(n, n);
}

inline C unit_phase(std::mt19937_64& rng)
{
    std::uniform_real_distribution<double> u(-M_PI, M_PI);
    return std::polar(1.0, u(rng));
}

inline M rotation(double angle)
{
    M q(2, 2);
    q << std::cos(angle), -std::sin(angle), std::sin(angle), std::cos(angle);
    return q;
}

inline std::string source(const std::string& rel) { return std::string(ZFOCK_SOURCE_DIR) + "/" + rel; }

} // namespace oracle
