#include <gtest/gtest.h>

#include "oracles.hpp"
#include "zfock/tensor.hpp"

using namespace zfock;

TEST(TensorProduct, MatchesLoopKronecker)
{
    std::mt19937_64 rng(7);
    const CMatrix a = oracle::random_matrix(rng, 2, 3);
    const CMatrix b = oracle::random_matrix(rng, 4, 2);
    EXPECT_LE(frobenius(tensor_product(a, b) - oracle::kron(a, b)), 1e-14);
}

TEST(TensorProduct, IsAssociative)
{
    std::mt19937_64 rng(8);
    const CMatrix a = oracle::random_matrix(rng, 2, 2);
    const CMatrix b = oracle::random_matrix(rng, 3, 1);
    const CMatrix c = oracle::random_matrix(rng, 1, 2);
    EXPECT_LE(frobenius(tensor_product(tensor_product(a, b), c) - tensor_product(a, tensor_product(b, c))), 1e-13);
}

TEST(TensorPower, ZeroAndThirdPower)
{
    std::mt19937_64 rng(9);
    const CMatrix a = oracle::random_matrix(rng, 2, 2);
    EXPECT_EQ(tensor_power(a, 0).rows(), 1);
    EXPECT_EQ(tensor_power(a, 0)(0, 0), Complex(1.0));
    EXPECT_LE(frobenius(tensor_power(a, 3) - oracle::kron(oracle::kron(a, a), a)), 1e-12);
}

TEST(DirectSum, BlockLayoutAndShapeCheck)
{
    CMatrix a = CMatrix::Constant(1, 1, 2.0);
    CMatrix b = CMatrix::Constant(2, 2, 3.0);
    const CMatrix s = direct_sum(a, b);
    ASSERT_EQ(s.rows(), 3);
    EXPECT_EQ(s(0, 0), Complex(2.0));
    EXPECT_EQ(s(0, 1), Complex(0.0));
    EXPECT_EQ(s(2, 2), Complex(3.0));
    EXPECT_THROW(direct_sum(CMatrix::Zero(1, 2), b), Error);
}

TEST(Norms, OperatorNormIsLargestSingularValue)
{
    std::mt19937_64 rng(10);
    const CMatrix m = oracle::random_matrix(rng, 5, 3);
    Eigen::JacobiSVD<CMatrix> svd(m);
    EXPECT_NEAR(op_norm(m), svd.singularValues()(0), 1e-12);
    EXPECT_LE(op_norm(m), frobenius(m) + 1e-12);
    EXPECT_EQ(op_norm(CMatrix(0, 0)), 0.0);
}

TEST(Norms, UnitarityResidualOfRandomUnitary)
{
    std::mt19937_64 rng(11);
    EXPECT_LE(unitarity_residual(oracle::random_unitary(rng, 4)), 1e-13);
    EXPECT_GT(unitarity_residual(2.0 * identity(2)), 1.0);
}

TEST(RangeBasis, ProjectorOfRankTwo)
{
    std::mt19937_64 rng(12);
    const CMatrix u = oracle::random_unitary(rng, 4);
    const CMatrix p = u.leftCols(2) * u.leftCols(2).adjoint();
    const CMatrix b = orthonormal_range_basis(p, 1e-10);
    ASSERT_EQ(b.cols(), 2);
    EXPECT_LE(frobenius(b.adjoint() * b - identity(2)), 1e-12);
    EXPECT_LE(frobenius(b * b.adjoint() - p), 1e-12);
    EXPECT_EQ(numerical_rank(p, 1e-8), 2);
}

TEST(RangeBasis, RejectsNonProjector)
{
    CMatrix m = identity(2);
    m(0, 0) = 0.5;
    EXPECT_THROW(orthonormal_range_basis(m, 1e-10), Error);
    CMatrix nh = CMatrix::Zero(2, 2);
    nh(0, 1) = 1.0;
    EXPECT_THROW(orthonormal_range_basis(nh, 1e-10), Error);
}

TEST(TwoSite, LeftAndRightApplicationMatchDenseEmbedding)
{
    std::mt19937_64 rng(13);
    const Index d = 2;
    const int n = 4;
    const CMatrix g = oracle::random_matrix(rng, 4, 4);
    const CMatrix x = oracle::random_matrix(rng, 16, 16);
    for (int slot = 0; slot + 1 < n; ++slot)
    {
        const CMatrix full = oracle::embed_two_site(g, d, n, slot);
        CMatrix left = x;
        apply_two_site_left(g, d, n, slot, left);
        EXPECT_LE(frobenius(left - full * x), 1e-11) << "slot " << slot;
        CMatrix right = x;
        apply_two_site_right(g, d, n, slot, right);
        EXPECT_LE(frobenius(right - x * full), 1e-11) << "slot " << slot;
    }
}

TEST(PermutationMatrix, ColumnsFollowImages)
{
    const CMatrix p = permutation_matrix({2, 0, 1});
    EXPECT_EQ(p(2, 0), Complex(1.0));
    EXPECT_EQ(p(0, 1), Complex(1.0));
    EXPECT_EQ(p(1, 2), Complex(1.0));
    EXPECT_LE(unitarity_residual(p), 0.0);
}
