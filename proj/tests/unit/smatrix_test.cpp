#include <gtest/gtest.h>

#include "oracles.hpp"
#include "zfock/smatrix.hpp"

using namespace zfock;

namespace
{

const Complex half_pi{0.0, pi / 2};

GLimFunction ising() { return GLimFunction(1, {half_pi}); }

DiagonalSMatrix scalar(const GLimFunction& g) { return DiagonalSMatrix(1, {{g}}); }

GLimFunction random_glim(std::mt19937_64& rng, bool reflection_symmetric)
{
    std::uniform_int_distribution<int> count(0, 3);
    std::uniform_real_distribution<double> re(-3.0, 3.0);
    std::uniform_real_distribution<double> im(0.1, pi / 2);
    std::vector<Complex> zeros;
    const int n = count(rng);
    for (int k = 0; k < n; ++k)
    {
        const Complex z(re(rng), im(rng));
        zeros.push_back(z);
        if (reflection_symmetric) zeros.push_back(-std::conj(z));
    }
    return GLimFunction(rng() % 2 ? 1 : -1, zeros);
}

} // namespace

TEST(GLim, ConstantFunction)
{
    const GLimFunction g(1, {});
    EXPECT_EQ(glim_eval(g, Complex(0.3, 1.0)), Complex(1.0));
    EXPECT_EQ(glim_eval(GLimFunction(-1, {}), 5.0), Complex(-1.0));
    const auto rep = glim_check(g);
    EXPECT_EQ(rep.worst(), 0.0);
}

TEST(GLim, IsingValueAtZero)
{
    // ((1 - i) / (1 + i))^2 = -1
    EXPECT_LE(std::abs(glim_eval(ising(), 0.0) + 1.0), 1e-15);
}

TEST(GLim, LimitsApproachEpsilon)
{
    for (int eps : {1, -1})
    {
        const GLimFunction g(eps, {Complex(0.2, 0.4), Complex(-1.0, 1.2)});
        for (double t : {30.0, -30.0, 200.0, -200.0}) EXPECT_LE(std::abs(glim_eval(g, t) - double(eps)), 1e-10);
    }
}

TEST(GLim, ValidatesZeros)
{
    EXPECT_THROW(GLimFunction(1, {Complex(0.0, 0.0)}), Error);
    EXPECT_THROW(GLimFunction(1, {Complex(0.0, -0.1)}), Error);
    EXPECT_THROW(GLimFunction(1, {Complex(0.0, 1.6)}), Error);
    EXPECT_THROW(GLimFunction(2, {}), Error);
    EXPECT_NO_THROW(GLimFunction(1, {Complex(0.0, pi / 2)}));
}

TEST(GLim, PoleProximityIsReported)
{
    const Complex z(0.3, 0.5);
    const GLimFunction g(1, {z});
    EXPECT_THROW(glim_eval(g, std::conj(z)), Error);
}

TEST(GLim, IsingUnitModulusAndReflection)
{
    const auto rep = glim_check(ising());
    EXPECT_LE(rep.unit_modulus, 1e-12);
    EXPECT_LE(rep.reflection, 1e-12);
    EXPECT_LE(rep.factor_reflection, 1e-12);
    EXPECT_LE(rep.limit, 1e-10);
    EXPECT_FALSE(rep.margin_warning);
}

TEST(GLim, RandomConfigurations)
{
    std::mt19937_64 rng(51);
    for (int trial = 0; trial < 10; ++trial)
    {
        const auto g = random_glim(rng, false);
        const auto rep = glim_check(g);
        EXPECT_LE(rep.unit_modulus, 1e-10);
        EXPECT_LE(rep.reflection, 1e-10);
        EXPECT_LE(rep.factor_reflection, 1e-12);
        EXPECT_LE(rep.limit, 1e-10);
        EXPECT_GT(rep.min_denominator, 1e-6);
    }
}

TEST(GLim, MarginFlag)
{
    const auto rep = glim_check(GLimFunction(1, {Complex(0.0, 1e-5)}));
    EXPECT_TRUE(rep.margin_warning);
    EXPECT_LE(rep.unit_modulus, 1e-10);
}

TEST(SMatrix, IsingScalarAxioms)
{
    GridOptions grid;
    grid.points = 20;
    grid.ybe_points = 20;
    const auto rep = smatrix_axiom_residuals(scalar(ising()), grid);
    EXPECT_LE(rep.worst(), 1e-10);
}

TEST(SMatrix, ConstantIdentityType)
{
    const GLimFunction one(1, {});
    const DiagonalSMatrix sd(2, {{one, one}, {one, one}});
    const auto rep = smatrix_axiom_residuals(sd);
    EXPECT_EQ(rep.worst(), 0.0);
    EXPECT_EQ(frobenius(sd.eval(0.7) - flip(2).mat), 0.0);
}

TEST(SMatrix, YangBaxterForAnyDiagonal)
{
    std::mt19937_64 rng(52);
    std::vector<std::vector<GLimFunction>> entries(3);
    for (auto& row : entries)
        for (int b = 0; b < 3; ++b) row.push_back(random_glim(rng, false));
    GridOptions grid;
    grid.points = 10;
    EXPECT_LE(smatrix_axiom_residuals(DiagonalSMatrix(3, entries), grid).yang_baxter, 1e-12);
}

TEST(SMatrix, AsymmetricZeroBreaksHermitianAnalyticity)
{
    GridOptions grid;
    grid.points = 50;
    const auto rep = smatrix_axiom_residuals(scalar(GLimFunction(1, {Complex(0.5, 0.3)})), grid);
    EXPECT_GT(rep.hermitian_analyticity, 1e-3);
    EXPECT_GT(rep.diagonal_reality, 1e-3);
    EXPECT_LE(rep.unitarity, 1e-10);
}

TEST(SMatrix, ReflectionSymmetricZerosSatisfyAllAxioms)
{
    std::mt19937_64 rng(53);
    GridOptions grid;
    grid.points = 200;
    grid.ybe_points = 8;
    for (int trial = 0; trial < 5; ++trial)
    {
        const auto g = random_glim(rng, true);
        const auto h = random_glim(rng, true);
        const DiagonalSMatrix sd(2, {{g, h}, {h, g}});
        const auto rep = smatrix_axiom_residuals(sd, grid);
        EXPECT_LE(rep.worst(), 1e-10);
        const auto lim = smatrix_limits(sd, grid);
        EXPECT_LE(lim.involutive_s0, 1e-10);
    }
}

TEST(SMatrix, Shapes)
{
    EXPECT_THROW(DiagonalSMatrix(2, {{ising()}}), Error);
    EXPECT_THROW(DiagonalSMatrix(0, {}), Error);
}

TEST(Limits, IsingScalar)
{
    const auto lim = smatrix_limits(scalar(ising()));
    EXPECT_LE(std::abs(lim.s0.mat(0, 0) + 1.0), 1e-14);
    EXPECT_EQ(lim.s_plus.mat(0, 0), Complex(1.0));
    EXPECT_EQ(lim.s_minus.mat(0, 0), Complex(1.0));
    EXPECT_LE(lim.involutive_s0, 1e-12);
    EXPECT_EQ(lim.involutive_plus, 0.0);
    EXPECT_LE(lim.numeric_limit, 1e-10);
}

TEST(Limits, ConstantEntries)
{
    const GLimFunction p(1, {});
    const GLimFunction m(-1, {});
    const auto lim = smatrix_limits(DiagonalSMatrix(2, {{p, m}, {m, p}}));
    EXPECT_EQ(frobenius(lim.s0.mat - lim.s_plus.mat), 0.0);
    EXPECT_EQ(frobenius(lim.s_plus.mat - lim.s_minus.mat), 0.0);
    EXPECT_EQ(lim.crossing_plus, 0.0);
    EXPECT_EQ(lim.involutive_minus, 0.0);
}

TEST(Limits, MixedSignsAreNormalFormLike)
{
    const DiagonalSMatrix sd(2, {{ising(), GLimFunction(-1, {Complex(0.5, 0.8), Complex(-0.5, 0.8)})},
                                 {GLimFunction(-1, {Complex(0.5, 0.8), Complex(-0.5, 0.8)}), GLimFunction(-1, {})}});
    const auto lim = smatrix_limits(sd);
    EXPECT_EQ(lim.plus_minus, 0.0);
    EXPECT_EQ(lim.crossing_plus, 0.0);
    EXPECT_EQ(lim.crossing_minus, 0.0);
    EXPECT_EQ(lim.involutive_plus, 0.0);
}
