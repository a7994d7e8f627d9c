#pragma once

// Rapidity-dependent diagonal S-matrices built from signed Blaschke-type
// products on the strip 0 <= Im zeta <= pi:
//
//   G(zeta) = eps * prod_k g_{z_k}(zeta),
//   g_z(zeta) = (e^zeta - e^z)(e^zeta - e^{conj z + i pi})
//             / ((e^zeta - e^{conj z})(e^zeta - e^{z - i pi})),
//
// with 0 < Im z_k <= pi/2. The diagonal S-matrix has
//   S(theta)^{ab}_{ce} = omega_{ab}(theta) delta_{a e} delta_{b c}.

#include <numbers>
#include <string>
#include <vector>

#include "rmatrix.hpp"

namespace zfock
{

inline constexpr double pi = std::numbers::pi;
inline const Complex i_pi{0.0, pi};

struct GLimFunction
{
    int epsilon = 1;
    std::vector<Complex> zeros;

    GLimFunction() = default;
    GLimFunction(int eps, std::vector<Complex> z) : epsilon(eps), zeros(std::move(z)) { validate(); }

    void validate() const
    {
        if (epsilon != 1 && epsilon != -1) throw Error("GLimFunction: epsilon must be +1 or -1");
        for (const auto& z : zeros)
        {
            if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) throw Error("GLimFunction: non-finite zero");
            if (!(z.imag() > 0.0) || z.imag() > pi / 2 + 1e-14)
                throw Error("GLimFunction: zero " + std::to_string(z.real()) + "+" + std::to_string(z.imag()) +
                            "i outside 0 < Im z <= pi/2");
        }
    }

    /// Smallest imaginary part among the zeros (pi/2 if there are none).
    double margin() const
    {
        double m = pi / 2;
        for (const auto& z : zeros) m = std::min(m, z.imag());
        return m;
    }
};

inline constexpr double pole_threshold = 1e-13;

namespace detail
{

/// (e^zeta - e^w1) / (e^zeta - e^w2) together with the relative size of the
/// denominator |e^zeta - e^w2| / max(|e^zeta|, |e^w2|).
struct Ratio
{
    Complex value;
    double denominator;
};

inline Ratio exp_ratio(Complex zeta, Complex w1, Complex w2)
{
    if (zeta.real() >= w2.real())
    {
        const Complex num = 1.0 - std::exp(w1 - zeta);
        const Complex den = 1.0 - std::exp(w2 - zeta);
        return {num / den, std::abs(den)};
    }
    // divide through by e^{w2}
    const Complex num = std::exp(zeta - w2) - std::exp(w1 - w2);
    const Complex den = std::exp(zeta - w2) - 1.0;
    return {num / den, std::abs(den)};
}

} // namespace detail

/// Single factor g_z(zeta) and its smallest relative denominator.
inline detail::Ratio blaschke_factor(Complex z, Complex zeta)
{
    const auto a = detail::exp_ratio(zeta, z, std::conj(z));
    const auto b = detail::exp_ratio(zeta, std::conj(z) + i_pi, z - i_pi);
    return {a.value * b.value, std::min(a.denominator, b.denominator)};
}

inline double glim_min_denominator(const GLimFunction& g, Complex zeta)
{
    double m = 1.0;
    for (const auto& z : g.zeros) m = std::min(m, blaschke_factor(z, zeta).denominator);
    return m;
}

inline Complex glim_eval(const GLimFunction& g, Complex zeta)
{
    Complex v = static_cast<double>(g.epsilon);
    for (const auto& z : g.zeros)
    {
        const auto f = blaschke_factor(z, zeta);
        if (f.denominator < pole_threshold)
            throw Error("glim_eval: evaluation point too close to a pole (denominator " + std::to_string(f.denominator) +
                        ")");
        v *= f.value;
    }
    return v;
}

inline std::vector<double> linspace(double lo, double hi, int points)
{
    std::vector<double> out;
    if (points <= 0) return out;
    if (points == 1) return {lo};
    for (int k = 0; k < points; ++k) out.push_back(lo + (hi - lo) * k / (points - 1));
    return out;
}

struct GridOptions
{
    double theta_min = -10.0;
    double theta_max = 10.0;
    int points = 1000;
    int ybe_points = 20;
    double limit_theta = 30.0;
};

struct GLimReport
{
    double unit_modulus = 0.0;  // max ||G(theta)| - 1|
    double reflection = 0.0;    // max |G(theta) - conj G(i pi + theta)|
    double factor_reflection = 0.0;
    double limit = 0.0;         // max |G(+-L) - eps|
    double min_denominator = 1.0;
    double margin = pi / 2;
    bool margin_warning = false;

    double worst() const { return std::max({unit_modulus, reflection, factor_reflection, limit}); }
};

inline constexpr double margin_warning_threshold = 1e-3;

inline GLimReport glim_check(const GLimFunction& g, const GridOptions& grid = {})
{
    GLimReport rep;
    const auto thetas = linspace(grid.theta_min, grid.theta_max, grid.points);
    for (double t : thetas)
    {
        const Complex v = glim_eval(g, t);
        const Complex w = glim_eval(g, i_pi + t);
        rep.unit_modulus = std::max(rep.unit_modulus, std::abs(std::abs(v) - 1.0));
        rep.reflection = std::max(rep.reflection, std::abs(v - std::conj(w)));
        for (const auto& z : g.zeros)
            rep.factor_reflection = std::max(rep.factor_reflection, std::abs(blaschke_factor(z, t).value -
                                                                              std::conj(blaschke_factor(z, i_pi + t).value)));
    }
    // pole-freeness over the closed strip
    for (double t : linspace(grid.theta_min, grid.theta_max, 101))
        for (double y : linspace(0.0, pi, 41)) rep.min_denominator = std::min(rep.min_denominator, glim_min_denominator(g, {t, y}));
    for (double t : {grid.limit_theta, -grid.limit_theta})
        rep.limit = std::max(rep.limit, std::abs(glim_eval(g, t) - static_cast<double>(g.epsilon)));
    rep.margin = g.margin();
    rep.margin_warning = rep.margin < margin_warning_threshold;
    return rep;
}

struct DiagonalSMatrix
{
    Index d = 0;
    std::vector<std::vector<GLimFunction>> entries;  // entries[a][b] = omega_{ab}

    DiagonalSMatrix() = default;
    DiagonalSMatrix(Index dim, std::vector<std::vector<GLimFunction>> e) : d(dim), entries(std::move(e))
    {
        if (d < 1) throw Error("DiagonalSMatrix: d must be >= 1");
        if (static_cast<Index>(entries.size()) != d) throw Error("DiagonalSMatrix: entries must be d x d");
        for (const auto& row : entries)
            if (static_cast<Index>(row.size()) != d) throw Error("DiagonalSMatrix: entries must be d x d");
    }

    const GLimFunction& omega(Index a, Index b) const
    {
        return entries[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)];
    }

    /// S(zeta) as a d^2 x d^2 matrix.
    CMatrix eval(Complex zeta) const
    {
        CMatrix m = CMatrix::Zero(d * d, d * d);
        for (Index a = 0; a < d; ++a)
            for (Index b = 0; b < d; ++b) m(a * d + b, b * d + a) = glim_eval(omega(a, b), zeta);
        return m;
    }

    /// Entrywise limit at +-infinity: the signs eps_{ab}.
    CMatrix limit() const
    {
        CMatrix m = CMatrix::Zero(d * d, d * d);
        for (Index a = 0; a < d; ++a)
            for (Index b = 0; b < d; ++b) m(a * d + b, b * d + a) = static_cast<double>(omega(a, b).epsilon);
        return m;
    }

    double margin() const
    {
        double m = pi / 2;
        for (const auto& row : entries)
            for (const auto& g : row) m = std::min(m, g.margin());
        return m;
    }
};

struct SMatrixAxioms
{
    double unitarity = 0.0;
    double hermitian_analyticity = 0.0;
    double yang_baxter = 0.0;
    double crossing = 0.0;
    double diagonal_reality = 0.0;  // max |omega_aa(-theta) - conj omega_aa(theta)|

    double worst() const { return std::max({unitarity, hermitian_analyticity, yang_baxter, crossing, diagonal_reality}); }
};

inline SMatrixAxioms smatrix_axiom_residuals(const DiagonalSMatrix& sd, const GridOptions& grid = {})
{
    SMatrixAxioms rep;
    const Index d = sd.d;
    const CMatrix id = identity(d * d);
    for (double t : linspace(grid.theta_min, grid.theta_max, grid.points))
    {
        const CMatrix s = sd.eval(t);
        rep.unitarity = std::max(rep.unitarity, frobenius(s.adjoint() * s - id));
        rep.hermitian_analyticity = std::max(rep.hermitian_analyticity, frobenius(sd.eval(-t) - s.adjoint()));
        const RMatrix crossed = crossing_partner(RMatrix(d, sd.eval(i_pi - t)));
        rep.crossing = std::max(rep.crossing, max_abs(s - crossed.mat));
        for (Index a = 0; a < d; ++a)
            rep.diagonal_reality = std::max(rep.diagonal_reality, std::abs(glim_eval(sd.omega(a, a), -t) -
                                                                           std::conj(glim_eval(sd.omega(a, a), t))));
    }
    const auto ybe = linspace(grid.theta_min, grid.theta_max, grid.ybe_points);
    const CMatrix one = identity(d);
    for (double t : ybe)
        for (double u : ybe)
        {
            const CMatrix st = sd.eval(t);
            const CMatrix su = sd.eval(u);
            const CMatrix stu = sd.eval(t + u);
            const CMatrix lhs = tensor_product(st, one) * tensor_product(one, stu) * tensor_product(su, one);
            const CMatrix rhs = tensor_product(one, su) * tensor_product(stu, one) * tensor_product(one, st);
            rep.yang_baxter = std::max(rep.yang_baxter, frobenius(lhs - rhs));
        }
    return rep;
}

struct SMatrixLimits
{
    RMatrix s0;
    RMatrix s_plus;
    RMatrix s_minus;
    double plus_minus = 0.0;        // max |S_+ - S_-|
    double numeric_limit = 0.0;     // max |S(+-L) - S_+-|
    double involutive_s0 = 0.0;
    double involutive_plus = 0.0;
    double involutive_minus = 0.0;
    double crossing_plus = 0.0;
    double crossing_minus = 0.0;
};

inline SMatrixLimits smatrix_limits(const DiagonalSMatrix& sd, const GridOptions& grid = {})
{
    const Index d = sd.d;
    SMatrixLimits rep;
    rep.s0 = RMatrix(d, sd.eval(0.0));
    rep.s_plus = RMatrix(d, sd.limit());
    rep.s_minus = RMatrix(d, sd.limit());
    rep.plus_minus = max_abs(rep.s_plus.mat - rep.s_minus.mat);
    rep.numeric_limit = std::max(max_abs(sd.eval(grid.limit_theta) - rep.s_plus.mat),
                                 max_abs(sd.eval(-grid.limit_theta) - rep.s_minus.mat));
    auto inv = [](const RMatrix& s) { return frobenius(s.mat * s.mat - identity(s.mat.rows())); };
    rep.involutive_s0 = inv(rep.s0);
    rep.involutive_plus = inv(rep.s_plus);
    rep.involutive_minus = inv(rep.s_minus);
    rep.crossing_plus = crossing_residual(rep.s_plus);
    rep.crossing_minus = crossing_residual(rep.s_minus);
    return rep;
}

} // namespace zfock
