#pragma once

#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <utility>
#include <vector>

#include "rmtcross/crossover_param.hpp"

// Closed-form consecutive-spacing-ratio densities, averages and level
// densities for the GOE->GUE crossover (3x3 Pandey-Mehta surmise) and the
// 3x3 Laguerre invariant cases.
namespace rmtcross::analytic {

inline constexpr double pi = std::numbers::pi;
inline constexpr double sqrt3 = std::numbers::sqrt3;

/// Below this alpha the GOE closed form is used; above 1 minus it, the GUE
/// form. The crossover expression is 0/0 at the endpoints; inside the
/// windows it deviates from the limits by far less than 1e-6.
inline constexpr double alpha_goe_switch = 1e-6;
inline constexpr double alpha_gue_switch = 1.0 - 1e-6;

/// Error function. Delegates to std::erf, which meets the 1e-13 target;
/// verified against quadrature of the defining integral in the test suite.
inline double erf(double x) {
    if (!std::isfinite(x)) throw std::domain_error("erf: argument must be finite");
    return std::erf(x);
}

/// g(eta,zeta) = 4 sqrt(pi) / v^5 * int_0^inf x^4 exp(-eta^2 x^2 / v^2) erf(zeta x / v) dx
/// (independent of v). Nonnegative, increasing in zeta, -> 3 pi/(2 eta^5).
inline double g_integral(double eta, double zeta) {
    if (!(eta > 0.0)) throw std::domain_error("g_integral: eta must be > 0");
    if (!(zeta >= 0.0)) throw std::domain_error("g_integral: zeta must be >= 0");
    const double e2 = eta * eta, z2 = zeta * zeta;
    return zeta * (5.0 * e2 + 3.0 * z2) / (e2 * e2 * (e2 + z2) * (e2 + z2)) +
           3.0 / (e2 * e2 * eta) * std::atan2(zeta, eta);
}

/// Constants of the crossover surmise: a depends on the ratio, b on alpha.
/// b is +inf at alpha=0 and 0 at alpha=1.
struct SurmiseConstants {
    double a;
    double b;
};

inline SurmiseConstants surmise_constants(double r, const CrossoverParam& p) {
    if (!(r >= 0.0)) throw std::domain_error("surmise_constants: r must be >= 0");
    const double a = std::sqrt((r * r + r + 1.0) / 6.0);
    const double b = std::sqrt(p.one_minus_alpha_sq() / (8.0 * p.alpha() * p.alpha()));
    return {a, b};
}

/// GOE spacing-ratio surmise 27/8 * r(r+1) / (r^2+r+1)^(5/2).
inline double ratio_pdf_goe(double r) {
    if (!(r >= 0.0)) throw std::domain_error("ratio_pdf_goe: r must be >= 0");
    const double q = r * r + r + 1.0;
    return 27.0 / 8.0 * r * (r + 1.0) / (q * q * std::sqrt(q));
}

/// GUE spacing-ratio surmise 81 sqrt(3)/(4 pi) * r^2 (r+1)^2 / (r^2+r+1)^4.
inline double ratio_pdf_gue(double r) {
    if (!(r >= 0.0)) throw std::domain_error("ratio_pdf_gue: r must be >= 0");
    const double q = r * r + r + 1.0;
    const double u = r * (r + 1.0);
    return 81.0 * sqrt3 / (4.0 * pi) * u * u / (q * q * q * q);
}

// Single-arctan form of the crossover ratio density, valid for alpha in
// (0,1); the three rational terms and the combined arctan avoid the
// cancellation the three-arctan expression suffers as b -> 0.
inline double ratio_pdf_crossover(double r, const CrossoverParam& p) {
    if (p.is_goe() || p.is_gue())
        throw std::domain_error("ratio_pdf_crossover: alpha must be in (0,1)");
    const auto [a, b] = surmise_constants(r, p);
    const double omas = p.one_minus_alpha_sq();
    const double a2 = a * a, b2 = b * b;
    const double a4 = a2 * a2;
    const double rp1 = r + 1.0;
    const double pref =
        r * rp1 / (16.0 * std::sqrt(6.0) * pi * omas * std::sqrt(omas));
    const double d1 = a2 + b2;
    const double d2 = a2 + b2 * r * r;
    const double d3 = a2 + b2 * rp1 * rp1;
    const double t1 = b * (5.0 * a2 + 3.0 * b2) / (a4 * d1 * d1);
    const double t2 = b * r * (5.0 * a2 + 3.0 * b2 * r * r) / (a4 * d2 * d2);
    const double t3 =
        b * rp1 * (5.0 * a2 + 3.0 * b2 * rp1 * rp1) / (a4 * d3 * d3);
    const double t4 = 3.0 / (a4 * a) *
                      std::atan(b * b2 * r * rp1 /
                                (a * (a2 + b2 * (r * r + r + 1.0))));
    return pref * (t1 + t2 - t3 + t4);
}

/// Crossover spacing-ratio density p(r; alpha). Uses the GOE/GUE closed
/// forms inside the documented endpoint windows.
inline double ratio_pdf(double r, const CrossoverParam& p) {
    if (!(r >= 0.0)) throw std::domain_error("ratio_pdf: r must be >= 0");
    const double alpha = p.alpha();
    if (alpha < alpha_goe_switch) return ratio_pdf_goe(r);
    if (alpha > alpha_gue_switch) return ratio_pdf_gue(r);
    return ratio_pdf_crossover(r, p);
}

/// Three-term evaluation path of the same density, kept as a cross-check;
/// valid for alpha in (0,1).
inline double ratio_pdf_three_term(double r, const CrossoverParam& p) {
    if (!(r >= 0.0)) throw std::domain_error("ratio_pdf_three_term: r must be >= 0");
    if (p.is_goe() || p.is_gue())
        throw std::domain_error("ratio_pdf_three_term: alpha must be in (0,1)");
    const auto [a, b] = surmise_constants(r, p);
    const double omas = p.one_minus_alpha_sq();
    const double pref =
        r * (r + 1.0) / (16.0 * std::sqrt(6.0) * pi * omas * std::sqrt(omas));
    return pref *
           (g_integral(a, b) + g_integral(a, b * r) - g_integral(a, b * (r + 1.0)));
}

/// Density of the restricted ratio rt = min(r, 1/r) on [0,1]:
/// p(rt) + p(1/rt)/rt^2. For the symmetric 3x3 Gaussian crossover this
/// equals 2 p(rt).
inline double rtilde_pdf(double rt, const CrossoverParam& p) {
    if (!(rt >= 0.0 && rt <= 1.0))
        throw std::domain_error("rtilde_pdf: argument must be in [0,1]");
    if (rt == 0.0) return 0.0;
    return ratio_pdf(rt, p) + ratio_pdf(1.0 / rt, p) / (rt * rt);
}

inline constexpr double mean_r_goe_value = 7.0 / 4.0;
inline const double mean_r_gue_value = 27.0 * sqrt3 / (8.0 * pi) - 0.5;
inline const double mean_rtilde_goe_value = 4.0 - 2.0 * sqrt3;
inline const double mean_rtilde_gue_value = 2.0 * sqrt3 / pi - 0.5;

namespace detail {

// The closed-form averages are analytic in alpha but their expressions are
// 0/0 at alpha=1 (and benefit from atan2 at alpha=0). Evaluation is stable
// outside windows of 1e-9 around the endpoints; inside them the limit
// values are returned (the true averages vary linearly near the endpoints,
// so the jump is below 2e-9).
inline constexpr double mean_endpoint_switch = 1e-9;

}  // namespace detail

/// Average ratio <r> as a function of the crossover parameter.
inline double mean_r(const CrossoverParam& p) {
    const double alpha = p.alpha();
    if (alpha < detail::mean_endpoint_switch) return mean_r_goe_value;
    if (alpha > 1.0 - detail::mean_endpoint_switch) return mean_r_gue_value;
    const double a2 = alpha * alpha;
    const double omas = p.one_minus_alpha_sq();
    return 9.0 * sqrt3 * alpha / (2.0 * pi * (3.0 + a2)) - 0.75 +
           (5.0 + a2) / (pi * omas) * std::atan2(3.0 - a2, 2.0 * sqrt3 * alpha) -
           (7.0 + 5.0 * a2) / (2.0 * pi * omas) * std::atan(alpha / sqrt3);
}

/// Average restricted ratio <rt>.
inline double mean_rtilde(const CrossoverParam& p) {
    const double alpha = p.alpha();
    if (alpha < detail::mean_endpoint_switch) return mean_rtilde_goe_value;
    if (alpha > 1.0 - detail::mean_endpoint_switch) return mean_rtilde_gue_value;
    const double a2 = alpha * alpha;
    const double omas = p.one_minus_alpha_sq();
    const double omas32 = omas * std::sqrt(omas);
    return 4.0 * (2.0 + a2) / (pi * omas) *
               std::atan2(sqrt3 * (1.0 + a2), 2.0 * alpha) -
           4.0 * sqrt3 / (pi * omas32) *
               std::atan2(omas32, alpha * (3.0 + a2)) -
           (17.0 + 7.0 * a2) / (pi * omas) * std::atan(alpha / sqrt3) -
           std::atan(sqrt3 * alpha) / pi;
}

/// 3x3 Laguerre surmises: beta=1 (LOE) 32 (r^2+r)/(r+2)^5,
/// beta=2 (LUE) 420 (r^2+r)^2/(r+2)^8.
inline double laguerre3_pdf(double r, int beta) {
    if (!(r >= 0.0)) throw std::domain_error("laguerre3_pdf: r must be >= 0");
    const double u = r * r + r;
    const double d = r + 2.0;
    const double d4 = d * d * d * d;
    if (beta == 1) return 32.0 * u / (d4 * d);
    if (beta == 2) return 420.0 * u * u / (d4 * d4);
    throw std::domain_error("laguerre3_pdf: beta must be 1 or 2");
}

/// Restricted-ratio density for the 3x3 Laguerre surmises. The Laguerre
/// spacing joint density is not exchange symmetric, so this does not
/// collapse to 2 p(rt).
inline double laguerre3_rtilde_pdf(double rt, int beta) {
    if (!(rt >= 0.0 && rt <= 1.0))
        throw std::domain_error("laguerre3_rtilde_pdf: argument must be in [0,1]");
    if (rt == 0.0) return 0.0;
    return laguerre3_pdf(rt, beta) + laguerre3_pdf(1.0 / rt, beta) / (rt * rt);
}

/// Joint eigenvalue density of the 3x3 crossover ensemble at scale v,
/// valid for alpha strictly inside (0,1); the invariant endpoints have
/// dedicated evaluation modes below.
inline double joint_eigen_pdf3(double x1, double x2, double x3,
                               const CrossoverParam& p, double v = 1.0) {
    if (p.is_goe() || p.is_gue())
        throw std::domain_error(
            "joint_eigen_pdf3: alpha must be in (0,1); use the goe/gue modes");
    if (!(v > 0.0)) throw std::domain_error("joint_eigen_pdf3: v must be > 0");
    const double omas = p.one_minus_alpha_sq();
    const double c = std::sqrt(omas / (8.0 * p.alpha() * p.alpha() * v * v));
    const double fac = std::erf(c * (x1 - x2)) - std::erf(c * (x1 - x3)) +
                       std::erf(c * (x2 - x3));
    const double vand = (x1 - x2) * (x2 - x3) * (x1 - x3);
    const double v2 = v * v;
    const double pref =
        1.0 / (48.0 * std::sqrt(2.0) * pi * v2 * v2 * v2 * omas * std::sqrt(omas));
    return pref * fac * vand *
           std::exp(-(x1 * x1 + x2 * x2 + x3 * x3) / (4.0 * v2));
}

inline double joint_eigen_pdf3_goe(double x1, double x2, double x3,
                                   double v = 1.0) {
    if (!(v > 0.0)) throw std::domain_error("joint_eigen_pdf3_goe: v must be > 0");
    const double v2 = v * v;
    const double vand = (x1 - x2) * (x1 - x3) * (x2 - x3);
    return std::abs(vand) / (48.0 * std::sqrt(2.0) * pi * v2 * v2 * v2) *
           std::exp(-(x1 * x1 + x2 * x2 + x3 * x3) / (4.0 * v2));
}

inline double joint_eigen_pdf3_gue(double x1, double x2, double x3,
                                   double v = 1.0) {
    if (!(v > 0.0)) throw std::domain_error("joint_eigen_pdf3_gue: v must be > 0");
    const double v2 = v * v;
    const double v6 = v2 * v2 * v2;
    const double vand = (x1 - x2) * (x1 - x3) * (x2 - x3);
    return vand * vand / (768.0 * pi * std::sqrt(pi) * v6 * v * v * v) *
           std::exp(-(x1 * x1 + x2 * x2 + x3 * x3) / (4.0 * v2));
}

/// Joint density of two consecutive spacings (x,y) of the 3x3 crossover
/// ensemble; symmetric under exchange of x and y.
inline double joint_spacing_pdf(double x, double y, const CrossoverParam& p,
                                double v = 1.0) {
    if (!(x >= 0.0 && y >= 0.0))
        throw std::domain_error("joint_spacing_pdf: spacings must be >= 0");
    if (p.is_goe() || p.is_gue())
        throw std::domain_error("joint_spacing_pdf: alpha must be in (0,1)");
    if (!(v > 0.0)) throw std::domain_error("joint_spacing_pdf: v must be > 0");
    if (x > y) std::swap(x, y);  // exchange symmetry holds exactly
    const double omas = p.one_minus_alpha_sq();
    const double c = std::sqrt(omas / (8.0 * p.alpha() * p.alpha() * v * v));
    const double fac = std::erf(c * x) + std::erf(c * y) - std::erf(c * (x + y));
    const double v2 = v * v;
    const double pref =
        1.0 / (4.0 * std::sqrt(6.0 * pi) * v2 * v2 * v * omas * std::sqrt(omas));
    return pref * x * y * (x + y) * fac *
           std::exp(-(x * x + x * y + y * y) / (6.0 * v2));
}

/// Wigner semicircle level density for the scale choice
/// v^2 = 1/(2(1+alpha^2)); support |x| <= sqrt(2N), integral N.
inline double semicircle_density(double x, int n) {
    if (n < 1) throw std::domain_error("semicircle_density: N must be >= 1");
    const double r2 = 2.0 * static_cast<double>(n);
    if (x * x >= r2) return 0.0;
    return std::sqrt(r2 - x * x) / pi;
}

/// Marchenko-Pastur density of the square Wishart case on (0, 2N],
/// integral N; the x->0 edge is an integrable singularity.
inline double mp_density(double x, int n) {
    if (n < 1) throw std::domain_error("mp_density: N must be >= 1");
    const double edge = 2.0 * static_cast<double>(n);
    if (x < 0.0 || x > edge) return 0.0;
    if (x == 0.0) return std::numeric_limits<double>::infinity();
    return std::sqrt((edge - x) / x) / pi;
}

/// A density sampled on an ordered grid.
struct DensityCurve {
    std::vector<double> grid;
    std::vector<double> values;
};

template <class F>
DensityCurve tabulate(const F& f, std::vector<double> grid) {
    DensityCurve c;
    c.values.reserve(grid.size());
    for (double x : grid) c.values.push_back(f(x));
    c.grid = std::move(grid);
    return c;
}

/// Trapezoidal mass of a curve over its grid.
inline double trapezoid_mass(const DensityCurve& c) {
    double s = 0.0;
    for (std::size_t i = 1; i < c.grid.size(); ++i)
        s += 0.5 * (c.values[i] + c.values[i - 1]) * (c.grid[i] - c.grid[i - 1]);
    return s;
}

}  // namespace rmtcross::analytic
