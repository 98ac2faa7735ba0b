#pragma once

// Independent numerical oracles for the closed forms under test: quadrature
// of the defining integrals, inverse-CDF sampling, and small statistics
// helpers. Nothing here reuses the closed-form evaluation paths it checks.

#include <algorithm>
#include <cmath>
#include <functional>
#include <random>
#include <stdexcept>
#include <vector>

#include "rmtcross/analytic.hpp"
#include "rmtcross/crossover_param.hpp"
#include "rmtcross/quadrature.hpp"

namespace oracles {

namespace quad = rmtcross::quadrature;

/// erf from its defining integral (2/sqrt(pi)) int_0^x exp(-t^2) dt.
inline double erf_by_quadrature(double x) {
    const double sign = x < 0 ? -1.0 : 1.0;
    const double ax = std::abs(x);
    auto f = [](double t) { return std::exp(-t * t); };
    const double v = quad::integrate(f, 0.0, ax, 1e-14).value;
    return sign * 2.0 / std::sqrt(rmtcross::analytic::pi) * v;
}

/// g(eta,zeta) from its defining integral at unit scale:
/// 4 sqrt(pi) int_0^inf x^4 exp(-eta^2 x^2) erf(zeta x) dx.
inline double g_by_quadrature(double eta, double zeta) {
    auto f = [=](double x) {
        return std::pow(x, 4) * std::exp(-eta * eta * x * x) * std::erf(zeta * x);
    };
    const double cut = 40.0 / eta;  // integrand is numerically zero beyond
    const double v = quad::integrate(f, 0.0, cut, 1e-13).value;
    return 4.0 * std::sqrt(rmtcross::analytic::pi) * v;
}

/// Ratio density from the spacing joint density: p(r) = int_0^inf x Phat(x, r x) dx.
inline double ratio_pdf_by_spacing_quadrature(double r, const rmtcross::CrossoverParam& p,
                                              double v = 1.0) {
    auto f = [&, r, v](double x) {
        return x * rmtcross::analytic::joint_spacing_pdf(x, r * x, p, v);
    };
    // Gaussian decay: a finite cut plus the generic half-line handling both work.
    return quad::integrate(f, 0.0, 30.0 * v, 1e-12).value;
}

/// Ratio density straight from the 3x3 joint eigenvalue density with the
/// delta constraint resolved: p(r) = 6 int dc int_0^inf dx x P(c-x, c, c+r x).
inline double ratio_pdf_by_joint3_quadrature(double r, const rmtcross::CrossoverParam& p,
                                             double v = 1.0) {
    auto inner = [&, r, v](double c) {
        auto f = [&, c](double x) {
            return x * rmtcross::analytic::joint_eigen_pdf3(c - x, c, c + r * x, p, v);
        };
        return quad::integrate(f, 0.0, 30.0 * v, 1e-13).value;
    };
    const double cut = 25.0 * v;
    return 6.0 * quad::integrate(inner, -cut, cut, 1e-11).value;
}

/// k-th moment of a density on [0,inf) via the half-line rule.
inline double moment_by_quadrature(const std::function<double(double)>& pdf, int k,
                                   double abs_tol = 1e-12) {
    auto f = [&](double r) { return std::pow(r, k) * pdf(r); };
    return quad::integrate_half_line(f, abs_tol).value;
}

/// Inverse-CDF sampler for a density on [0,inf): tabulates the CDF on a
/// z = r/(1+r) grid by the trapezoidal rule and inverts by monotone
/// interpolation. Test oracle only.
class InverseCdfSampler {
public:
    explicit InverseCdfSampler(const std::function<double(double)>& pdf,
                               std::size_t grid_points = 20000) {
        z_.resize(grid_points);
        cdf_.resize(grid_points);
        std::vector<double> f(grid_points);
        for (std::size_t i = 0; i < grid_points; ++i) {
            z_[i] = static_cast<double>(i) / static_cast<double>(grid_points);
            const double om = 1.0 - z_[i];
            f[i] = pdf(z_[i] / om) / (om * om);
        }
        cdf_[0] = 0.0;
        for (std::size_t i = 1; i < grid_points; ++i)
            cdf_[i] = cdf_[i - 1] + 0.5 * (f[i] + f[i - 1]) * (z_[i] - z_[i - 1]);
        const double total = cdf_.back();
        if (!(total > 0.0)) throw std::runtime_error("InverseCdfSampler: zero mass");
        for (double& c : cdf_) c /= total;
    }

    template <class Engine>
    double operator()(Engine& eng) const {
        const double u = std::uniform_real_distribution<double>(0.0, 1.0)(eng);
        const auto it = std::upper_bound(cdf_.begin(), cdf_.end(), u);
        const std::size_t hi = std::min<std::size_t>(
            static_cast<std::size_t>(it - cdf_.begin()), cdf_.size() - 1);
        const std::size_t lo = hi - 1;
        const double span = cdf_[hi] - cdf_[lo];
        const double w = span > 0.0 ? (u - cdf_[lo]) / span : 0.5;
        const double z = z_[lo] + w * (z_[hi] - z_[lo]);
        return z / (1.0 - z);
    }

private:
    std::vector<double> z_;
    std::vector<double> cdf_;
};

/// Two-sample Kolmogorov-Smirnov statistic.
inline double ks_statistic(std::vector<double> a, std::vector<double> b) {
    std::sort(a.begin(), a.end());
    std::sort(b.begin(), b.end());
    double d = 0.0;
    std::size_t i = 0, j = 0;
    while (i < a.size() && j < b.size()) {
        if (a[i] <= b[j]) ++i; else ++j;
        const double fa = static_cast<double>(i) / static_cast<double>(a.size());
        const double fb = static_cast<double>(j) / static_cast<double>(b.size());
        d = std::max(d, std::abs(fa - fb));
    }
    return d;
}

/// Critical KS distance at significance level 1% for sample sizes (m, n).
inline double ks_critical_1pct(std::size_t m, std::size_t n) {
    const double c = 1.6276;  // sqrt(-ln(0.005)/2)
    return c * std::sqrt((static_cast<double>(m) + static_cast<double>(n)) /
                         (static_cast<double>(m) * static_cast<double>(n)));
}

/// Pearson chi-squared statistic for uniform bin occupancy.
inline double chi2_uniform(const std::vector<std::size_t>& counts, double total) {
    const double expected = total / static_cast<double>(counts.size());
    double s = 0.0;
    for (std::size_t c : counts) {
        const double d = static_cast<double>(c) - expected;
        s += d * d / expected;
    }
    return s;
}

struct Regression {
    double slope = 0.0;
    double intercept = 0.0;
    double r_squared = 0.0;
};

inline Regression linear_fit(const std::vector<double>& x, const std::vector<double>& y) {
    if (x.size() != y.size() || x.size() < 2)
        throw std::invalid_argument("linear_fit: need matched samples of size >= 2");
    const double n = static_cast<double>(x.size());
    double sx = 0, sy = 0, sxx = 0, sxy = 0, syy = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        sx += x[i]; sy += y[i];
        sxx += x[i] * x[i]; sxy += x[i] * y[i]; syy += y[i] * y[i];
    }
    const double vx = sxx - sx * sx / n;
    const double vy = syy - sy * sy / n;
    const double cov = sxy - sx * sy / n;
    Regression out;
    out.slope = cov / vx;
    out.intercept = (sy - out.slope * sx) / n;
    out.r_squared = vy > 0.0 ? cov * cov / (vx * vy) : 1.0;
    return out;
}

/// Golden-section maximization of a unimodal function on [lo, hi].
inline std::pair<double, double> maximize(const std::function<double(double)>& f,
                                          double lo, double hi, double tol = 1e-10) {
    const double phi = (std::sqrt(5.0) - 1.0) / 2.0;
    double a = lo, b = hi;
    double c = b - phi * (b - a), d = a + phi * (b - a);
    double fc = f(c), fd = f(d);
    while (b - a > tol) {
        if (fc > fd) { b = d; d = c; fd = fc; c = b - phi * (b - a); fc = f(c); }
        else { a = c; c = d; fc = fd; d = a + phi * (b - a); fd = f(d); }
    }
    const double x = 0.5 * (a + b);
    return {x, f(x)};
}

}  // namespace oracles
