#pragma once

#include <array>
#include <limits>
#include <cmath>
#include <cstddef>
#include <stdexcept>

namespace rmtcross::quadrature {

struct Result {
    double value = 0.0;
    double error_estimate = 0.0;
    std::size_t subdivisions = 0;
    bool converged = true;
};

namespace detail {

// Gauss-Kronrod 7-15 nodes/weights on [-1,1] (positive half; node 0 last).
inline constexpr std::array<double, 8> kNodes = {
    0.991455371120813, 0.949107912342759, 0.864864423359769,
    0.741531185599394, 0.586087235467691, 0.405845151377397,
    0.207784955007898, 0.0};
inline constexpr std::array<double, 8> kWeights = {
    0.022935322010529, 0.063092092629979, 0.104790010322250,
    0.140653259715525, 0.169004726639267, 0.190350578064785,
    0.204432940075298, 0.209482141084728};
inline constexpr std::array<double, 4> kGaussWeights = {
    0.129484966168870, 0.279705391489277, 0.381830050505119,
    0.417959183673469};

template <class F>
void gauss_kronrod_15(const F& f, double a, double b, double& kronrod,
                      double& err) {
    const double c = 0.5 * (a + b);
    const double h = 0.5 * (b - a);
    double fc = f(c);
    double k = kWeights[7] * fc;
    double g = kGaussWeights[3] * fc;
    for (int i = 0; i < 7; ++i) {
        const double dx = h * kNodes[i];
        const double fsum = f(c - dx) + f(c + dx);
        k += kWeights[i] * fsum;
        if (i % 2 == 1) g += kGaussWeights[i / 2] * fsum;
    }
    kronrod = k * h;
    err = std::abs((k - g) * h);
}

template <class F>
void adapt(const F& f, double a, double b, double tol, int depth, Result& out) {
    double v, err;
    gauss_kronrod_15(f, a, b, v, err);
    // Rounding floor: |K-G| of a panel cannot be trusted below the noise of
    // its own sum, so splitting further only multiplies work.
    const double floor =
        32.0 * std::numeric_limits<double>::epsilon() * (std::abs(v) + 1e-300);
    if (err <= tol || err <= floor || depth >= 48) {
        out.value += v;
        out.error_estimate += err;
        if (err > tol && err > floor) out.converged = false;
        return;
    }
    ++out.subdivisions;
    const double m = 0.5 * (a + b);
    adapt(f, a, m, 0.5 * tol, depth + 1, out);
    adapt(f, m, b, 0.5 * tol, depth + 1, out);
}

}  // namespace detail

/// Adaptive Gauss-Kronrod integration of f over the finite interval [a,b]
/// to absolute tolerance abs_tol. Endpoints are never evaluated.
template <class F>
Result integrate(const F& f, double a, double b, double abs_tol = 1e-10) {
    if (!(abs_tol > 0.0)) throw std::invalid_argument("integrate: abs_tol must be > 0");
    Result out;
    if (a == b) return out;
    detail::adapt(f, a, b, abs_tol, 0, out);
    return out;
}

/// Integral of f over [0,inf). The tail is handled exactly by the
/// substitution r = 1/u on [1,inf), which maps algebraic decay r^-p
/// (p > 1) and faster to a smooth integrand on (0,1].
template <class F>
Result integrate_half_line(const F& f, double abs_tol = 1e-10) {
    Result head = integrate(f, 0.0, 1.0, 0.5 * abs_tol);
    auto tail_f = [&f](double u) { return f(1.0 / u) / (u * u); };
    Result tail = integrate(tail_f, 0.0, 1.0, 0.5 * abs_tol);
    head.value += tail.value;
    head.error_estimate += tail.error_estimate;
    head.subdivisions += tail.subdivisions;
    head.converged = head.converged && tail.converged;
    return head;
}

/// Integral of f over (-inf,inf); both tails via the 1/u substitution.
template <class F>
Result integrate_real_line(const F& f, double abs_tol = 1e-10) {
    auto folded = [&f](double x) { return f(x) + f(-x); };
    return integrate_half_line(folded, abs_tol);
}

}  // namespace rmtcross::quadrature
