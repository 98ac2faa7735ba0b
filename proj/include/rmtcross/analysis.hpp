#pragma once

#include <algorithm>
#include <boost/math/tools/minima.hpp>
#include <cmath>
#include <cstdint>
#include <functional>
#include <iostream>
#include <optional>
#include <span>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "rmtcross/analytic.hpp"
#include "rmtcross/crossover_param.hpp"
#include "rmtcross/ensembles.hpp"
#include "rmtcross/errors.hpp"
#include "rmtcross/rng.hpp"
#include "rmtcross/spectra.hpp"

// Crossover-parameter fitting, symmetrized Kullback-Leibler divergences and
// scaling sweeps over ensembles.
namespace rmtcross::analysis {

using spectra::HistogramDensity;
using spectra::RatioSample;

struct MeanResult {
    double mean = 0.0;
    double se = 0.0;
    std::int64_t n = 0;
};

/// Arithmetic mean and its standard error stddev/sqrt(n).
inline MeanResult mean_of_sample(const RatioSample& rs) {
    if (rs.values.empty()) throw std::invalid_argument("mean_of_sample: empty sample");
    const auto n = static_cast<std::int64_t>(rs.values.size());
    double mean = 0.0;
    for (double x : rs.values) mean += x;
    mean /= static_cast<double>(n);
    double ss = 0.0;
    for (double x : rs.values) ss += (x - mean) * (x - mean);
    const double var = n > 1 ? ss / static_cast<double>(n - 1) : 0.0;
    return {mean, std::sqrt(var / static_cast<double>(n)), n};
}

/// Regularizer added to both densities before taking logs.
inline constexpr double kld_epsilon = 1e-12;

/// Discretized symmetrized Kullback-Leibler divergence
///   sum_i p1_i ln(p1_i/p2_i) dx + sum_i p2_i ln(p2_i/p1_i) dx
/// with kld_epsilon added to both densities. Symmetric and >= 0.
inline double kld_symmetric(std::span<const double> p1, std::span<const double> p2,
                            double bin_width) {
    if (p1.size() != p2.size())
        throw std::invalid_argument("kld_symmetric: grids differ in size");
    if (!(bin_width > 0.0))
        throw std::invalid_argument("kld_symmetric: bin width must be > 0");
    double acc = 0.0;
    for (std::size_t i = 0; i < p1.size(); ++i) {
        if (p1[i] < 0.0 || p2[i] < 0.0)
            throw std::domain_error("kld_symmetric: densities must be >= 0");
        const double a = p1[i] + kld_epsilon;
        const double b = p2[i] + kld_epsilon;
        const double l = std::log(a / b);
        acc += (a - b) * l;
    }
    return acc * bin_width;
}

inline double kld_symmetric(const HistogramDensity& h1, const HistogramDensity& h2) {
    if (h1.lo != h2.lo || h1.hi != h2.hi || h1.bin_width != h2.bin_width)
        throw std::invalid_argument("kld_symmetric: histogram grids differ");
    return kld_symmetric(h1.densities, h2.densities, h1.bin_width);
}

/// Symmetrized KLD between an empirical histogram and an analytic curve
/// evaluated at the bin centers.
template <class F>
double kld_vs_curve(const HistogramDensity& h, const F& pdf) {
    std::vector<double> curve(h.densities.size());
    for (std::size_t i = 0; i < curve.size(); ++i) curve[i] = pdf(h.bin_center(i));
    return kld_symmetric(h.densities, curve, h.bin_width);
}

/// Divergences of an empirical (r, rtilde) pair of histograms from the
/// GOE and GUE surmise curves.
struct KldResult {
    double d_goe = 0.0;
    double d_gue = 0.0;
    double d_goe_tilde = 0.0;
    double d_gue_tilde = 0.0;
    std::string grid;
};

inline KldResult kld_against_gaussian_references(const HistogramDensity& hist_r,
                                                 const HistogramDensity& hist_rt) {
    KldResult out;
    out.d_goe = kld_vs_curve(hist_r, analytic::ratio_pdf_goe);
    out.d_gue = kld_vs_curve(hist_r, analytic::ratio_pdf_gue);
    const auto goe = CrossoverParam::from_alpha(0.0);
    const auto gue = CrossoverParam::from_alpha(1.0);
    out.d_goe_tilde =
        kld_vs_curve(hist_rt, [&](double t) { return analytic::rtilde_pdf(t, goe); });
    out.d_gue_tilde =
        kld_vs_curve(hist_rt, [&](double t) { return analytic::rtilde_pdf(t, gue); });
    std::ostringstream os;
    os << "r:[" << hist_r.lo << "," << hist_r.hi << "]/" << hist_r.bin_width
       << " rt:[" << hist_rt.lo << "," << hist_rt.hi << "]/" << hist_rt.bin_width;
    out.grid = os.str();
    return out;
}

enum class FitMethod { mle, histogram_lsq };

inline const char* to_string(FitMethod m) {
    return m == FitMethod::mle ? "mle" : "histogram-lsq";
}

struct FitResult {
    double lambda_eff = 0.0;
    double objective_value = 0.0;
    FitMethod method = FitMethod::mle;
    std::int64_t n_samples = 0;
    bool converged = false;
};

struct FitOptions {
    FitMethod method = FitMethod::mle;
    double lambda_max = 8.0;
    unsigned max_iterations = 200;
    // histogram-lsq binning
    double hist_lo = 0.0;
    double hist_hi = spectra::default_r_max;
    double hist_bin = spectra::default_r_bin;
};

namespace detail {

// Bracketed Brent minimization over t = log(lambda + shift), which maps
// lambda in [0, lambda_max] to a finite interval and resolves small lambda
// well. 26 bits on t gives lambda resolution well below 1e-4.
inline constexpr double fit_log_shift = 1e-3;

template <class Objective>
FitResult minimize_over_lambda(const Objective& f, const FitOptions& opt) {
    const double t_lo = std::log(fit_log_shift);
    const double t_hi = std::log(opt.lambda_max + fit_log_shift);
    auto in_t = [&](double t) { return f(std::max(0.0, std::exp(t) - fit_log_shift)); };
    std::uintmax_t iterations = opt.max_iterations;
    const auto [t_best, f_best] =
        boost::math::tools::brent_find_minima(in_t, t_lo, t_hi, 26, iterations);
    FitResult res;
    res.lambda_eff = std::max(0.0, std::exp(t_best) - fit_log_shift);
    res.objective_value = f_best;
    res.converged = iterations < opt.max_iterations && std::isfinite(f_best);
    return res;
}

}  // namespace detail

/// Fit the effective crossover parameter of the surmise to a pooled ratio
/// sample. MLE maximizes the sample log-likelihood (binning-free);
/// histogram-lsq minimizes squared density residuals on the default grid.
inline FitResult fit_lambda_eff(const RatioSample& rs, const FitOptions& opt = {}) {
    if (rs.kind != spectra::RatioKind::r)
        throw std::invalid_argument("fit_lambda_eff: need an r sample");
    if (rs.values.empty()) throw std::invalid_argument("fit_lambda_eff: empty sample");
    for (double r : rs.values)
        if (!(r >= 0.0)) throw std::domain_error("fit_lambda_eff: ratios must be >= 0");
    if (rs.values.size() < 1000)
        std::cerr << "fit_lambda_eff: warning: only " << rs.values.size()
                  << " samples; the fit may be unreliable\n";

    FitResult res;
    if (opt.method == FitMethod::mle) {
        const double inv_n = 1.0 / static_cast<double>(rs.values.size());
        auto neg_loglik = [&](double lambda) {
            const auto p = CrossoverParam::from_lambda(lambda);
            double acc = 0.0;
            for (double r : rs.values)
                acc -= std::log(std::max(analytic::ratio_pdf(r, p), 1e-300));
            return acc * inv_n;
        };
        res = detail::minimize_over_lambda(neg_loglik, opt);
    } else {
        const HistogramDensity h = spectra::histogram(rs, opt.hist_lo, opt.hist_hi, opt.hist_bin);
        auto sse = [&](double lambda) {
            const auto p = CrossoverParam::from_lambda(lambda);
            double acc = 0.0;
            for (std::size_t i = 0; i < h.densities.size(); ++i) {
                const double d = h.densities[i] - analytic::ratio_pdf(h.bin_center(i), p);
                acc += d * d;
            }
            return acc;
        };
        res = detail::minimize_over_lambda(sse, opt);
    }
    res.method = opt.method;
    res.n_samples = static_cast<std::int64_t>(rs.values.size());
    return res;
}

enum class EnsembleFamily { gauss_crossover, wishart_crossover, qkr };

inline const char* to_string(EnsembleFamily f) {
    switch (f) {
        case EnsembleFamily::gauss_crossover: return "gauss-crossover";
        case EnsembleFamily::wishart_crossover: return "wishart-crossover";
        case EnsembleFamily::qkr: return "qkr";
    }
    return "?";
}

/// One point of a crossover sweep. scaled_param is sqrt(N)*lambda for the
/// matrix ensembles and N^(3/2)*gamma for the kicked rotor.
struct ScalingPoint {
    int n_dim = 0;
    double raw_param = 0.0;
    double scaled_param = 0.0;
    double lambda_eff = 0.0;
    double mean_r = 0.0;
    double mean_rtilde = 0.0;
};

struct SweepSpec {
    EnsembleFamily family = EnsembleFamily::gauss_crossover;
    std::vector<int> dims;
    std::vector<double> raw_params;  // lambda, or gamma for qkr
    std::int64_t target_samples = 150000;
    std::uint64_t seed = 1;
    int threads = 1;
    spectra::SliceMode slice{};
    bool wrap = true;
    // qkr
    double kick = 20000.0;
    double kick_jitter = 50.0;
    std::optional<double> theta0;
    // wishart: M = N + m_offset
    int m_offset = 0;
    // gauss scale override; <= 0 keeps the semicircle choice
    double v = 0.0;

    void validate() const {
        if (dims.empty() || raw_params.empty())
            throw std::invalid_argument("SweepSpec: dims and raw_params must be non-empty");
        for (int n : dims)
            if (n < 3) throw std::invalid_argument("SweepSpec: dimensions must be >= 3");
        for (double x : raw_params)
            if (!(x >= 0.0)) throw std::invalid_argument("SweepSpec: parameters must be >= 0");
        if (target_samples < 1)
            throw std::invalid_argument("SweepSpec: target_samples must be >= 1");
        if (m_offset < 0) throw std::invalid_argument("SweepSpec: m_offset must be >= 0");
    }
};

struct SweepPointReport {
    ScalingPoint point;
    double se_r = 0.0;
    double se_rtilde = 0.0;
    KldResult kld;
    FitResult fit;
    std::int64_t n_samples = 0;
    std::int64_t realizations = 0;
    std::uint64_t point_seed = 0;
    std::uint64_t degenerate_pairs = 0;
    std::string ensemble;
};

namespace detail {

inline RatioSample pool_for_point(const SweepSpec& spec, int n_dim, double raw,
                                  std::uint64_t point_seed, std::int64_t count) {
    using namespace ensembles;
    switch (spec.family) {
        case EnsembleFamily::gauss_crossover: {
            GaussianCrossoverConfig cfg{n_dim, CrossoverParam::from_lambda(raw),
                                        spec.v, point_seed, count};
            return pool_ratios(GaussianCrossoverEnsemble{cfg}, spec.slice, spec.wrap,
                               spec.threads);
        }
        case EnsembleFamily::wishart_crossover: {
            WishartCrossoverConfig cfg{n_dim, n_dim + spec.m_offset,
                                       CrossoverParam::from_lambda(raw), point_seed,
                                       count};
            return pool_ratios(WishartCrossoverEnsemble{cfg}, spec.slice, spec.wrap,
                               spec.threads);
        }
        case EnsembleFamily::qkr: {
            QkrConfig cfg;
            cfg.n = n_dim;
            cfg.kick = spec.kick;
            cfg.gamma = raw;
            cfg.theta0 = spec.theta0;
            cfg.seed = point_seed;
            cfg.count = count;
            cfg.kick_jitter = spec.kick_jitter;
            return pool_ratios(QkrEnsemble{cfg}, spec.slice, spec.wrap, spec.threads);
        }
    }
    throw std::invalid_argument("pool_for_point: unknown family");
}

}  // namespace detail

/// Run a sweep over (N, raw_param) pairs: generate the ensemble, pool
/// ratios, compute averages, fit lambda_eff and compute the reference
/// divergences per point. Points are seeded independently from the master
/// seed, so the report is reproducible point by point.
inline std::vector<SweepPointReport> crossover_report(const SweepSpec& spec) {
    spec.validate();
    std::vector<SweepPointReport> out;
    out.reserve(spec.dims.size() * spec.raw_params.size());
    std::uint64_t point_index = 0;
    for (int n_dim : spec.dims) {
        const auto kind = spec.family == EnsembleFamily::qkr
                              ? spectra::SpectrumKind::circle
                              : spectra::SpectrumKind::line;
        for (double raw : spec.raw_params) {
            const std::uint64_t point_seed = rng::derive_seed(spec.seed, ++point_index);
            const std::size_t per = ensembles::ratios_per_realization(
                static_cast<std::size_t>(n_dim), kind, spec.slice, spec.wrap);
            if (per == 0)
                throw std::invalid_argument("crossover_report: slice yields no ratios");
            const std::int64_t count =
                (spec.target_samples + static_cast<std::int64_t>(per) - 1) /
                static_cast<std::int64_t>(per);

            RatioSample rs = detail::pool_for_point(spec, n_dim, raw, point_seed, count);
            const RatioSample rt = spectra::rtilde_of(rs);

            SweepPointReport rep;
            rep.ensemble = to_string(spec.family);
            rep.point_seed = point_seed;
            rep.realizations = count;
            rep.n_samples = static_cast<std::int64_t>(rs.values.size());
            rep.degenerate_pairs = rs.degenerate_pairs;

            const MeanResult mr = mean_of_sample(rs);
            const MeanResult mt = mean_of_sample(rt);
            rep.fit = fit_lambda_eff(rs);
            rep.kld = kld_against_gaussian_references(
                spectra::histogram_default_r(rs), spectra::histogram_default_rtilde(rt));

            rep.point.n_dim = n_dim;
            rep.point.raw_param = raw;
            rep.point.scaled_param = spec.family == EnsembleFamily::qkr
                                         ? std::pow(n_dim, 1.5) * raw
                                         : std::sqrt(static_cast<double>(n_dim)) * raw;
            rep.point.lambda_eff = rep.fit.lambda_eff;
            rep.point.mean_r = mr.mean;
            rep.point.mean_rtilde = mt.mean;
            rep.se_r = mr.se;
            rep.se_rtilde = mt.se;
            out.push_back(std::move(rep));
        }
    }
    return out;
}

}  // namespace rmtcross::analysis
