#pragma once

#include <Eigen/Dense>
#include <cmath>
#include <complex>
#include <cstdint>
#include <numbers>
#include <optional>
#include <random>
#include <sstream>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

#include "rmtcross/crossover_param.hpp"
#include "rmtcross/errors.hpp"
#include "rmtcross/rng.hpp"
#include "rmtcross/spectra.hpp"

// Seeded samplers for the Gaussian crossover, Wishart-Laguerre crossover and
// quantum-kicked-rotor ensembles, plus eigenvalue/eigenangle extraction.
// Every realization is a pure function of (seed, index).
namespace rmtcross::ensembles {

using spectra::Spectrum;
using spectra::SpectrumKind;

/// GOE draw at scale v: symmetric, diagonal N(0, 2v^2), off-diagonal N(0, v^2).
inline Eigen::MatrixXd sample_goe(int n, double v, std::mt19937_64& eng) {
    if (n < 2) throw std::invalid_argument("sample_goe: N must be >= 2");
    if (!(v > 0.0)) throw std::invalid_argument("sample_goe: v must be > 0");
    std::normal_distribution<double> gauss;
    Eigen::MatrixXd h(n, n);
    const double diag_sigma = v * std::sqrt(2.0);
    for (int i = 0; i < n; ++i) {
        h(i, i) = diag_sigma * gauss(eng);
        for (int j = i + 1; j < n; ++j) {
            const double x = v * gauss(eng);
            h(i, j) = x;
            h(j, i) = x;
        }
    }
    return h;
}

/// GUE draw at scale v: Hermitian, real diagonal N(0, 2v^2), off-diagonal
/// real and imaginary parts each N(0, v^2).
inline Eigen::MatrixXcd sample_gue(int n, double v, std::mt19937_64& eng) {
    if (n < 2) throw std::invalid_argument("sample_gue: N must be >= 2");
    if (!(v > 0.0)) throw std::invalid_argument("sample_gue: v must be > 0");
    std::normal_distribution<double> gauss;
    Eigen::MatrixXcd h(n, n);
    const double diag_sigma = v * std::sqrt(2.0);
    for (int i = 0; i < n; ++i) {
        h(i, i) = diag_sigma * gauss(eng);
        for (int j = i + 1; j < n; ++j) {
            const std::complex<double> z(v * gauss(eng), v * gauss(eng));
            h(i, j) = z;
            h(j, i) = std::conj(z);
        }
    }
    return h;
}

struct GaussianCrossoverConfig {
    int n = 2;
    CrossoverParam param = CrossoverParam::from_alpha(0.0);
    double v = 0.0;  // <= 0 selects the semicircle scale below
    std::uint64_t seed = 0;
    std::int64_t count = 1;

    /// Scale giving the semicircle density with edge sqrt(2N):
    /// v^2 = 1/(2(1+alpha^2)).
    double scale() const {
        if (v > 0.0) return v;
        const double a = param.alpha();
        return std::sqrt(0.5 / (1.0 + a * a));
    }
    void validate() const {
        if (n < 2) throw std::invalid_argument("GaussianCrossoverConfig: N must be >= 2");
        if (count < 1) throw std::invalid_argument("GaussianCrossoverConfig: count must be >= 1");
        if (!(scale() > 0.0)) throw std::invalid_argument("GaussianCrossoverConfig: v must be > 0");
    }
};

/// H = sqrt(1-alpha^2) H1 + alpha H2 with independent GOE H1 and GUE H2
/// at the same scale. At alpha=0 the imaginary part is exactly zero.
inline Eigen::MatrixXcd sample_crossover_gaussian(const GaussianCrossoverConfig& cfg,
                                                  std::uint64_t index) {
    cfg.validate();
    std::mt19937_64 eng = rng::substream(cfg.seed, index);
    const double v = cfg.scale();
    const Eigen::MatrixXd h1 = sample_goe(cfg.n, v, eng);
    const Eigen::MatrixXcd h2 = sample_gue(cfg.n, v, eng);
    const double w1 = std::sqrt(cfg.param.one_minus_alpha_sq());
    return w1 * h1 + cfg.param.alpha() * h2;
}

struct WishartCrossoverConfig {
    int n = 2;
    int m = 2;
    CrossoverParam param = CrossoverParam::from_lambda(0.0);
    std::uint64_t seed = 0;
    std::int64_t count = 1;

    void validate() const {
        if (n < 2 || m < n)
            throw std::invalid_argument("WishartCrossoverConfig: need 2 <= N <= M");
        if (count < 1) throw std::invalid_argument("WishartCrossoverConfig: count must be >= 1");
    }
};

/// W = A A^dag with A = (A1 + lambda A2)/sqrt(1+lambda^2); A1 is real
/// Ginibre with entries N(0,1), A2 complex Ginibre with real/imag parts
/// N(0,1/2). Output is exactly Hermitian and positive semidefinite up to
/// roundoff.
inline Eigen::MatrixXcd sample_crossover_wishart(const WishartCrossoverConfig& cfg,
                                                 std::uint64_t index) {
    cfg.validate();
    std::mt19937_64 eng = rng::substream(cfg.seed, index);
    std::normal_distribution<double> gauss;
    Eigen::MatrixXd a1(cfg.n, cfg.m);
    for (int i = 0; i < cfg.n; ++i)
        for (int j = 0; j < cfg.m; ++j) a1(i, j) = gauss(eng);
    const double s = 1.0 / std::sqrt(2.0);
    Eigen::MatrixXcd a(cfg.n, cfg.m);
    const double w1 = std::sqrt(cfg.param.one_minus_alpha_sq());
    const double w2 = cfg.param.alpha();
    for (int i = 0; i < cfg.n; ++i)
        for (int j = 0; j < cfg.m; ++j) {
            const std::complex<double> a2(s * gauss(eng), s * gauss(eng));
            a(i, j) = w1 * a1(i, j) + w2 * a2;
        }
    Eigen::MatrixXcd w = a * a.adjoint();
    return ((w + w.adjoint()) * 0.5).eval();
}

struct QkrConfig {
    int n = 3;                   // odd Floquet dimension
    double kick = 20000.0;       // stochasticity (kick strength)
    double gamma = 0.0;          // time-reversal-breaking parameter
    std::optional<double> theta0;  // parity-breaking angle; default pi/(2N)
    std::uint64_t seed = 0;
    std::int64_t count = 1;
    double kick_jitter = 50.0;   // half-width of the uniform kick window

    double resolved_theta0() const {
        return theta0 ? *theta0 : std::numbers::pi / (2.0 * n);
    }
    void validate() const {
        if (n < 3 || n % 2 == 0)
            throw std::invalid_argument("QkrConfig: N must be odd and >= 3");
        if (!(kick >= 0.0)) throw std::invalid_argument("QkrConfig: kick must be >= 0");
        if (!(gamma >= 0.0)) throw std::invalid_argument("QkrConfig: gamma must be >= 0");
        if (!(kick_jitter >= 0.0))
            throw std::invalid_argument("QkrConfig: kick_jitter must be >= 0");
        if (count < 1) throw std::invalid_argument("QkrConfig: count must be >= 1");
    }
};

/// Kicked-rotor Floquet operator in the position basis,
///   U_mn = (1/N) exp(-i k cos(2 pi m/N + theta0))
///          * sum_l exp(-i (l^2/2 - gamma l + 2 pi l (m-n)/N)),
/// with l, m, n in {-N', ..., N'}, N' = (N-1)/2. The kick strength of each
/// realization is drawn uniformly from [kick - jitter, kick + jitter].
inline Eigen::MatrixXcd qkr_floquet(const QkrConfig& cfg, std::uint64_t index) {
    cfg.validate();
    std::mt19937_64 eng = rng::substream(cfg.seed, index);
    double kick = cfg.kick;
    if (cfg.kick_jitter > 0.0)
        kick += std::uniform_real_distribution<double>(-cfg.kick_jitter,
                                                       cfg.kick_jitter)(eng);
    const int n = cfg.n;
    const int half = (n - 1) / 2;
    const double theta0 = cfg.resolved_theta0();
    const double two_pi_over_n = 2.0 * std::numbers::pi / n;

    // Free-evolution phases and the convolution kernel over d = (m-n) mod N.
    std::vector<std::complex<double>> cl(static_cast<std::size_t>(n));
    for (int l = -half; l <= half; ++l)
        cl[static_cast<std::size_t>(l + half)] =
            std::polar(1.0, -(0.5 * l * l - cfg.gamma * l));
    std::vector<std::complex<double>> kernel(static_cast<std::size_t>(n));
    for (int d = 0; d < n; ++d) {
        std::complex<double> s{0.0, 0.0};
        for (int l = -half; l <= half; ++l)
            s += cl[static_cast<std::size_t>(l + half)] *
                 std::polar(1.0, -two_pi_over_n * l * d);
        kernel[static_cast<std::size_t>(d)] = s / static_cast<double>(n);
    }

    Eigen::MatrixXcd u(n, n);
    for (int i = 0; i < n; ++i) {
        const int m = i - half;
        const std::complex<double> kick_phase =
            std::polar(1.0, -kick * std::cos(two_pi_over_n * m + theta0));
        for (int j = 0; j < n; ++j) {
            const int d = ((i - j) % n + n) % n;
            u(i, j) = kick_phase * kernel[static_cast<std::size_t>(d)];
        }
    }
    return u;
}

/// Ascending eigenvalues of a Hermitian matrix (checked to relative
/// tolerance 1e-12 in the max norm).
inline Spectrum eigenvalues_hermitian(const Eigen::MatrixXcd& h) {
    if (h.rows() != h.cols())
        throw std::invalid_argument("eigenvalues_hermitian: matrix must be square");
    const double scale = std::max(1.0, h.cwiseAbs().maxCoeff());
    const double defect = (h - h.adjoint()).cwiseAbs().maxCoeff();
    if (defect > 1e-12 * scale)
        throw std::invalid_argument("eigenvalues_hermitian: matrix is not Hermitian");
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(h, Eigen::EigenvaluesOnly);
    if (solver.info() != Eigen::Success)
        throw numerical_error("eigenvalues_hermitian: eigensolver failed");
    const auto& ev = solver.eigenvalues();
    return {{ev.data(), ev.data() + ev.size()}, SpectrumKind::line};
}

inline Spectrum eigenvalues_hermitian(const Eigen::MatrixXd& h) {
    return eigenvalues_hermitian(Eigen::MatrixXcd(h.cast<std::complex<double>>()));
}

/// Ascending eigenangles of a unitary matrix, mapped to [-pi, pi).
/// Unitarity defect above 1e-8 is rejected; every eigenvalue modulus must
/// be within 1e-8 of 1.
inline Spectrum eigenangles_unitary(const Eigen::MatrixXcd& u) {
    if (u.rows() != u.cols())
        throw std::invalid_argument("eigenangles_unitary: matrix must be square");
    const Eigen::MatrixXcd gram = u.adjoint() * u;
    const double defect =
        (gram - Eigen::MatrixXcd::Identity(u.rows(), u.cols())).cwiseAbs().maxCoeff();
    if (defect > 1e-8)
        throw std::invalid_argument("eigenangles_unitary: matrix is not unitary");
    Eigen::ComplexEigenSolver<Eigen::MatrixXcd> solver(u, false);
    if (solver.info() != Eigen::Success)
        throw numerical_error("eigenangles_unitary: eigensolver failed");
    std::vector<double> angles;
    angles.reserve(static_cast<std::size_t>(u.rows()));
    for (Eigen::Index i = 0; i < u.rows(); ++i) {
        const std::complex<double> z = solver.eigenvalues()(i);
        if (std::abs(std::abs(z) - 1.0) > 1e-8)
            throw numerical_error("eigenangles_unitary: eigenvalue modulus deviates from 1");
        double phi = std::arg(z);
        if (phi >= std::numbers::pi) phi = -std::numbers::pi;
        angles.push_back(phi);
    }
    std::sort(angles.begin(), angles.end());
    return {std::move(angles), SpectrumKind::circle};
}

// Uniform ensemble fronts used by pooling and sweeps.

struct GaussianCrossoverEnsemble {
    GaussianCrossoverConfig cfg;

    std::int64_t count() const { return cfg.count; }
    std::size_t levels_per_realization() const { return static_cast<std::size_t>(cfg.n); }
    Eigen::MatrixXcd matrix(std::uint64_t index) const {
        return sample_crossover_gaussian(cfg, index);
    }
    Spectrum spectrum(std::uint64_t index) const {
        return eigenvalues_hermitian(matrix(index));
    }
    std::string describe() const {
        std::ostringstream os;
        os << "gauss-crossover N=" << cfg.n << " alpha=" << cfg.param.alpha()
           << " v=" << cfg.scale() << " seed=" << cfg.seed << " count=" << cfg.count;
        return os.str();
    }
};

struct WishartCrossoverEnsemble {
    WishartCrossoverConfig cfg;

    std::int64_t count() const { return cfg.count; }
    std::size_t levels_per_realization() const { return static_cast<std::size_t>(cfg.n); }
    Eigen::MatrixXcd matrix(std::uint64_t index) const {
        return sample_crossover_wishart(cfg, index);
    }
    Spectrum spectrum(std::uint64_t index) const {
        return eigenvalues_hermitian(matrix(index));
    }
    std::string describe() const {
        std::ostringstream os;
        os << "wishart-crossover N=" << cfg.n << " M=" << cfg.m
           << " lambda=" << cfg.param.lambda() << " seed=" << cfg.seed
           << " count=" << cfg.count;
        return os.str();
    }
};

struct QkrEnsemble {
    QkrConfig cfg;

    std::int64_t count() const { return cfg.count; }
    std::size_t levels_per_realization() const { return static_cast<std::size_t>(cfg.n); }
    Eigen::MatrixXcd matrix(std::uint64_t index) const { return qkr_floquet(cfg, index); }
    Spectrum spectrum(std::uint64_t index) const {
        return eigenangles_unitary(matrix(index));
    }
    std::string describe() const {
        std::ostringstream os;
        os << "qkr N=" << cfg.n << " kick=" << cfg.kick << " gamma=" << cfg.gamma
           << " theta0=" << cfg.resolved_theta0() << " jitter=" << cfg.kick_jitter
           << " seed=" << cfg.seed << " count=" << cfg.count;
        return os.str();
    }
};

/// Ratios a single realization contributes after slicing.
inline std::size_t ratios_per_realization(std::size_t levels, SpectrumKind kind,
                                          const spectra::SliceMode& slice, bool wrap) {
    using spectra::SliceMode;
    switch (slice.kind) {
        case SliceMode::Kind::full:
            return (kind == SpectrumKind::circle && wrap) ? levels : levels - 2;
        case SliceMode::Kind::bulk:
            return slice.k >= 2 ? slice.k - 2 : 0;
        case SliceMode::Kind::edges:
            return slice.k >= 4 ? slice.k - 4 : 0;
    }
    return 0;
}

/// Pool consecutive-spacing ratios over all realizations of an ensemble,
/// optionally sliced. Results are concatenated in realization order, so
/// the outcome is independent of the number of worker threads. `wrap=false`
/// treats circle spectra as lines (drops the wraparound pairing).
template <class Ensemble>
spectra::RatioSample pool_ratios(const Ensemble& ens,
                                 const spectra::SliceMode& slice = {},
                                 bool wrap = true, int threads = 1) {
    const std::int64_t count = ens.count();
    std::vector<spectra::RatioSample> parts(static_cast<std::size_t>(count));
    auto worker = [&](std::int64_t begin, std::int64_t end, std::exception_ptr& err) {
        try {
            for (std::int64_t i = begin; i < end; ++i) {
                Spectrum s = ens.spectrum(static_cast<std::uint64_t>(i));
                if (!wrap && s.kind == SpectrumKind::circle) s.kind = SpectrumKind::line;
                spectra::RatioSample acc;
                for (const Spectrum& piece : spectra::slice_spectrum(s, slice))
                    spectra::append(acc, spectra::ratios(piece));
                parts[static_cast<std::size_t>(i)] = std::move(acc);
            }
        } catch (...) {
            err = std::current_exception();
        }
    };

    threads = std::max(1, threads);
    if (threads == 1) {
        std::exception_ptr err;
        worker(0, count, err);
        if (err) std::rethrow_exception(err);
    } else {
        std::vector<std::thread> pool;
        std::vector<std::exception_ptr> errs(static_cast<std::size_t>(threads));
        const std::int64_t chunk = (count + threads - 1) / threads;
        for (int t = 0; t < threads; ++t) {
            const std::int64_t begin = t * chunk;
            const std::int64_t end = std::min<std::int64_t>(count, begin + chunk);
            if (begin >= end) break;
            pool.emplace_back(worker, begin, end, std::ref(errs[static_cast<std::size_t>(t)]));
        }
        for (auto& th : pool) th.join();
        for (const auto& err : errs)
            if (err) std::rethrow_exception(err);
    }

    spectra::RatioSample pooled;
    std::size_t total = 0;
    for (const auto& part : parts) total += part.values.size();
    pooled.values.reserve(total);
    for (const auto& part : parts) spectra::append(pooled, part);
    pooled.provenance = ens.describe();
    return pooled;
}

}  // namespace rmtcross::ensembles
