#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>
#include <stdexcept>
#include <string>
#include <vector>

namespace rmtcross::spectra {

enum class SpectrumKind { line, circle };

/// Ordered levels of one matrix realization: eigenvalues on the line or
/// eigenangles in [-pi, pi) on the circle.
struct Spectrum {
    std::vector<double> levels;
    SpectrumKind kind = SpectrumKind::line;
};

inline void validate(const Spectrum& s) {
    for (std::size_t i = 1; i < s.levels.size(); ++i)
        if (!(s.levels[i] >= s.levels[i - 1]))
            throw std::invalid_argument("Spectrum: levels must be nondecreasing");
    if (s.kind == SpectrumKind::circle)
        for (double x : s.levels)
            if (!(x >= -std::numbers::pi && x < std::numbers::pi))
                throw std::invalid_argument(
                    "Spectrum: circle levels must lie in [-pi, pi)");
}

/// Consecutive spacings. Line spectra yield n-1 spacings; circle spectra
/// include the wraparound gap 2 pi + phi_1 - phi_n, yielding n spacings
/// that sum to 2 pi.
inline std::vector<double> spacings(const Spectrum& s) {
    const std::size_t n = s.levels.size();
    if (n < 2) throw std::invalid_argument("spacings: need at least 2 levels");
    validate(s);
    std::vector<double> out;
    out.reserve(s.kind == SpectrumKind::circle ? n : n - 1);
    for (std::size_t i = 1; i < n; ++i) out.push_back(s.levels[i] - s.levels[i - 1]);
    if (s.kind == SpectrumKind::circle)
        out.push_back(2.0 * std::numbers::pi + s.levels.front() - s.levels.back());
    return out;
}

enum class RatioKind { r, rtilde };

/// Flat pool of consecutive-spacing ratios. Ratios whose numerator or
/// denominator spacing is exactly zero are dropped and tallied in
/// degenerate_pairs instead of producing 0/inf entries.
struct RatioSample {
    std::vector<double> values;
    RatioKind kind = RatioKind::r;
    std::string provenance;
    std::uint64_t degenerate_pairs = 0;
};

inline void append(RatioSample& dst, const RatioSample& src) {
    if (dst.kind != src.kind)
        throw std::invalid_argument("append: ratio kinds differ");
    dst.values.insert(dst.values.end(), src.values.begin(), src.values.end());
    dst.degenerate_pairs += src.degenerate_pairs;
}

/// r_n = s_n / s_{n-1}. Line spectra give n-2 ratios; circle spectra give
/// n cyclic ratios (every pair of cyclically consecutive spacings).
inline RatioSample ratios(const Spectrum& s) {
    if (s.levels.size() < 3) throw std::invalid_argument("ratios: need at least 3 levels");
    const std::vector<double> sp = spacings(s);
    RatioSample out;
    const std::size_t m = sp.size();
    const bool cyclic = s.kind == SpectrumKind::circle;
    out.values.reserve(cyclic ? m : m - 1);
    const std::size_t pairs = cyclic ? m : m - 1;
    for (std::size_t i = 0; i < pairs; ++i) {
        const double denom = sp[i];
        const double numer = sp[(i + 1) % m];
        if (denom == 0.0 || numer == 0.0) {
            ++out.degenerate_pairs;
            continue;
        }
        out.values.push_back(numer / denom);
    }
    return out;
}

/// Elementwise min(r, 1/r); maps an r sample into [0,1].
inline RatioSample rtilde_of(const RatioSample& rs) {
    if (rs.kind != RatioKind::r)
        throw std::invalid_argument("rtilde_of: input must be an r sample");
    RatioSample out;
    out.kind = RatioKind::rtilde;
    out.provenance = rs.provenance;
    out.degenerate_pairs = rs.degenerate_pairs;
    out.values.reserve(rs.values.size());
    for (double r : rs.values) out.values.push_back(r <= 1.0 ? r : 1.0 / r);
    return out;
}

struct SliceMode {
    enum class Kind { full, bulk, edges };
    Kind kind = Kind::full;
    std::size_t k = 0;
};

/// Contiguous sub-spectra: the full spectrum, the k central levels, or k/2
/// levels from each end (two independent slices). Bulk/edge slices of a
/// circle spectrum lose the wraparound pairing and are returned as lines.
inline std::vector<Spectrum> slice_spectrum(const Spectrum& s, const SliceMode& mode) {
    const std::size_t n = s.levels.size();
    switch (mode.kind) {
        case SliceMode::Kind::full:
            return {s};
        case SliceMode::Kind::bulk: {
            if (mode.k > n) throw std::invalid_argument("slice_spectrum: bulk k exceeds spectrum size");
            const std::size_t start = (n - mode.k) / 2;
            Spectrum out{{s.levels.begin() + static_cast<std::ptrdiff_t>(start),
                          s.levels.begin() + static_cast<std::ptrdiff_t>(start + mode.k)},
                         SpectrumKind::line};
            return {std::move(out)};
        }
        case SliceMode::Kind::edges: {
            if (mode.k % 2 != 0) throw std::invalid_argument("slice_spectrum: edges k must be even");
            if (mode.k > n) throw std::invalid_argument("slice_spectrum: edges k exceeds spectrum size");
            const std::size_t half = mode.k / 2;
            Spectrum lo{{s.levels.begin(), s.levels.begin() + static_cast<std::ptrdiff_t>(half)},
                        SpectrumKind::line};
            Spectrum hi{{s.levels.end() - static_cast<std::ptrdiff_t>(half), s.levels.end()},
                        SpectrumKind::line};
            return {std::move(lo), std::move(hi)};
        }
    }
    throw std::invalid_argument("slice_spectrum: unknown mode");
}

// Default binning for empirical ratio densities.
inline constexpr double default_r_max = 30.0;
inline constexpr double default_r_bin = 0.06;
inline constexpr double default_rtilde_bin = 0.002;

/// Binned, normalized empirical density. Densities are counts/(total*bin),
/// where total includes out-of-domain samples, so the in-domain mass equals
/// the in-domain sample fraction.
struct HistogramDensity {
    double lo = 0.0;
    double hi = 0.0;
    double bin_width = 0.0;
    std::vector<std::int64_t> counts;
    std::vector<double> densities;
    std::int64_t total = 0;
    std::int64_t out_of_domain = 0;

    double bin_center(std::size_t i) const { return lo + (static_cast<double>(i) + 0.5) * bin_width; }
    std::int64_t in_domain() const { return total - out_of_domain; }
};

inline HistogramDensity histogram(const RatioSample& rs, double lo, double hi,
                                  double bin_width) {
    if (rs.values.empty()) throw std::invalid_argument("histogram: empty sample");
    if (!(bin_width > 0.0)) throw std::invalid_argument("histogram: bin width must be > 0");
    if (!(hi > lo)) throw std::invalid_argument("histogram: invalid domain");
    const double nb = (hi - lo) / bin_width;
    const auto nbins = static_cast<std::size_t>(std::llround(nb));
    if (nbins == 0 || std::abs(nb - static_cast<double>(nbins)) > 1e-9 * nb)
        throw std::invalid_argument("histogram: domain must be a whole number of bins");
    HistogramDensity h;
    h.lo = lo;
    h.hi = hi;
    h.bin_width = bin_width;
    h.counts.assign(nbins, 0);
    h.total = static_cast<std::int64_t>(rs.values.size());
    for (double x : rs.values) {
        if (x < lo || x > hi) {
            ++h.out_of_domain;
            continue;
        }
        auto idx = static_cast<std::size_t>((x - lo) / bin_width);
        if (idx >= nbins) idx = nbins - 1;  // x == hi lands in the last bin
        ++h.counts[idx];
    }
    h.densities.resize(nbins);
    const double norm = static_cast<double>(h.total) * bin_width;
    for (std::size_t i = 0; i < nbins; ++i)
        h.densities[i] = static_cast<double>(h.counts[i]) / norm;
    return h;
}

inline HistogramDensity histogram_default_r(const RatioSample& rs) {
    return histogram(rs, 0.0, default_r_max, default_r_bin);
}

inline HistogramDensity histogram_default_rtilde(const RatioSample& rs) {
    return histogram(rs, 0.0, 1.0, default_rtilde_bin);
}

}  // namespace rmtcross::spectra
