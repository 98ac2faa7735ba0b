#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <ctime>
#include <fstream>
#include <istream>
#include <nlohmann/json.hpp>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "rmtcross/analysis.hpp"
#include "rmtcross/spectra.hpp"
#include "rmtcross/version.hpp"

// Text formats: CSV curves/samples/histograms with `#` metadata headers and
// JSON reports. Every payload embeds the tool version, the resolved
// configuration and the seed; the timestamp is a single isolated line/key so
// reruns are byte-identical apart from it.
namespace rmtcross::io {

using json = nlohmann::ordered_json;

/// Shortest-roundtrip-safe decimal form of a double.
inline std::string fmt(double x) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

inline std::string utc_timestamp() {
    const std::time_t now = std::time(nullptr);
    std::tm tm{};
    gmtime_r(&now, &tm);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

struct RunMeta {
    json config;
    std::uint64_t seed = 0;
};

inline void write_csv_header(std::ostream& os, const RunMeta& meta) {
    os << "# rmtcross " << version_string << "\n";
    os << "# config: " << meta.config.dump() << "\n";
    os << "# seed: " << meta.seed << "\n";
    os << "# timestamp: " << utc_timestamp() << "\n";
}

inline void write_ratio_csv(std::ostream& os, const spectra::RatioSample& rs,
                            const RunMeta& meta) {
    write_csv_header(os, meta);
    os << "# provenance: " << rs.provenance << "\n";
    os << "# degenerate_pairs: " << rs.degenerate_pairs << "\n";
    os << "value\n";
    for (double v : rs.values) os << fmt(v) << "\n";
}

inline void write_histogram_csv(std::ostream& os, const spectra::HistogramDensity& h,
                                const RunMeta& meta) {
    write_csv_header(os, meta);
    os << "# total: " << h.total << "\n";
    os << "# out_of_domain: " << h.out_of_domain << "\n";
    os << "bin_lo,bin_hi,density,count\n";
    for (std::size_t i = 0; i < h.counts.size(); ++i) {
        const double lo = h.lo + static_cast<double>(i) * h.bin_width;
        os << fmt(lo) << ',' << fmt(lo + h.bin_width) << ',' << fmt(h.densities[i])
           << ',' << h.counts[i] << "\n";
    }
}

inline void write_spectrum_csv(std::ostream& os,
                               const std::vector<spectra::Spectrum>& spectra_list,
                               const RunMeta& meta) {
    write_csv_header(os, meta);
    os << "realization,index,level\n";
    for (std::size_t r = 0; r < spectra_list.size(); ++r)
        for (std::size_t i = 0; i < spectra_list[r].levels.size(); ++i)
            os << r << ',' << i << ',' << fmt(spectra_list[r].levels[i]) << "\n";
}

/// Generic curve table: one header row, then rows of doubles.
inline void write_curve_csv(std::ostream& os, const std::string& header,
                            const std::vector<std::vector<double>>& rows,
                            const RunMeta& meta) {
    write_csv_header(os, meta);
    os << header << "\n";
    for (const auto& row : rows) {
        for (std::size_t i = 0; i < row.size(); ++i)
            os << (i ? "," : "") << fmt(row[i]);
        os << "\n";
    }
}

inline json meta_json(const RunMeta& meta) {
    json m;
    m["version"] = version_string;
    m["config"] = meta.config;
    m["seed"] = meta.seed;
    m["timestamp"] = utc_timestamp();
    return m;
}

inline json fit_result_json(const analysis::FitResult& fr) {
    json j;
    j["lambda_eff"] = fr.lambda_eff;
    j["objective_value"] = fr.objective_value;
    j["method"] = analysis::to_string(fr.method);
    j["n_samples"] = fr.n_samples;
    j["converged"] = fr.converged;
    return j;
}

inline json sweep_point_json(const analysis::SweepPointReport& p) {
    json j;
    j["ensemble"] = p.ensemble;
    j["N"] = p.point.n_dim;
    j["raw_param"] = p.point.raw_param;
    j["scaled_param"] = p.point.scaled_param;
    j["lambda_eff"] = p.point.lambda_eff;
    j["mean_r"] = p.point.mean_r;
    j["se_r"] = p.se_r;
    j["mean_rtilde"] = p.point.mean_rtilde;
    j["se_rtilde"] = p.se_rtilde;
    j["d_goe"] = p.kld.d_goe;
    j["d_gue"] = p.kld.d_gue;
    j["d_goe_tilde"] = p.kld.d_goe_tilde;
    j["d_gue_tilde"] = p.kld.d_gue_tilde;
    j["n_samples"] = p.n_samples;
    j["seed"] = p.point_seed;
    j["realizations"] = p.realizations;
    j["degenerate_pairs"] = p.degenerate_pairs;
    j["fit_converged"] = p.fit.converged;
    return j;
}

inline json sweep_report_json(const std::vector<analysis::SweepPointReport>& points,
                              const RunMeta& meta) {
    json j;
    j["meta"] = meta_json(meta);
    j["points"] = json::array();
    for (const auto& p : points) j["points"].push_back(sweep_point_json(p));
    return j;
}

inline void write_sweep_report_csv(std::ostream& os,
                                   const std::vector<analysis::SweepPointReport>& points,
                                   const RunMeta& meta) {
    write_csv_header(os, meta);
    os << "ensemble,N,raw_param,scaled_param,lambda_eff,mean_r,se_r,mean_rtilde,"
          "se_rtilde,d_goe,d_gue,d_goe_tilde,d_gue_tilde,n_samples,seed\n";
    for (const auto& p : points) {
        os << p.ensemble << ',' << p.point.n_dim << ',' << fmt(p.point.raw_param)
           << ',' << fmt(p.point.scaled_param) << ',' << fmt(p.point.lambda_eff)
           << ',' << fmt(p.point.mean_r) << ',' << fmt(p.se_r) << ','
           << fmt(p.point.mean_rtilde) << ',' << fmt(p.se_rtilde) << ','
           << fmt(p.kld.d_goe) << ',' << fmt(p.kld.d_gue) << ','
           << fmt(p.kld.d_goe_tilde) << ',' << fmt(p.kld.d_gue_tilde) << ','
           << p.n_samples << ',' << p.point_seed << "\n";
    }
}

namespace detail {

inline std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos) return "";
    const auto e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

inline double parse_double(const std::string& tok, const char* what) {
    std::size_t pos = 0;
    double v = 0.0;
    try {
        v = std::stod(tok, &pos);
    } catch (const std::exception&) {
        throw std::invalid_argument(std::string(what) + ": cannot parse '" + tok + "'");
    }
    if (pos != tok.size())
        throw std::invalid_argument(std::string(what) + ": trailing junk in '" + tok + "'");
    return v;
}

}  // namespace detail

/// Plain-text level lists: one level per line, `#` comments, blank lines
/// separate realizations. A leading `# kind: circle` directive marks
/// eigenangle spectra. Levels within each block are sorted.
inline std::vector<spectra::Spectrum> read_levels(std::istream& is) {
    std::vector<spectra::Spectrum> out;
    spectra::SpectrumKind kind = spectra::SpectrumKind::line;
    std::vector<double> block;
    auto flush = [&] {
        if (block.empty()) return;
        std::sort(block.begin(), block.end());
        out.push_back({std::move(block), kind});
        block.clear();
    };
    std::string line;
    while (std::getline(is, line)) {
        const std::string t = detail::trim(line);
        if (t.empty()) {
            flush();
            continue;
        }
        if (t[0] == '#') {
            std::string directive = detail::trim(t.substr(1));
            if (directive == "kind: circle") kind = spectra::SpectrumKind::circle;
            else if (directive == "kind: line") kind = spectra::SpectrumKind::line;
            continue;
        }
        block.push_back(detail::parse_double(t, "read_levels"));
    }
    flush();
    for (const auto& s : out) spectra::validate(s);
    return out;
}

/// Ratio-sample CSV as written by write_ratio_csv (header `value`).
inline spectra::RatioSample read_ratio_csv(std::istream& is) {
    spectra::RatioSample rs;
    std::string line;
    bool saw_header = false;
    while (std::getline(is, line)) {
        const std::string t = detail::trim(line);
        if (t.empty() || t[0] == '#') continue;
        if (!saw_header && t == "value") {
            saw_header = true;
            continue;
        }
        rs.values.push_back(detail::parse_double(t, "read_ratio_csv"));
    }
    return rs;
}

/// Histogram CSV as written by write_histogram_csv.
inline spectra::HistogramDensity read_histogram_csv(std::istream& is) {
    spectra::HistogramDensity h;
    std::string line;
    std::vector<std::array<double, 4>> rows;
    while (std::getline(is, line)) {
        const std::string t = detail::trim(line);
        if (t.empty() || t[0] == '#') continue;
        if (t.find("bin_lo") == 0) continue;
        std::array<double, 4> row{};
        std::stringstream ss(t);
        std::string tok;
        for (int i = 0; i < 4; ++i) {
            if (!std::getline(ss, tok, ','))
                throw std::invalid_argument("read_histogram_csv: expected 4 columns");
            row[static_cast<std::size_t>(i)] =
                detail::parse_double(detail::trim(tok), "read_histogram_csv");
        }
        rows.push_back(row);
    }
    if (rows.empty()) throw std::invalid_argument("read_histogram_csv: no rows");
    h.lo = rows.front()[0];
    h.hi = rows.back()[1];
    h.bin_width = rows.front()[1] - rows.front()[0];
    for (const auto& row : rows) {
        h.densities.push_back(row[2]);
        h.counts.push_back(static_cast<std::int64_t>(std::llround(row[3])));
        h.total += h.counts.back();
    }
    return h;
}

inline void write_file(const std::string& path, const std::string& content) {
    std::ofstream os(path, std::ios::binary);
    if (!os) throw std::runtime_error("cannot open for writing: " + path);
    os << content;
    if (!os) throw std::runtime_error("write failed: " + path);
}

template <class WriteFn>
void write_file_with(const std::string& path, const WriteFn& fn) {
    std::ostringstream os;
    fn(os);
    write_file(path, os.str());
}

}  // namespace rmtcross::io
