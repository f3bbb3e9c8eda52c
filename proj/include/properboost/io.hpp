#pragma once

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>
#include <stdexcept>
#include <string>
#include <tuple>
#include <vector>

#include "properboost/experiments.hpp"

namespace properboost {

class IoError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

inline constexpr const char* kCsvHeader =
    "loss,model,gamma,eta,theta,accuracy_clean,expected_posterior,bayes_posterior,weak_calls,"
    "final_surrogate,stop_reason";

inline std::string fmt_double(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

inline std::string to_csv(const std::vector<SweepRecord>& records) {
    std::ostringstream os;
    os << kCsvHeader << '\n';
    for (const auto& r : records)
        os << r.loss << ',' << r.model << ',' << fmt_double(r.gamma) << ',' << fmt_double(r.eta)
           << ',' << fmt_double(r.theta) << ',' << fmt_double(r.accuracy_clean) << ','
           << fmt_double(r.expected_posterior) << ',' << fmt_double(r.bayes_posterior) << ','
           << r.weak_calls << ',' << fmt_double(r.final_surrogate) << ',' << r.stop_reason << '\n';
    return os.str();
}

inline void emit_csv(const std::vector<SweepRecord>& records, const std::string& path) {
    if (records.empty()) throw std::invalid_argument("no records to write");
    std::ofstream f(path, std::ios::binary);
    if (!f) throw IoError("cannot open '" + path + "' for writing");
    f << to_csv(records);
    if (!f) throw IoError("write to '" + path + "' failed");
}

inline std::vector<SweepRecord> parse_csv(std::istream& in) {
    std::string line;
    if (!std::getline(in, line) || line != kCsvHeader) throw IoError("missing or unexpected CSV header");
    std::vector<SweepRecord> out;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::vector<std::string> f;
        std::stringstream ss(line);
        for (std::string cell; std::getline(ss, cell, ',');) f.push_back(cell);
        if (f.size() != 11) throw IoError("bad CSV row: " + line);
        out.push_back({f[0], f[1], std::stod(f[2]), std::stod(f[3]), std::stod(f[4]),
                       std::stod(f[5]), std::stod(f[6]), std::stod(f[7]), std::stoi(f[8]),
                       std::stod(f[9]), f[10]});
    }
    return out;
}

inline std::vector<SweepRecord> parse_csv_file(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw IoError("cannot open '" + path + "'");
    return parse_csv(f);
}

// ============================================================================
// SVG panels
// ============================================================================

enum class Panel { accuracy, posterior, calls };

inline Panel parse_panel(const std::string& s) {
    if (s == "accuracy") return Panel::accuracy;
    if (s == "posterior") return Panel::posterior;
    if (s == "calls") return Panel::calls;
    throw ConfigError("unknown SVG panel '" + s + "' (expected accuracy|posterior|calls)");
}

// One polyline per (loss, model, eta) against log10(gamma).
inline std::string render_svg(const std::vector<SweepRecord>& records, Panel panel) {
    if (records.empty()) throw std::invalid_argument("no records to plot");
    constexpr double W = 640, H = 480, left = 60, right = 20, top = 30, bottom = 50;
    auto value = [&](const SweepRecord& r) {
        switch (panel) {
        case Panel::accuracy: return r.accuracy_clean;
        case Panel::posterior: return r.expected_posterior;
        case Panel::calls: return static_cast<double>(r.weak_calls);
        }
        return 0.0;
    };
    double gmin = records[0].gamma, gmax = gmin, ymax = 1.0;
    for (const auto& r : records) {
        gmin = std::min(gmin, r.gamma);
        gmax = std::max(gmax, r.gamma);
        ymax = std::max(ymax, value(r));
    }
    const double lx0 = std::log10(gmin), lx1 = gmax > gmin ? std::log10(gmax) : lx0 + 1.0;
    auto px = [&](double g) { return left + (std::log10(g) - lx0) / (lx1 - lx0) * (W - left - right); };
    auto py = [&](double v) { return H - bottom - v / ymax * (H - top - bottom); };

    std::map<std::tuple<std::string, std::string, double>, std::vector<const SweepRecord*>> series;
    for (const auto& r : records) series[{r.loss, r.model, r.eta}].push_back(&r);

    static const char* palette[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd",
                                    "#ff7f0e", "#8c564b", "#e377c2", "#17becf"};
    const char* title = panel == Panel::accuracy ? "clean accuracy"
                        : panel == Panel::posterior ? "expected posterior"
                                                    : "weak learner calls";
    std::ostringstream os;
    os << "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"0 0 640 480\" width=\"640\" height=\"480\">\n";
    os << "<rect width=\"640\" height=\"480\" fill=\"white\"/>\n";
    os << "<text x=\"320\" y=\"20\" text-anchor=\"middle\" font-size=\"14\">" << title << " vs gamma</text>\n";
    os << "<line class=\"axis\" x1=\"" << left << "\" y1=\"" << H - bottom << "\" x2=\"" << W - right
       << "\" y2=\"" << H - bottom << "\" stroke=\"black\"/>\n";
    os << "<line class=\"axis\" x1=\"" << left << "\" y1=\"" << top << "\" x2=\"" << left << "\" y2=\""
       << H - bottom << "\" stroke=\"black\"/>\n";
    os << "<text x=\"320\" y=\"" << H - 12 << "\" text-anchor=\"middle\" font-size=\"12\">gamma (log scale)</text>\n";
    for (int k = static_cast<int>(std::ceil(lx0)); k <= static_cast<int>(std::floor(lx1)); ++k)
        os << "<text x=\"" << px(std::pow(10.0, k)) << "\" y=\"" << H - bottom + 16
           << "\" text-anchor=\"middle\" font-size=\"10\">1e" << k << "</text>\n";
    for (int k = 0; k <= 4; ++k) {
        const double v = ymax * k / 4.0;
        os << "<text x=\"" << left - 6 << "\" y=\"" << py(v) + 4 << "\" text-anchor=\"end\" font-size=\"10\">"
           << fmt_double(std::round(v * 100.0) / 100.0) << "</text>\n";
    }

    int idx = 0;
    for (const auto& [key, rows] : series) {
        const char* color = palette[idx % 8];
        os << "<polyline class=\"series\" fill=\"none\" stroke=\"" << color << "\" points=\"";
        for (const SweepRecord* r : rows) os << px(r->gamma) << ',' << py(value(*r)) << ' ';
        os << "\"/>\n";
        if (panel == Panel::posterior) {
            const double b = rows.front()->bayes_posterior;
            os << "<line class=\"bayes\" x1=\"" << left << "\" y1=\"" << py(b) << "\" x2=\"" << W - right
               << "\" y2=\"" << py(b) << "\" stroke=\"" << color << "\" stroke-dasharray=\"4 3\"/>\n";
        }
        os << "<text x=\"" << W - right - 4 << "\" y=\"" << top + 14 * (idx + 1)
           << "\" text-anchor=\"end\" font-size=\"10\" fill=\"" << color << "\">" << std::get<0>(key)
           << '/' << std::get<1>(key) << " eta=" << fmt_double(std::get<2>(key)) << "</text>\n";
        ++idx;
    }
    os << "</svg>\n";
    return os.str();
}

inline void emit_svg(const std::vector<SweepRecord>& records, const std::string& path, Panel panel) {
    const std::string svg = render_svg(records, panel);
    std::ofstream f(path, std::ios::binary);
    if (!f) throw IoError("cannot open '" + path + "' for writing");
    f << svg;
    if (!f) throw IoError("write to '" + path + "' failed");
}

} // namespace properboost
