#include "report.hpp"

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <ctime>
#include <fstream>
#include <stdexcept>

#include <nlohmann/json.hpp>

#include "slabuq/version.hpp"

namespace slabuq::cli {

namespace {

std::string utc_timestamp() {
    const auto now = std::chrono::system_clock::now();
    const std::time_t t = std::chrono::system_clock::to_time_t(now);
    std::tm tm{};
    gmtime_r(&t, &tm);
    char buf[32];
    std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

std::string fmt(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

} // namespace

void write_manifest(const Manifest& m, const std::filesystem::path& path) {
    nlohmann::json j{
        {"subcommand", m.subcommand},
        {"config", m.config_path.empty() ? nlohmann::json() : nlohmann::json(m.config_path)},
        {"seed", m.seed},
        {"out_dir", m.out_dir},
        {"tool_version", kVersion},
        {"timestamp_utc", utc_timestamp()},
        {"command_line", m.command_line},
    };
    write_text(path, j.dump(2) + "\n");
}

void write_text(const std::filesystem::path& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error(path.string() + ": cannot open for writing");
    out << content;
    if (!out) throw std::runtime_error(path.string() + ": write failure");
}

std::string histogram_csv(const Histogram& h) {
    std::string out = "bin_lo,bin_hi,count\n";
    const double width = h.bin_width();
    for (std::size_t i = 0; i < h.counts.size(); ++i) {
        const double lo = h.lo + width * static_cast<double>(i);
        const double hi = i + 1 == h.counts.size() ? h.hi : lo + width;
        out += fmt(lo) + "," + fmt(hi) + "," + std::to_string(h.counts[i]) + "\n";
    }
    return out;
}

std::string series_csv(const std::string& index_name,
                       const std::vector<std::string>& column_names,
                       const std::vector<std::vector<double>>& rows) {
    std::string out = index_name;
    for (const auto& name : column_names) out += "," + name;
    out += "\n";
    for (std::size_t r = 0; r < rows.size(); ++r) {
        out += std::to_string(r);
        for (double v : rows[r]) out += "," + fmt(v);
        out += "\n";
    }
    return out;
}

namespace {

constexpr int kW = 640, kH = 360, kPad = 48;

std::string svg_header(const std::string& title) {
    std::string s = "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + std::to_string(kW) +
                    "\" height=\"" + std::to_string(kH) + "\">\n";
    s += "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    s += "<text x=\"" + std::to_string(kW / 2) + "\" y=\"20\" text-anchor=\"middle\" "
         "font-family=\"sans-serif\" font-size=\"14\">" + title + "</text>\n";
    // axes
    s += "<line x1=\"" + std::to_string(kPad) + "\" y1=\"" + std::to_string(kH - kPad) +
         "\" x2=\"" + std::to_string(kW - kPad / 2) + "\" y2=\"" + std::to_string(kH - kPad) +
         "\" stroke=\"black\"/>\n";
    s += "<line x1=\"" + std::to_string(kPad) + "\" y1=\"" + std::to_string(kPad / 2) +
         "\" x2=\"" + std::to_string(kPad) + "\" y2=\"" + std::to_string(kH - kPad) +
         "\" stroke=\"black\"/>\n";
    return s;
}

std::string axis_label(double v, double x, double y) {
    char buf[64];
    std::snprintf(buf, sizeof(buf),
                  "<text x=\"%.1f\" y=\"%.1f\" font-family=\"sans-serif\" font-size=\"10\" "
                  "text-anchor=\"middle\">%.4g</text>\n",
                  x, y, v);
    return buf;
}

} // namespace

std::string svg_histogram(const Histogram& h, const std::string& title) {
    std::string s = svg_header(title);
    const std::size_t n = h.counts.size();
    std::size_t peak = 1;
    for (auto c : h.counts) peak = std::max(peak, c);

    const double plot_w = kW - 1.5 * kPad;
    const double plot_h = kH - 1.5 * kPad - kPad / 2.0;
    const double bar_w = plot_w / static_cast<double>(n);
    for (std::size_t i = 0; i < n; ++i) {
        const double frac = static_cast<double>(h.counts[i]) / static_cast<double>(peak);
        const double bh = frac * plot_h;
        char buf[160];
        std::snprintf(buf, sizeof(buf),
                      "<rect x=\"%.2f\" y=\"%.2f\" width=\"%.2f\" height=\"%.2f\" "
                      "fill=\"#4878a8\" stroke=\"white\" stroke-width=\"0.5\"/>\n",
                      kPad + i * bar_w, kH - kPad - bh, bar_w, bh);
        s += buf;
    }
    s += axis_label(h.lo, kPad, kH - kPad + 14.0);
    s += axis_label(h.hi, kW - kPad / 2.0, kH - kPad + 14.0);
    s += "</svg>\n";
    return s;
}

std::string svg_traces(const std::vector<std::vector<double>>& rows, const std::string& title,
                       const std::string& y_label) {
    std::string s = svg_header(title);
    if (!rows.empty() && !rows.front().empty()) {
        double lo = rows[0][0], hi = rows[0][0];
        for (const auto& row : rows)
            for (double v : row) {
                lo = std::min(lo, v);
                hi = std::max(hi, v);
            }
        if (hi == lo) hi = lo + 1.0;

        const double plot_w = kW - 1.5 * kPad;
        const double plot_h = kH - 1.5 * kPad - kPad / 2.0;
        const std::size_t stations = rows.front().size();
        for (std::size_t st = 0; st < stations; ++st) {
            std::string pts;
            for (std::size_t r = 0; r < rows.size(); ++r) {
                const double x =
                    kPad + plot_w * (rows.size() > 1
                                         ? static_cast<double>(r) / (rows.size() - 1.0)
                                         : 0.5);
                const double y = kH - kPad - plot_h * (rows[r][st] - lo) / (hi - lo);
                char buf[48];
                std::snprintf(buf, sizeof(buf), "%.2f,%.2f ", x, y);
                pts += buf;
            }
            const int hue = static_cast<int>(st * 360 / std::max<std::size_t>(stations, 1));
            s += "<polyline fill=\"none\" stroke=\"hsl(" + std::to_string(hue) +
                 ",60%,45%)\" stroke-width=\"1.2\" points=\"" + pts + "\"/>\n";
        }
        s += axis_label(lo, kPad - 18.0, kH - kPad);
        s += axis_label(hi, kPad - 18.0, kPad / 2.0 + 8.0);
    }
    s += "<text x=\"14\" y=\"" + std::to_string(kH / 2) +
         "\" font-family=\"sans-serif\" font-size=\"11\" transform=\"rotate(-90 14 " +
         std::to_string(kH / 2) + ")\" text-anchor=\"middle\">" + y_label + "</text>\n";
    s += "</svg>\n";
    return s;
}

} // namespace slabuq::cli
