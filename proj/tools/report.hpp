#pragma once

// Output helpers for the CLI: run manifests, CSV tables, and small
// self-contained SVG renderings of histograms and traces.

#include <filesystem>
#include <string>
#include <vector>

#include "slabuq/stats.hpp"

namespace slabuq::cli {

/// Replay record written with every run.
struct Manifest {
    std::string subcommand;
    std::string config_path; ///< empty when the run took no config file
    std::uint64_t seed = 0;
    std::string out_dir;
    std::vector<std::string> command_line;
};

void write_manifest(const Manifest& m, const std::filesystem::path& path);

void write_text(const std::filesystem::path& path, const std::string& content);

std::string histogram_csv(const Histogram& h);

/// One row per frame/interval, one column per station.
std::string series_csv(const std::string& index_name,
                       const std::vector<std::string>& column_names,
                       const std::vector<std::vector<double>>& rows);

std::string svg_histogram(const Histogram& h, const std::string& title);

/// One polyline per station over the frame index.
std::string svg_traces(const std::vector<std::vector<double>>& rows, const std::string& title,
                       const std::string& y_label);

} // namespace slabuq::cli
