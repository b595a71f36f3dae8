// slabuq: regression-rate uncertainty pipeline over slab-burner image
// sequences. Subcommands cover synthetic-fixture generation, single-frame
// perturbation, camera distortion studies, surface tracking, uncertainty
// case studies, and the full Monte-Carlo propagation run.

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "report.hpp"
#include "slabuq/camera.hpp"
#include "slabuq/io.hpp"
#include "slabuq/propagate.hpp"
#include "slabuq/study.hpp"
#include "slabuq/surface.hpp"
#include "slabuq/synth.hpp"
#include "slabuq/version.hpp"

namespace fs = std::filesystem;
using json = nlohmann::json;
using namespace slabuq;

namespace {

struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

json load_config(const fs::path& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("config " + path.string() + ": cannot open");
    try {
        return json::parse(in);
    } catch (const json::parse_error& e) {
        throw ConfigError("config " + path.string() + ": " + e.what());
    }
}

template <typename T>
T require_field(const json& j, const std::string& key) {
    if (!j.contains(key)) throw ConfigError("config: missing field '" + key + "'");
    try {
        return j.at(key).get<T>();
    } catch (const json::exception&) {
        throw ConfigError("config: field '" + key + "' has the wrong type");
    }
}

template <typename T>
T field_or(const json& j, const std::string& key, T fallback) {
    if (!j.contains(key)) return fallback;
    try {
        return j.at(key).get<T>();
    } catch (const json::exception&) {
        throw ConfigError("config: field '" + key + "' has the wrong type");
    }
}

std::vector<std::string> collect_args(int argc, char** argv) {
    return {argv, argv + argc};
}

std::unique_ptr<SegmenterBackend> make_backend(const std::string& spec) {
    if (spec == "reference") return std::make_unique<ReferenceSegmenter>();
    const std::string prefix = "playback:";
    if (spec.rfind(prefix, 0) == 0) {
        return std::make_unique<PlaybackBackend>(fs::path(spec.substr(prefix.size())));
    }
    throw ConfigError("--backend must be 'reference' or 'playback:<dir>'");
}

std::vector<fs::path> list_rasters(fs::path dir) {
    if (fs::is_directory(dir / "frames")) dir /= "frames"; // synth output layout
    if (!fs::is_directory(dir)) throw std::runtime_error(dir.string() + ": not a directory");
    std::vector<fs::path> paths;
    for (const auto& entry : fs::directory_iterator(dir)) {
        if (!entry.is_regular_file()) continue;
        auto ext = entry.path().extension().string();
        if (ext == ".pgm" || ext == ".png") paths.push_back(entry.path());
    }
    if (paths.empty()) throw std::runtime_error(dir.string() + ": no .pgm/.png files");
    std::sort(paths.begin(), paths.end());
    return paths;
}

std::vector<int> parse_station_list(const std::string& csv) {
    std::vector<int> stations;
    std::size_t pos = 0;
    while (pos < csv.size()) {
        std::size_t next = csv.find(',', pos);
        if (next == std::string::npos) next = csv.size();
        stations.push_back(std::stoi(csv.substr(pos, next - pos)));
        pos = next + 1;
    }
    return stations;
}

std::string zero_pad(int value, int width) {
    char buf[16];
    std::snprintf(buf, sizeof(buf), "%0*d", width, value);
    return buf;
}

// ---------------------------------------------------------------------------

struct SynthArgs {
    std::string config_path;
    std::string out_dir;
    std::optional<std::uint64_t> seed;
};

SynthConfig synth_config_from_json(const json& j) {
    SynthConfig cfg;
    cfg.rate_mm_s = field_or(j, "rate_mm_s", cfg.rate_mm_s);
    cfg.n_frames = field_or(j, "n_frames", cfg.n_frames);
    cfg.dt_s = field_or(j, "dt_s", cfg.dt_s);
    cfg.initial_height_mm = field_or(j, "initial_height_mm", cfg.initial_height_mm);
    cfg.mm_per_pixel = field_or(j, "mm_per_pixel", cfg.mm_per_pixel);
    cfg.slant_deg = field_or(j, "slant_deg", cfg.slant_deg);
    cfg.saturation =
        saturation_from_string(field_or<std::string>(j, "saturation", to_string(cfg.saturation)));
    cfg.noise_seed = field_or(j, "noise_seed", cfg.noise_seed);
    cfg.width = field_or(j, "width", cfg.width);
    cfg.height = field_or(j, "height", cfg.height);
    return cfg;
}

int cmd_synth(const SynthArgs& args, const std::vector<std::string>& argv) {
    SynthConfig cfg;
    if (!args.config_path.empty()) cfg = synth_config_from_json(load_config(args.config_path));
    if (args.seed) cfg.noise_seed = *args.seed;
    try {
        cfg.validate();
    } catch (const std::invalid_argument& e) {
        throw ConfigError(e.what());
    }

    const fs::path out(args.out_dir);
    fs::create_directories(out / "frames");
    fs::create_directories(out / "masks");

    auto result = generate_sequence(cfg);
    for (int k = 0; k < cfg.n_frames; ++k) {
        save_frame(result.sequence.frames[k], out / "frames" / ("frame_" + zero_pad(k, 3) + ".pgm"));
        save_mask(result.ground_truth[k], out / "masks" / ("mask_" + zero_pad(k, 3) + ".pgm"));
    }

    json seq{{"n_frames", cfg.n_frames},
             {"dt_s", result.sequence.dt_s},
             {"mm_per_pixel", result.sequence.mm_per_pixel},
             {"fuel_length_cm", result.sequence.fuel_length_cm},
             {"width", cfg.width},
             {"height", cfg.height},
             {"rate_mm_s", cfg.rate_mm_s},
             {"saturation", to_string(cfg.saturation)},
             {"noise_seed", cfg.noise_seed}};
    cli::write_text(out / "sequence.json", seq.dump(2) + "\n");

    cli::write_manifest({"synth", args.config_path, cfg.noise_seed, args.out_dir, argv},
                        out / "run_manifest.json");
    std::printf("synth: wrote %d frames to %s\n", cfg.n_frames, args.out_dir.c_str());
    return 0;
}

// ---------------------------------------------------------------------------

struct PropagateArgs {
    std::string config_path;
    std::string out_dir;
    std::optional<std::uint64_t> seed;
    int threads = 1;
    std::string backend = "reference";
    int bins = 40;
    bool svg = false;
};

const char* to_string(StopReason r) {
    return r == StopReason::converged ? "converged" : "trial_cap";
}

int cmd_propagate(const PropagateArgs& args, const std::vector<std::string>& argv) {
    const json j = load_config(args.config_path);

    fs::path frames_dir = require_field<std::string>(j, "frames_dir");
    if (frames_dir.is_relative()) frames_dir = fs::path(args.config_path).parent_path() / frames_dir;

    FrameSequence seq;
    seq.dt_s = require_field<double>(j, "dt_s");
    seq.fuel_length_cm = require_field<double>(j, "fuel_length_cm");
    seq.mm_per_pixel = require_field<double>(j, "mm_per_pixel");
    for (const auto& path : list_rasters(frames_dir)) seq.frames.push_back(load_frame(path));

    PropagateConfig cfg;
    if (j.contains("sources")) {
        const json& s = j.at("sources");
        cfg.sources.distortion = field_or(s, "distortion", false);
        cfg.sources.placement_angle = field_or(s, "placement_angle", false);
        cfg.sources.segmentation_var = field_or(s, "segmentation_var", false);
    }
    cfg.mcd_samples = field_or(j, "mcd_samples", cfg.mcd_samples);
    cfg.variance_tol = field_or(j, "variance_tol", cfg.variance_tol);
    cfg.min_trials = field_or(j, "min_trials", cfg.min_trials);
    cfg.max_trials = field_or(j, "max_trials", cfg.max_trials);
    cfg.master_seed = field_or(j, "master_seed", cfg.master_seed);
    cfg.station_count = field_or(j, "station_count", cfg.station_count);
    const std::string mode = field_or<std::string>(j, "mode", "with_bounds");
    if (mode == "with_bounds") {
        cfg.mode = PoolingMode::with_bounds;
    } else if (mode == "mean_only") {
        cfg.mode = PoolingMode::mean_only;
    } else {
        throw ConfigError("config: field 'mode' must be 'with_bounds' or 'mean_only'");
    }
    if (args.seed) cfg.master_seed = *args.seed;
    cfg.threads = args.threads;
    try {
        seq.validate();
        cfg.validate();
    } catch (const std::invalid_argument& e) {
        throw ConfigError(e.what());
    }

    auto backend = make_backend(args.backend);
    auto dist = run(seq, *backend, cfg);
    auto summary = summarize(dist, args.bins);

    const fs::path out(args.out_dir);
    fs::create_directories(out);
    cli::write_text(out / "samples.csv", samples_csv(dist));
    cli::write_text(out / "histogram.csv", cli::histogram_csv(summary.histogram));

    json js{{"trial_count", summary.trial_count},
            {"sample_count", summary.sample_count},
            {"mean", summary.mean},
            {"variance", summary.variance},
            {"q05", summary.q05},
            {"q50", summary.q50},
            {"q95", summary.q95},
            {"stop_reason", to_string(summary.stop_reason)},
            {"mode", mode},
            {"master_seed", cfg.master_seed},
            {"threads", cfg.threads},
            {"backend", args.backend}};
    cli::write_text(out / "summary.json", js.dump(2) + "\n");
    if (args.svg) {
        cli::write_text(out / "dist.svg",
                        cli::svg_histogram(summary.histogram, "regression rate, mm/s"));
    }

    cli::write_manifest({"propagate", args.config_path, cfg.master_seed, args.out_dir, argv},
                        out / "run_manifest.json");
    std::printf("propagate: %zu trials (%s), mean %.6f mm/s, variance %.3e\n",
                summary.trial_count, to_string(summary.stop_reason), summary.mean,
                summary.variance);
    return 0;
}

// ---------------------------------------------------------------------------

struct TrackArgs {
    std::string masks_dir;
    std::string out_dir;
    double dt_s = 0.0;
    double mm_per_pixel = 0.0;
    std::string stations_csv;
    int station_count = 10;
    bool svg = false;
};

int cmd_track(const TrackArgs& args, const std::vector<std::string>& argv) {
    std::vector<BinaryMask> masks;
    for (const auto& path : list_rasters(args.masks_dir)) masks.push_back(load_mask(path));
    if (masks.size() < 2) throw std::runtime_error("track: need at least 2 masks");

    TrackConfig cfg;
    cfg.dt_s = args.dt_s;
    cfg.mm_per_pixel = args.mm_per_pixel;
    cfg.stations = args.stations_csv.empty() ? default_stations(masks.front(), args.station_count)
                                             : parse_station_list(args.stations_csv);
    try {
        cfg.validate(masks.front().width());
    } catch (const std::invalid_argument& e) {
        throw ConfigError(e.what());
    }

    HeightSeries heights;
    heights.reserve(masks.size());
    for (const auto& mask : masks) heights.push_back(extract_heights(mask, cfg));
    const HeightSeries clamped = enforce_monotonic(heights);
    const RateMatrix rates = localized_rates(clamped, cfg.dt_s);
    const double mean_rate = mean_rate_excluding_burnout(clamped, cfg.dt_s);

    std::vector<std::string> columns;
    for (int s : cfg.stations) columns.push_back("station_" + std::to_string(s));

    const fs::path out(args.out_dir);
    fs::create_directories(out);
    cli::write_text(out / "heights.csv", cli::series_csv("frame", columns, heights));
    cli::write_text(out / "heights_clamped.csv", cli::series_csv("frame", columns, clamped));
    cli::write_text(out / "rates.csv", cli::series_csv("interval", columns, rates));

    json js{{"mean_rate_mm_s", mean_rate},
            {"frames", masks.size()},
            {"stations", cfg.stations},
            {"dt_s", cfg.dt_s},
            {"mm_per_pixel", cfg.mm_per_pixel}};
    cli::write_text(out / "summary.json", js.dump(2) + "\n");
    if (args.svg) {
        cli::write_text(out / "traces.svg",
                        cli::svg_traces(clamped, "surface height per station", "height, mm"));
    }

    cli::write_manifest({"track", "", 0, args.out_dir, argv}, out / "run_manifest.json");
    std::printf("track: mean rate %.6f mm/s over %zu stations\n", mean_rate,
                cfg.stations.size());
    return 0;
}

// ---------------------------------------------------------------------------

struct PerturbArgs {
    std::string in_path;
    std::string out_path;
    double distortion_pct = 0.0;
    double angle_pct = 0.0;
    std::uint64_t seed = 0;
    std::string mask_path;
    double density = 0.0;
    double fuel_length_cm = 8.069;
};

int cmd_perturb(const PerturbArgs& args, const std::vector<std::string>& argv) {
    ImageFrame frame = load_frame(args.in_path);

    if (args.angle_pct != 0.0) {
        double density = args.density;
        if (density <= 0.0) {
            if (args.mask_path.empty()) {
                throw ConfigError("perturb: --ugamma needs --rho or --mask to fix the scale");
            }
            density = pixel_density(load_mask(args.mask_path), args.fuel_length_cm);
        }
        frame = apply_angle_shift(frame, args.angle_pct, density, args.fuel_length_cm);
    }
    if (args.distortion_pct > 0.0) {
        RngStream rng(args.seed, 0);
        frame = apply_distortion(frame, args.distortion_pct, rng);
    }
    save_frame(frame, args.out_path);

    cli::write_manifest({"perturb", "", args.seed, args.out_path, argv},
                        fs::path(args.out_path + ".manifest.json"));
    std::printf("perturb: wrote %s\n", args.out_path.c_str());
    return 0;
}

// ---------------------------------------------------------------------------

struct CalibArgs {
    std::string out_dir;
    int rows = 20;
    int cols = 20;
    double spacing_cm = 2.0;
    double distance_cm = 100.0;
    double threshold_px = 1.0;
    CameraIntrinsics intr = CameraIntrinsics::lab_camera();
    std::string k1_sweep;
};

int cmd_calib_study(const CalibArgs& args, const std::vector<std::string>& argv) {
    try {
        args.intr.validate();
    } catch (const std::invalid_argument& e) {
        throw ConfigError(e.what());
    }
    auto target = PlanarTarget::grid(args.rows, args.cols, args.spacing_cm);
    CameraExtrinsics ext;
    ext.translation = {0.0, 0.0, -args.distance_cm};

    const fs::path out(args.out_dir);
    fs::create_directories(out);

    std::string csv = "px,py,disp_x,disp_y,disp_norm\n";
    char row[200];
    for (const auto& p : target.points) {
        const Eigen::Vector2d pixel = project(world_to_camera(p, ext), args.intr);
        const Eigen::Vector2d disp = distortion_displacement_px(pixel, args.intr);
        std::snprintf(row, sizeof(row), "%.6f,%.6f,%.6g,%.6g,%.6g\n", pixel.x(), pixel.y(),
                      disp.x(), disp.y(), disp.norm());
        csv += row;
    }
    cli::write_text(out / "points.csv", csv);

    const double fraction = distorted_fraction(target, ext, args.intr, args.threshold_px);
    json js{{"distorted_fraction_pct", fraction},
            {"threshold_px", args.threshold_px},
            {"points", target.points.size()},
            {"distance_cm", args.distance_cm},
            {"intrinsics",
             {{"fx", args.intr.fx},
              {"fy", args.intr.fy},
              {"skew", args.intr.skew},
              {"cx", args.intr.cx},
              {"cy", args.intr.cy},
              {"k1", args.intr.k1},
              {"k2", args.intr.k2}}}};
    cli::write_text(out / "summary.json", js.dump(2) + "\n");

    if (!args.k1_sweep.empty()) {
        std::string sweep = "k1,distorted_fraction_pct\n";
        CameraIntrinsics intr = args.intr;
        std::size_t pos = 0;
        while (pos < args.k1_sweep.size()) {
            std::size_t next = args.k1_sweep.find(',', pos);
            if (next == std::string::npos) next = args.k1_sweep.size();
            intr.k1 = std::stod(args.k1_sweep.substr(pos, next - pos));
            std::snprintf(row, sizeof(row), "%g,%.6f\n", intr.k1,
                          distorted_fraction(target, ext, intr, args.threshold_px));
            sweep += row;
            pos = next + 1;
        }
        cli::write_text(out / "sweep.csv", sweep);
    }

    cli::write_manifest({"calib-study", "", 0, args.out_dir, argv}, out / "run_manifest.json");
    std::printf("calib-study: %.4f %% of points displaced beyond %.2f px\n", fraction,
                args.threshold_px);
    return 0;
}

// ---------------------------------------------------------------------------

struct CaseStudyArgs {
    std::string case_name = "baseline";
    std::vector<std::string> images;
    std::string out_dir;
    int samples = 100;
    int mcd_samples = 20;
    int band_px = 5;
    std::uint64_t seed = 0;
    double fuel_length_cm = 8.069;
    std::string backend = "reference";
    int bins = 40;
    bool svg = false;
};

int case_id_from_name(const std::string& name) {
    if (name == "baseline") return 0;
    try {
        const int id = std::stoi(name);
        case_toggles(id);
        return id;
    } catch (const std::exception&) {
        throw ConfigError("--case must be 'baseline' or 1..7");
    }
}

int cmd_case_study(const CaseStudyArgs& args, const std::vector<std::string>& argv) {
    CaseStudyConfig cfg;
    cfg.case_id = case_id_from_name(args.case_name);
    cfg.samples = args.samples;
    cfg.mcd_samples = args.mcd_samples;
    cfg.band_px = args.band_px;
    cfg.seed = args.seed;
    cfg.fuel_length_cm = args.fuel_length_cm;
    try {
        cfg.validate();
    } catch (const std::invalid_argument& e) {
        throw ConfigError(e.what());
    }
    if (args.images.empty()) throw ConfigError("case-study: no --images given");

    auto backend = make_backend(args.backend);
    const fs::path out(args.out_dir);
    fs::create_directories(out);

    json per_image = json::array();
    for (std::size_t i = 0; i < args.images.size(); ++i) {
        const ImageFrame image = load_frame(args.images[i]);
        const BandStudy study =
            case_study_image(image, *backend, cfg, static_cast<int>(i));
        const auto hist = Histogram::build(study.values, args.bins);

        const std::string stem = fs::path(args.images[i]).stem().string();
        cli::write_text(out / ("hist_" + stem + ".csv"), cli::histogram_csv(hist));
        if (args.svg) {
            cli::write_text(out / ("hist_" + stem + ".svg"),
                            cli::svg_histogram(hist, "boundary-band uncertainty: " + stem));
        }
        per_image.push_back({{"image", args.images[i]},
                             {"band_mean", study.mean},
                             {"band_values", study.values.size()}});
        std::printf("case-study: %s band mean %.6f (%zu values)\n", stem.c_str(), study.mean,
                    study.values.size());
    }

    json js{{"case", args.case_name},
            {"samples", cfg.samples},
            {"mcd_samples", cfg.mcd_samples},
            {"band_px", cfg.band_px},
            {"seed", cfg.seed},
            {"images", per_image}};
    cli::write_text(out / "summary.json", js.dump(2) + "\n");

    cli::write_manifest({"case-study", "", cfg.seed, args.out_dir, argv},
                        out / "run_manifest.json");
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"regression-rate uncertainty pipeline for slab-burner image sequences"};
    app.set_version_flag("--version", kVersion);
    app.require_subcommand(1);

    const auto args_vec = collect_args(argc, argv);

    SynthArgs synth_args;
    auto* synth_cmd = app.add_subcommand("synth", "generate a synthetic burn sequence");
    synth_cmd->add_option("--config", synth_args.config_path, "synth config JSON");
    synth_cmd->add_option("--out", synth_args.out_dir, "output directory")->required();
    std::uint64_t synth_seed = 0;
    auto* synth_seed_opt = synth_cmd->add_option("--seed", synth_seed, "noise seed override");

    PropagateArgs prop_args;
    auto* prop_cmd = app.add_subcommand("propagate", "run the Monte-Carlo rate distribution");
    prop_cmd->add_option("--config", prop_args.config_path, "propagate config JSON")->required();
    prop_cmd->add_option("--out", prop_args.out_dir, "output directory")->required();
    std::uint64_t prop_seed = 0;
    auto* prop_seed_opt = prop_cmd->add_option("--seed", prop_seed, "master seed override");
    prop_cmd->add_option("--threads", prop_args.threads, "worker threads");
    prop_cmd->add_option("--backend", prop_args.backend, "reference | playback:<dir>");
    prop_cmd->add_option("--bins", prop_args.bins, "histogram bins");
    prop_cmd->add_flag("--svg", prop_args.svg, "also render an SVG histogram");

    TrackArgs track_args;
    auto* track_cmd = app.add_subcommand("track", "track surface heights over a mask sequence");
    track_cmd->add_option("--masks", track_args.masks_dir, "directory of mask images")->required();
    track_cmd->add_option("--dt", track_args.dt_s, "seconds between frames")->required();
    track_cmd->add_option("--mm-per-pixel", track_args.mm_per_pixel, "vertical scale")->required();
    track_cmd->add_option("--stations", track_args.stations_csv, "comma-separated columns");
    track_cmd->add_option("--station-count", track_args.station_count, "auto-station count");
    track_cmd->add_option("--out", track_args.out_dir, "output directory")->required();
    track_cmd->add_flag("--svg", track_args.svg, "also render SVG traces");

    PerturbArgs pert_args;
    auto* pert_cmd = app.add_subcommand("perturb", "inject uncertainty into one frame");
    pert_cmd->add_option("--in", pert_args.in_path, "input frame (.pgm/.png)")->required();
    pert_cmd->add_option("--out", pert_args.out_path, "output frame")->required();
    pert_cmd->add_option("--uc", pert_args.distortion_pct, "distortion percent");
    pert_cmd->add_option("--ugamma", pert_args.angle_pct, "placement-angle error percent");
    pert_cmd->add_option("--seed", pert_args.seed, "distortion seed");
    pert_cmd->add_option("--mask", pert_args.mask_path, "mask fixing the pixel density");
    pert_cmd->add_option("--rho", pert_args.density, "pixel density, px/cm");
    pert_cmd->add_option("--y-cm", pert_args.fuel_length_cm, "true fuel length, cm");

    CalibArgs calib_args;
    auto* calib_cmd = app.add_subcommand("calib-study", "distortion displacement statistics");
    calib_cmd->add_option("--out", calib_args.out_dir, "output directory")->required();
    calib_cmd->add_option("--rows", calib_args.rows, "target rows");
    calib_cmd->add_option("--cols", calib_args.cols, "target columns");
    calib_cmd->add_option("--spacing-cm", calib_args.spacing_cm, "target spacing");
    calib_cmd->add_option("--distance-cm", calib_args.distance_cm, "camera distance");
    calib_cmd->add_option("--threshold-px", calib_args.threshold_px, "displacement threshold");
    calib_cmd->add_option("--fx", calib_args.intr.fx, "focal length x");
    calib_cmd->add_option("--fy", calib_args.intr.fy, "focal length y");
    calib_cmd->add_option("--cx", calib_args.intr.cx, "optical center x");
    calib_cmd->add_option("--cy", calib_args.intr.cy, "optical center y");
    calib_cmd->add_option("--k1", calib_args.intr.k1, "radial coefficient k1");
    calib_cmd->add_option("--k2", calib_args.intr.k2, "radial coefficient k2");
    calib_cmd->add_option("--k1-sweep", calib_args.k1_sweep, "comma-separated k1 values");

    CaseStudyArgs case_args;
    auto* case_cmd = app.add_subcommand("case-study", "boundary-band uncertainty histograms");
    case_cmd->add_option("--case", case_args.case_name, "baseline or 1..7");
    case_cmd->add_option("--images", case_args.images, "input frames")->required();
    case_cmd->add_option("--out", case_args.out_dir, "output directory")->required();
    case_cmd->add_option("--n", case_args.samples, "perturbation samples per image");
    case_cmd->add_option("--t", case_args.mcd_samples, "ensemble samples per pass");
    case_cmd->add_option("--band", case_args.band_px, "boundary band half-width, px");
    case_cmd->add_option("--seed", case_args.seed, "sampling seed");
    case_cmd->add_option("--y-cm", case_args.fuel_length_cm, "true fuel length, cm");
    case_cmd->add_option("--backend", case_args.backend, "reference | playback:<dir>");
    case_cmd->add_option("--bins", case_args.bins, "histogram bins");
    case_cmd->add_flag("--svg", case_args.svg, "also render SVG histograms");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForVersion& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        if (synth_cmd->parsed()) {
            if (synth_seed_opt->count()) synth_args.seed = synth_seed;
            return cmd_synth(synth_args, args_vec);
        }
        if (prop_cmd->parsed()) {
            if (prop_seed_opt->count()) prop_args.seed = prop_seed;
            return cmd_propagate(prop_args, args_vec);
        }
        if (track_cmd->parsed()) return cmd_track(track_args, args_vec);
        if (pert_cmd->parsed()) return cmd_perturb(pert_args, args_vec);
        if (calib_cmd->parsed()) return cmd_calib_study(calib_args, args_vec);
        if (case_cmd->parsed()) return cmd_case_study(case_args, args_vec);
    } catch (const ConfigError& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 2;
    } catch (const std::invalid_argument& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 2;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 3;
    }
    return 0;
}
