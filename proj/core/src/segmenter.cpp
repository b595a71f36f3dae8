#include "slabuq/segmenter.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <stdexcept>
#include <string>

#include "slabuq/io.hpp"

namespace slabuq {

ReferenceSegmenter::ReferenceSegmenter(Params params) : params_(params) {
    if (!(params_.dropout_p >= 0.0 && params_.dropout_p <= 1.0)) {
        throw std::invalid_argument("ReferenceSegmenter: dropout_p must lie in [0, 1]");
    }
}

ProbMap ReferenceSegmenter::predict_sample(const ImageFrame& frame, const SampleContext& ctx) const {
    const int w = frame.width();
    const int h = frame.height();

    // one keep/drop gate per feature per forward pass
    RngStream rng = ctx.rng;
    const double keep = 1.0 - params_.dropout_p;
    std::array<double, 3> gated{};
    for (std::size_t m = 0; m < gated.size(); ++m) {
        gated[m] = rng.bernoulli(keep) ? params_.weights[m] : 0.0;
    }

    // centered features in [-1, 1]: intensity, row position, 3x3 local mean
    std::vector<double> gray(static_cast<std::size_t>(w) * h);
    for (int y = 0; y < h; ++y) {
        for (int x = 0; x < w; ++x) {
            gray[static_cast<std::size_t>(y) * w + x] = frame.gray(x, y) / 255.0;
        }
    }

    ProbMap out(w, h);
    for (int y = 0; y < h; ++y) {
        const double row_feat = h > 1 ? 2.0 * y / (h - 1.0) - 1.0 : 0.0;
        for (int x = 0; x < w; ++x) {
            double sum = 0.0;
            int n = 0;
            for (int dy = -1; dy <= 1; ++dy) {
                const int yy = y + dy;
                if (yy < 0 || yy >= h) continue;
                for (int dx = -1; dx <= 1; ++dx) {
                    const int xx = x + dx;
                    if (xx < 0 || xx >= w) continue;
                    sum += gray[static_cast<std::size_t>(yy) * w + xx];
                    ++n;
                }
            }
            const double g = gray[static_cast<std::size_t>(y) * w + x];
            const double logit = gated[0] * (2.0 * g - 1.0) + gated[1] * row_feat +
                                 gated[2] * (2.0 * sum / n - 1.0) + params_.bias;
            out.at(x, y) = 1.0 / (1.0 + std::exp(-logit));
        }
    }
    return out;
}

namespace {

bool parse_index(const std::string& stem, int& value) {
    const char* begin = stem.data();
    const char* end = begin + stem.size();
    auto [ptr, ec] = std::from_chars(begin, end, value);
    return ec == std::errc{} && ptr == end && value >= 0;
}

} // namespace

PlaybackBackend::PlaybackBackend(const std::filesystem::path& dir) : dir_(dir) {
    if (!std::filesystem::is_directory(dir)) {
        throw std::runtime_error(dir.string() + ": not a directory");
    }
    for (const auto& frame_entry : std::filesystem::directory_iterator(dir)) {
        if (!frame_entry.is_directory()) continue;
        int frame_id = 0;
        if (!parse_index(frame_entry.path().filename().string(), frame_id)) continue;
        for (const auto& map_entry : std::filesystem::directory_iterator(frame_entry.path())) {
            if (map_entry.path().extension() != ".pmap") continue;
            int sample = 0;
            if (!parse_index(map_entry.path().stem().string(), sample)) continue;
            maps_.emplace(std::make_pair(frame_id, sample), load_probmap(map_entry.path()));
        }
    }
    if (maps_.empty()) {
        throw std::runtime_error(dir.string() + ": no <frame>/<sample>.pmap files found");
    }
}

ProbMap PlaybackBackend::predict_sample(const ImageFrame& frame, const SampleContext& ctx) const {
    auto it = maps_.find({ctx.frame_id, ctx.sample_index});
    if (it == maps_.end()) {
        throw std::out_of_range(dir_.string() + ": no playback map for frame " +
                                std::to_string(ctx.frame_id) + ", sample " +
                                std::to_string(ctx.sample_index));
    }
    const ProbMap& map = it->second;
    if (map.width() != frame.width() || map.height() != frame.height()) {
        throw std::runtime_error(dir_.string() + ": playback map size does not match frame");
    }
    return map;
}

McdResult mcd_predict(const SegmenterBackend& backend, const ImageFrame& frame, int frame_id,
                      int samples, const RngStream& rng) {
    if (samples < 1) throw std::invalid_argument("mcd_predict: need at least one sample");

    ProbMap mean(frame.width(), frame.height(), 0.0);
    auto& acc = mean.values();
    for (int t = 0; t < samples; ++t) {
        SampleContext ctx{frame_id, t, rng.substream(static_cast<std::uint64_t>(t))};
        ProbMap sample = backend.predict_sample(frame, ctx);
        if (sample.width() != frame.width() || sample.height() != frame.height()) {
            throw std::runtime_error("mcd_predict: backend returned map of wrong size");
        }
        const auto& v = sample.values();
        for (std::size_t i = 0; i < acc.size(); ++i) acc[i] += v[i];
    }
    const double inv = 1.0 / static_cast<double>(samples);
    for (auto& v : acc) v *= inv;

    McdResult result{std::move(mean), {}, samples};
    result.model_unc = entropy_map(result.mean);
    return result;
}

UncMap entropy_map(const ProbMap& p) {
    UncMap out(p.width(), p.height());
    const auto& in = p.values();
    auto& v = out.values();
    for (std::size_t i = 0; i < in.size(); ++i) {
        const double q = in[i];
        double e = 0.0;
        if (q > 0.0 && q < 1.0) {
            e = -(q * std::log(q) + (1.0 - q) * std::log(1.0 - q));
        }
        v[i] = e;
    }
    return out;
}

UncMap compose_umask(const UncMap& model_unc, const ProbMap& fuel_prob, double segvar_pct) {
    if (!model_unc.same_size(fuel_prob)) {
        throw std::invalid_argument("compose_umask: dimension mismatch");
    }
    if (!(segvar_pct >= 0.0)) {
        throw std::invalid_argument("compose_umask: segvar_pct must be nonnegative");
    }
    UncMap out(model_unc.width(), model_unc.height());
    const auto& u = model_unc.values();
    const auto& p = fuel_prob.values();
    auto& v = out.values();
    const double scale = segvar_pct / 100.0;
    for (std::size_t i = 0; i < v.size(); ++i) v[i] = u[i] + p[i] * scale;
    return out;
}

} // namespace slabuq
