#include "slabuq/raster.hpp"

#include <stdexcept>

namespace slabuq {

ImageFrame::ImageFrame(int width, int height, std::uint8_t fill)
    : width_(width),
      height_(height),
      data_(static_cast<std::size_t>(width) * height * kChannels, fill) {
    if (width <= 0 || height <= 0) {
        throw std::invalid_argument("ImageFrame: dimensions must be positive");
    }
}

ImageFrame::ImageFrame(int width, int height, std::vector<std::uint8_t> data)
    : width_(width), height_(height), data_(std::move(data)) {
    if (width <= 0 || height <= 0) {
        throw std::invalid_argument("ImageFrame: dimensions must be positive");
    }
    if (data_.size() != static_cast<std::size_t>(width) * height * kChannels) {
        throw std::invalid_argument("ImageFrame: data size does not match dimensions");
    }
}

bool ImageFrame::is_grayscale() const {
    for (std::size_t i = 0; i < data_.size(); i += kChannels) {
        if (data_[i] != data_[i + 1] || data_[i] != data_[i + 2]) return false;
    }
    return true;
}

void FrameSequence::validate() const {
    if (dt_s <= 0.0) throw std::invalid_argument("FrameSequence: dt must be positive");
    if (frames.size() < 2) throw std::invalid_argument("FrameSequence: need at least 2 frames");
    if (fuel_length_cm <= 0.0 || mm_per_pixel <= 0.0) {
        throw std::invalid_argument("FrameSequence: physical scales must be positive");
    }
    for (const auto& f : frames) {
        if (!f.same_size(frames.front())) {
            throw std::invalid_argument("FrameSequence: frames differ in size");
        }
    }
}

BinaryMask threshold_mask(const ProbMap& p, double tau) {
    if (!(tau > 0.0 && tau < 1.0)) {
        throw std::invalid_argument("threshold_mask: tau must lie in (0, 1)");
    }
    BinaryMask mask(p.width(), p.height());
    const auto& in = p.values();
    auto& out = mask.values();
    for (std::size_t i = 0; i < in.size(); ++i) {
        out[i] = in[i] >= tau ? 1 : 0;
    }
    return mask;
}

bool probmap_values_valid(const ProbMap& p) {
    for (double v : p.values()) {
        if (!(v >= 0.0 && v <= 1.0)) return false;
    }
    return true;
}

bool uncmap_values_valid(const UncMap& u) {
    for (double v : u.values()) {
        if (!(v >= 0.0)) return false;
    }
    return true;
}

} // namespace slabuq
