#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

namespace slabuq {

/// 8-bit interleaved RGB raster, row-major, origin top-left.
/// x runs rightward along the slab length axis, y downward.
class ImageFrame {
public:
    static constexpr int kChannels = 3;

    ImageFrame() = default;
    ImageFrame(int width, int height, std::uint8_t fill = 0);

    /// Takes ownership of interleaved RGB data; throws on size mismatch.
    ImageFrame(int width, int height, std::vector<std::uint8_t> data);

    int width() const noexcept { return width_; }
    int height() const noexcept { return height_; }

    std::uint8_t at(int x, int y, int c) const {
        return data_[(static_cast<std::size_t>(y) * width_ + x) * kChannels + c];
    }
    std::uint8_t& at(int x, int y, int c) {
        return data_[(static_cast<std::size_t>(y) * width_ + x) * kChannels + c];
    }

    void set_pixel(int x, int y, std::uint8_t r, std::uint8_t g, std::uint8_t b) {
        std::size_t i = (static_cast<std::size_t>(y) * width_ + x) * kChannels;
        data_[i] = r;
        data_[i + 1] = g;
        data_[i + 2] = b;
    }

    /// Mean of the three channels, in [0, 255].
    double gray(int x, int y) const {
        std::size_t i = (static_cast<std::size_t>(y) * width_ + x) * kChannels;
        return (data_[i] + data_[i + 1] + data_[i + 2]) / 3.0;
    }

    bool is_grayscale() const;

    const std::vector<std::uint8_t>& data() const noexcept { return data_; }
    std::vector<std::uint8_t>& data() noexcept { return data_; }

    bool same_size(const ImageFrame& o) const noexcept {
        return width_ == o.width_ && height_ == o.height_;
    }

private:
    int width_ = 0;
    int height_ = 0;
    std::vector<std::uint8_t> data_;
};

/// Dense 2-D grid of per-pixel values; Tag keeps the domain types distinct.
template <typename T, typename Tag>
class Raster {
public:
    Raster() = default;
    Raster(int width, int height, T fill = T{})
        : width_(width),
          height_(height),
          values_(static_cast<std::size_t>(width) * height, fill) {}

    int width() const noexcept { return width_; }
    int height() const noexcept { return height_; }
    std::size_t size() const noexcept { return values_.size(); }

    T at(int x, int y) const { return values_[static_cast<std::size_t>(y) * width_ + x]; }
    T& at(int x, int y) { return values_[static_cast<std::size_t>(y) * width_ + x]; }

    const std::vector<T>& values() const noexcept { return values_; }
    std::vector<T>& values() noexcept { return values_; }

    template <typename U, typename UTag>
    bool same_size(const Raster<U, UTag>& o) const noexcept {
        return width_ == o.width() && height_ == o.height();
    }

private:
    int width_ = 0;
    int height_ = 0;
    std::vector<T> values_;
};

/// Per-pixel fuel probability in [0, 1].
using ProbMap = Raster<double, struct ProbMapTag>;

/// Per-pixel nonnegative uncertainty (nats for pure entropy maps).
using UncMap = Raster<double, struct UncMapTag>;

/// Per-pixel class label: 0 = background, 1 = fuel.
using BinaryMask = Raster<std::uint8_t, struct BinaryMaskTag>;

/// Time-ordered frames at a fixed interval with the physical scales the
/// surface tracker needs.
struct FrameSequence {
    std::vector<ImageFrame> frames;
    double dt_s = 0.0;
    double fuel_length_cm = 0.0; ///< true slab length along x
    double mm_per_pixel = 0.0;   ///< vertical scale

    /// Throws std::invalid_argument unless dt > 0, >= 2 frames, and all
    /// frames share dimensions.
    void validate() const;
};

/// Fuel wherever p >= tau. Throws std::invalid_argument for tau outside (0, 1).
BinaryMask threshold_mask(const ProbMap& p, double tau = 0.5);

bool probmap_values_valid(const ProbMap& p);
bool uncmap_values_valid(const UncMap& u);

} // namespace slabuq
