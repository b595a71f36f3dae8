#pragma once

#include <filesystem>

#include "slabuq/raster.hpp"

namespace slabuq {

enum class ImageFormat { pgm, png };

/// Deduces pgm/png from the file extension; throws on anything else.
ImageFormat format_from_extension(const std::filesystem::path& path);

/// Reads an 8-bit PGM (P5) or PNG raster. Grayscale content is replicated
/// across the three channels. Throws std::runtime_error on IO failure,
/// malformed headers, or bit depths other than 8.
ImageFrame load_frame(const std::filesystem::path& path);
ImageFrame load_frame(const std::filesystem::path& path, ImageFormat format);

/// Writes a frame. PGM accepts only grayscale content (all channels equal);
/// PNG stores full RGB. Round trips are bit-exact.
void save_frame(const ImageFrame& frame, const std::filesystem::path& path);
void save_frame(const ImageFrame& frame, const std::filesystem::path& path, ImageFormat format);

/// Probability / uncertainty map files: a flat little-endian float32
/// row-major payload at `path` plus a JSON sidecar at `path + ".json"`
/// holding {width, height, kind}. Values restore to float32 precision.
void save_probmap(const ProbMap& map, const std::filesystem::path& path);
ProbMap load_probmap(const std::filesystem::path& path);

void save_uncmap(const UncMap& map, const std::filesystem::path& path);
UncMap load_uncmap(const std::filesystem::path& path);

/// Masks persist as PGM with fuel = 255, background = 0; loading maps
/// intensity >= 128 to fuel.
void save_mask(const BinaryMask& mask, const std::filesystem::path& path);
BinaryMask load_mask(const std::filesystem::path& path);

} // namespace slabuq
