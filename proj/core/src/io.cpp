#include "slabuq/io.hpp"

#include <png.h>

#include <cctype>
#include <cstring>
#include <fstream>
#include <stdexcept>
#include <string>

#include <nlohmann/json.hpp>

namespace slabuq {

namespace {

[[noreturn]] void fail(const std::filesystem::path& path, const std::string& why) {
    throw std::runtime_error(path.string() + ": " + why);
}

// --- PGM (P5) ---

int pgm_read_token(std::istream& in, const std::filesystem::path& path) {
    // skips whitespace and '#' comment lines between header fields
    int c = in.get();
    while (c != EOF) {
        if (c == '#') {
            while (c != EOF && c != '\n') c = in.get();
        } else if (!std::isspace(c)) {
            break;
        }
        c = in.get();
    }
    if (c == EOF || !std::isdigit(c)) fail(path, "malformed PGM header");
    int value = 0;
    while (c != EOF && std::isdigit(c)) {
        value = value * 10 + (c - '0');
        if (value > (1 << 30)) fail(path, "malformed PGM header");
        c = in.get();
    }
    if (c != EOF) in.unget();
    return value;
}

ImageFrame load_pgm(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) fail(path, "cannot open for reading");
    char magic[2] = {0, 0};
    in.read(magic, 2);
    if (!in || magic[0] != 'P' || magic[1] != '5') fail(path, "not a P5 PGM file");
    int width = pgm_read_token(in, path);
    int height = pgm_read_token(in, path);
    int maxval = pgm_read_token(in, path);
    if (width <= 0 || height <= 0) fail(path, "malformed PGM header");
    if (maxval != 255) fail(path, "unsupported bit depth (maxval must be 255)");
    in.get(); // single whitespace byte after maxval

    std::vector<std::uint8_t> gray(static_cast<std::size_t>(width) * height);
    in.read(reinterpret_cast<char*>(gray.data()), static_cast<std::streamsize>(gray.size()));
    if (in.gcount() != static_cast<std::streamsize>(gray.size())) fail(path, "truncated PGM payload");

    std::vector<std::uint8_t> rgb(gray.size() * 3);
    for (std::size_t i = 0; i < gray.size(); ++i) {
        rgb[3 * i] = rgb[3 * i + 1] = rgb[3 * i + 2] = gray[i];
    }
    return ImageFrame(width, height, std::move(rgb));
}

void save_pgm(const ImageFrame& frame, const std::filesystem::path& path) {
    if (!frame.is_grayscale()) {
        throw std::invalid_argument(path.string() +
                                    ": PGM stores grayscale content only; use PNG for color");
    }
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) fail(path, "cannot open for writing");
    out << "P5\n" << frame.width() << " " << frame.height() << "\n255\n";
    std::vector<std::uint8_t> gray(static_cast<std::size_t>(frame.width()) * frame.height());
    const auto& rgb = frame.data();
    for (std::size_t i = 0; i < gray.size(); ++i) gray[i] = rgb[3 * i];
    out.write(reinterpret_cast<const char*>(gray.data()), static_cast<std::streamsize>(gray.size()));
    if (!out) fail(path, "write failure");
}

// --- PNG ---

struct PngReadCloser {
    png_structp png = nullptr;
    png_infop info = nullptr;
    std::FILE* fp = nullptr;
    ~PngReadCloser() {
        if (png) png_destroy_read_struct(&png, info ? &info : nullptr, nullptr);
        if (fp) std::fclose(fp);
    }
};

ImageFrame load_png(const std::filesystem::path& path) {
    PngReadCloser ctx;
    ctx.fp = std::fopen(path.string().c_str(), "rb");
    if (!ctx.fp) fail(path, "cannot open for reading");

    png_byte header[8];
    if (std::fread(header, 1, 8, ctx.fp) != 8 || png_sig_cmp(header, 0, 8) != 0) {
        fail(path, "not a PNG file");
    }
    ctx.png = png_create_read_struct(PNG_LIBPNG_VER_STRING, nullptr, nullptr, nullptr);
    if (!ctx.png) fail(path, "libpng init failure");
    ctx.info = png_create_info_struct(ctx.png);
    if (!ctx.info) fail(path, "libpng init failure");
    if (setjmp(png_jmpbuf(ctx.png))) fail(path, "malformed PNG");

    png_init_io(ctx.png, ctx.fp);
    png_set_sig_bytes(ctx.png, 8);
    png_read_info(ctx.png, ctx.info);

    const png_uint_32 width = png_get_image_width(ctx.png, ctx.info);
    const png_uint_32 height = png_get_image_height(ctx.png, ctx.info);
    const int bit_depth = png_get_bit_depth(ctx.png, ctx.info);
    const int color_type = png_get_color_type(ctx.png, ctx.info);

    if (color_type == PNG_COLOR_TYPE_PALETTE) {
        png_set_palette_to_rgb(ctx.png);
    } else if (bit_depth != 8) {
        fail(path, "unsupported bit depth (must be 8)");
    }
    if (color_type == PNG_COLOR_TYPE_GRAY || color_type == PNG_COLOR_TYPE_GRAY_ALPHA) {
        png_set_gray_to_rgb(ctx.png);
    }
    if (color_type & PNG_COLOR_MASK_ALPHA) {
        png_set_strip_alpha(ctx.png);
    }
    png_read_update_info(ctx.png, ctx.info);
    if (png_get_rowbytes(ctx.png, ctx.info) != width * 3) fail(path, "unexpected PNG row layout");

    ImageFrame frame(static_cast<int>(width), static_cast<int>(height));
    std::vector<png_bytep> rows(height);
    for (png_uint_32 y = 0; y < height; ++y) {
        rows[y] = frame.data().data() + static_cast<std::size_t>(y) * width * 3;
    }
    png_read_image(ctx.png, rows.data());
    png_read_end(ctx.png, nullptr);
    return frame;
}

struct PngWriteCloser {
    png_structp png = nullptr;
    png_infop info = nullptr;
    std::FILE* fp = nullptr;
    ~PngWriteCloser() {
        if (png) png_destroy_write_struct(&png, info ? &info : nullptr);
        if (fp) std::fclose(fp);
    }
};

void save_png(const ImageFrame& frame, const std::filesystem::path& path) {
    PngWriteCloser ctx;
    ctx.fp = std::fopen(path.string().c_str(), "wb");
    if (!ctx.fp) fail(path, "cannot open for writing");
    ctx.png = png_create_write_struct(PNG_LIBPNG_VER_STRING, nullptr, nullptr, nullptr);
    if (!ctx.png) fail(path, "libpng init failure");
    ctx.info = png_create_info_struct(ctx.png);
    if (!ctx.info) fail(path, "libpng init failure");
    if (setjmp(png_jmpbuf(ctx.png))) fail(path, "PNG write failure");

    png_init_io(ctx.png, ctx.fp);
    png_set_IHDR(ctx.png, ctx.info, static_cast<png_uint_32>(frame.width()),
                 static_cast<png_uint_32>(frame.height()), 8, PNG_COLOR_TYPE_RGB,
                 PNG_INTERLACE_NONE, PNG_COMPRESSION_TYPE_DEFAULT, PNG_FILTER_TYPE_DEFAULT);
    png_write_info(ctx.png, ctx.info);
    std::vector<png_const_bytep> rows(frame.height());
    for (int y = 0; y < frame.height(); ++y) {
        rows[y] = frame.data().data() + static_cast<std::size_t>(y) * frame.width() * 3;
    }
    png_write_rows(ctx.png, const_cast<png_bytepp>(const_cast<png_bytep*>(rows.data())),
                   static_cast<png_uint_32>(rows.size()));
    png_write_end(ctx.png, ctx.info);
}

// --- float32 map payload + JSON sidecar ---

std::filesystem::path sidecar_path(const std::filesystem::path& path) {
    return std::filesystem::path(path.string() + ".json");
}

void save_float_map(const std::vector<double>& values, int width, int height,
                    const char* kind, const std::filesystem::path& path) {
    std::vector<float> payload(values.size());
    for (std::size_t i = 0; i < values.size(); ++i) payload[i] = static_cast<float>(values[i]);

    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) fail(path, "cannot open for writing");
    out.write(reinterpret_cast<const char*>(payload.data()),
              static_cast<std::streamsize>(payload.size() * sizeof(float)));
    if (!out) fail(path, "write failure");

    nlohmann::json meta{{"width", width}, {"height", height}, {"kind", kind}};
    std::ofstream side(sidecar_path(path), std::ios::trunc);
    if (!side) fail(sidecar_path(path), "cannot open for writing");
    side << meta.dump(2) << "\n";
}

std::vector<double> load_float_map(const std::filesystem::path& path, const char* kind,
                                   int& width, int& height) {
    std::ifstream side(sidecar_path(path));
    if (!side) fail(sidecar_path(path), "cannot open sidecar");
    nlohmann::json meta;
    try {
        side >> meta;
        width = meta.at("width").get<int>();
        height = meta.at("height").get<int>();
        if (meta.at("kind").get<std::string>() != kind) {
            fail(sidecar_path(path), std::string("sidecar kind is not '") + kind + "'");
        }
    } catch (const nlohmann::json::exception& e) {
        fail(sidecar_path(path), std::string("bad sidecar: ") + e.what());
    }
    if (width <= 0 || height <= 0) fail(sidecar_path(path), "bad sidecar dimensions");

    std::ifstream in(path, std::ios::binary);
    if (!in) fail(path, "cannot open for reading");
    const std::size_t count = static_cast<std::size_t>(width) * height;
    std::vector<float> payload(count);
    in.read(reinterpret_cast<char*>(payload.data()),
            static_cast<std::streamsize>(count * sizeof(float)));
    if (in.gcount() != static_cast<std::streamsize>(count * sizeof(float))) {
        fail(path, "payload size does not match sidecar dimensions");
    }
    in.peek();
    if (!in.eof()) fail(path, "payload size does not match sidecar dimensions");

    std::vector<double> values(count);
    for (std::size_t i = 0; i < count; ++i) values[i] = static_cast<double>(payload[i]);
    return values;
}

} // namespace

ImageFormat format_from_extension(const std::filesystem::path& path) {
    std::string ext = path.extension().string();
    for (auto& c : ext) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    if (ext == ".pgm") return ImageFormat::pgm;
    if (ext == ".png") return ImageFormat::png;
    throw std::runtime_error(path.string() + ": unsupported image extension (want .pgm or .png)");
}

ImageFrame load_frame(const std::filesystem::path& path) {
    return load_frame(path, format_from_extension(path));
}

ImageFrame load_frame(const std::filesystem::path& path, ImageFormat format) {
    return format == ImageFormat::pgm ? load_pgm(path) : load_png(path);
}

void save_frame(const ImageFrame& frame, const std::filesystem::path& path) {
    save_frame(frame, path, format_from_extension(path));
}

void save_frame(const ImageFrame& frame, const std::filesystem::path& path, ImageFormat format) {
    if (format == ImageFormat::pgm) {
        save_pgm(frame, path);
    } else {
        save_png(frame, path);
    }
}

void save_probmap(const ProbMap& map, const std::filesystem::path& path) {
    save_float_map(map.values(), map.width(), map.height(), "prob", path);
}

ProbMap load_probmap(const std::filesystem::path& path) {
    int width = 0, height = 0;
    auto values = load_float_map(path, "prob", width, height);
    ProbMap map(width, height);
    map.values() = std::move(values);
    if (!probmap_values_valid(map)) fail(path, "probability values outside [0, 1]");
    return map;
}

void save_uncmap(const UncMap& map, const std::filesystem::path& path) {
    save_float_map(map.values(), map.width(), map.height(), "unc", path);
}

UncMap load_uncmap(const std::filesystem::path& path) {
    int width = 0, height = 0;
    auto values = load_float_map(path, "unc", width, height);
    UncMap map(width, height);
    map.values() = std::move(values);
    if (!uncmap_values_valid(map)) fail(path, "uncertainty values must be nonnegative");
    return map;
}

void save_mask(const BinaryMask& mask, const std::filesystem::path& path) {
    ImageFrame frame(mask.width(), mask.height());
    for (int y = 0; y < mask.height(); ++y) {
        for (int x = 0; x < mask.width(); ++x) {
            std::uint8_t v = mask.at(x, y) ? 255 : 0;
            frame.set_pixel(x, y, v, v, v);
        }
    }
    save_pgm(frame, path);
}

BinaryMask load_mask(const std::filesystem::path& path) {
    ImageFrame frame = load_frame(path);
    BinaryMask mask(frame.width(), frame.height());
    for (int y = 0; y < frame.height(); ++y) {
        for (int x = 0; x < frame.width(); ++x) {
            mask.at(x, y) = frame.gray(x, y) >= 128.0 ? 1 : 0;
        }
    }
    return mask;
}

} // namespace slabuq
