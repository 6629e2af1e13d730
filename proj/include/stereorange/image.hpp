// image.hpp - 8-bit grayscale image and binary PGM (P5) I/O.
#pragma once

#include <cstdint>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace stereorange {

// Row-major 8-bit grayscale image, top row first.
struct Image {
    int width = 0;
    int height = 0;
    std::vector<std::uint8_t> pixels;

    Image() = default;
    Image(int w, int h, std::uint8_t fill = 0)
        : width(w), height(h),
          pixels(static_cast<std::size_t>(w) * static_cast<std::size_t>(h), fill) {
        if (w <= 0 || h <= 0)
            throw std::invalid_argument("image dimensions must be positive");
    }

    std::uint8_t& at(int u, int v) {
        return pixels[static_cast<std::size_t>(v) * width + u];
    }
    std::uint8_t at(int u, int v) const {
        return pixels[static_cast<std::size_t>(v) * width + u];
    }
    bool contains(int u, int v) const {
        return u >= 0 && u < width && v >= 0 && v < height;
    }
};

// Binary PGM, exactly "P5\n<width> <height>\n255\n" + raw rows.
inline void write_pgm(std::ostream& os, const Image& img) {
    os << "P5\n" << img.width << ' ' << img.height << "\n255\n";
    os.write(reinterpret_cast<const char*>(img.pixels.data()),
             static_cast<std::streamsize>(img.pixels.size()));
}

inline void write_pgm(const std::string& path, const Image& img) {
    std::ofstream os(path, std::ios::binary);
    if (!os)
        throw std::runtime_error("cannot open for writing: " + path);
    write_pgm(os, img);
    if (!os)
        throw std::runtime_error("write failed: " + path);
}

inline Image read_pgm(std::istream& is) {
    std::string magic;
    is >> magic;
    if (magic != "P5")
        throw std::runtime_error("not a binary PGM (expected P5)");
    int width = 0, height = 0, maxval = 0;
    is >> width >> height >> maxval;
    if (!is || width <= 0 || height <= 0)
        throw std::runtime_error("malformed PGM header");
    if (maxval != 255)
        throw std::runtime_error("unsupported PGM maxval (expected 255)");
    is.get();  // single whitespace after maxval
    Image img(width, height);
    is.read(reinterpret_cast<char*>(img.pixels.data()),
            static_cast<std::streamsize>(img.pixels.size()));
    if (is.gcount() != static_cast<std::streamsize>(img.pixels.size()))
        throw std::runtime_error("truncated PGM pixel data");
    return img;
}

inline Image read_pgm(const std::string& path) {
    std::ifstream is(path, std::ios::binary);
    if (!is)
        throw std::runtime_error("cannot open for reading: " + path);
    return read_pgm(is);
}

}  // namespace stereorange
