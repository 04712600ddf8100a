#include "cgvs/image_io.hpp"

#include <png.h>

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <vector>

namespace cgvs {

namespace {

std::vector<std::uint8_t> read_png_buffer(const std::string& path,
                                          png_uint_32 format, int channels,
                                          int& width, int& height) {
    png_image image{};
    image.version = PNG_IMAGE_VERSION;
    if (!png_image_begin_read_from_file(&image, path.c_str()))
        throw std::runtime_error("cannot read PNG " + path + ": " + image.message);

    image.format = format;
    std::vector<std::uint8_t> buffer(PNG_IMAGE_SIZE(image));
    if (!png_image_finish_read(&image, nullptr, buffer.data(), 0, nullptr)) {
        const std::string msg = image.message;
        png_image_free(&image);
        throw std::runtime_error("cannot decode PNG " + path + ": " + msg);
    }
    width = static_cast<int>(image.width);
    height = static_cast<int>(image.height);
    if (buffer.size() != static_cast<std::size_t>(width) * height * channels)
        throw std::runtime_error("unexpected PNG buffer size for " + path);
    return buffer;
}

}  // namespace

ColorImage read_color_png(const std::string& path) {
    int w = 0, h = 0;
    const auto buf = read_png_buffer(path, PNG_FORMAT_RGB, 3, w, h);
    ColorImage img(w, h);
    for (std::size_t i = 0; i < static_cast<std::size_t>(w) * h; ++i) {
        img.r[i] = buf[3 * i + 0] / 255.0;
        img.g[i] = buf[3 * i + 1] / 255.0;
        img.b[i] = buf[3 * i + 2] / 255.0;
    }
    return img;
}

Raster read_gray_png(const std::string& path) {
    int w = 0, h = 0;
    const auto buf = read_png_buffer(path, PNG_FORMAT_GRAY, 1, w, h);
    Raster x(w, h);
    for (std::size_t i = 0; i < x.size(); ++i) x[i] = buf[i] / 255.0;
    return x;
}

Mask read_mask_png(const std::string& path) {
    int w = 0, h = 0;
    const auto buf = read_png_buffer(path, PNG_FORMAT_GRAY, 1, w, h);
    Mask m(w, h);
    for (std::size_t i = 0; i < m.size(); ++i) m.set(i, buf[i] > 127);
    return m;
}

void write_gray_png(const std::string& path, const Raster& x) {
    std::vector<std::uint8_t> buf(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) {
        const double v = std::clamp(x[i], 0.0, 1.0);
        buf[i] = static_cast<std::uint8_t>(std::lround(255.0 * v));
    }

    png_image image{};
    image.version = PNG_IMAGE_VERSION;
    image.width = static_cast<png_uint_32>(x.width());
    image.height = static_cast<png_uint_32>(x.height());
    image.format = PNG_FORMAT_GRAY;
    if (!png_image_write_to_file(&image, path.c_str(), 0, buf.data(), 0, nullptr))
        throw std::runtime_error("cannot write PNG " + path + ": " + image.message);
}

void write_color_png(const std::string& path, const ColorImage& img) {
    const std::size_t n = img.r.size();
    std::vector<std::uint8_t> buf(3 * n);
    const auto q = [](double v) {
        return static_cast<std::uint8_t>(std::lround(255.0 * std::clamp(v, 0.0, 1.0)));
    };
    for (std::size_t i = 0; i < n; ++i) {
        buf[3 * i + 0] = q(img.r[i]);
        buf[3 * i + 1] = q(img.g[i]);
        buf[3 * i + 2] = q(img.b[i]);
    }

    png_image image{};
    image.version = PNG_IMAGE_VERSION;
    image.width = static_cast<png_uint_32>(img.width());
    image.height = static_cast<png_uint_32>(img.height());
    image.format = PNG_FORMAT_RGB;
    if (!png_image_write_to_file(&image, path.c_str(), 0, buf.data(), 0, nullptr))
        throw std::runtime_error("cannot write PNG " + path + ": " + image.message);
}

FixationSet read_fixations_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in)
        throw std::runtime_error("cannot open fixation file " + path);

    FixationSet fix;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        if (line.find_first_not_of(" \t\r\n") == std::string::npos) continue;

        std::istringstream ss(line);
        FixationPoint p;
        char comma = 0;
        if (!(ss >> p.x >> comma >> p.y) || comma != ',')
            throw std::runtime_error("malformed fixation line " + path + ":" +
                                     std::to_string(lineno));
        fix.points.push_back(p);
    }
    return fix;
}

}  // namespace cgvs
