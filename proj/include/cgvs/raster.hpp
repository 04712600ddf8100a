#pragma once

#include <cassert>
#include <cstddef>
#include <utility>
#include <vector>

namespace cgvs {

/// Row-major grid of doubles. Every map in the pipeline (edge magnitude,
/// prior, feature channel, posterior) is one of these. Values stay
/// unquantized; 8-bit rounding happens only when a map is written to disk.
class Raster {
public:
    Raster() = default;
    Raster(int width, int height, double fill = 0.0);

    int width() const { return w_; }
    int height() const { return h_; }
    std::size_t size() const { return v_.size(); }
    bool empty() const { return v_.empty(); }

    double& at(int x, int y) {
        assert(in_bounds(x, y));
        return v_[static_cast<std::size_t>(y) * w_ + x];
    }
    double at(int x, int y) const {
        assert(in_bounds(x, y));
        return v_[static_cast<std::size_t>(y) * w_ + x];
    }

    /// Border reads with edge replication.
    double at_clamped(int x, int y) const;

    double& operator[](std::size_t i) { return v_[i]; }
    double operator[](std::size_t i) const { return v_[i]; }

    bool in_bounds(int x, int y) const {
        return x >= 0 && x < w_ && y >= 0 && y < h_;
    }
    bool same_size(const Raster& o) const {
        return w_ == o.w_ && h_ == o.h_;
    }

    std::vector<double>& values() { return v_; }
    const std::vector<double>& values() const { return v_; }

private:
    int w_ = 0;
    int h_ = 0;
    std::vector<double> v_;
};

/// W x H RGB image, channels in [0,1].
struct ColorImage {
    Raster r, g, b;

    ColorImage() = default;
    ColorImage(int width, int height)
        : r(width, height), g(width, height), b(width, height) {}

    int width() const { return r.width(); }
    int height() const { return r.height(); }
};

std::pair<double, double> min_max(const Raster& x);
double mean_value(const Raster& x);

/// (x - min) / (max - min); a constant raster maps to all zeros.
Raster normalize01(const Raster& x);

/// Bilinear resampling with half-pixel center alignment.
Raster resize_bilinear(const Raster& x, int new_width, int new_height);
ColorImage resize_bilinear(const ColorImage& img, int new_width, int new_height);

}  // namespace cgvs
