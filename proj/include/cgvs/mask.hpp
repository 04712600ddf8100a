#pragma once

#include <cassert>
#include <cstdint>
#include <vector>

#include "cgvs/raster.hpp"

namespace cgvs {

/// Boolean raster. Used for ridge pixels, ground-truth masks and the
/// per-object masks of the search trace.
class Mask {
public:
    Mask() = default;
    Mask(int width, int height, bool fill = false);

    int width() const { return w_; }
    int height() const { return h_; }
    std::size_t size() const { return v_.size(); }
    bool empty() const { return v_.empty(); }

    bool at(int x, int y) const {
        assert(in_bounds(x, y));
        return v_[static_cast<std::size_t>(y) * w_ + x] != 0;
    }
    void set(int x, int y, bool b) {
        assert(in_bounds(x, y));
        v_[static_cast<std::size_t>(y) * w_ + x] = b ? 1 : 0;
    }
    bool operator[](std::size_t i) const { return v_[i] != 0; }
    void set(std::size_t i, bool b) { v_[i] = b ? 1 : 0; }

    bool in_bounds(int x, int y) const {
        return x >= 0 && x < w_ && y >= 0 && y < h_;
    }
    bool same_size(const Mask& o) const { return w_ == o.w_ && h_ == o.h_; }

private:
    int w_ = 0;
    int h_ = 0;
    std::vector<std::uint8_t> v_;
};

/// Pixels with value >= threshold.
Mask threshold_mask(const Raster& x, double threshold);

std::size_t count(const Mask& m);
double mask_iou(const Mask& a, const Mask& b);

/// Morphological dilation by a Euclidean disk of the given radius.
Mask dilate_disk(const Mask& m, int radius);

/// 8-connected component of m containing (seed_x, seed_y); empty mask if the
/// seed itself is not set.
Mask connected_component(const Mask& m, int seed_x, int seed_y);

}  // namespace cgvs
