#pragma once

#include <cassert>
#include <cstdint>
#include <vector>

#include "varibase/core/types.hpp"

namespace varibase {

/// Dense row-major grid with a per-pixel validity mask.
///
/// Invalid pixels always store value 0 so that vectorized passes over the
/// raw buffers never touch garbage. Depth grids hold meters (valid > 0),
/// disparity grids hold pixels (valid >= 0); units are the owner's contract.
template <typename T>
class Image {
 public:
  Image() = default;
  Image(int width, int height, T fill = T(0), bool valid = false)
      : size_{width, height},
        values_(static_cast<size_t>(width) * height, valid ? fill : T(0)),
        valid_(static_cast<size_t>(width) * height, valid ? 1 : 0) {
    assert(width >= 0 && height >= 0);
  }

  static Image constant(int width, int height, T value) {
    return Image(width, height, value, true);
  }

  int width() const { return size_.width; }
  int height() const { return size_.height; }
  ImageSize size() const { return size_; }
  size_t pixel_count() const { return values_.size(); }

  bool in_bounds(int x, int y) const {
    return x >= 0 && x < size_.width && y >= 0 && y < size_.height;
  }

  size_t index(int x, int y) const {
    assert(in_bounds(x, y));
    return static_cast<size_t>(y) * size_.width + x;
  }

  T value(int x, int y) const { return values_[index(x, y)]; }
  bool valid(int x, int y) const { return valid_[index(x, y)] != 0; }

  void set(int x, int y, T v) {
    const size_t i = index(x, y);
    values_[i] = v;
    valid_[i] = 1;
  }

  void set_invalid(int x, int y) {
    const size_t i = index(x, y);
    values_[i] = T(0);
    valid_[i] = 0;
  }

  void invalidate_all() {
    std::fill(values_.begin(), values_.end(), T(0));
    std::fill(valid_.begin(), valid_.end(), uint8_t(0));
  }

  size_t count_valid() const {
    size_t n = 0;
    for (uint8_t m : valid_) n += m;
    return n;
  }

  const T* data() const { return values_.data(); }
  T* data() { return values_.data(); }
  const uint8_t* valid_data() const { return valid_.data(); }
  uint8_t* valid_data() { return valid_.data(); }

  const std::vector<T>& values() const { return values_; }
  const std::vector<uint8_t>& valid_mask() const { return valid_; }

 private:
  ImageSize size_;
  std::vector<T> values_;
  std::vector<uint8_t> valid_;
};

using DepthImage = Image<double>;
using DisparityImage = Image<double>;

}  // namespace varibase
