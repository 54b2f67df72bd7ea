#pragma once

#include <cstdint>
#include <vector>

#include "splatfuse/common.hpp"

namespace splatfuse {

/// Dense row-major image with interleaved channels. Values of rendered /
/// loaded images live in [0,1]; masks use a single channel.
template <class T> class Image {
public:
  Image() = default;
  Image(int height, int width, int channels, T fill = T(0))
      : height_(height), width_(width), channels_(channels),
        data_(static_cast<std::size_t>(height) * width * channels, fill) {}

  int height() const { return height_; }
  int width() const { return width_; }
  int channels() const { return channels_; }
  std::size_t size() const { return data_.size(); }
  bool empty() const { return data_.empty(); }

  T& operator()(int y, int x, int c = 0) {
    return data_[(static_cast<std::size_t>(y) * width_ + x) * channels_ + c];
  }
  const T& operator()(int y, int x, int c = 0) const {
    return data_[(static_cast<std::size_t>(y) * width_ + x) * channels_ + c];
  }

  T* data() { return data_.data(); }
  const T* data() const { return data_.data(); }
  std::vector<T>& raw() { return data_; }
  const std::vector<T>& raw() const { return data_; }

  bool same_shape(const Image& other) const {
    return height_ == other.height_ && width_ == other.width_ &&
           channels_ == other.channels_;
  }

  template <class U> Image<U> cast() const {
    Image<U> out(height_, width_, channels_);
    for (std::size_t i = 0; i < data_.size(); ++i)
      out.raw()[i] = static_cast<U>(data_[i]);
    return out;
  }

private:
  int height_ = 0;
  int width_ = 0;
  int channels_ = 0;
  std::vector<T> data_;
};

using MaskImage = Image<std::uint8_t>;

template <class T>
inline void require_same_shape(const Image<T>& a, const Image<T>& b,
                               const char* what) {
  if (!a.same_shape(b))
    throw ShapeMismatch(std::string(what) + ": image shapes differ");
}

namespace detail {

template <class S>
inline std::vector<S> gaussian_taps(S sigma, int radius) {
  std::vector<S> taps(2 * radius + 1);
  S sum = S(0);
  for (int i = -radius; i <= radius; ++i) {
    const S v = std::exp(-S(i) * S(i) / (S(2) * sigma * sigma));
    taps[i + radius] = v;
    sum += v;
  }
  for (auto& v : taps) v /= sum;
  return taps;
}

} // namespace detail

/// Separable Gaussian blur with border renormalization: out-of-bounds taps
/// are dropped and the remaining weights rescaled, so constant images are
/// preserved exactly.
template <class S>
inline Image<S> gaussian_blur(const Image<S>& img, S sigma) {
  const int radius = std::max(1, static_cast<int>(std::ceil(3 * sigma)));
  const auto taps = detail::gaussian_taps(sigma, radius);
  const int h = img.height(), w = img.width(), ch = img.channels();

  Image<S> tmp(h, w, ch), out(h, w, ch);
  for (int y = 0; y < h; ++y)
    for (int x = 0; x < w; ++x)
      for (int c = 0; c < ch; ++c) {
        S acc = S(0), wsum = S(0);
        for (int k = -radius; k <= radius; ++k) {
          const int xx = x + k;
          if (xx < 0 || xx >= w) continue;
          acc += taps[k + radius] * img(y, xx, c);
          wsum += taps[k + radius];
        }
        tmp(y, x, c) = acc / wsum;
      }
  for (int y = 0; y < h; ++y)
    for (int x = 0; x < w; ++x)
      for (int c = 0; c < ch; ++c) {
        S acc = S(0), wsum = S(0);
        for (int k = -radius; k <= radius; ++k) {
          const int yy = y + k;
          if (yy < 0 || yy >= h) continue;
          acc += taps[k + radius] * tmp(yy, x, c);
          wsum += taps[k + radius];
        }
        out(y, x, c) = acc / wsum;
      }
  return out;
}

template <class T> inline double image_mean(const Image<T>& img) {
  double sum = 0;
  for (const auto& v : img.raw()) sum += static_cast<double>(v);
  return img.size() ? sum / static_cast<double>(img.size()) : 0.0;
}

} // namespace splatfuse
