#pragma once

#include <array>
#include <cmath>
#include <vector>

#include "ermrer/errors.hpp"

namespace ermrer {

inline constexpr int kImageSide = 28;
inline constexpr int kCellSide = 4;
inline constexpr int kCellsPerSide = 7;   // 28 / 4
inline constexpr int kBlocksPerSide = 6;  // 7 - 1, stride one cell
inline constexpr int kNumBins = 9;
inline constexpr int kHogLength = 1296;   // 36 blocks * 4 cells * 9 bins
inline constexpr double kBlockEps = 1e-4;

struct ImageMatrix {
  // pixels[i][j], both indices 0-based; i is the "w" axis used by the
  // gradient G_w, j is the "h" axis used by G_h.
  std::array<std::array<double, kImageSide>, kImageSide> pixels{};
};

struct HogVector {
  std::vector<double> features;  // length kHogLength
};

namespace detail {

inline double grad_w(const ImageMatrix& im, int i, int j) {
  if (i == 0) return im.pixels[1][j] - im.pixels[0][j];
  if (i == kImageSide - 1)
    return im.pixels[i][j] - im.pixels[i - 1][j];
  return im.pixels[i + 1][j] - im.pixels[i - 1][j];
}

inline double grad_h(const ImageMatrix& im, int i, int j) {
  if (j == 0) return im.pixels[i][1] - im.pixels[i][0];
  if (j == kImageSide - 1)
    return im.pixels[i][j] - im.pixels[i][j - 1];
  return im.pixels[i][j + 1] - im.pixels[i][j - 1];
}

// Orientation in degrees in [0, 180). Zero-gradient pixels get 0 (their
// magnitude is 0, so they contribute nothing); a vanishing w-gradient with a
// nonzero h-gradient is a 90-degree orientation.
inline double orientation_deg(double gw, double gh) {
  if (gw == 0.0) return gh == 0.0 ? 0.0 : 90.0;
  double phi = std::atan(gh / gw) * 180.0 / M_PI;
  if (phi < 0.0) phi += 180.0;
  return phi;
}

}  // namespace detail

// Per-cell 9-bin magnitude-weighted orientation histogram; cell (w,h) covers
// pixels i in [4w, 4w+3], j in [4h, 4h+3] (0-based cell indices).
inline std::array<double, kNumBins> hog_cell_histogram(const ImageMatrix& im,
                                                       int w, int h) {
  std::array<double, kNumBins> hist{};
  for (int i = kCellSide * w; i < kCellSide * (w + 1); ++i)
    for (int j = kCellSide * h; j < kCellSide * (h + 1); ++j) {
      double gw = detail::grad_w(im, i, j);
      double gh = detail::grad_h(im, i, j);
      double mag = std::sqrt(gw * gw + gh * gh);
      if (mag == 0.0) continue;
      double phi = detail::orientation_deg(gw, gh);
      int bin = static_cast<int>(phi / 20.0);
      if (bin >= kNumBins) bin = kNumBins - 1;  // phi < 180 makes this moot
      hist[bin] += mag;
    }
  return hist;
}

inline HogVector hog(const ImageMatrix& im) {
  for (const auto& row : im.pixels)
    for (double p : row)
      if (!(p >= 0.0 && p <= 1.0))
        throw DimensionMismatch("pixel outside [0,1]");

  std::array<std::array<std::array<double, kNumBins>, kCellsPerSide>,
             kCellsPerSide>
      hists;
  for (int w = 0; w < kCellsPerSide; ++w)
    for (int h = 0; h < kCellsPerSide; ++h)
      hists[w][h] = hog_cell_histogram(im, w, h);

  HogVector out;
  out.features.reserve(kHogLength);
  // Blocks ordered with m (the w cell index) varying fastest; within a block
  // the cells appear as (m,s), (m,s+1), (m+1,s), (m+1,s+1).
  for (int s = 0; s < kBlocksPerSide; ++s)
    for (int m = 0; m < kBlocksPerSide; ++m) {
      double norm_sq = 0.0;
      for (int dw = 0; dw < 2; ++dw)
        for (int dh = 0; dh < 2; ++dh)
          for (double v : hists[m + dw][s + dh]) norm_sq += v * v;
      double denom = std::sqrt(norm_sq + kBlockEps * kBlockEps);
      const std::array<std::pair<int, int>, 4> cells = {
          {{m, s}, {m, s + 1}, {m + 1, s}, {m + 1, s + 1}}};
      for (auto [cw, ch] : cells)
        for (double v : hists[cw][ch]) out.features.push_back(v / denom);
    }
  return out;
}

}  // namespace ermrer
