#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "ermrer/hog.hpp"

using namespace ermrer;

namespace {

ImageMatrix constant_image(double v) {
  ImageMatrix im;
  for (auto& row : im.pixels) row.fill(v);
  return im;
}

// Step edge across the w axis: 0 for i < 14, 1 for i >= 14.
ImageMatrix edge_image() {
  ImageMatrix im;
  for (int i = 0; i < kImageSide; ++i)
    for (int j = 0; j < kImageSide; ++j)
      im.pixels[i][j] = i >= 14 ? 1.0 : 0.0;
  return im;
}

}  // namespace

TEST_CASE("zero and constant images map to the zero vector") {
  for (double v : {0.0, 0.7}) {
    auto h = hog(constant_image(v));
    REQUIRE(h.features.size() == kHogLength);
    for (double x : h.features) CHECK(x == 0.0);
  }
}

TEST_CASE("hog is deterministic bit-for-bit") {
  auto im = edge_image();
  auto a = hog(im);
  auto b = hog(im);
  REQUIRE(a.features.size() == b.features.size());
  for (std::size_t i = 0; i < a.features.size(); ++i)
    CHECK(a.features[i] == b.features[i]);
}

TEST_CASE("edge image: hand-traced cell histograms") {
  auto im = edge_image();
  // Central differences fire on pixel rows i = 13 and i = 14 only, with
  // G_w = 1, G_h = 0, so orientation 0 and magnitude 1. Both rows fall in
  // cell index w = 3; each of its 4 pixel columns contributes twice.
  for (int w = 0; w < kCellsPerSide; ++w)
    for (int h = 0; h < kCellsPerSide; ++h) {
      auto hist = hog_cell_histogram(im, w, h);
      for (int n = 0; n < kNumBins; ++n) {
        double expected = (w == 3 && n == 0) ? 8.0 : 0.0;
        CHECK(hist[n] == expected);
      }
    }
}

TEST_CASE("edge image: normalized vector concentrates in the first bin") {
  auto im = edge_image();
  auto v = hog(im);
  // Blocks covering cell w = 3 hold two nonzero cells of raw norm 8 each, so
  // every nonzero entry equals 8/sqrt(128 + eps^2).
  double expected = 8.0 / std::sqrt(128.0 + kBlockEps * kBlockEps);
  int nonzero = 0;
  for (double x : v.features) {
    if (x != 0.0) {
      CHECK(x == doctest::Approx(expected).epsilon(1e-12));
      ++nonzero;
    }
  }
  // m in {2,3} x 6 s-values x 2 nonzero cells, one bin each.
  CHECK(nonzero == 24);
}

TEST_CASE("block groups have bounded norm") {
  auto im = edge_image();
  auto v = hog(im);
  REQUIRE(v.features.size() == kHogLength);
  for (std::size_t g = 0; g < 36; ++g) {
    double norm_sq = 0.0;
    for (std::size_t i = 0; i < 36; ++i) {
      double x = v.features[g * 36 + i];
      CHECK(x >= 0.0);
      norm_sq += x * x;
    }
    CHECK(std::sqrt(norm_sq) <= 1.0 + 1e-6);
  }
}

TEST_CASE("orientation conventions") {
  // A pure h-gradient lands at 90 degrees (bin 5), not in bin 1.
  ImageMatrix im;
  for (int i = 0; i < kImageSide; ++i)
    for (int j = 0; j < kImageSide; ++j)
      im.pixels[i][j] = j >= 14 ? 1.0 : 0.0;
  auto hist = hog_cell_histogram(im, 0, 3);
  CHECK(hist[4] == 8.0);  // 90 / 20 = 4.5 -> bin index 4
  for (int n = 0; n < kNumBins; ++n)
    if (n != 4) CHECK(hist[n] == 0.0);
}
