#pragma once

#include <cstdint>
#include <fstream>
#include <string>
#include <utility>
#include <vector>

#include "ermrer/errors.hpp"
#include "ermrer/hog.hpp"

namespace ermrer {

inline constexpr std::uint32_t kIdxImageMagic = 0x00000803;
inline constexpr std::uint32_t kIdxLabelMagic = 0x00000801;

namespace detail {

inline std::uint32_t read_u32_be(std::istream& in, const std::string& what) {
  unsigned char b[4];
  if (!in.read(reinterpret_cast<char*>(b), 4))
    throw TruncatedFile(what);
  return (std::uint32_t(b[0]) << 24) | (std::uint32_t(b[1]) << 16) |
         (std::uint32_t(b[2]) << 8) | std::uint32_t(b[3]);
}

inline void write_u32_be(std::ostream& out, std::uint32_t v) {
  unsigned char b[4] = {static_cast<unsigned char>(v >> 24),
                        static_cast<unsigned char>(v >> 16),
                        static_cast<unsigned char>(v >> 8),
                        static_cast<unsigned char>(v)};
  out.write(reinterpret_cast<char*>(b), 4);
}

}  // namespace detail

inline std::vector<std::pair<ImageMatrix, int>> ingest_idx(
    const std::string& images_path, const std::string& labels_path,
    std::pair<int, int> keep_labels) {
  std::ifstream img(images_path, std::ios::binary);
  if (!img) throw TruncatedFile("cannot open " + images_path);
  std::ifstream lab(labels_path, std::ios::binary);
  if (!lab) throw TruncatedFile("cannot open " + labels_path);

  if (detail::read_u32_be(img, "image magic") != kIdxImageMagic)
    throw BadMagic(images_path);
  std::uint32_t n_img = detail::read_u32_be(img, "image count");
  std::uint32_t rows = detail::read_u32_be(img, "rows");
  std::uint32_t cols = detail::read_u32_be(img, "cols");
  if (rows != kImageSide || cols != kImageSide)
    throw DimensionMismatch("expected 28x28 images");

  if (detail::read_u32_be(lab, "label magic") != kIdxLabelMagic)
    throw BadMagic(labels_path);
  std::uint32_t n_lab = detail::read_u32_be(lab, "label count");
  if (n_img != n_lab) throw DimensionMismatch("image/label count mismatch");

  std::vector<std::pair<ImageMatrix, int>> out;
  std::vector<unsigned char> buf(kImageSide * kImageSide);
  for (std::uint32_t k = 0; k < n_img; ++k) {
    if (!img.read(reinterpret_cast<char*>(buf.data()), buf.size()))
      throw TruncatedFile("image record " + std::to_string(k));
    char lc;
    if (!lab.read(&lc, 1))
      throw TruncatedFile("label record " + std::to_string(k));
    int label = static_cast<unsigned char>(lc);
    if (label != keep_labels.first && label != keep_labels.second) continue;
    ImageMatrix im;
    for (int i = 0; i < kImageSide; ++i)
      for (int j = 0; j < kImageSide; ++j)
        im.pixels[i][j] = buf[i * kImageSide + j] / 255.0;
    out.emplace_back(im, label);
  }
  return out;
}

// Writer used by tests and tooling to build small fixtures.
inline void write_idx(const std::string& images_path,
                      const std::string& labels_path,
                      const std::vector<std::pair<ImageMatrix, int>>& records) {
  std::ofstream img(images_path, std::ios::binary);
  std::ofstream lab(labels_path, std::ios::binary);
  detail::write_u32_be(img, kIdxImageMagic);
  detail::write_u32_be(img, static_cast<std::uint32_t>(records.size()));
  detail::write_u32_be(img, kImageSide);
  detail::write_u32_be(img, kImageSide);
  detail::write_u32_be(lab, kIdxLabelMagic);
  detail::write_u32_be(lab, static_cast<std::uint32_t>(records.size()));
  for (const auto& [im, label] : records) {
    for (int i = 0; i < kImageSide; ++i)
      for (int j = 0; j < kImageSide; ++j) {
        unsigned char b = static_cast<unsigned char>(
            std::lround(im.pixels[i][j] * 255.0));
        img.write(reinterpret_cast<char*>(&b), 1);
      }
    unsigned char lb = static_cast<unsigned char>(label);
    lab.write(reinterpret_cast<char*>(&lb), 1);
  }
}

}  // namespace ermrer
