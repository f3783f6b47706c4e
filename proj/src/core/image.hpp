#pragma once

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

namespace fad {

// 8-bit RGB raster, row-major interleaved.
struct ImageBuffer {
  int width = 0;
  int height = 0;
  std::vector<std::uint8_t> data;  // width * height * 3

  ImageBuffer() = default;
  ImageBuffer(int w, int h, std::uint8_t fill = 0)
      : width(w), height(h), data(static_cast<std::size_t>(w) * h * 3, fill) {}

  std::uint8_t& at(int x, int y, int c) {
    return data[(static_cast<std::size_t>(y) * width + x) * 3 + c];
  }
  std::uint8_t at(int x, int y, int c) const {
    return data[(static_cast<std::size_t>(y) * width + x) * 3 + c];
  }
  bool same_size(const ImageBuffer& o) const {
    return width == o.width && height == o.height;
  }
  bool operator==(const ImageBuffer& o) const = default;
};

// Binary raster, samples are 0 or 1.
struct MaskBuffer {
  int width = 0;
  int height = 0;
  std::vector<std::uint8_t> data;  // width * height

  MaskBuffer() = default;
  MaskBuffer(int w, int h, std::uint8_t fill = 0)
      : width(w), height(h), data(static_cast<std::size_t>(w) * h, fill) {}

  std::uint8_t& at(int x, int y) { return data[static_cast<std::size_t>(y) * width + x]; }
  std::uint8_t at(int x, int y) const { return data[static_cast<std::size_t>(y) * width + x]; }
  int count_set() const;
  bool operator==(const MaskBuffer& o) const = default;
};

enum class JitterMode { Bcsh = 0, Bc = 1, RandomColor = 2 };

// Color jitter of one patch. Bcsh multiplies brightness/contrast/saturation by
// uniform[1-s,1+s] and rotates hue by uniform[-s*180, s*180] degrees (s=0.2);
// Bc does brightness/contrast at s=1 with the factor floor clamped at 0;
// RandomColor multiplies two randomly chosen channels by factors in [0,2].
// `strength` overrides the mode default for Bcsh/Bc.
ImageBuffer color_jitter(const ImageBuffer& patch, JitterMode mode, std::uint64_t seed,
                         std::optional<double> strength = std::nullopt);

// Deterministic core of RandomColor jitter: multiplies channel ch_a by
// factor_a and ch_b by factor_b, clamped to [0,255].
ImageBuffer scale_channels(const ImageBuffer& patch, int ch_a, double factor_a,
                           int ch_b, double factor_b);

// Applies the requested flips to image and mask together.
std::pair<ImageBuffer, MaskBuffer> apply_flips(const ImageBuffer& patch, const MaskBuffer& mask,
                                               bool flip_lr, bool flip_tb);

// Left-right and top-bottom flips drawn independently with probability 0.5.
std::pair<ImageBuffer, MaskBuffer> random_flip(const ImageBuffer& patch, const MaskBuffer& mask,
                                               std::uint64_t seed);

// Rotates both by `angle_deg` about the patch center, expanding the canvas to
// the rotated bounding box. Image samples bilinearly, mask nearest-neighbor;
// regions outside the source are black / mask-0.
std::pair<ImageBuffer, MaskBuffer> rotate(const ImageBuffer& patch, const MaskBuffer& mask,
                                          double angle_deg);

// With the given probability adds per-sample Gaussian noise, clamped to
// [0,255]; otherwise returns the patch unchanged. `applied` reports the draw.
ImageBuffer gaussian_noise(const ImageBuffer& patch, double mean, double stddev,
                           double probability, std::uint64_t seed, bool* applied = nullptr);

struct OtsuResult {
  MaskBuffer mask;
  int threshold = 0;
  bool degenerate = false;  // single-valued image, mask is all-ones
};

// ITU-R 601 luma histogram + Otsu threshold. Foreground is the side whose
// mean luma is farther from the global mean (object masks for cut-paste).
OtsuResult otsu_threshold(const ImageBuffer& image);

std::uint8_t luma601(std::uint8_t r, std::uint8_t g, std::uint8_t b);

// Binary dilation with a 3x3 all-ones kernel repeated `iterations` times,
// zero-padded borders.
MaskBuffer dilate(const MaskBuffer& mask, int iterations);

// Pixelwise conjunction; dimensions must match.
MaskBuffer mask_and(const MaskBuffer& a, const MaskBuffer& b);

// Replaces base pixels under set mask pixels by patch pixels. The patch must
// fit inside the base at (x, y).
ImageBuffer paste(const ImageBuffer& base, const ImageBuffer& patch, const MaskBuffer& mask,
                  int x, int y);

// Pastes a mask onto a black canvas_w x canvas_h canvas.
MaskBuffer paste_mask(int canvas_w, int canvas_h, const MaskBuffer& mask, int x, int y);

ImageBuffer crop(const ImageBuffer& image, int x, int y, int w, int h);

ImageBuffer resize_bilinear(const ImageBuffer& image, int out_w, int out_h);

}  // namespace fad
