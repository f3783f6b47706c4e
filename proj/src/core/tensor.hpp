#pragma once

#include <cstdint>
#include <vector>

#include "core/image.hpp"

namespace fad {

// Minimal N-D double array, row-major. Feature maps use [channels, height,
// width]; predictions use [1, height, width].
struct Tensor {
  std::vector<int> shape;
  std::vector<double> data;

  Tensor() = default;
  explicit Tensor(std::vector<int> s);
  static Tensor full(std::vector<int> s, double value);

  std::size_t size() const { return data.size(); }

  // [C,H,W] accessors
  int channels() const { return shape.size() == 3 ? shape[0] : 0; }
  int height() const { return shape.size() == 3 ? shape[1] : 0; }
  int width() const { return shape.size() == 3 ? shape[2] : 0; }
  double& at3(int c, int y, int x) {
    return data[(static_cast<std::size_t>(c) * shape[1] + y) * shape[2] + x];
  }
  double at3(int c, int y, int x) const {
    return data[(static_cast<std::size_t>(c) * shape[1] + y) * shape[2] + x];
  }

  bool same_shape(const Tensor& o) const { return shape == o.shape; }
};

// Per spatial location: dot(t[:,h,w], s[:,h,w]) / (max(|t|,eps) * max(|s|,eps)).
// Output shape [H,W] (stored as [1,H,W]); values in [-1, 1].
Tensor cosine_sim_channel(const Tensor& t, const Tensor& s, double epsilon = 1e-8);

// Arithmetic mean of all entries; throws on an empty tensor.
double mean_all(const Tensor& t);

// Ordered backbone stage outputs, coarser with each stage.
struct FeaturePyramid {
  std::vector<Tensor> stages;
};

// [3,H,W] tensor with samples scaled to [0,1].
Tensor image_to_tensor(const ImageBuffer& image);

}  // namespace fad
