#include "core/tensor.hpp"

#include <cmath>
#include <stdexcept>

namespace fad {

namespace {
std::size_t shape_product(const std::vector<int>& s) {
  std::size_t n = 1;
  for (int e : s) {
    if (e <= 0) throw std::invalid_argument("Tensor: non-positive extent");
    n *= static_cast<std::size_t>(e);
  }
  return n;
}
}  // namespace

Tensor::Tensor(std::vector<int> s) : shape(std::move(s)), data(shape_product(shape), 0.0) {}

Tensor Tensor::full(std::vector<int> s, double value) {
  Tensor t(std::move(s));
  for (auto& v : t.data) v = value;
  return t;
}

Tensor cosine_sim_channel(const Tensor& t, const Tensor& s, double epsilon) {
  if (t.shape.size() != 3 || !t.same_shape(s))
    throw std::invalid_argument("cosine_sim_channel: shapes must be equal [C,H,W]");
  if (!(epsilon > 0.0)) throw std::invalid_argument("cosine_sim_channel: epsilon must be > 0");

  const int C = t.shape[0], H = t.shape[1], W = t.shape[2];
  Tensor out({1, H, W});
  for (int y = 0; y < H; ++y) {
    for (int x = 0; x < W; ++x) {
      double dot = 0.0, nt = 0.0, ns = 0.0;
      for (int c = 0; c < C; ++c) {
        double tv = t.at3(c, y, x), sv = s.at3(c, y, x);
        dot += tv * sv;
        nt += tv * tv;
        ns += sv * sv;
      }
      double denom = std::max(std::sqrt(nt), epsilon) * std::max(std::sqrt(ns), epsilon);
      out.at3(0, y, x) = dot / denom;
    }
  }
  return out;
}

double mean_all(const Tensor& t) {
  if (t.data.empty()) throw std::invalid_argument("mean_all: empty tensor");
  double sum = 0.0;
  for (double v : t.data) sum += v;
  return sum / static_cast<double>(t.data.size());
}

Tensor image_to_tensor(const ImageBuffer& image) {
  Tensor t({3, image.height, image.width});
  for (int y = 0; y < image.height; ++y)
    for (int x = 0; x < image.width; ++x)
      for (int c = 0; c < 3; ++c) t.at3(c, y, x) = image.at(x, y, c) / 255.0;
  return t;
}

}  // namespace fad
