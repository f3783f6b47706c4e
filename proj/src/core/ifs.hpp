#pragma once

#include <cstdint>
#include <vector>

#include "core/image.hpp"

namespace fad {

// One contractive affine map of the plane: p -> linear * p + translation.
struct AffineMap {
  double a = 0, b = 0, c = 0, d = 0;  // row-major 2x2 linear part
  double tx = 0, ty = 0;

  void apply(double& x, double& y) const {
    double nx = a * x + b * y + tx;
    double ny = c * x + d * y + ty;
    x = nx;
    y = ny;
  }
};

double max_singular_value(const AffineMap& m);

struct IfsSamplingConfig {
  int map_count_min = 2;
  int map_count_max = 4;
  double singular_min = 0.1;   // floor keeps maps away from rank collapse
  double singular_max = 0.85;  // strict contraction bound
  double translation_range = 1.0;
  double weight_det_offset = 0.01;
  int max_attempts = 1000;

  void validate() const;  // throws std::invalid_argument
};

struct IfsSystem {
  std::vector<AffineMap> maps;   // length 2..8, all strictly contractive
  std::vector<double> weights;   // positive, sum to 1
  std::uint64_t seed = 0;
};

// Draws a random system: map count uniform in the configured range, each
// linear part built as rotation * diag(s1, s2) * rotation with singular
// values in [singular_min, singular_max], translations uniform in
// [-translation_range, translation_range]^2, selection weights proportional
// to |det| + weight_det_offset. Throws after max_attempts rejected maps.
IfsSystem sample_ifs(std::uint64_t rng_seed, const IfsSamplingConfig& config = {});

struct FractalMask {
  MaskBuffer pixels;
  double occupancy = 0.0;   // set pixel count / (width * height)
  bool degenerate = false;  // point attractor or occupancy below 0.5%
  int escaped_points = 0;   // render points outside the 2x inflated probe box
};

// Chaos-game rendering. The attractor bounding box is estimated with a
// fixed-length probe pass sharing the render pass RNG stream, so point sets
// for growing budgets are nested and the raster transform never depends on
// point_budget. The attractor is scaled to fill the raster minus a 1-pixel
// margin. Deterministic given (system, dimensions, budgets).
FractalMask render_attractor(const IfsSystem& system, int width, int height,
                             int point_budget = 100000, int burn_in = 20);

}  // namespace fad
