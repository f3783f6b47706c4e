#include "core/ifs.hpp"

#include <cmath>
#include <stdexcept>

#include "core/rng.hpp"

namespace fad {

namespace {
constexpr double kTwoPi = 6.283185307179586;
constexpr int kProbePoints = 10000;
constexpr double kDegenerateOccupancy = 0.005;
}  // namespace

double max_singular_value(const AffineMap& m) {
  // singular values of [a b; c d] from the eigenvalues of M^T M
  double e = m.a * m.a + m.c * m.c;
  double f = m.a * m.b + m.c * m.d;
  double g = m.b * m.b + m.d * m.d;
  double tr = e + g;
  double det = e * g - f * f;
  double disc = std::sqrt(std::max(0.0, tr * tr / 4.0 - det));
  return std::sqrt(std::max(0.0, tr / 2.0 + disc));
}

void IfsSamplingConfig::validate() const {
  if (map_count_min < 2 || map_count_max > 8 || map_count_min > map_count_max)
    throw std::invalid_argument("IfsSamplingConfig: map count range must lie within [2,8]");
  if (max_attempts < 1) throw std::invalid_argument("IfsSamplingConfig: max_attempts < 1");
  if (translation_range < 0.0)
    throw std::invalid_argument("IfsSamplingConfig: translation_range < 0");
  if (weight_det_offset <= 0.0)
    throw std::invalid_argument("IfsSamplingConfig: weight_det_offset must be positive");
}

IfsSystem sample_ifs(std::uint64_t rng_seed, const IfsSamplingConfig& config) {
  config.validate();
  Rng rng(rng_seed);

  IfsSystem sys;
  sys.seed = rng_seed;
  int count = rng.uniform_int(config.map_count_min, config.map_count_max);

  const bool feasible = config.singular_min <= config.singular_max &&
                        config.singular_max > 0.0 && config.singular_max < 1.0 &&
                        config.singular_min >= 0.0;

  int attempts = 0;
  std::vector<double> dets;
  while (static_cast<int>(sys.maps.size()) < count) {
    if (attempts >= config.max_attempts)
      throw std::runtime_error(
          "sample_ifs: no contractive map drawable after " + std::to_string(attempts) +
          " attempts (degenerate singular value range)");
    ++attempts;
    if (!feasible) continue;

    double theta1 = rng.uniform(0.0, kTwoPi);
    double theta2 = rng.uniform(0.0, kTwoPi);
    double s1 = rng.uniform(config.singular_min, config.singular_max);
    double s2 = rng.uniform(config.singular_min, config.singular_max);

    // rotation(theta1) * diag(s1, s2) * rotation(theta2)
    double c1 = std::cos(theta1), n1 = std::sin(theta1);
    double c2 = std::cos(theta2), n2 = std::sin(theta2);
    AffineMap m;
    m.a = c1 * s1 * c2 - n1 * s2 * n2;
    m.b = -c1 * s1 * n2 - n1 * s2 * c2;
    m.c = n1 * s1 * c2 + c1 * s2 * n2;
    m.d = -n1 * s1 * n2 + c1 * s2 * c2;
    m.tx = rng.uniform(-config.translation_range, config.translation_range);
    m.ty = rng.uniform(-config.translation_range, config.translation_range);

    double sv = max_singular_value(m);
    if (!(sv > 0.0) || sv >= 1.0) continue;

    sys.maps.push_back(m);
    dets.push_back(std::fabs(m.a * m.d - m.b * m.c));
  }

  double total = 0.0;
  sys.weights.resize(sys.maps.size());
  for (std::size_t i = 0; i < dets.size(); ++i) {
    sys.weights[i] = dets[i] + config.weight_det_offset;
    total += sys.weights[i];
  }
  for (auto& w : sys.weights) w /= total;
  return sys;
}

namespace {

struct ChaosWalker {
  const IfsSystem& sys;
  Rng rng;
  double x = 0.0, y = 0.0;

  ChaosWalker(const IfsSystem& s, std::uint64_t seed) : sys(s), rng(seed) {}

  void step() {
    double u = rng.uniform();
    double acc = 0.0;
    std::size_t pick = sys.maps.size() - 1;
    for (std::size_t i = 0; i < sys.weights.size(); ++i) {
      acc += sys.weights[i];
      if (u < acc) {
        pick = i;
        break;
      }
    }
    sys.maps[pick].apply(x, y);
  }
};

void validate_system(const IfsSystem& system) {
  if (system.maps.size() < 2 || system.maps.size() > 8)
    throw std::invalid_argument("render_attractor: system must have 2..8 maps");
  if (system.weights.size() != system.maps.size())
    throw std::invalid_argument("render_attractor: weights/maps length mismatch");
  double sum = 0.0;
  for (double w : system.weights) {
    if (!(w > 0.0)) throw std::invalid_argument("render_attractor: weights must be positive");
    sum += w;
  }
  if (std::fabs(sum - 1.0) > 1e-12)
    throw std::invalid_argument("render_attractor: weights must sum to 1");
  for (const auto& m : system.maps)
    if (max_singular_value(m) >= 1.0)
      throw std::invalid_argument("render_attractor: non-contractive map");
}

}  // namespace

FractalMask render_attractor(const IfsSystem& system, int width, int height,
                             int point_budget, int burn_in) {
  validate_system(system);
  if (width < 8 || height < 8)
    throw std::invalid_argument("render_attractor: raster must be at least 8x8");
  if (point_budget < 1000) throw std::invalid_argument("render_attractor: point_budget < 1000");
  if (burn_in < 1) throw std::invalid_argument("render_attractor: burn_in < 1");

  const std::uint64_t chaos_seed = mix_seed(system.seed, 0x1f5);

  // probe pass: fixed length, independent of point_budget
  double minx = 0, maxx = 0, miny = 0, maxy = 0;
  {
    ChaosWalker w(system, chaos_seed);
    for (int i = 0; i < burn_in; ++i) w.step();
    minx = maxx = w.x;
    miny = maxy = w.y;
    for (int i = 1; i < kProbePoints; ++i) {
      w.step();
      minx = std::min(minx, w.x);
      maxx = std::max(maxx, w.x);
      miny = std::min(miny, w.y);
      maxy = std::max(maxy, w.y);
    }
  }

  FractalMask out;
  out.pixels = MaskBuffer(width, height);

  const double ex = maxx - minx;
  const double ey = maxy - miny;
  if (ex < 1e-12 && ey < 1e-12) {
    // point attractor: single pixel, caller should resample
    out.pixels.at(width / 2, height / 2) = 1;
    out.occupancy = 1.0 / (static_cast<double>(width) * height);
    out.degenerate = true;
    return out;
  }

  // map the probe bounding box onto the raster minus a 1-pixel margin
  const double sx = ex > 1e-12 ? (width - 2 - 1e-9) / ex : 0.0;
  const double sy = ey > 1e-12 ? (height - 2 - 1e-9) / ey : 0.0;
  const double cx = (minx + maxx) / 2.0, hx = ex / 2.0;
  const double cy = (miny + maxy) / 2.0, hy = ey / 2.0;

  long long set_count = 0;
  {
    ChaosWalker w(system, chaos_seed);
    for (int i = 0; i < burn_in; ++i) w.step();
    for (int i = 0; i < point_budget; ++i) {
      if (i > 0) w.step();
      if (std::fabs(w.x - cx) > 2.0 * hx + 1e-9 || std::fabs(w.y - cy) > 2.0 * hy + 1e-9)
        ++out.escaped_points;
      int px = ex > 1e-12 ? 1 + static_cast<int>((w.x - minx) * sx) : width / 2;
      int py = ey > 1e-12 ? 1 + static_cast<int>((w.y - miny) * sy) : height / 2;
      if (px < 0 || px >= width || py < 0 || py >= height) continue;
      if (!out.pixels.at(px, py)) {
        out.pixels.at(px, py) = 1;
        ++set_count;
      }
    }
  }

  out.occupancy = static_cast<double>(set_count) / (static_cast<double>(width) * height);
  out.degenerate = out.occupancy < kDegenerateOccupancy;
  return out;
}

}  // namespace fad
