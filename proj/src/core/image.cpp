#include "core/image.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "core/rng.hpp"

namespace fad {

namespace {

std::uint8_t clamp_u8(double v) {
  return static_cast<std::uint8_t>(std::clamp(std::lround(v), 0L, 255L));
}

double luma_d(double r, double g, double b) { return 0.299 * r + 0.587 * g + 0.114 * b; }

void rgb_to_hsv(double r, double g, double b, double& h, double& s, double& v) {
  double mx = std::max({r, g, b});
  double mn = std::min({r, g, b});
  v = mx;
  double d = mx - mn;
  s = mx <= 0.0 ? 0.0 : d / mx;
  if (d <= 0.0) {
    h = 0.0;
    return;
  }
  if (mx == r) {
    h = 60.0 * std::fmod((g - b) / d, 6.0);
  } else if (mx == g) {
    h = 60.0 * ((b - r) / d + 2.0);
  } else {
    h = 60.0 * ((r - g) / d + 4.0);
  }
  if (h < 0.0) h += 360.0;
}

void hsv_to_rgb(double h, double s, double v, double& r, double& g, double& b) {
  double c = v * s;
  double hp = h / 60.0;
  double x = c * (1.0 - std::fabs(std::fmod(hp, 2.0) - 1.0));
  double r1 = 0, g1 = 0, b1 = 0;
  if (hp < 1.0) {
    r1 = c; g1 = x;
  } else if (hp < 2.0) {
    r1 = x; g1 = c;
  } else if (hp < 3.0) {
    g1 = c; b1 = x;
  } else if (hp < 4.0) {
    g1 = x; b1 = c;
  } else if (hp < 5.0) {
    r1 = x; b1 = c;
  } else {
    r1 = c; b1 = x;
  }
  double m = v - c;
  r = r1 + m;
  g = g1 + m;
  b = b1 + m;
}

void require_same_dims(const MaskBuffer& m, int w, int h, const char* what) {
  if (m.width != w || m.height != h) throw std::invalid_argument(what);
}

}  // namespace

int MaskBuffer::count_set() const {
  return static_cast<int>(std::count(data.begin(), data.end(), std::uint8_t{1}));
}

std::uint8_t luma601(std::uint8_t r, std::uint8_t g, std::uint8_t b) {
  return clamp_u8(luma_d(r, g, b));
}

ImageBuffer scale_channels(const ImageBuffer& patch, int ch_a, double factor_a,
                           int ch_b, double factor_b) {
  if (ch_a < 0 || ch_a > 2 || ch_b < 0 || ch_b > 2)
    throw std::invalid_argument("scale_channels: channel index out of range");
  ImageBuffer out = patch;
  const std::size_t n = static_cast<std::size_t>(patch.width) * patch.height;
  for (std::size_t i = 0; i < n; ++i) {
    out.data[i * 3 + ch_a] = clamp_u8(patch.data[i * 3 + ch_a] * factor_a);
    out.data[i * 3 + ch_b] = clamp_u8(patch.data[i * 3 + ch_b] * factor_b);
  }
  return out;
}

ImageBuffer color_jitter(const ImageBuffer& patch, JitterMode mode, std::uint64_t seed,
                         std::optional<double> strength) {
  Rng rng(seed);
  const std::size_t n = static_cast<std::size_t>(patch.width) * patch.height;

  if (mode == JitterMode::RandomColor) {
    int ch_a = rng.uniform_int(0, 2);
    int ch_b = (ch_a + rng.uniform_int(1, 2)) % 3;
    double fa = rng.uniform(0.0, 2.0);
    double fb = rng.uniform(0.0, 2.0);
    return scale_channels(patch, ch_a, fa, ch_b, fb);
  }

  double s = strength.value_or(mode == JitterMode::Bcsh ? 0.2 : 1.0);
  double lo = std::max(0.0, 1.0 - s);
  double fb = rng.uniform(lo, 1.0 + s);
  double fc = rng.uniform(lo, 1.0 + s);
  double fs = 1.0, hue_delta = 0.0;
  if (mode == JitterMode::Bcsh) {
    fs = rng.uniform(lo, 1.0 + s);
    hue_delta = rng.uniform(-s * 180.0, s * 180.0);
  }

  std::vector<double> px(n * 3);
  for (std::size_t i = 0; i < n * 3; ++i) px[i] = patch.data[i];

  // brightness
  for (auto& v : px) v = std::clamp(v * fb, 0.0, 255.0);

  // contrast: blend toward the mean luma of the current image
  double mean = 0.0;
  for (std::size_t i = 0; i < n; ++i) mean += luma_d(px[i * 3], px[i * 3 + 1], px[i * 3 + 2]);
  mean /= static_cast<double>(n);
  for (auto& v : px) v = std::clamp(fc * v + (1.0 - fc) * mean, 0.0, 255.0);

  if (mode == JitterMode::Bcsh) {
    // saturation: blend toward the per-pixel gray
    for (std::size_t i = 0; i < n; ++i) {
      double g = luma_d(px[i * 3], px[i * 3 + 1], px[i * 3 + 2]);
      for (int c = 0; c < 3; ++c)
        px[i * 3 + c] = std::clamp(fs * px[i * 3 + c] + (1.0 - fs) * g, 0.0, 255.0);
    }
    if (hue_delta != 0.0) {
      for (std::size_t i = 0; i < n; ++i) {
        double h, sat, val;
        rgb_to_hsv(px[i * 3], px[i * 3 + 1], px[i * 3 + 2], h, sat, val);
        h = std::fmod(h + hue_delta + 360.0, 360.0);
        hsv_to_rgb(h, sat, val, px[i * 3], px[i * 3 + 1], px[i * 3 + 2]);
      }
    }
  }

  ImageBuffer out(patch.width, patch.height);
  for (std::size_t i = 0; i < n * 3; ++i) out.data[i] = clamp_u8(px[i]);
  return out;
}

std::pair<ImageBuffer, MaskBuffer> apply_flips(const ImageBuffer& patch, const MaskBuffer& mask,
                                               bool flip_lr, bool flip_tb) {
  require_same_dims(mask, patch.width, patch.height, "apply_flips: dimension mismatch");
  ImageBuffer img(patch.width, patch.height);
  MaskBuffer m(patch.width, patch.height);
  for (int y = 0; y < patch.height; ++y) {
    int sy = flip_tb ? patch.height - 1 - y : y;
    for (int x = 0; x < patch.width; ++x) {
      int sx = flip_lr ? patch.width - 1 - x : x;
      for (int c = 0; c < 3; ++c) img.at(x, y, c) = patch.at(sx, sy, c);
      m.at(x, y) = mask.at(sx, sy);
    }
  }
  return {std::move(img), std::move(m)};
}

std::pair<ImageBuffer, MaskBuffer> random_flip(const ImageBuffer& patch, const MaskBuffer& mask,
                                               std::uint64_t seed) {
  Rng rng(seed);
  bool lr = rng.bernoulli(0.5);
  bool tb = rng.bernoulli(0.5);
  return apply_flips(patch, mask, lr, tb);
}

std::pair<ImageBuffer, MaskBuffer> rotate(const ImageBuffer& patch, const MaskBuffer& mask,
                                          double angle_deg) {
  require_same_dims(mask, patch.width, patch.height, "rotate: dimension mismatch");
  if (!std::isfinite(angle_deg)) throw std::invalid_argument("rotate: angle not finite");

  const double rad = angle_deg * 3.14159265358979323846 / 180.0;
  const double c = std::cos(rad);
  const double s = std::sin(rad);
  const int w = patch.width, h = patch.height;
  // rotated bounding box; epsilon guards against ceil(64 + 1e-14) = 65
  const int ow = std::max(1, static_cast<int>(std::ceil(w * std::fabs(c) + h * std::fabs(s) - 1e-9)));
  const int oh = std::max(1, static_cast<int>(std::ceil(w * std::fabs(s) + h * std::fabs(c) - 1e-9)));

  const double icx = (w - 1) / 2.0, icy = (h - 1) / 2.0;
  const double ocx = (ow - 1) / 2.0, ocy = (oh - 1) / 2.0;

  ImageBuffer img(ow, oh);
  MaskBuffer m(ow, oh);
  for (int y = 0; y < oh; ++y) {
    for (int x = 0; x < ow; ++x) {
      // inverse map: rotate output coords back into the source frame
      double u = x - ocx, v = y - ocy;
      double xs = c * u + s * v + icx;
      double ys = -s * u + c * v + icy;

      int nx = static_cast<int>(std::lround(xs));
      int ny = static_cast<int>(std::lround(ys));
      if (nx >= 0 && nx < w && ny >= 0 && ny < h) m.at(x, y) = mask.at(nx, ny);

      if (xs < -0.5 || xs > w - 0.5 || ys < -0.5 || ys > h - 0.5) continue;
      double xc = std::clamp(xs, 0.0, static_cast<double>(w - 1));
      double yc = std::clamp(ys, 0.0, static_cast<double>(h - 1));
      int x0 = static_cast<int>(std::floor(xc));
      int y0 = static_cast<int>(std::floor(yc));
      int x1 = std::min(x0 + 1, w - 1);
      int y1 = std::min(y0 + 1, h - 1);
      double fx = xc - x0, fy = yc - y0;
      for (int ch = 0; ch < 3; ++ch) {
        double v00 = patch.at(x0, y0, ch), v10 = patch.at(x1, y0, ch);
        double v01 = patch.at(x0, y1, ch), v11 = patch.at(x1, y1, ch);
        double val = (1 - fy) * ((1 - fx) * v00 + fx * v10) + fy * ((1 - fx) * v01 + fx * v11);
        img.at(x, y, ch) = clamp_u8(val);
      }
    }
  }
  return {std::move(img), std::move(m)};
}

ImageBuffer gaussian_noise(const ImageBuffer& patch, double mean, double stddev,
                           double probability, std::uint64_t seed, bool* applied) {
  if (stddev < 0.0) throw std::invalid_argument("gaussian_noise: stddev < 0");
  Rng rng(seed);
  bool apply = rng.bernoulli(probability);
  if (applied) *applied = apply;
  if (!apply) return patch;
  ImageBuffer out = patch;
  for (auto& v : out.data) v = clamp_u8(v + rng.gaussian(mean, stddev));
  return out;
}

OtsuResult otsu_threshold(const ImageBuffer& image) {
  const std::size_t n = static_cast<std::size_t>(image.width) * image.height;
  if (n == 0) throw std::invalid_argument("otsu_threshold: empty image");

  std::vector<std::uint8_t> luma(n);
  long long hist[256] = {};
  for (std::size_t i = 0; i < n; ++i) {
    luma[i] = luma601(image.data[i * 3], image.data[i * 3 + 1], image.data[i * 3 + 2]);
    ++hist[luma[i]];
  }

  double total = static_cast<double>(n);
  double sum_all = 0.0;
  for (int v = 0; v < 256; ++v) sum_all += static_cast<double>(v) * hist[v];
  double global_mean = sum_all / total;

  // class 0 = luma <= t, class 1 = luma > t; first maximum wins
  double best_var = 0.0;
  int best_t = -1;
  double w0 = 0.0, sum0 = 0.0;
  for (int t = 0; t < 255; ++t) {
    w0 += hist[t];
    sum0 += static_cast<double>(t) * hist[t];
    double w1 = total - w0;
    if (w0 <= 0.0 || w1 <= 0.0) continue;
    double mu0 = sum0 / w0;
    double mu1 = (sum_all - sum0) / w1;
    double var = (w0 / total) * (w1 / total) * (mu0 - mu1) * (mu0 - mu1);
    if (var > best_var) {
      best_var = var;
      best_t = t;
    }
  }

  OtsuResult res;
  if (best_t < 0 || best_var <= 0.0) {
    res.mask = MaskBuffer(image.width, image.height, 1);
    res.threshold = 0;
    res.degenerate = true;
    return res;
  }

  double w0b = 0.0, sum0b = 0.0;
  for (int v = 0; v <= best_t; ++v) {
    w0b += hist[v];
    sum0b += static_cast<double>(v) * hist[v];
  }
  double mu0 = sum0b / w0b;
  double mu1 = (sum_all - sum0b) / (total - w0b);
  bool fg_is_upper = std::fabs(mu1 - global_mean) >= std::fabs(mu0 - global_mean);

  res.mask = MaskBuffer(image.width, image.height);
  for (std::size_t i = 0; i < n; ++i) {
    bool upper = luma[i] > best_t;
    res.mask.data[i] = (upper == fg_is_upper) ? 1 : 0;
  }
  res.threshold = best_t;
  return res;
}

MaskBuffer dilate(const MaskBuffer& mask, int iterations) {
  if (iterations < 0) throw std::invalid_argument("dilate: iterations < 0");
  MaskBuffer cur = mask;
  MaskBuffer next(mask.width, mask.height);
  for (int it = 0; it < iterations; ++it) {
    for (int y = 0; y < cur.height; ++y) {
      for (int x = 0; x < cur.width; ++x) {
        std::uint8_t v = 0;
        for (int dy = -1; dy <= 1 && !v; ++dy) {
          int yy = y + dy;
          if (yy < 0 || yy >= cur.height) continue;
          for (int dx = -1; dx <= 1; ++dx) {
            int xx = x + dx;
            if (xx < 0 || xx >= cur.width) continue;
            if (cur.at(xx, yy)) {
              v = 1;
              break;
            }
          }
        }
        next.at(x, y) = v;
      }
    }
    std::swap(cur, next);
  }
  return cur;
}

MaskBuffer mask_and(const MaskBuffer& a, const MaskBuffer& b) {
  if (a.width != b.width || a.height != b.height)
    throw std::invalid_argument("mask_and: dimension mismatch");
  MaskBuffer out(a.width, a.height);
  for (std::size_t i = 0; i < a.data.size(); ++i) out.data[i] = a.data[i] & b.data[i];
  return out;
}

ImageBuffer paste(const ImageBuffer& base, const ImageBuffer& patch, const MaskBuffer& mask,
                  int x, int y) {
  require_same_dims(mask, patch.width, patch.height, "paste: patch/mask dimension mismatch");
  if (x < 0 || y < 0 || x + patch.width > base.width || y + patch.height > base.height)
    throw std::invalid_argument("paste: placement out of bounds");
  ImageBuffer out = base;
  for (int py = 0; py < patch.height; ++py)
    for (int px = 0; px < patch.width; ++px)
      if (mask.at(px, py))
        for (int c = 0; c < 3; ++c) out.at(x + px, y + py, c) = patch.at(px, py, c);
  return out;
}

MaskBuffer paste_mask(int canvas_w, int canvas_h, const MaskBuffer& mask, int x, int y) {
  if (x < 0 || y < 0 || x + mask.width > canvas_w || y + mask.height > canvas_h)
    throw std::invalid_argument("paste_mask: placement out of bounds");
  MaskBuffer out(canvas_w, canvas_h);
  for (int py = 0; py < mask.height; ++py)
    for (int px = 0; px < mask.width; ++px)
      if (mask.at(px, py)) out.at(x + px, y + py) = 1;
  return out;
}

ImageBuffer crop(const ImageBuffer& image, int x, int y, int w, int h) {
  if (x < 0 || y < 0 || w <= 0 || h <= 0 || x + w > image.width || y + h > image.height)
    throw std::invalid_argument("crop: rect out of bounds");
  ImageBuffer out(w, h);
  for (int yy = 0; yy < h; ++yy)
    for (int xx = 0; xx < w; ++xx)
      for (int c = 0; c < 3; ++c) out.at(xx, yy, c) = image.at(x + xx, y + yy, c);
  return out;
}

ImageBuffer resize_bilinear(const ImageBuffer& image, int out_w, int out_h) {
  if (out_w <= 0 || out_h <= 0) throw std::invalid_argument("resize_bilinear: bad size");
  if (out_w == image.width && out_h == image.height) return image;
  ImageBuffer out(out_w, out_h);
  const double sx = static_cast<double>(image.width) / out_w;
  const double sy = static_cast<double>(image.height) / out_h;
  for (int y = 0; y < out_h; ++y) {
    double fy = std::clamp((y + 0.5) * sy - 0.5, 0.0, static_cast<double>(image.height - 1));
    int y0 = static_cast<int>(std::floor(fy));
    int y1 = std::min(y0 + 1, image.height - 1);
    double wy = fy - y0;
    for (int x = 0; x < out_w; ++x) {
      double fx = std::clamp((x + 0.5) * sx - 0.5, 0.0, static_cast<double>(image.width - 1));
      int x0 = static_cast<int>(std::floor(fx));
      int x1 = std::min(x0 + 1, image.width - 1);
      double wx = fx - x0;
      for (int c = 0; c < 3; ++c) {
        double v = (1 - wy) * ((1 - wx) * image.at(x0, y0, c) + wx * image.at(x1, y0, c)) +
                   wy * ((1 - wx) * image.at(x0, y1, c) + wx * image.at(x1, y1, c));
        out.at(x, y, c) = clamp_u8(v);
      }
    }
  }
  return out;
}

}  // namespace fad
