#include "core/fag.hpp"

#include <algorithm>
#include <cmath>

#include "core/ifs.hpp"
#include "core/rng.hpp"

namespace fad {

void FagConfig::validate() const {
  if (!(patch_area_min > 0.0) || patch_area_min > patch_area_max || !(patch_area_max < 1.0))
    throw std::invalid_argument("FagConfig: need 0 < patch_area_min <= patch_area_max < 1");
  if (!(patch_aspect_min > 0.0) || patch_aspect_min > patch_aspect_max)
    throw std::invalid_argument("FagConfig: bad aspect ratio range");
  if (rotation_min_deg < 0.0 || rotation_max_deg > 90.0 || rotation_min_deg > rotation_max_deg)
    throw std::invalid_argument("FagConfig: rotation range must lie within [0,90]");
  if (noise_std < 0.0 || noise_probability < 0.0 || noise_probability > 1.0)
    throw std::invalid_argument("FagConfig: bad noise parameters");
  if (dilation_iterations < 0)
    throw std::invalid_argument("FagConfig: dilation_iterations < 0");
  if (max_resample_attempts < 1)
    throw std::invalid_argument("FagConfig: max_resample_attempts < 1");
}

namespace {

constexpr int kMinPatchDim = 8;  // render_attractor needs at least 8x8

// Masked copy: keeps patch pixels under the mask, zeroes the rest.
ImageBuffer image_and_mask(const ImageBuffer& img, const MaskBuffer& mask) {
  ImageBuffer out(img.width, img.height);
  for (int y = 0; y < img.height; ++y)
    for (int x = 0; x < img.width; ++x)
      if (mask.at(x, y))
        for (int c = 0; c < 3; ++c) out.at(x, y, c) = img.at(x, y, c);
  return out;
}

bool inside_object(const MaskBuffer& pre_mask, const MaskBuffer& object_mask) {
  for (std::size_t i = 0; i < pre_mask.data.size(); ++i)
    if (pre_mask.data[i] && !object_mask.data[i]) return false;
  return true;
}

}  // namespace

SamplePair generate(const ImageBuffer& normal, const MaskBuffer* object_mask,
                    const FagConfig& config, std::uint64_t seed) {
  config.validate();
  const int W = normal.width, H = normal.height;
  if (W < 2 * kMinPatchDim || H < 2 * kMinPatchDim)
    throw std::invalid_argument("generate: base image must be at least 16x16");
  if (config.object_constrained) {
    if (!object_mask)
      throw std::invalid_argument("generate: object_constrained requires an object mask");
    if (object_mask->width != W || object_mask->height != H)
      throw std::invalid_argument("generate: object mask dimension mismatch");
  }

  std::vector<std::string> log;
  for (int attempt = 0; attempt < config.max_resample_attempts; ++attempt) {
    Rng rng(mix_seed(seed, static_cast<std::uint64_t>(attempt)));

    // cut x_p
    double area = rng.uniform(config.patch_area_min, config.patch_area_max) * W * H;
    double aspect = rng.uniform(config.patch_aspect_min, config.patch_aspect_max);
    int pw = std::clamp(static_cast<int>(std::lround(std::sqrt(area * aspect))), kMinPatchDim, W);
    int ph = std::clamp(static_cast<int>(std::lround(std::sqrt(area / aspect))), kMinPatchDim, H);
    int cut_x = rng.uniform_int(0, W - pw);
    int cut_y = rng.uniform_int(0, H - ph);
    ImageBuffer x_p = crop(normal, cut_x, cut_y, pw, ph);

    // augment to x_aug / x_pm: jitter -> flips -> rotation -> noise
    JitterMode mode = static_cast<JitterMode>(rng.uniform_int(0, 2));
    ImageBuffer x_j = color_jitter(x_p, mode, rng.next_u64());
    MaskBuffer pm(pw, ph, 1);
    bool flip_lr = rng.bernoulli(0.5);
    bool flip_tb = rng.bernoulli(0.5);
    auto [x_fl, pm_fl] = apply_flips(x_j, pm, flip_lr, flip_tb);
    double angle = rng.uniform(config.rotation_min_deg, config.rotation_max_deg);
    auto [x_rot, x_pm] = rotate(x_fl, pm_fl, angle);
    bool noise_applied = false;
    ImageBuffer x_aug = gaussian_noise(x_rot, config.noise_mean, config.noise_std,
                                       config.noise_probability, rng.next_u64(), &noise_applied);

    const int aw = x_aug.width, ah = x_aug.height;
    if (aw > W || ah > H) {
      log.push_back("attempt " + std::to_string(attempt) + ": rotated patch exceeds base");
      continue;
    }

    // x_fm = x_f AND x_pm
    std::uint64_t ifs_seed = rng.next_u64();
    FractalMask fractal = render_attractor(sample_ifs(ifs_seed), aw, ah);
    if (fractal.degenerate) {
      log.push_back("attempt " + std::to_string(attempt) + ": degenerate fractal (occupancy " +
                    std::to_string(fractal.occupancy) + ")");
      continue;
    }
    MaskBuffer x_fm = mask_and(fractal.pixels, x_pm);
    if (x_fm.count_set() == 0) {
      log.push_back("attempt " + std::to_string(attempt) + ": empty fractal/patch intersection");
      continue;
    }

    // x_fp = x_aug AND x_fm, pasted onto the normal image
    ImageBuffer x_fp = image_and_mask(x_aug, x_fm);
    int paste_x = rng.uniform_int(0, W - aw);
    int paste_y = rng.uniform_int(0, H - ah);
    MaskBuffer pre_mask = paste_mask(W, H, x_fm, paste_x, paste_y);
    if (config.object_constrained && !inside_object(pre_mask, *object_mask)) {
      log.push_back("attempt " + std::to_string(attempt) + ": patch outside object region");
      continue;
    }

    SamplePair pair;
    pair.anomaly_image = paste(normal, x_fp, x_fm, paste_x, paste_y);
    pair.mask = dilate(pre_mask, config.dilation_iterations);
    pair.meta.seed = seed;
    pair.meta.ifs_seed = ifs_seed;
    pair.meta.patch_rect = {cut_x, cut_y, pw, ph};
    pair.meta.paste_x = paste_x;
    pair.meta.paste_y = paste_y;
    pair.meta.jitter_mode = mode;
    pair.meta.rotation_angle_deg = angle;
    pair.meta.flip_lr = flip_lr;
    pair.meta.flip_tb = flip_tb;
    pair.meta.noise_applied = noise_applied;
    pair.meta.attempts = attempt + 1;
    pair.meta.pre_dilation_mask = std::move(pre_mask);
    return pair;
  }

  throw GenerateError("generate: resample budget exhausted after " +
                          std::to_string(config.max_resample_attempts) + " attempts",
                      std::move(log));
}

std::vector<std::string> expand_training_set(const std::vector<std::string>& paths, int target) {
  if (paths.empty()) throw std::invalid_argument("expand_training_set: empty input");
  if (target < 1) throw std::invalid_argument("expand_training_set: target < 1");
  if (static_cast<int>(paths.size()) >= target) return paths;
  std::vector<std::string> out = paths;
  out.reserve(static_cast<std::size_t>(target));
  for (std::size_t i = 0; static_cast<int>(out.size()) < target; ++i)
    out.push_back(paths[i % paths.size()]);
  return out;
}

}  // namespace fad
