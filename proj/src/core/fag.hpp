#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "core/image.hpp"

namespace fad {

struct FagConfig {
  double patch_area_min = 0.005;  // fraction of base image area
  double patch_area_max = 0.06;
  double patch_aspect_min = 0.5;
  double patch_aspect_max = 2.0;
  double rotation_min_deg = 15.0;
  double rotation_max_deg = 75.0;
  double noise_mean = 0.0;
  double noise_std = 20.0;
  double noise_probability = 0.5;
  int dilation_iterations = 3;
  bool object_constrained = false;
  int max_resample_attempts = 10;

  void validate() const;  // throws std::invalid_argument
};

struct PatchRect {
  int x = 0, y = 0, w = 0, h = 0;
};

struct SampleMeta {
  std::uint64_t seed = 0;
  std::uint64_t ifs_seed = 0;
  PatchRect patch_rect;           // cut rect on the source image
  int paste_x = 0, paste_y = 0;   // top-left of the pasted patch
  JitterMode jitter_mode = JitterMode::Bcsh;
  double rotation_angle_deg = 0.0;
  bool flip_lr = false, flip_tb = false;
  bool noise_applied = false;
  int attempts = 1;               // resamples consumed (1 = first try)
  MaskBuffer pre_dilation_mask;   // full-canvas fractal patch mask before dilation
};

struct SamplePair {
  ImageBuffer anomaly_image;  // equals the source outside pre_dilation_mask
  MaskBuffer mask;            // label mask, dilated
  SampleMeta meta;
};

class GenerateError : public std::runtime_error {
 public:
  GenerateError(const std::string& msg, std::vector<std::string> log)
      : std::runtime_error(msg), attempt_log_(std::move(log)) {}
  const std::vector<std::string>& attempt_log() const { return attempt_log_; }

 private:
  std::vector<std::string> attempt_log_;
};

// Runs the full synthesis chain on one normal image: cut a random patch,
// augment it (jitter, flips, rotation, noise), intersect with a freshly
// rendered fractal raster, and paste the fractal patch back at a random
// position. Returns the anomalous image plus its dilated label mask. Pure in
// (normal, object_mask, config, seed). When config.object_constrained is set
// the attempt is resampled until the pre-dilation mask lies inside
// object_mask; degenerate fractals and empty intersections also resample.
// Throws GenerateError with the attempt log once the budget is exhausted.
SamplePair generate(const ImageBuffer& normal, const MaskBuffer* object_mask,
                    const FagConfig& config, std::uint64_t seed);

// Round-robin replication of the input list until it reaches `target`;
// returned unchanged when already long enough.
std::vector<std::string> expand_training_set(const std::vector<std::string>& paths, int target);

}  // namespace fad
