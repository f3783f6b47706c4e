#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <vector>

#include "core/image.hpp"
#include "core/tensor.hpp"

namespace fad {

// One backbone stage: 3x3 convolution, stride 2, zero padding 1, tanh.
struct ConvStage {
  int in_ch = 0;
  int out_ch = 0;
  std::vector<double> w;  // [out_ch][in_ch][3][3]
  std::vector<double> b;  // [out_ch]

  double& wt(int oc, int ic, int ky, int kx) {
    return w[((static_cast<std::size_t>(oc) * in_ch + ic) * 3 + ky) * 3 + kx];
  }
  double wt(int oc, int ic, int ky, int kx) const {
    return w[((static_cast<std::size_t>(oc) * in_ch + ic) * 3 + ky) * 3 + kx];
  }
};

// Four-stage convolutional pyramid, channels 3 -> 8 -> 16 -> 32 -> 64. A
// [3,64,64] input yields stages [8,32,32], [16,16,16], [32,8,8], [64,4,4].
struct ToyBackbone {
  std::array<ConvStage, 4> stages;

  static constexpr std::array<int, 5> kChannels = {3, 8, 16, 32, 64};

  static ToyBackbone zeros();
  static ToyBackbone random_init(std::uint64_t seed, double scale = 1.0);

  bool same_architecture(const ToyBackbone& o) const;
  std::vector<double> flatten_params() const;
  void load_params(const std::vector<double>& params);
};

// Forward pass; H and W must be divisible by 16. Deterministic.
FeaturePyramid forward(const ToyBackbone& backbone, const Tensor& image);

// Sum over the 4 stages of the spatial mean of (1 - channel cosine
// similarity); value in [0, 8].
double kd_loss(const FeaturePyramid& teacher, const FeaturePyramid& student);

struct BackboneGrads {
  std::array<std::vector<double>, 4> dw;
  std::array<std::vector<double>, 4> db;
  double loss = 0.0;

  void accumulate(const BackboneGrads& o);
  void scale(double f);
};

// Analytic gradients of kd_loss w.r.t. the student parameters (backprop
// through all stages, including the paths through later stages).
BackboneGrads kd_loss_gradients(const ToyBackbone& student, const Tensor& image,
                                const FeaturePyramid& teacher);

// Cosine similarity attention: attention = (1 - cos)/2 in [0,1], attended =
// attention * s broadcast over channels. The output is gradient-opaque:
// nothing in this toolkit backpropagates through it into t or s.
struct CsamResult {
  Tensor attended;   // [C,H,W]
  Tensor attention;  // [1,H,W]
};
CsamResult csam(const Tensor& t, const Tensor& s);

// 1 - (2*sum(p*t) + smooth) / (sum(p) + sum(t) + smooth)
double dice_loss(const Tensor& pred, const MaskBuffer& target, double smooth = 1.0);

// mean of -[y*ln(p) + (1-y)*ln(1-p)], p clamped to [eps, 1-eps]
double bce_loss(const Tensor& pred, const MaskBuffer& target, double clamp_eps = 1e-7);

double db_loss(const Tensor& pred, const MaskBuffer& target);

double total_loss(double db, double kd);

// d(db_loss)/d(pred), matching the clamping of the forward losses.
Tensor db_loss_gradient(const Tensor& pred, const MaskBuffer& target, double smooth = 1.0,
                        double clamp_eps = 1e-7);

// Per-stage 1x1 projection to one channel, bilinear upsample to the input
// resolution, sum, sigmoid. Output [1,H,W] in (0,1).
struct ToyHead {
  std::array<std::vector<double>, 4> w;  // per stage, length = stage channels
  std::array<double, 4> b{};

  static ToyHead random_init(std::uint64_t seed, double scale = 1.0);
  Tensor forward(const FeaturePyramid& feats, int out_h, int out_w) const;

  std::vector<double> flatten_params() const;
  void load_params(const std::vector<double>& params);
};

struct HeadGrads {
  std::array<std::vector<double>, 4> dw;
  std::array<double, 4> db{};
};

// Analytic gradients of a loss w.r.t. head parameters given dL/dpred. Stops
// at the feature pyramid: no gradient flows into the backbones.
HeadGrads head_gradients(const ToyHead& head, const FeaturePyramid& feats, const Tensor& pred,
                         const Tensor& dpred);

// Channelwise bilinear upsample of a [C,h,w] tensor to [C,out_h,out_w].
Tensor upsample_bilinear(const Tensor& src, int out_h, int out_w);

struct SgdConfig {
  double learning_rate = 0.001;
  int steps = 0;
  int batch_size = 8;
};

struct TrainResult {
  ToyBackbone student;
  std::vector<double> loss_trace;  // batch kd_loss before each update
};

// Plain SGD on kd_loss. The teacher is read-only; per-step batches are drawn
// from `normals` (all of them, in order, when batch_size >= normals.size()).
// Throws on a non-finite loss, reporting the step index.
TrainResult train_student(const ToyBackbone& teacher, const ToyBackbone& student,
                          const std::vector<Tensor>& normals, const SgdConfig& cfg,
                          std::uint64_t seed);

// Central finite differences against an analytic gradient; returns the max
// over `coords` of |g_an - g_fd| / max(1e-8, |g_an| + |g_fd|).
double max_grad_check_error(const std::function<double(const std::vector<double>&)>& loss,
                            const std::vector<double>& params,
                            const std::vector<double>& analytic,
                            const std::vector<std::size_t>& coords, double fd_step);

}  // namespace fad
