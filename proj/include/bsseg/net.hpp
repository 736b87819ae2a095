#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "bsseg/kernels.hpp"
#include "bsseg/loss.hpp"
#include "bsseg/raster.hpp"

namespace bsseg {

// Fixed architecture: conv 3x3 6->16, conv 3x3 16->16, conv 1x1 16->3,
// all stride 1 with same padding, ReLU between conv layers. The attribute
// head global-average-pools the second feature map, then 16->8 (ReLU) and
// 8->2 affine layers. No pooling or upsampling, so logits keep the input
// resolution.

template <typename T>
struct ConvParam {
    int out_ch = 0;
    int in_ch = 0;
    int ksize = 0;
    std::vector<T> w;  // [out][in][kr][kc]
    std::vector<T> b;  // [out]

    bool operator==(const ConvParam&) const = default;
};

template <typename T>
struct DenseParam {
    int out_dim = 0;
    int in_dim = 0;
    std::vector<T> w;  // [out][in]
    std::vector<T> b;  // [out]

    bool operator==(const DenseParam&) const = default;
};

// Parameter pack; also used for gradients and momentum velocity, which
// share the shapes. Default construction is the zero-filled architecture.
template <typename T>
struct TinyNetT {
    ConvParam<T> conv1;
    ConvParam<T> conv2;
    ConvParam<T> conv3;
    DenseParam<T> head1;
    DenseParam<T> head2;

    TinyNetT();

    std::array<std::vector<T>*, 10> param_vectors();
    std::array<const std::vector<T>*, 10> param_vectors() const;
    std::size_t param_count() const;

    bool operator==(const TinyNetT&) const = default;
};

using TinyNet = TinyNetT<float>;

// He-style fan-in-scaled uniform weights, zero biases; deterministic in
// the seed.
template <typename T>
TinyNetT<T> init_net(std::uint64_t seed);

template <typename T>
struct ForwardCache {
    int width = 0;
    int height = 0;
    std::vector<T> input;  // 6 channels, planar
    std::vector<T> act1;   // post-ReLU conv1 output
    std::vector<T> act2;   // post-ReLU conv2 output
    std::array<T, 16> gap{};
    std::array<T, 8> hidden{};  // post-ReLU head hidden layer
};

template <typename T>
struct ForwardPass {
    LogitField logits;
    std::array<double, 2> attr_logits{0.0, 0.0};
    ForwardCache<T> cache;
};

template <typename T>
ForwardPass<T> forward(const TinyNetT<T>& net, const TensorField& input);

// Parameter gradients for upstream logit/attribute gradients. The cache
// must come from a forward pass of the same net on the same input.
template <typename T>
TinyNetT<T> backward(const TinyNetT<T>& net, const ForwardCache<T>& cache,
                     const Field3& grad_logits, const std::array<double, 2>& grad_attr);

// theta <- theta - lr * v with v = momentum * v + g.
template <typename T>
void sgd_step(TinyNetT<T>& net, const TinyNetT<T>& grads, double lr, double momentum,
              TinyNetT<T>& velocity);

// Foreground iff y_fg >= y_bg; the boundary class and the attribute head
// are ignored at inference time.
template <typename T>
BinaryMask predict_mask(const TinyNetT<T>& net, const TensorField& input);

// ---------------------------------------------------------------------------
// Training
// ---------------------------------------------------------------------------

enum class LossMode { IndividualKernel, GlobalKernel, Combined, Baseline };

struct TrainConfig {
    double learning_rate = 2.5e-4;
    double momentum = 0.0;
    int phase1_iters = 1;  // segmentation loss only
    int phase2_iters = 0;  // adds the attribute head at learning_rate / 10
    int crop = 400;
    double flip_prob = 0.5;
    std::uint64_t seed = 0;
    LossMode loss_mode = LossMode::Combined;
    NormMode norm_mode = NormMode::Max;
    GlobalKernelMode gk_mode = GlobalKernelMode::Literal;
    double gk_a = 0.9;
    double gk_b = 1.0;
    int band_width = 10;
    double attr_lambda = 1.0;
};

struct TrainSample {
    TensorField image;  // 3-channel RGB in [0,1]
    BinaryMask mask;
    HairClass attr = HairClass::LongHair;
};

struct LossLogRow {
    int iteration = 0;
    int phase = 0;
    double seg_loss = 0.0;
    double attr_loss = 0.0;
    double total = 0.0;
};

struct TrainResult {
    TinyNet net;
    std::vector<LossLogRow> log;
    ScalarField mean_mask;  // used for input assembly and the global kernel
};

// Per iteration: sample, crop/flip, individual kernel on the augmented
// mask, chosen loss, backward, SGD step. Deterministic given the seed.
// A non-finite loss aborts with a diagnostic.
TrainResult train(const std::vector<TrainSample>& dataset, const TrainConfig& config);

// 6-channel input for one sample given the training-set mean mask.
TensorField make_input(const TensorField& rgb, const ScalarField& mean_mask);

// ---------------------------------------------------------------------------
// Gradient verification
// ---------------------------------------------------------------------------

using SegLossFn = std::function<LossResult(const LogitField&)>;

struct GradCheckReport {
    double logit_err = 0.0;  // loss-level: analytic dvalue/dz vs central differences
    double param_err = 0.0;  // end-to-end through every parameter
    double max_err() const { return logit_err > param_err ? logit_err : param_err; }
};

// Central differences with h = 1e-5 in double precision; the error metric
// per component is |g_a - g_n| / max(1, |g_a|, |g_n|). The optional
// attribute term adds lambda * attribute_loss to the objective so the
// head parameters are exercised too.
GradCheckReport gradient_check(const TinyNetT<double>& net, const TensorField& input,
                               const SegLossFn& loss,
                               std::optional<std::pair<HairClass, double>> attr = std::nullopt);

// ---------------------------------------------------------------------------
// Checkpoint + loss-log serialization
// ---------------------------------------------------------------------------

// One BSNT tensor per parameter plus manifest.txt with name -> shape.
void save_checkpoint(const TinyNet& net, const std::string& dir);
TinyNet load_checkpoint(const std::string& dir);

// CSV: iteration,phase,seg_loss,attr_loss,total
void save_loss_log(const std::vector<LossLogRow>& log, const std::string& path);

}  // namespace bsseg
