#include "bsseg/net.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "bsseg/geometry.hpp"
#include "bsseg/rng.hpp"

namespace bsseg {

namespace {

constexpr int kInputCh = 6;
constexpr int kFeatCh = 16;
constexpr int kClasses = 3;
constexpr int kHidden = 8;
constexpr int kAttrClasses = 2;

template <typename T>
ConvParam<T> make_conv(int out_ch, int in_ch, int ksize) {
    ConvParam<T> p;
    p.out_ch = out_ch;
    p.in_ch = in_ch;
    p.ksize = ksize;
    p.w.assign(static_cast<size_t>(out_ch) * in_ch * ksize * ksize, T(0));
    p.b.assign(out_ch, T(0));
    return p;
}

template <typename T>
DenseParam<T> make_dense(int out_dim, int in_dim) {
    DenseParam<T> p;
    p.out_dim = out_dim;
    p.in_dim = in_dim;
    p.w.assign(static_cast<size_t>(out_dim) * in_dim, T(0));
    p.b.assign(out_dim, T(0));
    return p;
}

}  // namespace

template <typename T>
TinyNetT<T>::TinyNetT()
    : conv1(make_conv<T>(kFeatCh, kInputCh, 3)),
      conv2(make_conv<T>(kFeatCh, kFeatCh, 3)),
      conv3(make_conv<T>(kClasses, kFeatCh, 1)),
      head1(make_dense<T>(kHidden, kFeatCh)),
      head2(make_dense<T>(kAttrClasses, kHidden)) {}

template <typename T>
std::array<std::vector<T>*, 10> TinyNetT<T>::param_vectors() {
    return {&conv1.w, &conv1.b, &conv2.w, &conv2.b, &conv3.w,
            &conv3.b, &head1.w, &head1.b, &head2.w, &head2.b};
}

template <typename T>
std::array<const std::vector<T>*, 10> TinyNetT<T>::param_vectors() const {
    return {&conv1.w, &conv1.b, &conv2.w, &conv2.b, &conv3.w,
            &conv3.b, &head1.w, &head1.b, &head2.w, &head2.b};
}

template <typename T>
std::size_t TinyNetT<T>::param_count() const {
    std::size_t n = 0;
    for (const auto* v : param_vectors()) n += v->size();
    return n;
}

template <typename T>
TinyNetT<T> init_net(std::uint64_t seed) {
    TinyNetT<T> net;
    Rng rng(seed);
    auto fill_conv = [&](ConvParam<T>& p) {
        const double bound = std::sqrt(6.0 / (p.in_ch * p.ksize * p.ksize));
        for (T& v : p.w) v = static_cast<T>(rng.uniform(-bound, bound));
    };
    auto fill_dense = [&](DenseParam<T>& p) {
        const double bound = std::sqrt(6.0 / p.in_dim);
        for (T& v : p.w) v = static_cast<T>(rng.uniform(-bound, bound));
    };
    fill_conv(net.conv1);
    fill_conv(net.conv2);
    fill_conv(net.conv3);
    fill_dense(net.head1);
    fill_dense(net.head2);
    return net;
}

// ---------------------------------------------------------------------------
// Forward / backward primitives
// ---------------------------------------------------------------------------

namespace {

// Same-padding correlation, shifted-accumulate form: contiguous row scans.
template <typename T>
void conv_forward(const ConvParam<T>& p, const std::vector<T>& in, int h, int w,
                  std::vector<T>& out) {
    const int hw = h * w;
    const int k = p.ksize, off = k / 2;
    out.assign(static_cast<size_t>(p.out_ch) * hw, T(0));
    for (int o = 0; o < p.out_ch; ++o) {
        T* op = out.data() + static_cast<size_t>(o) * hw;
        std::fill(op, op + hw, p.b[o]);
        for (int ic = 0; ic < p.in_ch; ++ic) {
            const T* ip = in.data() + static_cast<size_t>(ic) * hw;
            for (int kr = 0; kr < k; ++kr) {
                for (int kc = 0; kc < k; ++kc) {
                    const T wv = p.w[((static_cast<size_t>(o) * p.in_ch + ic) * k + kr) * k + kc];
                    const int dr = kr - off, dc = kc - off;
                    const int r0 = std::max(0, -dr), r1 = std::min(h, h - dr);
                    const int c0 = std::max(0, -dc), c1 = std::min(w, w - dc);
                    for (int r = r0; r < r1; ++r) {
                        const T* irow = ip + (r + dr) * w + dc;
                        T* orow = op + r * w;
                        for (int c = c0; c < c1; ++c) orow[c] += wv * irow[c];
                    }
                }
            }
        }
    }
}

template <typename T>
void conv_backward(const ConvParam<T>& p, const std::vector<T>& in, int h, int w,
                   const std::vector<T>& gout, ConvParam<T>& gp, std::vector<T>* gin) {
    const int hw = h * w;
    const int k = p.ksize, off = k / 2;
    if (gin) gin->assign(static_cast<size_t>(p.in_ch) * hw, T(0));
    for (int o = 0; o < p.out_ch; ++o) {
        const T* gp_out = gout.data() + static_cast<size_t>(o) * hw;
        T acc_b = T(0);
        for (int i = 0; i < hw; ++i) acc_b += gp_out[i];
        gp.b[o] += acc_b;
        for (int ic = 0; ic < p.in_ch; ++ic) {
            const T* ip = in.data() + static_cast<size_t>(ic) * hw;
            T* gi = gin ? gin->data() + static_cast<size_t>(ic) * hw : nullptr;
            for (int kr = 0; kr < k; ++kr) {
                for (int kc = 0; kc < k; ++kc) {
                    const size_t widx =
                        ((static_cast<size_t>(o) * p.in_ch + ic) * k + kr) * k + kc;
                    const T wv = p.w[widx];
                    const int dr = kr - off, dc = kc - off;
                    const int r0 = std::max(0, -dr), r1 = std::min(h, h - dr);
                    const int c0 = std::max(0, -dc), c1 = std::min(w, w - dc);
                    T acc_w = T(0);
                    for (int r = r0; r < r1; ++r) {
                        const T* irow = ip + (r + dr) * w + dc;
                        const T* grow = gp_out + r * w;
                        for (int c = c0; c < c1; ++c) acc_w += grow[c] * irow[c];
                    }
                    gp.w[widx] += acc_w;
                    if (gi) {
                        for (int r = r0; r < r1; ++r) {
                            T* girow = gi + (r + dr) * w + dc;
                            const T* grow = gp_out + r * w;
                            for (int c = c0; c < c1; ++c) girow[c] += wv * grow[c];
                        }
                    }
                }
            }
        }
    }
}

template <typename T>
void relu_inplace(std::vector<T>& v) {
    for (T& x : v) x = x > T(0) ? x : T(0);
}

}  // namespace

template <typename T>
ForwardPass<T> forward(const TinyNetT<T>& net, const TensorField& input) {
    if (input.channels() != kInputCh) {
        throw std::invalid_argument("expected a 6-channel input tensor");
    }
    const int h = input.height(), w = input.width(), hw = h * w;

    ForwardPass<T> pass{LogitField(w, h), {0.0, 0.0}, {}};
    ForwardCache<T>& cache = pass.cache;
    cache.width = w;
    cache.height = h;
    cache.input.resize(static_cast<size_t>(kInputCh) * hw);
    for (size_t i = 0; i < cache.input.size(); ++i) cache.input[i] = static_cast<T>(input.data()[i]);

    conv_forward(net.conv1, cache.input, h, w, cache.act1);
    relu_inplace(cache.act1);
    conv_forward(net.conv2, cache.act1, h, w, cache.act2);
    relu_inplace(cache.act2);

    std::vector<T> logits;
    conv_forward(net.conv3, cache.act2, h, w, logits);
    for (int j = 0; j < kClasses; ++j) {
        for (int r = 0; r < h; ++r) {
            for (int c = 0; c < w; ++c) {
                pass.logits.at(r, c, j) = static_cast<double>(logits[(static_cast<size_t>(j) * h + r) * w + c]);
            }
        }
    }

    const T inv_hw = T(1) / static_cast<T>(hw);
    for (int i = 0; i < kFeatCh; ++i) {
        T acc = T(0);
        const T* ap = cache.act2.data() + static_cast<size_t>(i) * hw;
        for (int j = 0; j < hw; ++j) acc += ap[j];
        cache.gap[i] = acc * inv_hw;
    }
    for (int u = 0; u < kHidden; ++u) {
        T acc = net.head1.b[u];
        for (int i = 0; i < kFeatCh; ++i) acc += net.head1.w[u * kFeatCh + i] * cache.gap[i];
        cache.hidden[u] = acc > T(0) ? acc : T(0);
    }
    for (int v = 0; v < kAttrClasses; ++v) {
        T acc = net.head2.b[v];
        for (int u = 0; u < kHidden; ++u) acc += net.head2.w[v * kHidden + u] * cache.hidden[u];
        pass.attr_logits[v] = static_cast<double>(acc);
    }
    return pass;
}

template <typename T>
TinyNetT<T> backward(const TinyNetT<T>& net, const ForwardCache<T>& cache,
                     const Field3& grad_logits, const std::array<double, 2>& grad_attr) {
    const int h = cache.height, w = cache.width, hw = h * w;
    if (h < 1 || w < 1 || cache.input.size() != static_cast<size_t>(kInputCh) * hw ||
        cache.act1.size() != static_cast<size_t>(kFeatCh) * hw ||
        cache.act2.size() != static_cast<size_t>(kFeatCh) * hw) {
        throw std::invalid_argument("forward cache is inconsistent");
    }
    if (grad_logits.width() != w || grad_logits.height() != h) {
        throw std::invalid_argument("logit gradient does not match cached dimensions");
    }

    TinyNetT<T> grads;

    std::vector<T> g_logits(static_cast<size_t>(kClasses) * hw);
    for (int j = 0; j < kClasses; ++j) {
        for (int r = 0; r < h; ++r) {
            for (int c = 0; c < w; ++c) {
                g_logits[(static_cast<size_t>(j) * h + r) * w + c] =
                    static_cast<T>(grad_logits.at(r, c, j));
            }
        }
    }

    std::vector<T> g_act2;
    conv_backward(net.conv3, cache.act2, h, w, g_logits, grads.conv3, &g_act2);

    // Attribute head path back to the shared features.
    std::array<T, kAttrClasses> ga{static_cast<T>(grad_attr[0]), static_cast<T>(grad_attr[1])};
    std::array<T, kHidden> g_hidden{};
    for (int v = 0; v < kAttrClasses; ++v) {
        grads.head2.b[v] += ga[v];
        for (int u = 0; u < kHidden; ++u) {
            grads.head2.w[v * kHidden + u] += ga[v] * cache.hidden[u];
            g_hidden[u] += net.head2.w[v * kHidden + u] * ga[v];
        }
    }
    std::array<T, kFeatCh> g_gap{};
    for (int u = 0; u < kHidden; ++u) {
        if (cache.hidden[u] <= T(0)) continue;
        grads.head1.b[u] += g_hidden[u];
        for (int i = 0; i < kFeatCh; ++i) {
            grads.head1.w[u * kFeatCh + i] += g_hidden[u] * cache.gap[i];
            g_gap[i] += net.head1.w[u * kFeatCh + i] * g_hidden[u];
        }
    }
    const T inv_hw = T(1) / static_cast<T>(hw);
    for (int i = 0; i < kFeatCh; ++i) {
        if (g_gap[i] == T(0)) continue;
        T* gp = g_act2.data() + static_cast<size_t>(i) * hw;
        const T add = g_gap[i] * inv_hw;
        for (int j = 0; j < hw; ++j) gp[j] += add;
    }

    for (size_t i = 0; i < g_act2.size(); ++i) {
        if (cache.act2[i] <= T(0)) g_act2[i] = T(0);
    }
    std::vector<T> g_act1;
    conv_backward(net.conv2, cache.act1, h, w, g_act2, grads.conv2, &g_act1);
    for (size_t i = 0; i < g_act1.size(); ++i) {
        if (cache.act1[i] <= T(0)) g_act1[i] = T(0);
    }
    conv_backward(net.conv1, cache.input, h, w, g_act1, grads.conv1,
                  static_cast<std::vector<T>*>(nullptr));
    return grads;
}

template <typename T>
void sgd_step(TinyNetT<T>& net, const TinyNetT<T>& grads, double lr, double momentum,
              TinyNetT<T>& velocity) {
    auto theta = net.param_vectors();
    auto g = grads.param_vectors();
    auto v = velocity.param_vectors();
    for (size_t p = 0; p < theta.size(); ++p) {
        if (theta[p]->size() != g[p]->size() || theta[p]->size() != v[p]->size()) {
            throw std::invalid_argument("parameter shapes do not match");
        }
        for (size_t i = 0; i < theta[p]->size(); ++i) {
            T& vel = (*v[p])[i];
            vel = static_cast<T>(momentum) * vel + (*g[p])[i];
            (*theta[p])[i] -= static_cast<T>(lr) * vel;
        }
    }
}

template <typename T>
BinaryMask predict_mask(const TinyNetT<T>& net, const TensorField& input) {
    const ForwardPass<T> pass = forward(net, input);
    BinaryMask mask(input.width(), input.height());
    for (int r = 0; r < input.height(); ++r) {
        for (int c = 0; c < input.width(); ++c) {
            // y_fg >= y_bg iff z_fg >= z_bg; ties go to foreground
            mask.set(r, c, pass.logits.at(r, c, 0) >= pass.logits.at(r, c, 2));
        }
    }
    return mask;
}

// ---------------------------------------------------------------------------
// Training
// ---------------------------------------------------------------------------

TensorField make_input(const TensorField& rgb, const ScalarField& mean_mask) {
    return assemble_input(rgb, mean_mask);
}

TrainResult train(const std::vector<TrainSample>& dataset, const TrainConfig& config) {
    if (dataset.empty()) throw std::invalid_argument("training dataset is empty");
    if (config.learning_rate < 0.0) throw std::invalid_argument("learning rate must be >= 0");
    if (config.phase1_iters < 0 || config.phase2_iters < 0 ||
        config.phase1_iters + config.phase2_iters < 1) {
        throw std::invalid_argument("iteration counts must be >= 0 and total >= 1");
    }
    const int w = dataset.front().image.width(), h = dataset.front().image.height();
    std::vector<BinaryMask> masks;
    for (const TrainSample& s : dataset) {
        if (s.image.width() != w || s.image.height() != h || s.mask.width() != w ||
            s.mask.height() != h) {
            throw std::invalid_argument("dataset samples have mismatched dimensions");
        }
        masks.push_back(s.mask);
    }

    const ScalarField mean_mask = compute_mean_mask(masks);
    const GlobalKernel gk_full = global_kernel(mean_mask, config.gk_a, config.gk_b, config.gk_mode);
    std::vector<TensorField> inputs;
    inputs.reserve(dataset.size());
    for (const TrainSample& s : dataset) inputs.push_back(assemble_input(s.image, mean_mask));

    TinyNet net = init_net<float>(config.seed);
    TinyNet velocity;
    Rng rng(config.seed);
    std::vector<LossLogRow> log;
    const int total_iters = config.phase1_iters + config.phase2_iters;
    log.reserve(total_iters);

    for (int iter = 1; iter <= total_iters; ++iter) {
        const int phase = iter <= config.phase1_iters ? 1 : 2;
        const double lr = phase == 1 ? config.learning_rate : config.learning_rate / 10.0;

        const size_t idx = static_cast<size_t>(rng.uniform_below(dataset.size()));
        const CropFlip t = sample_crop_flip(rng, w, h, config.crop, config.flip_prob);
        const TensorField input = apply_crop_flip(inputs[idx], t);
        const BinaryMask mask = apply_crop_flip(dataset[idx].mask, t);

        ForwardPass<float> pass = forward(net, input);

        const LossResult seg = [&]() -> LossResult {
            switch (config.loss_mode) {
                case LossMode::IndividualKernel:
                    return ik_loss(pass.logits,
                                   individual_kernel(mask, config.band_width, config.norm_mode));
                case LossMode::GlobalKernel:
                    return gk_loss(pass.logits, labels_from_mask(mask),
                                   GlobalKernel{apply_crop_flip(gk_full.weights, t), gk_full.a,
                                                gk_full.b});
                case LossMode::Combined:
                    return combined_loss(
                        pass.logits, individual_kernel(mask, config.band_width, config.norm_mode),
                        GlobalKernel{apply_crop_flip(gk_full.weights, t), gk_full.a, gk_full.b});
                case LossMode::Baseline:
                default:
                    return ce_loss(pass.logits, labels_from_mask(mask));
            }
        }();

        AttrLossResult attr;
        std::array<double, 2> grad_attr{0.0, 0.0};
        if (phase == 2) {
            attr = attribute_loss(pass.attr_logits, dataset[idx].attr);
            grad_attr = {config.attr_lambda * attr.grad[0], config.attr_lambda * attr.grad[1]};
        }
        const double total =
            seg.value + (phase == 2 ? config.attr_lambda * attr.value : 0.0);
        if (!std::isfinite(total)) {
            throw std::runtime_error("non-finite loss at iteration " + std::to_string(iter) +
                                     " (seg=" + std::to_string(seg.value) +
                                     ", attr=" + std::to_string(attr.value) + ")");
        }

        const TinyNet grads = backward(net, pass.cache, seg.grad, grad_attr);
        sgd_step(net, grads, lr, config.momentum, velocity);
        log.push_back({iter, phase, seg.value, phase == 2 ? attr.value : 0.0, total});
    }

    return TrainResult{std::move(net), std::move(log), mean_mask};
}

// ---------------------------------------------------------------------------
// Gradient verification
// ---------------------------------------------------------------------------

namespace {

double rel_err(double ga, double gn) {
    return std::abs(ga - gn) / std::max({1.0, std::abs(ga), std::abs(gn)});
}

}  // namespace

GradCheckReport gradient_check(const TinyNetT<double>& net, const TensorField& input,
                               const SegLossFn& loss,
                               std::optional<std::pair<HairClass, double>> attr) {
    constexpr double h = 1e-5;
    GradCheckReport report;

    auto objective = [&](const TinyNetT<double>& n) {
        const ForwardPass<double> pass = forward(n, input);
        double value = loss(pass.logits).value;
        if (attr) value += attr->second * attribute_loss(pass.attr_logits, attr->first).value;
        return value;
    };

    // Loss-level: analytic dvalue/dz against central differences on logits.
    {
        const ForwardPass<double> pass = forward(net, input);
        const LossResult res = loss(pass.logits);
        LogitField z = pass.logits;
        for (int r = 0; r < z.height(); ++r) {
            for (int c = 0; c < z.width(); ++c) {
                for (int j = 0; j < 3; ++j) {
                    const double orig = z.at(r, c, j);
                    z.at(r, c, j) = orig + h;
                    const double up = loss(z).value;
                    z.at(r, c, j) = orig - h;
                    const double down = loss(z).value;
                    z.at(r, c, j) = orig;
                    report.logit_err =
                        std::max(report.logit_err, rel_err(res.grad.at(r, c, j), (up - down) / (2 * h)));
                }
            }
        }
    }

    // End-to-end: analytic parameter gradients against central differences.
    {
        const ForwardPass<double> pass = forward(net, input);
        const LossResult res = loss(pass.logits);
        std::array<double, 2> grad_attr{0.0, 0.0};
        if (attr) {
            const AttrLossResult ar = attribute_loss(pass.attr_logits, attr->first);
            grad_attr = {attr->second * ar.grad[0], attr->second * ar.grad[1]};
        }
        const TinyNetT<double> grads = backward(net, pass.cache, res.grad, grad_attr);

        TinyNetT<double> probe = net;
        auto theta = probe.param_vectors();
        auto analytic = grads.param_vectors();
        for (size_t p = 0; p < theta.size(); ++p) {
            for (size_t i = 0; i < theta[p]->size(); ++i) {
                double& v = (*theta[p])[i];
                const double orig = v;
                v = orig + h;
                const double up = objective(probe);
                v = orig - h;
                const double down = objective(probe);
                v = orig;
                report.param_err =
                    std::max(report.param_err, rel_err((*analytic[p])[i], (up - down) / (2 * h)));
            }
        }
    }
    return report;
}

// ---------------------------------------------------------------------------
// Serialization
// ---------------------------------------------------------------------------

namespace {

struct ParamEntry {
    std::string name;
    std::vector<int> shape;
};

std::vector<ParamEntry> manifest_entries(const TinyNet& net) {
    return {
        {"conv1_weight", {net.conv1.out_ch, net.conv1.in_ch, net.conv1.ksize, net.conv1.ksize}},
        {"conv1_bias", {net.conv1.out_ch}},
        {"conv2_weight", {net.conv2.out_ch, net.conv2.in_ch, net.conv2.ksize, net.conv2.ksize}},
        {"conv2_bias", {net.conv2.out_ch}},
        {"conv3_weight", {net.conv3.out_ch, net.conv3.in_ch, net.conv3.ksize, net.conv3.ksize}},
        {"conv3_bias", {net.conv3.out_ch}},
        {"head1_weight", {net.head1.out_dim, net.head1.in_dim}},
        {"head1_bias", {net.head1.out_dim}},
        {"head2_weight", {net.head2.out_dim, net.head2.in_dim}},
        {"head2_bias", {net.head2.out_dim}},
    };
}

}  // namespace

void save_checkpoint(const TinyNet& net, const std::string& dir) {
    std::filesystem::create_directories(dir);
    const auto entries = manifest_entries(net);
    const auto params = net.param_vectors();

    std::ofstream manifest(std::filesystem::path(dir) / "manifest.txt");
    if (!manifest) throw std::runtime_error("cannot write checkpoint manifest in " + dir);
    for (size_t p = 0; p < entries.size(); ++p) {
        manifest << entries[p].name;
        for (int d : entries[p].shape) manifest << ' ' << d;
        manifest << '\n';

        TensorField flat(static_cast<int>(params[p]->size()), 1, 1);
        for (size_t i = 0; i < params[p]->size(); ++i) flat.data()[i] = (*params[p])[i];
        write_tensor(flat, (std::filesystem::path(dir) / (entries[p].name + ".bsnt")).string());
    }
}

TinyNet load_checkpoint(const std::string& dir) {
    TinyNet net;
    const auto entries = manifest_entries(net);
    auto params = net.param_vectors();

    std::ifstream manifest(std::filesystem::path(dir) / "manifest.txt");
    if (!manifest) throw std::runtime_error("cannot read checkpoint manifest in " + dir);
    for (size_t p = 0; p < entries.size(); ++p) {
        std::string line;
        if (!std::getline(manifest, line)) {
            throw std::runtime_error("checkpoint manifest truncated in " + dir);
        }
        std::istringstream ss(line);
        std::string name;
        ss >> name;
        std::vector<int> shape;
        int d;
        while (ss >> d) shape.push_back(d);
        if (name != entries[p].name || shape != entries[p].shape) {
            throw std::runtime_error("checkpoint manifest does not match architecture: " + line);
        }

        const TensorField flat =
            read_tensor((std::filesystem::path(dir) / (entries[p].name + ".bsnt")).string());
        if (flat.data().size() != params[p]->size()) {
            throw std::runtime_error("checkpoint tensor size mismatch for " + name);
        }
        for (size_t i = 0; i < params[p]->size(); ++i) (*params[p])[i] = flat.data()[i];
    }
    return net;
}

void save_loss_log(const std::vector<LossLogRow>& log, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open file for writing: " + path);
    out << "iteration,phase,seg_loss,attr_loss,total\n";
    char buf[160];
    for (const LossLogRow& row : log) {
        std::snprintf(buf, sizeof(buf), "%d,%d,%.9g,%.9g,%.9g\n", row.iteration, row.phase,
                      row.seg_loss, row.attr_loss, row.total);
        out << buf;
    }
}

// Explicit instantiations: float for training, double for verification.
template struct TinyNetT<float>;
template struct TinyNetT<double>;
template TinyNetT<float> init_net<float>(std::uint64_t);
template TinyNetT<double> init_net<double>(std::uint64_t);
template ForwardPass<float> forward(const TinyNetT<float>&, const TensorField&);
template ForwardPass<double> forward(const TinyNetT<double>&, const TensorField&);
template TinyNetT<float> backward(const TinyNetT<float>&, const ForwardCache<float>&,
                                  const Field3&, const std::array<double, 2>&);
template TinyNetT<double> backward(const TinyNetT<double>&, const ForwardCache<double>&,
                                   const Field3&, const std::array<double, 2>&);
template void sgd_step(TinyNetT<float>&, const TinyNetT<float>&, double, double,
                       TinyNetT<float>&);
template void sgd_step(TinyNetT<double>&, const TinyNetT<double>&, double, double,
                       TinyNetT<double>&);
template BinaryMask predict_mask(const TinyNetT<float>&, const TensorField&);
template BinaryMask predict_mask(const TinyNetT<double>&, const TensorField&);

}  // namespace bsseg
