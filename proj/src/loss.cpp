#include "bsseg/loss.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace bsseg {

ClassMap::ClassMap(int width, int height, SegClass fill) : width_(width), height_(height) {
    if (width < 1 || height < 1) throw std::invalid_argument("class map dimensions must be >= 1");
    labels_.assign(static_cast<size_t>(width) * height, static_cast<std::uint8_t>(fill));
}

ClassMap labels_from_mask(const BinaryMask& mask) {
    ClassMap labels(mask.width(), mask.height());
    for (int r = 0; r < mask.height(); ++r) {
        for (int c = 0; c < mask.width(); ++c) {
            labels.set(r, c, mask.is_fg(r, c) ? SegClass::Foreground : SegClass::Background);
        }
    }
    return labels;
}

namespace {

// Stable per-pixel log-softmax: log y_j = z_j - max - log sum exp(z - max).
struct LogProbs {
    std::array<double, 3> logy;
    std::array<double, 3> y;
};

LogProbs log_softmax3(const std::array<double, 3>& z) {
    const double m = std::max({z[0], z[1], z[2]});
    const double lse =
        m + std::log(std::exp(z[0] - m) + std::exp(z[1] - m) + std::exp(z[2] - m));
    LogProbs p;
    for (int j = 0; j < 3; ++j) {
        p.logy[j] = z[j] - lse;
        p.y[j] = std::exp(p.logy[j]);
    }
    return p;
}

void require_same_dims(const Field3& a, int w, int h, const char* what) {
    if (a.width() != w || a.height() != h) {
        throw std::invalid_argument(std::string(what) + " dimensions differ from logits");
    }
}

}  // namespace

ProbField softmax_pixelwise(const LogitField& logits) {
    ProbField probs(logits.width(), logits.height());
    for (int r = 0; r < logits.height(); ++r) {
        for (int c = 0; c < logits.width(); ++c) {
            probs.set_vec(r, c, log_softmax3(logits.vec(r, c)).y);
        }
    }
    return probs;
}

LossResult ik_loss(const LogitField& logits, const SoftLabelField& kernel) {
    require_same_dims(kernel, logits.width(), logits.height(), "soft-label kernel");
    const int n = logits.pixel_count();
    const double inv_n = 1.0 / n;
    LossResult res{0.0, Field3(logits.width(), logits.height())};
    for (int r = 0; r < logits.height(); ++r) {
        for (int c = 0; c < logits.width(); ++c) {
            const LogProbs p = log_softmax3(logits.vec(r, c));
            const std::array<double, 3> k = kernel.vec(r, c);
            res.value -= (k[0] * p.logy[0] + k[1] * p.logy[1] + k[2] * p.logy[2]) * inv_n;
            res.grad.set_vec(r, c, {(p.y[0] - k[0]) * inv_n, (p.y[1] - k[1]) * inv_n,
                                    (p.y[2] - k[2]) * inv_n});
        }
    }
    return res;
}

LossResult gk_loss(const LogitField& logits, const ClassMap& labels,
                   const GlobalKernel& kernel) {
    if (labels.width() != logits.width() || labels.height() != logits.height() ||
        kernel.weights.width() != logits.width() || kernel.weights.height() != logits.height()) {
        throw std::invalid_argument("gk_loss inputs have mismatched dimensions");
    }
    const int n = logits.pixel_count();
    const double inv_n = 1.0 / n;
    LossResult res{0.0, Field3(logits.width(), logits.height())};
    for (int r = 0; r < logits.height(); ++r) {
        for (int c = 0; c < logits.width(); ++c) {
            const LogProbs p = log_softmax3(logits.vec(r, c));
            const int g = static_cast<int>(labels.at(r, c));
            const double ks = kernel.weights.at(r, c);
            res.value -= ks * p.logy[g] * inv_n;
            std::array<double, 3> grad;
            for (int j = 0; j < 3; ++j) {
                grad[j] = ks * (p.y[j] - (j == g ? 1.0 : 0.0)) * inv_n;
            }
            res.grad.set_vec(r, c, grad);
        }
    }
    return res;
}

LossResult combined_loss(const LogitField& logits, const SoftLabelField& kernel_indv,
                         const GlobalKernel& kernel_global) {
    require_same_dims(kernel_indv, logits.width(), logits.height(), "soft-label kernel");
    if (kernel_global.weights.width() != logits.width() ||
        kernel_global.weights.height() != logits.height()) {
        throw std::invalid_argument("global kernel dimensions differ from logits");
    }
    const int n = logits.pixel_count();
    const double inv_n = 1.0 / n;
    LossResult res{0.0, Field3(logits.width(), logits.height())};
    for (int r = 0; r < logits.height(); ++r) {
        for (int c = 0; c < logits.width(); ++c) {
            const LogProbs p = log_softmax3(logits.vec(r, c));
            const std::array<double, 3> k = kernel_indv.vec(r, c);
            const double ks = kernel_global.weights.at(r, c);
            res.value -= ks * (k[0] * p.logy[0] + k[1] * p.logy[1] + k[2] * p.logy[2]) * inv_n;
            res.grad.set_vec(r, c, {ks * (p.y[0] - k[0]) * inv_n, ks * (p.y[1] - k[1]) * inv_n,
                                    ks * (p.y[2] - k[2]) * inv_n});
        }
    }
    return res;
}

LossResult ce_loss(const LogitField& logits, const ClassMap& labels) {
    if (labels.width() != logits.width() || labels.height() != logits.height()) {
        throw std::invalid_argument("labels dimensions differ from logits");
    }
    const int n = logits.pixel_count();
    const double inv_n = 1.0 / n;
    LossResult res{0.0, Field3(logits.width(), logits.height())};
    for (int r = 0; r < logits.height(); ++r) {
        for (int c = 0; c < logits.width(); ++c) {
            const LogProbs p = log_softmax3(logits.vec(r, c));
            const int g = static_cast<int>(labels.at(r, c));
            res.value -= p.logy[g] * inv_n;
            std::array<double, 3> grad;
            for (int j = 0; j < 3; ++j) {
                grad[j] = (p.y[j] - (j == g ? 1.0 : 0.0)) * inv_n;
            }
            res.grad.set_vec(r, c, grad);
        }
    }
    return res;
}

AttrLossResult attribute_loss(const std::array<double, 2>& logits, HairClass label) {
    const double m = std::max(logits[0], logits[1]);
    const double lse = m + std::log(std::exp(logits[0] - m) + std::exp(logits[1] - m));
    const int g = static_cast<int>(label);
    AttrLossResult res;
    res.value = -(logits[g] - lse);
    for (int j = 0; j < 2; ++j) {
        res.grad[j] = std::exp(logits[j] - lse) - (j == g ? 1.0 : 0.0);
    }
    return res;
}

}  // namespace bsseg
