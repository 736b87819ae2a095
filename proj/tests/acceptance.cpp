// Acceptance suite: prints one pass/fail line per criterion and exits
// nonzero if any criterion fails. Runs single-threaded.

#include <sys/wait.h>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <string>
#include <vector>

#include "bsseg/eval.hpp"
#include "bsseg/geometry.hpp"
#include "bsseg/kernels.hpp"
#include "bsseg/loss.hpp"
#include "bsseg/net.hpp"
#include "bsseg/raster.hpp"
#include "bsseg/rng.hpp"
#include "support/oracles.hpp"
#include "support/synthetic.hpp"
#include "support/tempdir.hpp"

using namespace bsseg;
namespace ts = bsseg::testsupport;

namespace {

int g_failures = 0;

void report(int num, const char* name, bool ok, const std::string& detail) {
    std::printf("[%s] %d. %-26s %s\n", ok ? "PASS" : "FAIL", num, name, detail.c_str());
    std::fflush(stdout);
    if (!ok) ++g_failures;
}

double seconds_since(std::chrono::steady_clock::time_point start) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

struct GradCheckInstance {
    TinyNetT<double> net;
    TensorField input;
    SoftLabelField kernel;
    GlobalKernel gk;
    ClassMap labels;
};

GradCheckInstance make_instance(std::uint64_t seed, int size) {
    Rng rng(seed);
    const BinaryMask mask = ts::random_blob_mask(rng, size, size);
    TensorField rgb(size, size, 3);
    for (float& v : rgb.data()) v = static_cast<float>(rng.uniform01());
    ScalarField prior(size, size);
    for (double& v : prior.data()) v = rng.uniform01();
    return GradCheckInstance{init_net<double>(rng.next_u64()), assemble_input(rgb, prior),
                             individual_kernel(mask, 4, NormMode::Max),
                             global_kernel(prior, 0.9, 1.0, GlobalKernelMode::Literal),
                             labels_from_mask(mask)};
}

// ---- criterion 1: gradient fidelity --------------------------------------

void criterion_gradients() {
    const auto start = std::chrono::steady_clock::now();
    double worst_logit = 0.0, worst_param = 0.0;
    // Frozen instance seeds, validated once: central differences at
    // h=1e-5 are only a valid derivative estimate where no ReLU changes
    // sign inside the probed interval, so the suite pins instances whose
    // loss surface is smooth along every probed segment.
    for (std::uint64_t seed = 1; seed <= 20; ++seed) {
        const GradCheckInstance inst = make_instance(seed, 6);
        for (int m = 0; m < 3; ++m) {
            const SegLossFn loss = [&](const LogitField& z) -> LossResult {
                if (m == 0) return ik_loss(z, inst.kernel);
                if (m == 1) return gk_loss(z, inst.labels, inst.gk);
                return combined_loss(z, inst.kernel, inst.gk);
            };
            const GradCheckReport r = gradient_check(inst.net, inst.input, loss);
            worst_logit = std::max(worst_logit, r.logit_err);
            worst_param = std::max(worst_param, r.param_err);
        }
    }
    const double elapsed = seconds_since(start);
    const bool ok = worst_logit < 1e-6 && worst_param < 1e-4 && elapsed < 60.0;
    char detail[160];
    std::snprintf(detail, sizeof(detail),
                  "loss-level %.2e (<1e-6), end-to-end %.2e (<1e-4), %.1fs (<60s)", worst_logit,
                  worst_param, elapsed);
    report(1, "gradient fidelity", ok, detail);
}

// ---- criterion 2: soft-label algebra -------------------------------------

void criterion_soft_labels() {
    const auto start = std::chrono::steady_clock::now();
    Rng rng(2000);
    const int widths[4] = {2, 4, 6, 10};
    double worst_pixel = 0.0, worst_band = 0.0;
    bool sides_exclusive = true, outside_onehot = true;
    for (int i = 0; i < 200; ++i) {
        const int size = 12 + static_cast<int>(rng.uniform_below(13));
        const BinaryMask mask = ts::random_blob_mask(rng, size, size);
        const int width = widths[i % 4];
        const NormMode mode = i % 2 == 0 ? NormMode::Sum : NormMode::Max;
        const SoftLabelField k = individual_kernel(mask, width, mode);

        const ContourSet contour = extract_contour(mask);
        const auto dist = distance_transform(contour);
        const BandMask band = make_band(contour, dist, width);

        double band_sum = 0.0;
        for (int r = 0; r < size; ++r) {
            for (int c = 0; c < size; ++c) {
                const auto v = k.vec(r, c);
                worst_pixel = std::max(worst_pixel, std::abs(v[0] + v[1] + v[2] - 1.0));
                if (v[0] * v[2] != 0.0) sides_exclusive = false;
                if (!band.contains(r, c) && v[1] != 0.0) outside_onehot = false;
                if (!band.contains(r, c) && v[0] != 1.0 && v[2] != 1.0) outside_onehot = false;
                band_sum += v[1];
            }
        }
        if (mode == NormMode::Sum) {
            worst_band = std::max(worst_band, std::abs(band_sum - 1.0));
        }
    }
    const double elapsed = seconds_since(start);
    const bool ok = worst_pixel <= 1e-6 && worst_band <= 1e-5 && sides_exclusive &&
                    outside_onehot && elapsed < 30.0;
    char detail[200];
    std::snprintf(detail, sizeof(detail),
                  "pixel sum err %.2e (<=1e-6), band sum err %.2e (<=1e-5), fg*bg==0 %s, "
                  "one-hot outside %s, %.1fs (<30s)",
                  worst_pixel, worst_band, sides_exclusive ? "yes" : "NO",
                  outside_onehot ? "yes" : "NO", elapsed);
    report(2, "soft-label algebra", ok, detail);
}

// ---- criterion 3: distance-transform exactness ----------------------------

void criterion_edt() {
    Rng rng(3000);
    bool exact = true;
    int tested = 0;
    while (tested < 50) {
        const BinaryMask mask = tested % 2 == 0 ? ts::random_mask(rng, 32, 32)
                                                : ts::random_blob_mask(rng, 32, 32);
        const ContourSet contour = extract_contour(mask);
        if (contour.empty()) continue;
        ++tested;
        const auto dist = distance_transform(contour);
        const ScalarField brute = ts::brute_distance_field(contour.points(), 32, 32);
        if (dist->data() != brute.data()) exact = false;
    }
    report(3, "distance exactness", exact,
           exact ? "50/50 masks equal the brute-force oracle bitwise"
                 : "mismatch against the brute-force oracle");
}

// ---- criterion 4: global kernel -------------------------------------------

void criterion_global_kernel() {
    ScalarField probe(3, 1);
    probe.at(0, 0) = 0.5;
    probe.at(0, 1) = 0.0;
    probe.at(0, 2) = 1.0;
    const double a = 0.9, b = 1.0;
    const GlobalKernel lit = global_kernel(probe, a, b, GlobalKernelMode::Literal);
    bool endpoints = lit.weights.at(0, 0) == a && lit.weights.at(0, 1) == b &&
                     lit.weights.at(0, 2) == b;

    Rng rng(4000);
    double worst_sym = 0.0, worst_comp = 0.0;
    for (int i = 0; i < 20; ++i) {
        ScalarField mean(16, 16);
        for (double& v : mean.data()) v = rng.uniform01();
        ScalarField mirror(16, 16);
        for (size_t j = 0; j < mean.data().size(); ++j) mirror.data()[j] = 1.0 - mean.data()[j];
        for (const auto mode : {GlobalKernelMode::Literal, GlobalKernelMode::Intent}) {
            const GlobalKernel k = global_kernel(mean, a, b, mode);
            const GlobalKernel km = global_kernel(mirror, a, b, mode);
            for (size_t j = 0; j < k.weights.data().size(); ++j) {
                worst_sym = std::max(worst_sym,
                                     std::abs(k.weights.data()[j] - km.weights.data()[j]));
            }
        }
        const GlobalKernel klit = global_kernel(mean, a, b, GlobalKernelMode::Literal);
        const GlobalKernel kint = global_kernel(mean, a, b, GlobalKernelMode::Intent);
        for (size_t j = 0; j < klit.weights.data().size(); ++j) {
            worst_comp = std::max(worst_comp, std::abs(klit.weights.data()[j] +
                                                       kint.weights.data()[j] - (a + b)));
        }
    }
    const bool ok = endpoints && worst_sym <= 1e-12 && worst_comp <= 1e-12;
    char detail[160];
    std::snprintf(detail, sizeof(detail),
                  "endpoints %s, symmetry err %.2e, literal+intent err %.2e (<=1e-12)",
                  endpoints ? "exact" : "WRONG", worst_sym, worst_comp);
    report(4, "global kernel (literal)", ok, detail);
}

// ---- criterion 5: reduction identities ------------------------------------

void criterion_reductions() {
    Rng rng(5000);
    double worst = 0.0;
    for (int i = 0; i < 20; ++i) {
        const int size = 4 + static_cast<int>(rng.uniform_below(4));
        LogitField z(size, size);
        for (double& v : z.data()) v = rng.uniform(-4.0, 4.0);
        ClassMap labels(size, size);
        SoftLabelField onehot(size, size);
        for (int r = 0; r < size; ++r) {
            for (int c = 0; c < size; ++c) {
                const auto cls = static_cast<SegClass>(rng.uniform_below(3));
                labels.set(r, c, cls);
                std::array<double, 3> v{0, 0, 0};
                v[static_cast<int>(cls)] = 1.0;
                onehot.set_vec(r, c, v);
            }
        }
        SoftLabelField soft(size, size);
        for (int r = 0; r < size; ++r) {
            for (int c = 0; c < size; ++c) {
                const double bdry = rng.uniform01();
                soft.set_vec(r, c, rng.uniform_below(2) == 1
                                       ? std::array<double, 3>{1.0 - bdry, bdry, 0.0}
                                       : std::array<double, 3>{0.0, bdry, 1.0 - bdry});
            }
        }
        const GlobalKernel unit{ScalarField(size, size, 1.0), 1.0, 1.0};

        const LossResult ce = ce_loss(z, labels);
        const LossResult ik_onehot = ik_loss(z, onehot);
        const LossResult gk_unit = gk_loss(z, labels, unit);
        const LossResult ik_plain = ik_loss(z, soft);
        const LossResult comb_unit = combined_loss(z, soft, unit);

        auto track = [&](const LossResult& x, const LossResult& y) {
            worst = std::max(worst, std::abs(x.value - y.value));
            for (size_t j = 0; j < x.grad.data().size(); ++j) {
                worst = std::max(worst, std::abs(x.grad.data()[j] - y.grad.data()[j]));
            }
        };
        track(ik_onehot, ce);
        track(gk_unit, ce);
        track(comb_unit, ik_plain);
    }
    char detail[96];
    std::snprintf(detail, sizeof(detail), "max deviation %.2e (<=1e-12)", worst);
    report(5, "reduction identities", worst <= 1e-12, detail);
}

// ---- criteria 6 and 7: frozen synthetic suite ------------------------------

TrainConfig suite_config(LossMode mode) {
    TrainConfig cfg;
    cfg.learning_rate = 0.15;
    cfg.momentum = 0.9;
    cfg.phase1_iters = 400;
    cfg.phase2_iters = 100;
    cfg.crop = 56;
    cfg.flip_prob = 0.5;
    cfg.seed = 42;
    cfg.loss_mode = mode;
    cfg.norm_mode = NormMode::Max;
    cfg.gk_mode = GlobalKernelMode::Literal;
    cfg.band_width = 10;
    cfg.attr_lambda = 1.0;
    return cfg;
}

constexpr std::uint64_t kSuiteSeed = 20240915;
constexpr double kSuiteNoise = 0.12;

void criteria_overfit_and_boundary() {
    const ts::SyntheticSuite suite = ts::make_portrait_suite(kSuiteSeed, 8, 64, kSuiteNoise);

    const auto start = std::chrono::steady_clock::now();
    const TrainResult combined = train(suite.samples, suite_config(LossMode::Combined));
    const double train_elapsed = seconds_since(start);

    std::vector<std::pair<BinaryMask, BinaryMask>> pairs;
    for (const TrainSample& s : suite.samples) {
        pairs.emplace_back(predict_mask(combined.net, assemble_input(s.image, combined.mean_mask)),
                           s.mask);
    }
    const double train_miou = mean_iou(pairs);
    const double initial = combined.log.front().seg_loss;
    const double final_loss = combined.log.back().seg_loss;
    const bool ok6 = train_miou >= 0.95 && final_loss < 0.2 * initial && train_elapsed < 120.0;
    char detail6[160];
    std::snprintf(detail6, sizeof(detail6),
                  "train mIoU %.4f (>=0.95), loss %.4f -> %.4f (<0.2x), %.1fs (<120s)",
                  train_miou, initial, final_loss, train_elapsed);
    report(6, "toy overfit", ok6, detail6);

    const TrainResult baseline = train(suite.samples, suite_config(LossMode::Baseline));
    double band_combined = 0.0, band_baseline = 0.0;
    for (size_t i = 0; i < suite.samples.size(); ++i) {
        const BinaryMask& gt = suite.samples[i].mask;
        const TensorField held_c = assemble_input(suite.heldout_images[i], combined.mean_mask);
        const TensorField held_b = assemble_input(suite.heldout_images[i], baseline.mean_mask);
        band_combined += boundary_band_iou(predict_mask(combined.net, held_c), gt, 5);
        band_baseline += boundary_band_iou(predict_mask(baseline.net, held_b), gt, 5);
    }
    band_combined /= suite.samples.size();
    band_baseline /= suite.samples.size();
    char detail7[160];
    std::snprintf(detail7, sizeof(detail7),
                  "held-out band IoU (w=5): combined %.4f >= baseline %.4f", band_combined,
                  band_baseline);
    report(7, "boundary benefit", band_combined >= band_baseline, detail7);
}

// ---- criterion 8: eval oracle ----------------------------------------------

void criterion_eval_oracle() {
    Rng rng(8000);
    bool iou_exact = true;
    for (int i = 0; i < 100; ++i) {
        const BinaryMask pred = ts::random_mask(rng, 16, 16);
        const BinaryMask gt = ts::random_mask(rng, 16, 16);
        if (pair_iou(pred, gt) != ts::brute_iou(pred, gt)) iou_exact = false;
    }

    bool trimap_ok = true;
    for (int i = 0; i < 100; ++i) {
        const int size = 8 + static_cast<int>(rng.uniform_below(9));
        const BinaryMask mask = ts::random_blob_mask(rng, size, size);
        const int width = 2 * static_cast<int>(rng.uniform_below(5));
        const Trimap t = make_trimap(mask, width);
        const ContourSet contour = extract_contour(mask);
        const auto dist = distance_transform(contour);
        for (const PixelCoord& p : contour.points()) {
            if (t.at(p.row, p.col) != TriClass::Unknown) trimap_ok = false;
        }
        for (int r = 0; r < size; ++r) {
            for (int c = 0; c < size; ++c) {
                const TriClass cls = t.at(r, c);
                const bool in_band = dist->at(r, c) <= width / 2.0;
                if (in_band != (cls == TriClass::Unknown)) trimap_ok = false;
                if (!in_band &&
                    (cls == TriClass::Foreground) != mask.is_fg(r, c)) {
                    trimap_ok = false;
                }
            }
        }
    }
    const bool ok = iou_exact && trimap_ok;
    char detail[120];
    std::snprintf(detail, sizeof(detail), "IoU exact on 100 pairs: %s; trimap invariants: %s",
                  iou_exact ? "yes" : "NO", trimap_ok ? "hold" : "VIOLATED");
    report(8, "eval oracle", ok, detail);
}

// ---- criterion 9: CLI determinism -------------------------------------------

int run_cli(const std::string& args) {
    const std::string cmd = std::string(BSSEG_CLI_PATH) + " " + args + " >/dev/null 2>&1";
    const int status = std::system(cmd.c_str());
    return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

void criterion_cli_determinism() {
    ts::TempDir tmp("acceptance_cli");
    Rng rng(9000);
    const std::string masks = tmp.subdir("masks");
    const std::string images = tmp.subdir("images");
    for (int i = 0; i < 2; ++i) {
        const BinaryMask mask = ts::portrait_mask(rng, 16);
        save_mask(mask, masks + "/s" + std::to_string(i) + ".png");
        write_tensor(ts::portrait_image(mask, rng, 0.1),
                     images + "/s" + std::to_string(i) + ".bsnt");
    }

    bool ok = true;
    std::string why = "indiv-kernel, mean-mask, train outputs byte-identical across reruns";

    const std::string ik_args = "indiv-kernel --mask " + masks + "/s0.png --width 10 --norm max";
    ok &= run_cli(ik_args + " --out " + tmp.file("k1.bsnt")) == 0;
    ok &= run_cli(ik_args + " --out " + tmp.file("k2.bsnt")) == 0;
    ok &= ts::read_bytes(tmp.file("k1.bsnt")) == ts::read_bytes(tmp.file("k2.bsnt"));

    ok &= run_cli("mean-mask --masks " + masks + " --out " + tmp.file("m1.bsnt")) == 0;
    ok &= run_cli("mean-mask --masks " + masks + " --out " + tmp.file("m2.bsnt")) == 0;
    ok &= ts::read_bytes(tmp.file("m1.bsnt")) == ts::read_bytes(tmp.file("m2.bsnt"));

    const std::string train_args = "train --images " + images + " --masks " + masks +
                                   " --lr 0.05 --momentum 0.9 --phase1 10 --phase2 5 --crop 12"
                                   " --band-width 4 --seed 11 --out ";
    ok &= run_cli(train_args + tmp.subdir("t1")) == 0;
    ok &= run_cli(train_args + tmp.subdir("t2")) == 0;
    for (const std::string name : {"loss_log.csv", "checkpoint/conv2_weight.bsnt",
                                   "mean_mask.bsnt", "pred/s1.png"}) {
        ok &= ts::read_bytes(tmp.file("t1/" + name)) == ts::read_bytes(tmp.file("t2/" + name));
    }
    if (!ok) why = "outputs differ between identical invocations";
    report(9, "CLI determinism", ok, why);
}

}  // namespace

int main() {
    std::printf("acceptance suite\n");
    criterion_gradients();
    criterion_soft_labels();
    criterion_edt();
    criterion_global_kernel();
    criterion_reductions();
    criteria_overfit_and_boundary();
    criterion_eval_oracle();
    criterion_cli_determinism();
    std::printf("%s (%d failure%s)\n", g_failures == 0 ? "ALL CRITERIA PASSED" : "FAILURES",
                g_failures, g_failures == 1 ? "" : "s");
    return g_failures == 0 ? 0 : 1;
}
