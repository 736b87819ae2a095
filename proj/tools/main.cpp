// Command-line surface for the boundary-sensitive segmentation toolkit.

#include <CLI11.hpp>

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "bsseg/eval.hpp"
#include "bsseg/geometry.hpp"
#include "bsseg/kernels.hpp"
#include "bsseg/loss.hpp"
#include "bsseg/net.hpp"
#include "bsseg/raster.hpp"
#include "bsseg/rng.hpp"

namespace fs = std::filesystem;
using namespace bsseg;

namespace {

std::vector<fs::path> list_files(const std::string& dir, const std::string& ext) {
    if (!fs::is_directory(dir)) {
        throw std::runtime_error("not a directory: " + dir);
    }
    std::vector<fs::path> files;
    for (const auto& entry : fs::directory_iterator(dir)) {
        if (entry.is_regular_file() && entry.path().extension() == ext) {
            files.push_back(entry.path());
        }
    }
    std::sort(files.begin(), files.end());
    return files;
}

std::vector<BinaryMask> load_mask_dir(const std::string& dir) {
    std::vector<BinaryMask> masks;
    for (const fs::path& p : list_files(dir, ".png")) masks.push_back(load_mask(p.string()));
    if (masks.empty()) throw std::runtime_error("no PNG masks found in " + dir);
    return masks;
}

// Images may be 3-channel BSNT tensors or grayscale PNGs (replicated to
// three channels, scaled to [0,1]).
TensorField load_image(const fs::path& path) {
    if (path.extension() == ".bsnt") {
        TensorField t = read_tensor(path.string());
        if (t.channels() != 3) {
            throw std::runtime_error("image tensor must have 3 channels: " + path.string());
        }
        return t;
    }
    int w = 0, h = 0;
    const std::vector<std::uint8_t> px = load_gray8(path.string(), w, h);
    TensorField t(w, h, 3);
    for (int ch = 0; ch < 3; ++ch) {
        for (int r = 0; r < h; ++r) {
            for (int c = 0; c < w; ++c) {
                t.at(ch, r, c) = px[static_cast<size_t>(r) * w + c] / 255.0f;
            }
        }
    }
    return t;
}

HairClass parse_attr_label(const std::string& s) {
    if (s == "long" || s == "long-hair" || s == "0") return HairClass::LongHair;
    if (s == "short" || s == "short-hair" || s == "1") return HairClass::ShortHair;
    throw std::runtime_error("unknown attribute label '" + s + "' (expected long|short)");
}

std::map<std::string, HairClass> load_attr_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open attribute file: " + path);
    std::map<std::string, HairClass> attrs;
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        const size_t comma = line.find(',');
        if (comma == std::string::npos) {
            throw std::runtime_error("bad attribute line (expected stem,label): " + line);
        }
        attrs[line.substr(0, comma)] = parse_attr_label(line.substr(comma + 1));
    }
    return attrs;
}

ScalarField boundary_channel(const SoftLabelField& kernel) {
    ScalarField out(kernel.width(), kernel.height());
    for (int r = 0; r < kernel.height(); ++r) {
        for (int c = 0; c < kernel.width(); ++c) out.at(r, c) = kernel.at(r, c, 1);
    }
    return out;
}

NormMode parse_norm(const std::string& s) {
    if (s == "max") return NormMode::Max;
    if (s == "sum") return NormMode::Sum;
    throw std::runtime_error("--norm must be max or sum, got '" + s + "'");
}

GlobalKernelMode parse_gk_mode(const std::string& s) {
    if (s == "literal") return GlobalKernelMode::Literal;
    if (s == "intent") return GlobalKernelMode::Intent;
    throw std::runtime_error("--mode must be literal or intent, got '" + s + "'");
}

LossMode parse_loss_mode(const std::string& s) {
    if (s == "ik") return LossMode::IndividualKernel;
    if (s == "gk") return LossMode::GlobalKernel;
    if (s == "combined") return LossMode::Combined;
    if (s == "baseline") return LossMode::Baseline;
    throw std::runtime_error("--loss must be ik|gk|combined|baseline, got '" + s + "'");
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"boundary-sensitive portrait segmentation toolkit"};
    app.set_config("--config", "", "TOML config file; command-line flags override its values");
    app.require_subcommand(1);

    std::function<int()> action;

    // ---- contour ----
    {
        auto* cmd = app.add_subcommand("contour", "extract a mask contour and write it as a PNG");
        auto mask_path = std::make_shared<std::string>();
        auto out_path = std::make_shared<std::string>();
        cmd->add_option("--mask", *mask_path, "input mask PNG")->required()->check(CLI::ExistingFile);
        cmd->add_option("--out", *out_path, "output contour PNG")->required();
        cmd->callback([=, &action] {
            action = [=] {
                const BinaryMask mask = load_mask(*mask_path);
                const ContourSet contour = extract_contour(mask);
                BinaryMask vis(mask.width(), mask.height());
                for (const PixelCoord& p : contour.points()) vis.set(p.row, p.col, true);
                save_mask(vis, *out_path);
                std::printf("%zu contour points -> %s\n", contour.points().size(),
                            out_path->c_str());
                return 0;
            };
        });
    }

    // ---- indiv-kernel ----
    {
        auto* cmd = app.add_subcommand("indiv-kernel",
                                       "compute the per-image soft-label kernel");
        auto mask_path = std::make_shared<std::string>();
        auto out_path = std::make_shared<std::string>();
        auto png_path = std::make_shared<std::string>();
        auto width = std::make_shared<int>(10);
        auto norm = std::make_shared<std::string>("max");
        cmd->add_option("--mask", *mask_path, "input mask PNG")->required()->check(CLI::ExistingFile);
        cmd->add_option("--width", *width, "band width in pixels")->check(CLI::NonNegativeNumber);
        cmd->add_option("--norm", *norm, "distance normalization: max|sum");
        cmd->add_option("--out", *out_path, "output BSNT file")->required();
        cmd->add_option("--png", *png_path, "optional boundary-channel visualization PNG");
        cmd->callback([=, &action] {
            action = [=] {
                const SoftLabelField kernel =
                    individual_kernel(load_mask(*mask_path), *width, parse_norm(*norm));
                write_tensor(to_tensor(kernel), *out_path);
                if (!png_path->empty()) field_to_png(boundary_channel(kernel), *png_path);
                return 0;
            };
        });
    }

    // ---- global-kernel ----
    {
        auto* cmd = app.add_subcommand("global-kernel",
                                       "compute the position-prior kernel from a mask directory");
        auto masks_dir = std::make_shared<std::string>();
        auto out_path = std::make_shared<std::string>();
        auto png_path = std::make_shared<std::string>();
        auto a = std::make_shared<double>(0.9);
        auto b = std::make_shared<double>(1.0);
        auto mode = std::make_shared<std::string>("literal");
        cmd->add_option("--masks", *masks_dir, "directory of mask PNGs")->required();
        cmd->add_option("--a", *a, "lower end of the weight range");
        cmd->add_option("--b", *b, "upper end of the weight range");
        cmd->add_option("--mode", *mode, "literal|intent");
        cmd->add_option("--out", *out_path, "output BSNT file")->required();
        cmd->add_option("--png", *png_path, "optional visualization PNG");
        cmd->callback([=, &action] {
            action = [=] {
                const ScalarField mean = compute_mean_mask(load_mask_dir(*masks_dir));
                const GlobalKernel kernel = global_kernel(mean, *a, *b, parse_gk_mode(*mode));
                write_tensor(to_tensor(kernel.weights), *out_path);
                if (!png_path->empty()) field_to_png(kernel.weights, *png_path);
                return 0;
            };
        });
    }

    // ---- mean-mask ----
    {
        auto* cmd = app.add_subcommand("mean-mask", "average a directory of masks");
        auto masks_dir = std::make_shared<std::string>();
        auto out_path = std::make_shared<std::string>();
        auto png_path = std::make_shared<std::string>();
        cmd->add_option("--masks", *masks_dir, "directory of mask PNGs")->required();
        cmd->add_option("--out", *out_path, "output BSNT file")->required();
        cmd->add_option("--png", *png_path, "optional visualization PNG");
        cmd->callback([=, &action] {
            action = [=] {
                const ScalarField mean = compute_mean_mask(load_mask_dir(*masks_dir));
                write_tensor(to_tensor(mean), *out_path);
                if (!png_path->empty()) field_to_png(mean, *png_path);
                return 0;
            };
        });
    }

    // ---- train ----
    {
        auto* cmd = app.add_subcommand("train", "train the toy network");
        auto images_dir = std::make_shared<std::string>();
        auto masks_dir = std::make_shared<std::string>();
        auto attrs_path = std::make_shared<std::string>();
        auto out_dir = std::make_shared<std::string>();
        auto cfg = std::make_shared<TrainConfig>();
        cfg->phase1_iters = 500;
        cfg->phase2_iters = 100;
        auto loss = std::make_shared<std::string>("combined");
        auto norm = std::make_shared<std::string>("max");
        auto gk_mode = std::make_shared<std::string>("literal");
        cmd->add_option("--images", *images_dir, "directory of images (.png grayscale or .bsnt)")
            ->required();
        cmd->add_option("--masks", *masks_dir, "directory of ground-truth mask PNGs")->required();
        cmd->add_option("--attrs", *attrs_path, "CSV of stem,label attribute annotations");
        cmd->add_option("--out", *out_dir, "output directory")->required();
        cmd->add_option("--lr", cfg->learning_rate, "learning rate");
        cmd->add_option("--momentum", cfg->momentum, "SGD momentum");
        cmd->add_option("--phase1", cfg->phase1_iters, "iterations without the attribute head");
        cmd->add_option("--phase2", cfg->phase2_iters, "iterations with the head at lr/10");
        cmd->add_option("--crop", cfg->crop, "augmentation crop size");
        cmd->add_option("--flip", cfg->flip_prob, "horizontal flip probability");
        cmd->add_option("--loss", *loss, "ik|gk|combined|baseline");
        cmd->add_option("--norm", *norm, "soft-label normalization: max|sum");
        cmd->add_option("--gk-mode", *gk_mode, "global kernel mode: literal|intent");
        cmd->add_option("--a", cfg->gk_a, "global kernel lower weight");
        cmd->add_option("--b", cfg->gk_b, "global kernel upper weight");
        cmd->add_option("--band-width", cfg->band_width, "boundary band width in pixels");
        cmd->add_option("--lambda", cfg->attr_lambda, "attribute loss weight");
        cmd->add_option("--seed", cfg->seed, "RNG seed");
        cmd->callback([=, &action] {
            action = [=] {
                cfg->loss_mode = parse_loss_mode(*loss);
                cfg->norm_mode = parse_norm(*norm);
                cfg->gk_mode = parse_gk_mode(*gk_mode);

                std::map<std::string, HairClass> attrs;
                if (!attrs_path->empty()) attrs = load_attr_csv(*attrs_path);

                std::vector<TrainSample> dataset;
                std::vector<std::string> stems;
                for (const fs::path& mask_path : list_files(*masks_dir, ".png")) {
                    const std::string stem = mask_path.stem().string();
                    fs::path image_path = fs::path(*images_dir) / (stem + ".png");
                    if (!fs::exists(image_path)) {
                        image_path = fs::path(*images_dir) / (stem + ".bsnt");
                    }
                    if (!fs::exists(image_path)) {
                        throw std::runtime_error("no image found for mask stem '" + stem + "'");
                    }
                    HairClass attr = HairClass::LongHair;
                    if (auto it = attrs.find(stem); it != attrs.end()) attr = it->second;
                    dataset.push_back({load_image(image_path), load_mask(mask_path.string()), attr});
                    stems.push_back(stem);
                }
                if (dataset.empty()) throw std::runtime_error("no masks found in " + *masks_dir);

                const TrainResult result = train(dataset, *cfg);

                fs::create_directories(*out_dir);
                save_checkpoint(result.net, (fs::path(*out_dir) / "checkpoint").string());
                save_loss_log(result.log, (fs::path(*out_dir) / "loss_log.csv").string());
                write_tensor(to_tensor(result.mean_mask),
                             (fs::path(*out_dir) / "mean_mask.bsnt").string());

                fs::create_directories(fs::path(*out_dir) / "pred");
                for (size_t i = 0; i < dataset.size(); ++i) {
                    const TensorField input = assemble_input(dataset[i].image, result.mean_mask);
                    save_mask(predict_mask(result.net, input),
                              (fs::path(*out_dir) / "pred" / (stems[i] + ".png")).string());
                }
                std::printf("trained %d iterations on %zu samples; final seg loss %.6g\n",
                            cfg->phase1_iters + cfg->phase2_iters, dataset.size(),
                            result.log.back().seg_loss);
                return 0;
            };
        });
    }

    // ---- eval ----
    {
        auto* cmd = app.add_subcommand("eval", "score predictions against ground truth");
        auto pred_dir = std::make_shared<std::string>();
        auto gt_dir = std::make_shared<std::string>();
        auto out_path = std::make_shared<std::string>();
        auto band = std::make_shared<int>(5);
        auto class_mean = std::make_shared<bool>(false);
        cmd->add_option("--pred", *pred_dir, "directory of predicted mask PNGs")->required();
        cmd->add_option("--gt", *gt_dir, "directory of ground-truth mask PNGs")->required();
        cmd->add_option("--band", *band, "boundary band distance in pixels")
            ->check(CLI::PositiveNumber);
        cmd->add_flag("--class-mean", *class_mean, "average fg and bg IoU instead of fg only");
        cmd->add_option("--out", *out_path, "output report CSV")->required();
        cmd->callback([=, &action] {
            action = [=] {
                std::vector<EvalRow> rows;
                double iou_sum = 0.0, band_sum = 0.0;
                const auto gt_files = list_files(*gt_dir, ".png");
                if (gt_files.empty()) throw std::runtime_error("no masks found in " + *gt_dir);
                for (const fs::path& gt_path : gt_files) {
                    const std::string stem = gt_path.stem().string();
                    const fs::path pred_path = fs::path(*pred_dir) / (stem + ".png");
                    if (!fs::exists(pred_path)) {
                        throw std::runtime_error("missing prediction for '" + stem + "'");
                    }
                    const BinaryMask pred = load_mask(pred_path.string());
                    const BinaryMask gt = load_mask(gt_path.string());
                    EvalRow row;
                    row.image_id = stem;
                    row.iou = pair_iou(pred, gt,
                                       *class_mean ? IouMode::ClassMean : IouMode::Foreground);
                    row.band_iou = boundary_band_iou(pred, gt, *band);
                    iou_sum += row.iou;
                    band_sum += row.band_iou;
                    rows.push_back(row);
                }
                write_eval_report(rows, *out_path);
                std::printf("mean IoU %.6g, mean band IoU (w=%d) %.6g over %zu images\n",
                            iou_sum / rows.size(), *band, band_sum / rows.size(), rows.size());
                return 0;
            };
        });
    }

    // ---- trimap ----
    {
        auto* cmd = app.add_subcommand("trimap", "export a matting trimap from a mask");
        auto mask_path = std::make_shared<std::string>();
        auto out_path = std::make_shared<std::string>();
        auto width = std::make_shared<int>(10);
        cmd->add_option("--mask", *mask_path, "input mask PNG")->required()->check(CLI::ExistingFile);
        cmd->add_option("--width", *width, "unknown-band width in pixels")
            ->check(CLI::NonNegativeNumber);
        cmd->add_option("--out", *out_path, "output trimap PNG")->required();
        cmd->callback([=, &action] {
            action = [=] {
                save_trimap(make_trimap(load_mask(*mask_path), *width), *out_path);
                return 0;
            };
        });
    }

    // ---- gradcheck ----
    {
        auto* cmd = app.add_subcommand(
            "gradcheck", "verify analytic gradients against finite differences");
        auto loss = std::make_shared<std::string>("combined");
        auto seed = std::make_shared<std::uint64_t>(0);
        auto size = std::make_shared<int>(6);
        cmd->add_option("--loss", *loss, "ik|gk|combined|baseline");
        cmd->add_option("--seed", *seed, "RNG seed");
        cmd->add_option("--size", *size, "instance side length (<= 8)")
            ->check(CLI::Range(2, 8));
        cmd->callback([=, &action] {
            action = [=] {
                const LossMode mode = parse_loss_mode(*loss);
                Rng rng(*seed);

                BinaryMask mask(*size, *size);
                do {
                    for (int r = 0; r < *size; ++r) {
                        for (int c = 0; c < *size; ++c) mask.set(r, c, rng.uniform_below(2) == 1);
                    }
                } while (extract_contour(mask).empty());

                TensorField rgb(*size, *size, 3);
                for (float& v : rgb.data()) v = static_cast<float>(rng.uniform01());
                ScalarField prior(*size, *size);
                for (double& v : prior.data()) v = rng.uniform01();
                const TensorField input = assemble_input(rgb, prior);

                const TinyNetT<double> net = init_net<double>(rng.next_u64());
                const SoftLabelField kernel = individual_kernel(mask, 4, NormMode::Max);
                const GlobalKernel gk = global_kernel(prior, 0.9, 1.0, GlobalKernelMode::Literal);
                const ClassMap labels = labels_from_mask(mask);

                const SegLossFn loss_fn = [&](const LogitField& z) {
                    switch (mode) {
                        case LossMode::IndividualKernel: return ik_loss(z, kernel);
                        case LossMode::GlobalKernel: return gk_loss(z, labels, gk);
                        case LossMode::Combined: return combined_loss(z, kernel, gk);
                        case LossMode::Baseline:
                        default: return ce_loss(z, labels);
                    }
                };
                const GradCheckReport report = gradient_check(net, input, loss_fn);
                std::printf("max relative error: %.3g (loss-level %.3g, end-to-end %.3g)\n",
                            report.max_err(), report.logit_err, report.param_err);
                return report.max_err() < 1e-4 ? 0 : 1;
            };
        });
    }

    try {
        app.parse(argc, argv);
        return action();
    } catch (const CLI::ParseError& e) {
        return app.exit(e);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
