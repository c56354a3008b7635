// texlab: multiresolution texture attributes and structure labeling.
//
// Subcommands: train, label, eval, decompose, features.
// Exit codes: 0 ok, 1 I/O or format error, 2 training/config contract error.

#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "texlab/pipeline.hpp"
#include "texlab/synthetic.hpp"

namespace fs = std::filesystem;
using namespace texlab;

namespace {

struct CliOptions {
    RunConfig cfg;
    std::string config_path;
    std::string attr_name;
};

void load_config_file(CliOptions& opt) {
    if (opt.config_path.empty()) return;
    std::ifstream is(opt.config_path);
    if (!is) throw IoError("cannot open config " + opt.config_path);
    nlohmann::json j;
    try {
        is >> j;
    } catch (const nlohmann::json::exception& e) {
        throw ConfigError(std::string("bad config JSON: ") + e.what());
    }
    if (j.contains("attribute")) opt.attr_name = j["attribute"].get<std::string>();
    if (j.contains("scales")) opt.cfg.attr.scales = j["scales"].get<int>();
    if (j.contains("patch_side")) opt.cfg.attr.patch_side = j["patch_side"].get<Eigen::Index>();
    if (j.contains("gabor_orientations"))
        opt.cfg.attr.gabor_orientations = j["gabor_orientations"].get<int>();
    if (j.contains("superpixel_count")) opt.cfg.superpixel_count = j["superpixel_count"].get<int>();
    if (j.contains("compactness")) opt.cfg.compactness = j["compactness"].get<double>();
    if (j.contains("slic_iters")) opt.cfg.slic_iters = j["slic_iters"].get<int>();
    if (j.contains("C")) opt.cfg.svm.C = j["C"].get<double>();
    if (j.contains("epochs")) opt.cfg.svm.epochs = j["epochs"].get<int>();
    if (j.contains("seed")) opt.cfg.svm.seed = j["seed"].get<uint32_t>();
}

std::vector<CLI::App*> g_subcommands;

void add_common(CLI::App* cmd, CliOptions& opt) {
    cmd->add_option("--config", opt.config_path, "JSON config file; flags override its values");
    cmd->add_option("--attr", opt.attr_name,
                    "attribute: amplitude|pyramid|dwt|gabor|curvelet (default curvelet)");
    cmd->add_option("--scales", opt.cfg.attr.scales, "decomposition scales (default 3)");
    cmd->add_option("--patch-side", opt.cfg.attr.patch_side, "patch side, odd (default 99)");
    cmd->add_option("--gabor-orientations", opt.cfg.attr.gabor_orientations,
                    "gabor orientations (default 4)");
    g_subcommands.push_back(cmd);
}

// config file fills in values, but anything passed on the command line wins
void finalize(CliOptions& opt) {
    const CliOptions cli_values = opt;
    load_config_file(opt);
    for (CLI::App* cmd : g_subcommands) {
        if (!cmd->parsed()) continue;
        auto passed = [&](const std::string& name) {
            const CLI::Option* o = cmd->get_option_no_throw(name);
            return o != nullptr && o->count() > 0;
        };
        if (passed("--attr")) opt.attr_name = cli_values.attr_name;
        if (passed("--scales")) opt.cfg.attr.scales = cli_values.cfg.attr.scales;
        if (passed("--patch-side")) opt.cfg.attr.patch_side = cli_values.cfg.attr.patch_side;
        if (passed("--gabor-orientations"))
            opt.cfg.attr.gabor_orientations = cli_values.cfg.attr.gabor_orientations;
        if (passed("--C")) opt.cfg.svm.C = cli_values.cfg.svm.C;
        if (passed("--epochs")) opt.cfg.svm.epochs = cli_values.cfg.svm.epochs;
        if (passed("--seed")) opt.cfg.svm.seed = cli_values.cfg.svm.seed;
        if (passed("--superpixels")) opt.cfg.superpixel_count = cli_values.cfg.superpixel_count;
        if (passed("--compactness")) opt.cfg.compactness = cli_values.cfg.compactness;
    }
    if (!opt.attr_name.empty()) opt.cfg.attr.attribute = attribute_from_name(opt.attr_name);
}

Image read_section(const std::string& path) {
    const std::string ext = fs::path(path).extension().string();
    if (ext == ".pgm") return read_raster(path, RasterFormat::pgm);
    return read_raster(path, RasterFormat::sgrd);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"multiresolution texture attributes and seismic structure labeling"};
    app.require_subcommand(1);

    CliOptions opt;

    // train
    auto* train = app.add_subcommand("train", "train one-vs-all linear SVMs on a patch dataset");
    std::string dataset, model_out = "model.json";
    add_common(train, opt);
    train->add_option("--dataset", dataset, "root with one subdirectory per class")->required();
    train->add_option("--model", model_out, "output model JSON (default model.json)");
    train->add_option("--C", opt.cfg.svm.C, "SVM regularization C (default 1.0)");
    train->add_option("--epochs", opt.cfg.svm.epochs, "max training epochs (default 200)");
    train->add_option("--seed", opt.cfg.svm.seed, "RNG seed (default 0)");

    // label
    auto* label = app.add_subcommand("label", "label a section with a trained model");
    std::string section_path, model_in, out_prefix = "labeled";
    bool dump_superpixels = false;
    add_common(label, opt);
    label->add_option("--section", section_path, "section raster (PGM or SGRD)")->required();
    label->add_option("--model", model_in, "model JSON")->required();
    label->add_option("--out-prefix", out_prefix, "output prefix (default 'labeled')");
    label->add_option("--superpixels", opt.cfg.superpixel_count,
                      "superpixel target count (default pixels/2500)");
    label->add_option("--compactness", opt.cfg.compactness, "SLIC compactness (default 10)");
    label->add_flag("--dump-superpixels", dump_superpixels,
                    "also write the superpixel id grid and a boundary overlay");

    // eval
    auto* eval = app.add_subcommand("eval", "score predicted label maps against references");
    std::vector<std::string> pred_paths, ref_paths;
    std::string eval_json_out, eval_table_out;
    int n_classes = 4;
    bool do_average = false;
    eval->add_option("--pred", pred_paths, "predicted label map(s), SGRD of ids")->required();
    eval->add_option("--ref", ref_paths, "reference label map(s), SGRD of ids")->required();
    eval->add_option("--classes", n_classes, "number of classes (default 4)");
    eval->add_flag("--average", do_average, "average the metrics over all (pred, ref) pairs");
    eval->add_option("--json", eval_json_out, "write metrics JSON here (default stdout)");
    eval->add_option("--table", eval_table_out, "write the text table here (default stdout)");

    // decompose
    auto* decompose = app.add_subcommand("decompose", "dump an attribute decomposition as SGRD");
    std::string image_path, out_dir = "decomposed";
    add_common(decompose, opt);
    decompose->add_option("--image", image_path, "input raster (PGM or SGRD)")->required();
    decompose->add_option("--out", out_dir, "output directory (default 'decomposed')");

    // features
    auto* features_cmd = app.add_subcommand("features", "extract feature vectors to CSV");
    std::string feat_dataset, feat_out = "features.csv";
    add_common(features_cmd, opt);
    features_cmd->add_option("--dataset", feat_dataset, "root with one subdirectory per class")
        ->required();
    features_cmd->add_option("--out", feat_out, "output CSV (default features.csv)");

    CLI11_PARSE(app, argc, argv);

    try {
        finalize(opt);

        if (*train) {
            std::vector<std::pair<std::string, size_t>> counts;
            SvmModel model = cmd_train(opt.cfg, dataset, &counts);
            save_model(model, model_out);
            for (const auto& [name, n] : counts)
                std::cout << name << ": " << n << " patches\n";
            std::cout << "model written to " << model_out << "\n";
        } else if (*label) {
            const Image section = read_section(section_path);
            const SvmModel model = load_model(model_in);
            LabelResult res = cmd_label(opt.cfg, section, model);
            write_labelmap_sgrd(res.labels, out_prefix + "_labels.sgrd");
            write_label_ppm(res.labels, default_palette(model.classes.size()),
                            out_prefix + "_overlay.ppm");
            if (dump_superpixels) {
                write_labelmap_sgrd(res.superpixels.labels, out_prefix + "_superpixels.sgrd");
                Image boundaries = Image::Zero(section.rows(), section.cols());
                for (Eigen::Index r = 0; r < section.rows(); ++r)
                    for (Eigen::Index c = 0; c < section.cols(); ++c) {
                        const int id = res.superpixels.labels(r, c);
                        if ((r + 1 < section.rows() && res.superpixels.labels(r + 1, c) != id) ||
                            (c + 1 < section.cols() && res.superpixels.labels(r, c + 1) != id))
                            boundaries(r, c) = 1.0;
                    }
                write_raster(boundaries, out_prefix + "_boundaries.pgm", RasterFormat::pgm);
            }
            std::cout << res.superpixels.count << " superpixels labeled\n";
        } else if (*eval) {
            if (pred_paths.size() != ref_paths.size())
                throw ArgumentError("--pred and --ref counts differ");
            std::vector<MetricsReport> reports;
            for (size_t i = 0; i < pred_paths.size(); ++i)
                reports.push_back(cmd_eval(read_labelmap_sgrd(pred_paths[i]),
                                           read_labelmap_sgrd(ref_paths[i]), n_classes));
            const MetricsReport rep =
                do_average && reports.size() > 1 ? average_reports(reports) : reports.at(0);
            const std::string js = metrics_to_json(rep).dump(2) + "\n";
            const std::string table = metrics_to_table(rep);
            if (eval_json_out.empty())
                std::cout << js;
            else
                std::ofstream(eval_json_out) << js;
            if (eval_table_out.empty())
                std::cout << table;
            else
                std::ofstream(eval_table_out) << table;
        } else if (*decompose) {
            const Image image = read_section(image_path);
            cmd_decompose(opt.cfg, image, out_dir);
            std::cout << "subbands written to " << out_dir << "\n";
        } else if (*features_cmd) {
            // reuse the training loader, then dump vectors instead of fitting
            RunConfig cfg = opt.cfg;
            const Image taper = gaussian_taper(cfg.attr.patch_side);
            std::vector<FeatureVector> fvs;
            std::vector<int> labels;
            std::vector<std::string> dirs;
            for (const auto& e : fs::directory_iterator(feat_dataset))
                if (e.is_directory()) dirs.push_back(e.path().filename().string());
            std::sort(dirs.begin(), dirs.end());
            for (size_t cls = 0; cls < dirs.size(); ++cls) {
                std::vector<fs::path> files;
                for (const auto& e : fs::directory_iterator(fs::path(feat_dataset) / dirs[cls]))
                    if (e.is_regular_file()) files.push_back(e.path());
                std::sort(files.begin(), files.end());
                for (const auto& f : files) {
                    Image img = read_section(f.string());
                    if (img.rows() != cfg.attr.patch_side || img.cols() != cfg.attr.patch_side)
                        throw FormatError("patch of wrong size: " + f.string());
                    fvs.push_back(attribute_features(Image(img.cwiseProduct(taper)), cfg.attr));
                    labels.push_back(static_cast<int>(cls));
                }
            }
            write_features_csv(fvs, labels, feat_out);
            std::cout << fvs.size() << " feature rows written to " << feat_out << "\n";
        }
    } catch (const IoError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const FormatError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const TrainingError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const ConfigError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const ArgumentError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 0;
}
