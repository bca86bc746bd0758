// Single-binary workflow driver: dataset synthesis, correlation building,
// training with the rectification loss, evaluation, and debugging helpers.
//
// Exit codes: 0 success, 1 check failure, 2 input/validation error,
// 3 numerical abort during training.

#include <charconv>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "ocrect/correlation.hpp"
#include "ocrect/gradcheck.hpp"
#include "ocrect/metrics.hpp"
#include "ocrect/model.hpp"
#include "ocrect/pgm_io.hpp"
#include "ocrect/rectification.hpp"
#include "ocrect/seg_loss.hpp"
#include "ocrect/synthetic.hpp"
#include "ocrect/tags_io.hpp"
#include "ocrect/train.hpp"
#include "ocrect/types.hpp"

namespace fs = std::filesystem;
using namespace ocrect;

namespace {

std::string fmt_g(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

int parse_int_strict(const std::string& s, const std::string& what) {
    int v = 0;
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc{} || ptr != s.data() + s.size()) {
        throw ValidationError(what + ": not an integer: '" + s + "'");
    }
    return v;
}

double parse_double_strict(const std::string& s, const std::string& what) {
    double v = 0.0;
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc{} || ptr != s.data() + s.size() || !std::isfinite(v)) {
        throw ValidationError(what + ": not a finite number: '" + s + "'");
    }
    return v;
}

bool parse_bool_strict(const std::string& s, const std::string& what) {
    if (s == "true" || s == "1") return true;
    if (s == "false" || s == "0") return false;
    throw ValidationError(what + ": expected true/false/1/0, got '" + s + "'");
}

SplitStrategy parse_split(const std::string& s) {
    if (s == "all") return SplitStrategy::kAll;
    if (s == "max") return SplitStrategy::kMax;
    if (s == "ada") return SplitStrategy::kAda;
    throw ValidationError("split: expected all|max|ada, got '" + s + "'");
}

PixelSelect parse_select(const std::string& s) {
    if (s == "none") return PixelSelect::kNone;
    if (s == "ic") return PixelSelect::kIcOnly;
    if (s == "oc") return PixelSelect::kOcOnly;
    if (s == "all") return PixelSelect::kAll;
    throw ValidationError("pixel_select: expected none|ic|oc|all, got '" + s + "'");
}

std::vector<double> parse_double_list(const std::string& s, const std::string& what) {
    std::vector<double> out;
    std::string cur;
    for (char c : s + ",") {
        if (c == ',') {
            if (!cur.empty()) out.push_back(parse_double_strict(cur, what));
            cur.clear();
        } else if (!std::isspace(static_cast<unsigned char>(c))) {
            cur.push_back(c);
        }
    }
    if (out.empty()) throw ValidationError(what + ": empty list");
    return out;
}

std::vector<int> parse_int_list(const std::string& s, const std::string& what) {
    std::vector<int> out;
    std::string cur;
    for (char c : s + ",") {
        if (c == ',') {
            if (!cur.empty()) out.push_back(parse_int_strict(cur, what));
            cur.clear();
        } else if (!std::isspace(static_cast<unsigned char>(c))) {
            cur.push_back(c);
        }
    }
    if (out.empty()) throw ValidationError(what + ": empty list");
    return out;
}

// --- train configuration: defaults < config file < explicit flags ---------

void apply_config_line(TrainConfig& cfg, const std::string& key, const std::string& value) {
    if (key == "epochs") cfg.epochs = parse_int_strict(value, key);
    else if (key == "batch_size") cfg.batch_size = parse_int_strict(value, key);
    else if (key == "learning_rate") cfg.learning_rate = parse_double_strict(value, key);
    else if (key == "momentum") cfg.momentum = parse_double_strict(value, key);
    else if (key == "weight_decay") cfg.weight_decay = parse_double_strict(value, key);
    else if (key == "lr_decay_gamma") cfg.lr_decay_gamma = parse_double_strict(value, key);
    else if (key == "seed") cfg.seed = static_cast<std::uint64_t>(parse_int_strict(value, key));
    else if (key == "train_count") cfg.train_count = parse_int_strict(value, key);
    else if (key == "ocr_enabled") cfg.ocr_enabled = parse_bool_strict(value, key);
    else if (key == "ocr_warmup_epochs") cfg.ocr_warmup_epochs = parse_int_strict(value, key);
    else if (key == "average_tail_epochs") cfg.average_tail_epochs = parse_int_strict(value, key);
    else if (key == "alpha") cfg.ocr.alpha = parse_double_strict(value, key);
    else if (key == "delta") cfg.ocr.delta = parse_double_strict(value, key);
    else if (key == "t") cfg.ocr.t = parse_double_strict(value, key);
    else if (key == "split") cfg.ocr.split = parse_split(value);
    else if (key == "pixel_select") cfg.ocr.pixel_select = parse_select(value);
    else throw ValidationError("unknown config key '" + key + "'");
}

void load_config_file(TrainConfig& cfg, const fs::path& path) {
    std::ifstream in(path);
    if (!in) throw ValidationError("cannot open config file: " + path.string());
    std::string line;
    long line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.resize(hash);
        const auto first = line.find_first_not_of(" \t\r");
        if (first == std::string::npos) continue;
        const auto last = line.find_last_not_of(" \t\r");
        line = line.substr(first, last - first + 1);
        const auto eq = line.find('=');
        if (eq == std::string::npos) {
            throw ValidationError(path.string() + ":" + std::to_string(line_no) +
                                  ": expected key=value");
        }
        auto trim = [](std::string s) {
            const auto b = s.find_first_not_of(" \t");
            const auto e = s.find_last_not_of(" \t");
            return b == std::string::npos ? std::string() : s.substr(b, e - b + 1);
        };
        try {
            apply_config_line(cfg, trim(line.substr(0, eq)), trim(line.substr(eq + 1)));
        } catch (const ValidationError& e) {
            throw ValidationError(path.string() + ":" + std::to_string(line_no) + ": " + e.what());
        }
    }
}

// --- subcommand option blocks ----------------------------------------------

struct BuildCorrArgs {
    std::string tags_path;
    int classes = 0;
    std::string out_path;
    std::string normalized_out;
};

struct SynthGenArgs {
    SynthConfig cfg;
    std::string out_dir;
};

struct TrainArgs {
    std::string data_dir;
    std::string config_path;
    std::string model_out;
    std::string log_out;
    bool no_ocr = false;
    // flag overrides arrive as strings so "given vs default" is unambiguous
    std::map<std::string, std::string> overrides;
};

struct EvalArgs {
    std::string pred_dir, gt_dir, tags_path, report_path;
    int classes = 0;
};

struct AuditArgs {
    std::string pred_dir, tags_path, report_path;
    int classes = 0;
};

struct GradcheckArgs {
    GradCheckConfig cfg;
    bool perturb = false;
};

struct LossArgs {
    std::string logits, tags, corr_path;
    double delta = 2.0;
    double t = 0.2;
    std::string split = "ada";
};

std::vector<MaskMap> read_mask_dir(const fs::path& dir, const std::vector<TagSet>& tag_sets,
                                   const LabelSpace& ls) {
    std::vector<MaskMap> masks;
    masks.reserve(tag_sets.size());
    for (const TagSet& ts : tag_sets) {
        masks.push_back(read_mask(dir / (ts.image_id + ".pgm"), ls));
    }
    return masks;
}

void write_text_file(const fs::path& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw ValidationError("cannot open for writing: " + path.string());
    out << content;
    if (!out) throw ValidationError("write failed: " + path.string());
}

// --- subcommand implementations ---------------------------------------------

int run_build_corr(const BuildCorrArgs& args) {
    const LabelSpace ls(args.classes);
    const std::vector<TagSet> tag_sets = read_tags(args.tags_path, ls);
    const CorrelationMatrix m = build_correlation(tag_sets, ls);
    write_correlation(m, args.out_path);
    if (!args.normalized_out.empty()) {
        write_correlation_values(normalize_rows(m), m.num_classes, args.normalized_out);
    }
    std::cout << "built correlation matrix over " << m.num_images << " images, "
              << m.num_classes << " classes -> " << args.out_path << "\n";
    return 0;
}

int run_synth_gen(const SynthGenArgs& args) {
    SynthStats stats;
    const std::vector<SyntheticSample> samples = generate_synthetic(args.cfg, &stats);
    write_dataset(samples, args.cfg, args.out_dir);

    long oc_seeding = 0;
    for (const SyntheticSample& s : samples) {
        for (std::uint8_t v : s.pseudo_mask.values) {
            if (v != 0 && v != kIgnoreLabel && !s.tags.contains(v)) {
                ++oc_seeding;
                break;
            }
        }
    }
    std::cout << "wrote " << samples.size() << " images to " << args.out_dir << " (C="
              << args.cfg.classes << ", F=" << args.cfg.feature_dim << ", " << args.cfg.width
              << "x" << args.cfg.height << ", noise_rate=" << fmt_g(args.cfg.noise_rate) << ")\n";
    std::cout << "regions: " << stats.total_regions << ", relabeled: " << stats.relabeled_regions
              << ", images with out-of-tag pseudo labels: " << oc_seeding << "\n";
    return 0;
}

int run_train(const TrainArgs& args) {
    TrainConfig cfg;
    if (!args.config_path.empty()) load_config_file(cfg, args.config_path);
    for (const auto& [key, value] : args.overrides) {
        apply_config_line(cfg, key, value);
    }
    if (args.no_ocr) cfg.ocr_enabled = false;

    const SynthDataset ds = load_dataset(args.data_dir);
    const LabelSpace ls(ds.classes);
    const int total = static_cast<int>(ds.samples.size());
    int train_count = cfg.train_count > 0 ? cfg.train_count : (total * 2) / 3;
    train_count = std::max(1, std::min(train_count, total));

    std::vector<SyntheticSample> train_set(ds.samples.begin(), ds.samples.begin() + train_count);
    std::vector<SyntheticSample> eval_set(ds.samples.begin() + train_count, ds.samples.end());
    std::vector<TagSet> corpus;
    corpus.reserve(train_set.size());
    for (const SyntheticSample& s : train_set) corpus.push_back(s.tags);

    const TrainResult result = train_model(train_set, eval_set, corpus, ls, cfg);

    save_model(result.model, args.model_out);
    std::string log_text;
    for (const EpochRecord& rec : result.log) log_text += epoch_record_json(rec) + "\n";
    write_text_file(args.log_out, log_text);

    const EpochRecord& last = result.log.back();
    std::cout << "trained " << cfg.epochs << " epochs on " << train_set.size() << " images ("
              << eval_set.size() << " held out)\n";
    std::cout << "final: l_seg=" << fmt_g(last.l_seg) << " l_rec=" << fmt_g(last.l_rec)
              << " eval_miou=" << fmt_g(last.eval_miou)
              << " eval_oc_image_error_rate=" << fmt_g(last.eval_oc_image_error_rate) << "\n";
    std::cout << "model -> " << args.model_out << "\nlog   -> " << args.log_out << "\n";
    return 0;
}

nlohmann::ordered_json report_to_json(const EvalReport& report) {
    nlohmann::ordered_json j;
    j["num_classes"] = report.num_classes;
    j["num_images"] = report.num_images;
    j["miou"] = report.miou;
    j["oc_image_error_rate"] = report.oc_image_error_rate;
    j["oc_pixel_fraction"] = report.oc_pixel_fraction;
    nlohmann::ordered_json ious = nlohmann::ordered_json::array();
    for (double v : report.per_class_iou) {
        if (std::isnan(v)) {
            ious.push_back(nullptr);
        } else {
            ious.push_back(v);
        }
    }
    j["per_class_iou"] = std::move(ious);
    nlohmann::ordered_json conf = nlohmann::ordered_json::array();
    for (int g = 0; g < report.num_classes; ++g) {
        nlohmann::ordered_json row = nlohmann::ordered_json::array();
        for (int p = 0; p < report.num_classes; ++p) {
            row.push_back(report.confusion[static_cast<std::size_t>(g) * report.num_classes + p]);
        }
        conf.push_back(std::move(row));
    }
    j["confusion"] = std::move(conf);
    return j;
}

int run_eval(const EvalArgs& args) {
    const LabelSpace ls(args.classes);
    const std::vector<TagSet> tag_sets = read_tags(args.tags_path, ls);
    const std::vector<MaskMap> preds = read_mask_dir(args.pred_dir, tag_sets, ls);
    const std::vector<MaskMap> gts = read_mask_dir(args.gt_dir, tag_sets, ls);
    const EvalReport report = full_evaluate(preds, gts, tag_sets, ls);

    write_text_file(args.report_path, report_to_json(report).dump(2) + "\n");

    std::cout << "images:              " << report.num_images << "\n";
    std::cout << "mIoU:                " << fmt_g(report.miou) << "\n";
    std::cout << "OC image error rate: " << fmt_g(report.oc_image_error_rate) << "\n";
    std::cout << "OC pixel fraction:   " << fmt_g(report.oc_pixel_fraction) << "\n";
    std::cout << "per-class IoU:\n";
    for (int c = 0; c < report.num_classes; ++c) {
        std::cout << "  class " << c << ": ";
        if (std::isnan(report.per_class_iou[c])) {
            std::cout << "undefined\n";
        } else {
            std::cout << fmt_g(report.per_class_iou[c]) << "\n";
        }
    }
    std::cout << "report -> " << args.report_path << "\n";
    return 0;
}

int run_audit(const AuditArgs& args) {
    const LabelSpace ls(args.classes);
    const std::vector<TagSet> tag_sets = read_tags(args.tags_path, ls);
    const std::vector<MaskMap> preds = read_mask_dir(args.pred_dir, tag_sets, ls);
    const AuditReport report = audit_predictions(preds, tag_sets, ls);

    if (report.findings.empty()) {
        std::cout << "no out-of-candidate pixels found\n";
    }
    for (const AuditFinding& f : report.findings) {
        std::cout << f.image_id << ": " << f.oc_pixels << " OC pixels (";
        for (std::size_t i = 0; i < f.class_counts.size(); ++i) {
            if (i) std::cout << ", ";
            std::cout << "class " << f.class_counts[i].first << ": " << f.class_counts[i].second;
        }
        std::cout << ")\n";
    }
    std::cout << "images audited:     " << report.total_images << "\n";
    std::cout << "images with errors: " << report.images_with_errors << "\n";
    std::cout << "OC pixels:          " << report.total_oc_pixels << " / " << report.total_pixels
              << "\n";

    if (!args.report_path.empty()) {
        nlohmann::ordered_json j;
        j["num_images"] = report.total_images;
        j["images_with_errors"] = report.images_with_errors;
        j["total_oc_pixels"] = report.total_oc_pixels;
        j["total_pixels"] = report.total_pixels;
        nlohmann::ordered_json findings = nlohmann::ordered_json::array();
        for (const AuditFinding& f : report.findings) {
            nlohmann::ordered_json jf;
            jf["id"] = f.image_id;
            jf["oc_pixels"] = f.oc_pixels;
            nlohmann::ordered_json classes = nlohmann::ordered_json::array();
            for (const auto& [cls, cnt] : f.class_counts) {
                classes.push_back({{"class", cls}, {"pixels", cnt}});
            }
            jf["classes"] = std::move(classes);
            findings.push_back(std::move(jf));
        }
        j["findings"] = std::move(findings);
        write_text_file(args.report_path, j.dump(2) + "\n");
    }
    return 0;
}

int run_gradcheck_cmd(const GradcheckArgs& args) {
    GradCheckConfig cfg = args.cfg;
    if (args.perturb) cfg.perturbation = 1e-2;
    const GradCheckReport report = run_gradcheck(cfg);

    std::printf("rect_loss_pixel : max rel err %.3e over %d pixels\n", report.max_rel_err_rect,
                report.rect_trials);
    std::printf("seg_ce_loss     : max rel err %.3e over %d maps\n", report.max_rel_err_seg,
                report.seg_trials);
    std::printf("combined_loss   : max rel err %.3e over %d maps (%d boundary coords skipped)\n",
                report.max_rel_err_combined, report.combined_trials, report.skipped_coords);
    if (report.pass(cfg.tolerance)) {
        std::printf("gradcheck PASSED (tolerance %.1e)\n", cfg.tolerance);
        return 0;
    }
    std::printf("gradcheck FAILED (tolerance %.1e)\n", cfg.tolerance);
    return 1;
}

int run_loss(const LossArgs& args) {
    const std::vector<double> logits = parse_double_list(args.logits, "--logits");
    if (logits.size() < 2) {
        throw ValidationError("--logits needs at least background plus one class");
    }
    const LabelSpace ls(static_cast<int>(logits.size()) - 1);
    const TagSet tags = make_tag_set("cli", parse_int_list(args.tags, "--tags"), ls);
    const CorrelationMatrix corr = read_correlation(args.corr_path);

    OcrConfig cfg;
    cfg.delta = args.delta;
    cfg.t = args.t;
    cfg.split = parse_split(args.split);

    const bool moc = oc_mask(logits, tags);
    const GroupSplit split = split_groups(logits, tags, corr, cfg);
    const PixelLossResult res = rect_loss_pixel(logits, split, cfg.delta);

    auto print_set = [](const char* name, const std::vector<int>& v) {
        std::cout << name << "[";
        for (std::size_t i = 0; i < v.size(); ++i) std::cout << (i ? ", " : "") << v[i];
        std::cout << "]\n";
    };
    std::cout << "m_oc:   " << (moc ? 1 : 0) << "\n";
    std::cout << "anchor: " << split.anchor << "\n";
    print_set("ic:     ", split.ic);
    print_set("oc:     ", split.oc);
    std::cout << "loss:   " << fmt_g(res.value) << "\n";
    std::cout << "grad:   [";
    for (std::size_t i = 0; i < res.grad.size(); ++i) {
        std::cout << (i ? ", " : "") << fmt_g(res.grad[i]);
    }
    std::cout << "]\n";
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"out-of-candidate rectification toolkit"};
    app.name("ocrect");
    app.require_subcommand(1);

    BuildCorrArgs corr_args;
    auto* corr_cmd = app.add_subcommand("build-corr",
                                        "build the class co-occurrence matrix from a tag corpus");
    corr_cmd->add_option("--tags", corr_args.tags_path, "JSON-lines tag file")->required();
    corr_cmd->add_option("--classes", corr_args.classes, "number of foreground classes C")
        ->required();
    corr_cmd->add_option("--out", corr_args.out_path, "output CSV path")->required();
    corr_cmd->add_option("--normalized-out", corr_args.normalized_out,
                         "also write the row min-max normalized matrix (reporting only)");

    SynthGenArgs synth_args;
    auto* synth_cmd = app.add_subcommand("synth-gen", "generate a synthetic noisy-label dataset");
    synth_cmd->add_option("--seed", synth_args.cfg.seed, "random seed")->required();
    synth_cmd->add_option("--images", synth_args.cfg.num_images, "number of images")->required();
    synth_cmd->add_option("--classes", synth_args.cfg.classes, "number of foreground classes C")
        ->required();
    synth_cmd->add_option("--out-dir", synth_args.out_dir, "output dataset directory")->required();
    synth_cmd->add_option("--noise-rate", synth_args.cfg.noise_rate,
                          "fraction of regions relabeled to a wrong class (default 0.3)");
    synth_cmd->add_option("--features", synth_args.cfg.feature_dim,
                          "feature channels per pixel (default 16)");
    synth_cmd->add_option("--height", synth_args.cfg.height, "image height (default 48)");
    synth_cmd->add_option("--width", synth_args.cfg.width, "image width (default 48)");

    TrainArgs train_args;
    std::map<std::string, std::string> train_flag_values;
    auto* train_cmd = app.add_subcommand("train", "train the per-pixel linear model");
    train_cmd->add_option("--data", train_args.data_dir, "dataset directory from synth-gen")
        ->required();
    train_cmd->add_option("--config", train_args.config_path,
                          "key=value config file ('#' comments); flags override it");
    train_cmd->add_option("--out", train_args.model_out, "output model path")->required();
    train_cmd->add_option("--log", train_args.log_out, "output JSON-lines epoch log")->required();
    train_cmd->add_flag("--no-ocr", train_args.no_ocr,
                        "disable rectification (sets pixel_select=none)");
    std::map<std::string, CLI::Option*> train_flag_opts;
    for (const char* key :
         {"epochs", "batch_size", "learning_rate", "momentum", "weight_decay", "lr_decay_gamma",
          "seed", "train_count", "ocr_enabled", "ocr_warmup_epochs", "average_tail_epochs",
          "alpha", "delta", "t", "split", "pixel_select"}) {
        std::string flag = "--" + std::string(key);
        for (char& c : flag) {
            if (c == '_') c = '-';
        }
        train_flag_opts[key] = train_cmd->add_option(flag, train_flag_values[key],
                                                     "override config key " + std::string(key));
    }

    EvalArgs eval_args;
    auto* eval_cmd = app.add_subcommand("eval", "evaluate prediction masks against ground truth");
    eval_cmd->add_option("--pred-dir", eval_args.pred_dir, "directory of <id>.pgm predictions")
        ->required();
    eval_cmd->add_option("--gt-dir", eval_args.gt_dir, "directory of <id>.pgm ground truth")
        ->required();
    eval_cmd->add_option("--tags", eval_args.tags_path, "JSON-lines tag file")->required();
    eval_cmd->add_option("--classes", eval_args.classes, "number of foreground classes C")
        ->required();
    eval_cmd->add_option("--report", eval_args.report_path, "output JSON report path")->required();

    AuditArgs audit_args;
    auto* audit_cmd =
        app.add_subcommand("audit", "list out-of-candidate pixels in prediction masks");
    audit_cmd->add_option("--pred-dir", audit_args.pred_dir, "directory of <id>.pgm predictions")
        ->required();
    audit_cmd->add_option("--tags", audit_args.tags_path, "JSON-lines tag file")->required();
    audit_cmd->add_option("--classes", audit_args.classes, "number of foreground classes C")
        ->required();
    audit_cmd->add_option("--report", audit_args.report_path, "optional JSON report path");

    GradcheckArgs gc_args;
    auto* gc_cmd = app.add_subcommand(
        "gradcheck", "finite-difference validation of the analytic loss gradients");
    gc_cmd->add_option("--trials", gc_args.cfg.trials, "random pixels to check (default 200)");
    gc_cmd->add_option("--classes", gc_args.cfg.max_classes,
                       "largest foreground class count drawn (default 10)");
    gc_cmd->add_option("--seed", gc_args.cfg.seed, "random seed (default 1234)");
    gc_cmd->add_flag("--perturb", gc_args.perturb,
                     "self-test hook: corrupt one analytic component so the check must fail");

    LossArgs loss_args;
    auto* loss_cmd =
        app.add_subcommand("loss", "single-pixel rectification loss calculator for debugging");
    loss_cmd->add_option("--logits", loss_args.logits,
                         "comma-separated logits, background first (length C+1)")
        ->required();
    loss_cmd->add_option("--tags", loss_args.tags, "comma-separated candidate tags")->required();
    loss_cmd->add_option("--corr", loss_args.corr_path, "correlation matrix CSV")->required();
    loss_cmd->add_option("--delta", loss_args.delta, "ranking margin (default 2)");
    loss_cmd->add_option("--t", loss_args.t, "adaptive filter threshold (default 0.2)");
    loss_cmd->add_option("--split", loss_args.split, "group split strategy all|max|ada");

    try {
        app.parse(argc, argv);

        if (corr_cmd->parsed()) return run_build_corr(corr_args);
        if (synth_cmd->parsed()) return run_synth_gen(synth_args);
        if (train_cmd->parsed()) {
            for (const auto& [key, opt] : train_flag_opts) {
                if (opt->count() > 0) train_args.overrides[key] = train_flag_values[key];
            }
            return run_train(train_args);
        }
        if (eval_cmd->parsed()) return run_eval(eval_args);
        if (audit_cmd->parsed()) return run_audit(audit_args);
        if (gc_cmd->parsed()) return run_gradcheck_cmd(gc_args);
        if (loss_cmd->parsed()) return run_loss(loss_args);
        return 2;
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    } catch (const TrainAbortError& e) {
        std::cerr << "numerical abort: " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
}
