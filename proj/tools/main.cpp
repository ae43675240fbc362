#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "eqs/classifier.hpp"
#include "eqs/config.hpp"
#include "eqs/detection.hpp"
#include "eqs/discovery.hpp"
#include "eqs/io.hpp"
#include "eqs/manifest.hpp"
#include "eqs/parallel.hpp"
#include "eqs/preprocess.hpp"
#include "eqs/sweep.hpp"
#include "eqs/synth.hpp"
#include "eqs/version.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
    return std::chrono::duration<double>(Clock::now() - start).count();
}

eqs::Config load_config(const std::string& path) {
    if (path.empty()) return eqs::Config();
    return eqs::Config::parse_file(path);
}

// Output files may name directories that do not exist yet.
std::string out_file(const std::string& path) {
    fs::path parent = fs::path(path).parent_path();
    if (!parent.empty()) fs::create_directories(parent);
    return path;
}

eqs::RunManifest base_manifest(const std::string& subcommand, const eqs::Config& cfg,
                               unsigned threads) {
    eqs::RunManifest m;
    m.subcommand = subcommand;
    m.tool_version = eqs::kVersion;
    m.config = cfg.sections();
    m.threads = threads;
    return m;
}

std::vector<double> parse_thresholds(const std::string& text) {
    std::vector<double> out;
    if (text.find(':') != std::string::npos) {
        double start = 0, stop = 0, step = 0;
        if (std::sscanf(text.c_str(), "%lf:%lf:%lf", &start, &stop, &step) != 3 ||
            !(step > 0))
            throw eqs::UsageError("bad threshold range (want start:stop:step): " + text);
        for (int i = 0;; ++i) {
            double v = start + i * step;
            if (v > stop + step * 1e-9) break;
            out.push_back(v);
        }
    } else {
        std::istringstream in(text);
        std::string item;
        while (std::getline(in, item, ',')) {
            if (item.empty()) continue;
            try {
                out.push_back(std::stod(item));
            } catch (const std::exception&) {
                throw eqs::UsageError("bad threshold list element: " + item);
            }
        }
    }
    if (out.empty())
        throw eqs::UsageError("threshold list is empty");
    return out;
}

std::vector<double> histogram_edges_for(double decision_threshold) {
    std::vector<double> edges = eqs::default_histogram_edges();
    if (decision_threshold == edges.front()) return edges;
    std::vector<double> out{decision_threshold};
    for (double e : edges)
        if (e > decision_threshold) out.push_back(e);
    if (out.size() < 2) out.push_back(1.0);
    return out;
}

// ---- subcommand options ----------------------------------------------------

struct SynthOpts {
    std::string config_path;
    std::string out_path;
    std::string truth_path;
    std::string learning_set_dir;
    std::size_t n_events = 52;
    std::size_t n_others = 52;
    double split_frac = 0.0; // 0 = no split
    bool csv = false;
    // overrides
    double duration_seconds = -1.0;
    std::string event_times;
    double event_rate = -1.0;
    double noise_sigma = -1.0;
    std::int64_t seed = -1;
};

struct PreprocessOpts {
    std::string config_path;
    std::string in_path;        // record file or directory of segments
    std::string labeled_in;     // labeled set; per-window conditioning
    std::string out_dir;
    bool csv = false;
};

struct DiscoverOpts {
    std::string config_path;
    std::string train_dir;
    std::string out_path;
    std::int64_t min_len = -1, max_len = -1, max_shapelets = -1;
    std::int64_t length_step = -1, offset_step = -1;
    double quality_threshold = -1.0;
};

struct SweepOpts {
    std::string config_path;
    std::string train_dir;
    std::string test_dir;
    std::string out_path;
    std::string thresholds = "0.05:0.50:0.05";
    std::int64_t length_step = -1, offset_step = -1;
    std::int64_t min_len = -1, max_len = -1;
};

struct TrainOpts {
    std::string config_path;
    std::string shapelets_path;
    std::string train_dir;
    std::string out_path;
    std::int64_t seed = -1;
    std::int64_t n_trees = -1;
};

struct DetectOpts {
    std::string config_path;
    std::string model_path;
    std::string data_dir;
    std::string catalog_path;
    std::string out_path;
    std::string report_path;
    double tolerance = -1.0;
    bool truth_complete = false;
    bool emit_plot_data = false;
};

struct EvaluateOpts {
    std::string config_path;
    std::string model_path;
    std::string data_dir;
    std::string out_path;
};

eqs::DiscoveryConfig discovery_from(const eqs::Config& cfg, const DiscoverOpts& o,
                                    unsigned threads) {
    eqs::DiscoveryConfig d = eqs::discovery_config(cfg);
    if (o.min_len >= 0) d.min_len = static_cast<std::size_t>(o.min_len);
    if (o.max_len >= 0) d.max_len = static_cast<std::size_t>(o.max_len);
    if (o.max_shapelets >= 0) d.max_shapelets = static_cast<std::size_t>(o.max_shapelets);
    if (o.length_step >= 0) d.length_step = static_cast<std::size_t>(o.length_step);
    if (o.offset_step >= 0) d.offset_step = static_cast<std::size_t>(o.offset_step);
    if (o.quality_threshold >= 0) d.quality_threshold = o.quality_threshold;
    d.threads = threads;
    d.validate();
    return d;
}

// ---- subcommands -----------------------------------------------------------

int run_synth(const SynthOpts& o, unsigned threads) {
    eqs::Config cfg = load_config(o.config_path);
    eqs::SynthConfig sc = eqs::synth_config(cfg);
    if (o.duration_seconds > 0) sc.duration_seconds = o.duration_seconds;
    if (!o.event_times.empty()) {
        sc.event_times.clear();
        std::istringstream in(o.event_times);
        std::string item;
        while (std::getline(in, item, ','))
            if (!item.empty()) sc.event_times.push_back(std::stod(item));
    }
    if (o.event_rate >= 0) sc.event_rate_per_hour = o.event_rate;
    if (o.noise_sigma >= 0) sc.noise_sigma = o.noise_sigma;
    if (o.seed >= 0) sc.seed = static_cast<std::uint64_t>(o.seed);
    sc.validate();

    eqs::RunManifest manifest = base_manifest("synth", cfg, threads);
    manifest.seeds["synth"] = sc.seed;
    auto started = Clock::now();

    if (!o.learning_set_dir.empty()) {
        auto [set, truth] = eqs::gen_learning_set(sc, o.n_events, o.n_others);
        if (o.split_frac > 0.0) {
            auto [train, test] = eqs::split_learning_set(set, o.split_frac, sc.seed);
            eqs::write_labeled_dir((fs::path(o.learning_set_dir) / "train").string(),
                                   train, o.csv);
            eqs::write_labeled_dir((fs::path(o.learning_set_dir) / "test").string(),
                                   test, o.csv);
        } else {
            eqs::write_labeled_dir(o.learning_set_dir, set, o.csv);
        }
        if (!o.truth_path.empty()) eqs::write_truth_csv(out_file(o.truth_path), truth);
        manifest.outputs["learning_set"] = o.learning_set_dir;
        if (!o.truth_path.empty()) manifest.outputs["truth"] = o.truth_path;
        manifest.timings_seconds["synth"] = seconds_since(started);
        eqs::write_manifest(
            (fs::path(o.learning_set_dir) / "synth.manifest.json").string(), manifest);
        return 0;
    }

    if (o.out_path.empty())
        throw eqs::UsageError("synth: need --out (or --learning-set)");
    auto [record, truth] = eqs::gen_record(sc);
    eqs::write_waveform(out_file(o.out_path), record);
    if (!o.truth_path.empty()) eqs::write_truth_csv(out_file(o.truth_path), truth);
    manifest.outputs["record"] = o.out_path;
    if (!o.truth_path.empty()) manifest.outputs["truth"] = o.truth_path;
    manifest.timings_seconds["synth"] = seconds_since(started);
    eqs::write_manifest(eqs::manifest_path_for(o.out_path), manifest);
    return 0;
}

int run_preprocess(const PreprocessOpts& o, unsigned threads) {
    eqs::Config cfg = load_config(o.config_path);
    eqs::PreprocessConfig pc = eqs::preprocess_config(cfg);
    eqs::RunManifest manifest = base_manifest("preprocess", cfg, threads);
    auto started = Clock::now();
    fs::create_directories(o.out_dir);

    if (!o.labeled_in.empty()) {
        // Condition each labeled window independently; no stitching across
        // windows, no re-segmentation.
        eqs::LearningSet raw = eqs::read_labeled_dir(o.labeled_in);
        std::vector<eqs::LabeledWindow> processed(raw.size());
        eqs::parallel_for(raw.size(), threads, [&](std::size_t i) {
            eqs::TimeSeries filtered = eqs::bandpass(raw[i].series, pc);
            processed[i] = {eqs::decimate(filtered, pc.decimate_to_hz), raw[i].label};
        });
        eqs::LearningSet out(std::move(processed));
        eqs::write_labeled_dir(o.out_dir, out, o.csv);
        manifest.inputs["labeled_in"] = o.labeled_in;
        manifest.outputs["out_dir"] = o.out_dir;
        manifest.timings_seconds["preprocess"] = seconds_since(started);
        eqs::write_manifest((fs::path(o.out_dir) / "preprocess.manifest.json").string(),
                            manifest);
        return 0;
    }

    if (o.in_path.empty())
        throw eqs::UsageError("preprocess: need --in or --labeled-in");
    std::vector<eqs::TimeSeries> segments;
    if (fs::is_directory(o.in_path)) {
        segments = eqs::read_waveform_dir(o.in_path);
        std::sort(segments.begin(), segments.end(),
                  [](const eqs::TimeSeries& a, const eqs::TimeSeries& b) {
                      return a.start_time < b.start_time;
                  });
    } else {
        segments.push_back(eqs::read_waveform(o.in_path));
    }

    auto [windows, gaps] = eqs::run_pipeline(segments, pc);
    eqs::write_waveform_dir(o.out_dir, windows, o.csv);

    json gap_doc{{"gap_count", gaps.gap_count},
                 {"longest_gap_seconds", gaps.longest_gap_seconds},
                 {"total_dropped_seconds", gaps.total_dropped_seconds},
                 {"window_count", windows.size()},
                 {"window_samples", pc.window_samples()}};
    std::ofstream gap_out(fs::path(o.out_dir) / "gaps.json");
    gap_out << gap_doc.dump(2) << "\n";

    manifest.inputs["in"] = o.in_path;
    manifest.outputs["out_dir"] = o.out_dir;
    manifest.timings_seconds["preprocess"] = seconds_since(started);
    eqs::write_manifest((fs::path(o.out_dir) / "preprocess.manifest.json").string(),
                        manifest);
    std::cout << "windows: " << windows.size() << ", gaps: " << gaps.gap_count << "\n";
    return 0;
}

int run_discover(const DiscoverOpts& o, unsigned threads) {
    eqs::Config cfg = load_config(o.config_path);
    eqs::DiscoveryConfig dc = discovery_from(cfg, o, threads);

    auto started = Clock::now();
    const std::string out_path = out_file(o.out_path);
    eqs::LearningSet set = eqs::read_labeled_dir(o.train_dir);
    std::vector<eqs::Shapelet> shapelets = eqs::discover(set, dc);

    eqs::RunManifest manifest = base_manifest("discover", cfg, threads);
    manifest.inputs["train"] = o.train_dir;
    manifest.outputs["shapelets"] = o.out_path;
    manifest.timings_seconds["discover"] = seconds_since(started);
    // The candidate strides used are part of the run's provenance.
    manifest.config["discovery"]["min_len"] = std::to_string(dc.min_len);
    manifest.config["discovery"]["max_len"] = std::to_string(dc.max_len);
    manifest.config["discovery"]["length_step"] = std::to_string(dc.length_step);
    manifest.config["discovery"]["offset_step"] = std::to_string(dc.offset_step);
    manifest.config["discovery"]["quality_threshold"] = std::to_string(dc.quality_threshold);
    std::string manifest_path = eqs::manifest_path_for(out_path);
    eqs::write_manifest(manifest_path, manifest);

    eqs::ShapeletsDoc doc;
    doc.shapelets = std::move(shapelets);
    doc.config = dc;
    doc.window_len = set.window_len();
    doc.sample_rate_hz = set.sample_rate_hz();
    eqs::write_shapelets_json(out_path, doc, fs::path(manifest_path).filename().string());
    std::cout << "shapelets: " << doc.shapelets.size() << "\n";
    return 0;
}

int run_sweep(const SweepOpts& o, unsigned threads) {
    eqs::Config cfg = load_config(o.config_path);
    DiscoverOpts dov;
    dov.min_len = o.min_len;
    dov.max_len = o.max_len;
    dov.length_step = o.length_step;
    dov.offset_step = o.offset_step;
    eqs::DiscoveryConfig dc = discovery_from(cfg, dov, threads);
    eqs::ForestParams fp = eqs::forest_params(cfg);
    std::vector<double> thresholds = parse_thresholds(o.thresholds);

    auto started = Clock::now();
    eqs::LearningSet train = eqs::read_labeled_dir(o.train_dir);
    eqs::LearningSet test = eqs::read_labeled_dir(o.test_dir);
    std::vector<eqs::SweepRow> rows =
        eqs::ig_threshold_sweep(train, test, thresholds, dc, fp);
    eqs::write_sweep_csv(out_file(o.out_path), rows);

    eqs::RunManifest manifest = base_manifest("sweep", cfg, threads);
    manifest.inputs["train"] = o.train_dir;
    manifest.inputs["test"] = o.test_dir;
    manifest.outputs["sweep"] = o.out_path;
    manifest.seeds["forest"] = fp.seed;
    manifest.timings_seconds["sweep"] = seconds_since(started);
    eqs::write_manifest(eqs::manifest_path_for(o.out_path), manifest);
    return 0;
}

int run_train(const TrainOpts& o, unsigned threads) {
    eqs::Config cfg = load_config(o.config_path);
    eqs::ForestParams fp = eqs::forest_params(cfg);
    if (o.seed >= 0) fp.seed = static_cast<std::uint64_t>(o.seed);
    if (o.n_trees > 0) fp.n_trees = static_cast<std::size_t>(o.n_trees);
    fp.validate();

    auto started = Clock::now();
    const std::string out_path = out_file(o.out_path);
    eqs::ShapeletsDoc doc = eqs::read_shapelets_json(o.shapelets_path);
    eqs::LearningSet train = eqs::read_labeled_dir(o.train_dir);
    if (doc.shapelets.empty())
        throw eqs::DataError(o.shapelets_path + ": no shapelets to train on");

    eqs::FeatureSet fs_train = eqs::shapelet_transform_set(
        doc.shapelets, train, doc.config.znormalize, threads);
    eqs::Forest forest = eqs::fit_forest(fs_train.rows, fs_train.labels, fp, threads);
    forest.shapelets = doc.shapelets;
    forest.znormalize = doc.config.znormalize;

    eqs::RunManifest manifest = base_manifest("train", cfg, threads);
    manifest.inputs["shapelets"] = o.shapelets_path;
    manifest.inputs["train"] = o.train_dir;
    manifest.outputs["model"] = o.out_path;
    manifest.seeds["forest"] = fp.seed;
    manifest.timings_seconds["train"] = seconds_since(started);
    std::string manifest_path = eqs::manifest_path_for(out_path);
    eqs::write_manifest(manifest_path, manifest);

    eqs::write_model_json(out_path, forest, fs::path(manifest_path).filename().string());
    std::cout << "trees: " << forest.trees.size()
              << ", features: " << forest.n_features << "\n";
    return 0;
}

int run_detect(const DetectOpts& o, unsigned threads) {
    eqs::Config cfg = load_config(o.config_path);
    double tolerance = o.tolerance >= 0
                           ? o.tolerance
                           : cfg.get_double("detect", "catalog_tolerance_seconds", 0.0);
    bool truth_complete =
        o.truth_complete || cfg.get_bool("detect", "truth_complete", false);

    auto started = Clock::now();
    const std::string out_path = out_file(o.out_path);
    eqs::Forest model = eqs::read_model_json(o.model_path);
    std::vector<eqs::TimeSeries> windows = eqs::read_waveform_dir(o.data_dir);
    std::vector<eqs::Detection> detections = eqs::detect(windows, model, threads);

    std::vector<eqs::CatalogEvent> catalog;
    if (!o.catalog_path.empty())
        catalog = eqs::read_catalog_csv(o.catalog_path);
    eqs::CatalogMatch match = eqs::match_catalog(detections, catalog, tolerance);
    double runtime = seconds_since(started);

    std::vector<double> edges = histogram_edges_for(model.params.decision_threshold);
    eqs::DetectionReport report =
        eqs::build_report(match, catalog.size(), edges, runtime, truth_complete);

    eqs::RunManifest manifest = base_manifest("detect", cfg, threads);
    manifest.inputs["model"] = o.model_path;
    manifest.inputs["data"] = o.data_dir;
    if (!o.catalog_path.empty()) manifest.inputs["catalog"] = o.catalog_path;
    manifest.outputs["detections"] = o.out_path;
    if (!o.report_path.empty()) manifest.outputs["report"] = o.report_path;
    manifest.timings_seconds["detect"] = runtime;
    std::string manifest_path = eqs::manifest_path_for(out_path);
    eqs::write_manifest(manifest_path, manifest);

    eqs::write_detections_jsonl(out_path, match.detections);
    if (!o.report_path.empty())
        eqs::write_report_json(out_file(o.report_path), report,
                               fs::path(manifest_path).filename().string());
    if (o.emit_plot_data) {
        std::string hist_path =
            (fs::path(out_path).parent_path() /
             (fs::path(out_path).stem().string() + "_histogram.csv"))
                .string();
        eqs::write_histogram_csv(hist_path, report.histogram_edges,
                                 report.histogram_counts);
    }
    std::cout << "detections: " << report.total_detections
              << ", matched: " << report.catalog_matched
              << ", new: " << report.new_events << "\n";
    return 0;
}

int run_evaluate(const EvaluateOpts& o, unsigned threads) {
    eqs::Config cfg = load_config(o.config_path);
    auto started = Clock::now();
    const std::string out_path = out_file(o.out_path);
    eqs::Forest model = eqs::read_model_json(o.model_path);
    eqs::LearningSet data = eqs::read_labeled_dir(o.data_dir);
    eqs::EvalMetrics m = eqs::evaluate(model, data.windows(), threads);

    eqs::RunManifest manifest = base_manifest("evaluate", cfg, threads);
    manifest.inputs["model"] = o.model_path;
    manifest.inputs["data"] = o.data_dir;
    manifest.outputs["metrics"] = o.out_path;
    manifest.timings_seconds["evaluate"] = seconds_since(started);
    std::string manifest_path = eqs::manifest_path_for(out_path);
    eqs::write_manifest(manifest_path, manifest);

    json j{{"format", "eqshapelets.metrics"},
           {"version", 1},
           {"tp", m.tp},
           {"fp", m.fp},
           {"fn", m.fn},
           {"tn", m.tn},
           {"manifest", fs::path(manifest_path).filename().string()}};
    j["accuracy"] = m.accuracy ? json(*m.accuracy) : json();
    j["precision"] = m.precision ? json(*m.precision) : json();
    j["recall"] = m.recall ? json(*m.recall) : json();
    std::ofstream out(out_path);
    if (!out)
        throw eqs::DataError("cannot write " + out_path);
    out << j.dump(2) << "\n";
    std::cout << "accuracy: " << (m.accuracy ? std::to_string(*m.accuracy) : "n/a")
              << "\n";
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"EQShapelets: shapelet-based earthquake detection toolkit"};
    app.require_subcommand(1);
    unsigned threads = eqs::default_thread_count();
    app.add_option("--threads", threads, "worker threads (outputs do not depend on it)")
        ->capture_default_str();

    SynthOpts synth_opts;
    auto* synth = app.add_subcommand("synth", "generate a synthetic record or learning set");
    synth->add_option("--config", synth_opts.config_path, "config file");
    synth->add_option("--out", synth_opts.out_path, "output record (.bin or .csv)");
    synth->add_option("--truth", synth_opts.truth_path, "ground-truth catalog CSV");
    synth->add_option("--learning-set", synth_opts.learning_set_dir,
                      "write a labeled window set to this directory instead");
    synth->add_option("--events", synth_opts.n_events, "event windows in the learning set");
    synth->add_option("--others", synth_opts.n_others, "noise windows in the learning set");
    synth->add_option("--split", synth_opts.split_frac,
                      "train fraction; writes train/ and test/ subdirectories");
    synth->add_flag("--csv", synth_opts.csv, "write CSV instead of framed binary");
    synth->add_option("--duration-seconds", synth_opts.duration_seconds,
                      "override [synth] duration_seconds");
    synth->add_option("--event-times", synth_opts.event_times,
                      "override [synth] event_times (comma-separated seconds)");
    synth->add_option("--event-rate", synth_opts.event_rate,
                      "override [synth] event_rate_per_hour");
    synth->add_option("--noise-sigma", synth_opts.noise_sigma,
                      "override [synth] noise_sigma");
    synth->add_option("--seed", synth_opts.seed, "override [synth] seed");

    PreprocessOpts pre_opts;
    auto* preprocess =
        app.add_subcommand("preprocess", "stitch, bandpass, decimate and window a record");
    preprocess->add_option("--config", pre_opts.config_path, "config file");
    preprocess->add_option("--in", pre_opts.in_path, "record file or directory of segments");
    preprocess->add_option("--labeled-in", pre_opts.labeled_in,
                           "labeled window set; conditions each window in place");
    preprocess->add_option("--out-dir", pre_opts.out_dir, "output directory")->required();
    preprocess->add_flag("--csv", pre_opts.csv, "write CSV windows");

    DiscoverOpts disc_opts;
    auto* discover = app.add_subcommand("discover", "find discriminative shapelets");
    discover->add_option("--train", disc_opts.train_dir, "labeled training set")->required();
    discover->add_option("--config", disc_opts.config_path, "config file");
    discover->add_option("--out", disc_opts.out_path, "shapelets JSON")->required();
    discover->add_option("--min-len", disc_opts.min_len, "override [discovery] min_len");
    discover->add_option("--max-len", disc_opts.max_len, "override [discovery] max_len");
    discover->add_option("--max-shapelets", disc_opts.max_shapelets,
                         "override [discovery] max_shapelets");
    discover->add_option("--length-step", disc_opts.length_step,
                         "override [discovery] length_step");
    discover->add_option("--offset-step", disc_opts.offset_step,
                         "override [discovery] offset_step");
    discover->add_option("--quality-threshold", disc_opts.quality_threshold,
                         "override [discovery] quality_threshold");

    SweepOpts sweep_opts;
    auto* sweep = app.add_subcommand("sweep", "accuracy/count/runtime vs IG threshold");
    sweep->add_option("--train", sweep_opts.train_dir, "labeled training set")->required();
    sweep->add_option("--test", sweep_opts.test_dir, "labeled test set")->required();
    sweep->add_option("--config", sweep_opts.config_path, "config file");
    sweep->add_option("--out", sweep_opts.out_path, "sweep CSV")->required();
    sweep->add_option("--thresholds", sweep_opts.thresholds,
                      "comma list or start:stop:step")
        ->capture_default_str();
    sweep->add_option("--min-len", sweep_opts.min_len, "override [discovery] min_len");
    sweep->add_option("--max-len", sweep_opts.max_len, "override [discovery] max_len");
    sweep->add_option("--length-step", sweep_opts.length_step,
                      "override [discovery] length_step");
    sweep->add_option("--offset-step", sweep_opts.offset_step,
                      "override [discovery] offset_step");

    TrainOpts train_opts;
    auto* train = app.add_subcommand("train", "fit the random forest on shapelet features");
    train->add_option("--shapelets", train_opts.shapelets_path, "shapelets JSON")->required();
    train->add_option("--train", train_opts.train_dir, "labeled training set")->required();
    train->add_option("--config", train_opts.config_path, "config file");
    train->add_option("--out", train_opts.out_path, "model JSON")->required();
    train->add_option("--seed", train_opts.seed, "override [forest] seed");
    train->add_option("--n-trees", train_opts.n_trees, "override [forest] n_trees");

    DetectOpts detect_opts;
    auto* detect = app.add_subcommand("detect", "classify windows and match a catalog");
    detect->add_option("--model", detect_opts.model_path, "model JSON")->required();
    detect->add_option("--data", detect_opts.data_dir, "directory of windows")->required();
    detect->add_option("--catalog", detect_opts.catalog_path, "catalog CSV");
    detect->add_option("--config", detect_opts.config_path, "config file");
    detect->add_option("--out", detect_opts.out_path, "detections JSONL")->required();
    detect->add_option("--report", detect_opts.report_path, "report JSON");
    detect->add_option("--tolerance", detect_opts.tolerance,
                       "catalog match tolerance, seconds");
    detect->add_flag("--truth-complete", detect_opts.truth_complete,
                     "catalog is a complete ground truth; compute precision/recall");
    detect->add_flag("--emit-plot-data", detect_opts.emit_plot_data,
                     "also write the probability histogram CSV");

    EvaluateOpts eval_opts;
    auto* evaluate = app.add_subcommand("evaluate", "score a model on a labeled set");
    evaluate->add_option("--model", eval_opts.model_path, "model JSON")->required();
    evaluate->add_option("--data", eval_opts.data_dir, "labeled window set")->required();
    evaluate->add_option("--config", eval_opts.config_path, "config file");
    evaluate->add_option("--out", eval_opts.out_path, "metrics JSON")->required();

    try {
        app.parse(argc, argv);
        if (threads == 0) threads = 1;
        if (synth->parsed()) return run_synth(synth_opts, threads);
        if (preprocess->parsed()) return run_preprocess(pre_opts, threads);
        if (discover->parsed()) return run_discover(disc_opts, threads);
        if (sweep->parsed()) return run_sweep(sweep_opts, threads);
        if (train->parsed()) return run_train(train_opts, threads);
        if (detect->parsed()) return run_detect(detect_opts, threads);
        if (evaluate->parsed()) return run_evaluate(eval_opts, threads);
        throw eqs::UsageError("no subcommand given");
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e); // prints help, exits 0
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 1;
    } catch (const eqs::UsageError& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return 1;
    } catch (const eqs::DataError& e) {
        std::cerr << "data error: " << e.what() << "\n";
        return 2;
    } catch (const std::invalid_argument& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return 1;
    } catch (const fs::filesystem_error& e) {
        std::cerr << "data error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
}
