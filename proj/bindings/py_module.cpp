#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "eqs/classifier.hpp"
#include "eqs/config.hpp"
#include "eqs/detection.hpp"
#include "eqs/discovery.hpp"
#include "eqs/distance.hpp"
#include "eqs/io.hpp"
#include "eqs/preprocess.hpp"
#include "eqs/sweep.hpp"
#include "eqs/synth.hpp"
#include "eqs/version.hpp"

namespace py = pybind11;
using namespace eqs;

namespace {

DistanceProfile profile_from_distances(const std::vector<double>& distances) {
    DistanceProfile p;
    p.reserve(distances.size());
    for (std::size_t i = 0; i < distances.size(); ++i)
        p.push_back({i, distances[i]});
    return p;
}

py::dict metrics_dict(const EvalMetrics& m) {
    py::dict d;
    d["tp"] = m.tp;
    d["fp"] = m.fp;
    d["fn"] = m.fn;
    d["tn"] = m.tn;
    d["accuracy"] = m.accuracy ? py::cast(*m.accuracy) : py::none();
    d["precision"] = m.precision ? py::cast(*m.precision) : py::none();
    d["recall"] = m.recall ? py::cast(*m.recall) : py::none();
    return d;
}

} // namespace

PYBIND11_MODULE(_eqshapelets, m) {
    m.doc() = "Shapelet-based seismic event detection core";
    m.attr("__version__") = kVersion;

    py::register_exception<UsageError>(m, "UsageError", PyExc_ValueError);
    py::register_exception<DataError>(m, "DataError", PyExc_RuntimeError);

    py::enum_<Label>(m, "Label")
        .value("Event", Label::Event)
        .value("Other", Label::Other);

    py::class_<TimeSeries>(m, "TimeSeries")
        .def(py::init<std::vector<double>, double, double>(), py::arg("samples"),
             py::arg("sample_rate_hz"), py::arg("start_time") = 0.0)
        .def_readonly("samples", &TimeSeries::samples)
        .def_readonly("sample_rate_hz", &TimeSeries::sample_rate_hz)
        .def_readonly("start_time", &TimeSeries::start_time)
        .def("__len__", &TimeSeries::size)
        .def("duration_seconds", &TimeSeries::duration_seconds);

    py::class_<LearningSet>(m, "LearningSet")
        .def(py::init([](const std::vector<std::pair<TimeSeries, Label>>& rows) {
                 std::vector<LabeledWindow> windows;
                 windows.reserve(rows.size());
                 for (const auto& [series, label] : rows)
                     windows.push_back({series, label});
                 return LearningSet(std::move(windows));
             }),
             py::arg("windows"))
        .def("__len__", &LearningSet::size)
        .def_property_readonly("window_len", &LearningSet::window_len)
        .def_property_readonly("sample_rate_hz", &LearningSet::sample_rate_hz)
        .def("labels", &LearningSet::labels)
        .def("window", [](const LearningSet& s, std::size_t i) {
            if (i >= s.size()) throw py::index_error();
            return s[i].series;
        });

    py::class_<Shapelet>(m, "Shapelet")
        .def_readonly("values", &Shapelet::values)
        .def_readonly("length", &Shapelet::length)
        .def_readonly("quality", &Shapelet::quality)
        .def_readonly("split_threshold", &Shapelet::split_threshold)
        .def_readonly("source_window_id", &Shapelet::source_window_id)
        .def_readonly("source_offset", &Shapelet::source_offset);

    py::class_<DiscoveryConfig>(m, "DiscoveryConfig")
        .def(py::init<>())
        .def_readwrite("min_len", &DiscoveryConfig::min_len)
        .def_readwrite("max_len", &DiscoveryConfig::max_len)
        .def_readwrite("max_shapelets", &DiscoveryConfig::max_shapelets)
        .def_readwrite("quality_threshold", &DiscoveryConfig::quality_threshold)
        .def_readwrite("length_step", &DiscoveryConfig::length_step)
        .def_readwrite("offset_step", &DiscoveryConfig::offset_step)
        .def_readwrite("similarity_overlap_frac", &DiscoveryConfig::similarity_overlap_frac)
        .def_readwrite("znormalize", &DiscoveryConfig::znormalize)
        .def_readwrite("threads", &DiscoveryConfig::threads);

    py::class_<ForestParams>(m, "ForestParams")
        .def(py::init<>())
        .def_readwrite("n_trees", &ForestParams::n_trees)
        .def_readwrite("max_depth", &ForestParams::max_depth)
        .def_readwrite("min_leaf", &ForestParams::min_leaf)
        .def_readwrite("seed", &ForestParams::seed)
        .def_readwrite("decision_threshold", &ForestParams::decision_threshold);

    py::class_<Forest>(m, "Forest")
        .def_property_readonly("n_trees", [](const Forest& f) { return f.trees.size(); })
        .def_readonly("shapelets", &Forest::shapelets)
        .def_readonly("znormalize", &Forest::znormalize)
        .def_readonly("n_features", &Forest::n_features);

    py::class_<Prediction>(m, "Prediction")
        .def_readonly("label", &Prediction::label)
        .def_readonly("prob_event", &Prediction::prob_event)
        .def_readonly("prob_other", &Prediction::prob_other);

    py::class_<PreprocessConfig>(m, "PreprocessConfig")
        .def(py::init<>())
        .def_readwrite("band_low_hz", &PreprocessConfig::band_low_hz)
        .def_readwrite("band_high_hz", &PreprocessConfig::band_high_hz)
        .def_readwrite("filter_order", &PreprocessConfig::filter_order)
        .def_readwrite("decimate_to_hz", &PreprocessConfig::decimate_to_hz)
        .def_readwrite("window_seconds", &PreprocessConfig::window_seconds);

    py::class_<SynthConfig>(m, "SynthConfig")
        .def(py::init<>())
        .def_readwrite("duration_seconds", &SynthConfig::duration_seconds)
        .def_readwrite("sample_rate_hz", &SynthConfig::sample_rate_hz)
        .def_readwrite("noise_sigma", &SynthConfig::noise_sigma)
        .def_readwrite("event_times", &SynthConfig::event_times)
        .def_readwrite("event_rate_per_hour", &SynthConfig::event_rate_per_hour)
        .def_readwrite("event_amplitude_lo", &SynthConfig::event_amplitude_lo)
        .def_readwrite("event_amplitude_hi", &SynthConfig::event_amplitude_hi)
        .def_readwrite("wavelet_dominant_hz", &SynthConfig::wavelet_dominant_hz)
        .def_readwrite("wavelet_decay_seconds", &SynthConfig::wavelet_decay_seconds)
        .def_readwrite("seed", &SynthConfig::seed);

    py::class_<InjectedEvent>(m, "InjectedEvent")
        .def_readonly("time", &InjectedEvent::time)
        .def_readonly("amplitude", &InjectedEvent::amplitude)
        .def_readonly("duration", &InjectedEvent::duration);

    py::class_<CatalogEvent>(m, "CatalogEvent")
        .def(py::init([](std::string id, double origin_time, std::optional<double> mag) {
                 CatalogEvent ev;
                 ev.id = std::move(id);
                 ev.origin_time = origin_time;
                 ev.magnitude = mag;
                 return ev;
             }),
             py::arg("id"), py::arg("origin_time"), py::arg("magnitude") = py::none())
        .def_readonly("id", &CatalogEvent::id)
        .def_readonly("origin_time", &CatalogEvent::origin_time)
        .def_readonly("magnitude", &CatalogEvent::magnitude);

    py::class_<Detection>(m, "Detection")
        .def_readonly("window_start", &Detection::window_start)
        .def_readonly("window_end", &Detection::window_end)
        .def_readonly("prob_event", &Detection::prob_event)
        .def_readonly("matched_event_id", &Detection::matched_event_id);

    // core distances
    m.def("sq_euclidean",
          [](const std::vector<double>& x, const std::vector<double>& y) {
              return sq_euclidean(std::span<const double>(x), std::span<const double>(y));
          },
          py::arg("x"), py::arg("y"));
    m.def("min_subsequence_distance",
          [](const std::vector<double>& s, const std::vector<double>& t,
             std::optional<double> best_so_far) {
              return min_subsequence_distance(std::span<const double>(s),
                                              std::span<const double>(t), best_so_far);
          },
          py::arg("s"), py::arg("t"), py::arg("best_so_far") = py::none());
    m.def("znormalize", [](const std::vector<double>& v) {
        return znormalize(std::span<const double>(v));
    });
    m.def("subsequence_count", [](const TimeSeries& t, std::size_t l) {
        return enumerate_subsequences(t, l).count();
    });
    m.def("segment", [](const TimeSeries& t, std::size_t window_len) {
        auto r = segment(t, window_len);
        return py::make_tuple(r.windows, r.dropped_samples);
    });

    // preprocessing
    m.def("stitch", [](const std::vector<TimeSeries>& segments) {
        auto [record, gaps] = stitch(segments);
        py::dict g;
        g["gap_count"] = gaps.gap_count;
        g["longest_gap_seconds"] = gaps.longest_gap_seconds;
        g["total_dropped_seconds"] = gaps.total_dropped_seconds;
        return py::make_tuple(record, g);
    });
    m.def("bandpass", &bandpass, py::arg("series"), py::arg("config"));
    m.def("decimate", &decimate, py::arg("series"), py::arg("target_hz"));
    m.def("run_pipeline", [](const std::vector<TimeSeries>& segments,
                             const PreprocessConfig& cfg) {
        auto [windows, gaps] = run_pipeline(segments, cfg);
        py::dict g;
        g["gap_count"] = gaps.gap_count;
        g["longest_gap_seconds"] = gaps.longest_gap_seconds;
        g["total_dropped_seconds"] = gaps.total_dropped_seconds;
        return py::make_tuple(windows, g);
    });

    // discovery
    m.def("entropy", [](const std::vector<Label>& labels) {
        return entropy(std::span<const Label>(labels));
    });
    m.def("information_gain",
          [](const std::vector<double>& distances, const std::vector<Label>& labels,
             double threshold) {
              return information_gain(profile_from_distances(distances),
                                      std::span<const Label>(labels), threshold);
          },
          py::arg("distances"), py::arg("labels"), py::arg("threshold"));
    m.def("best_split",
          [](const std::vector<double>& distances, const std::vector<Label>& labels) {
              auto [threshold, ig] = best_split(profile_from_distances(distances),
                                                std::span<const Label>(labels));
              return py::make_tuple(threshold, ig);
          },
          py::arg("distances"), py::arg("labels"));
    m.def("distance_profile",
          [](const std::vector<double>& candidate, const LearningSet& set, bool znorm) {
              auto profile = distance_profile(std::span<const double>(candidate), set, znorm);
              std::vector<double> out;
              out.reserve(profile.size());
              for (const auto& e : profile) out.push_back(e.distance);
              return out;
          },
          py::arg("candidate"), py::arg("learning_set"), py::arg("znormalize") = false);
    m.def("discover", &discover, py::arg("learning_set"), py::arg("config"));
    m.def("remove_similar", &remove_similar, py::arg("shapelets_sorted_by_quality"),
          py::arg("overlap_frac"));

    // classification
    m.def("shapelet_transform",
          [](const std::vector<Shapelet>& shapelets, const TimeSeries& window, bool znorm) {
              return shapelet_transform(shapelets, window, znorm);
          },
          py::arg("shapelets"), py::arg("window"), py::arg("znormalize") = false);
    m.def("fit_forest",
          [](const std::vector<FeatureVector>& features, const std::vector<Label>& labels,
             const ForestParams& params) {
              return fit_forest(features, std::span<const Label>(labels), params);
          },
          py::arg("features"), py::arg("labels"), py::arg("params"));
    m.def("train_model",
          [](const std::vector<Shapelet>& shapelets, const LearningSet& set,
             const ForestParams& params, bool znorm) {
              FeatureSet fs = shapelet_transform_set(shapelets, set, znorm);
              Forest forest = fit_forest(fs.rows, fs.labels, params);
              forest.shapelets = shapelets;
              forest.znormalize = znorm;
              return forest;
          },
          py::arg("shapelets"), py::arg("learning_set"), py::arg("params"),
          py::arg("znormalize") = false);
    m.def("predict_proba", &predict_proba, py::arg("forest"), py::arg("features"));
    m.def("predict_window", &predict_window, py::arg("forest"), py::arg("window"));
    m.def("evaluate",
          [](const Forest& forest, const LearningSet& set) {
              return metrics_dict(evaluate(forest, set.windows()));
          },
          py::arg("forest"), py::arg("learning_set"));
    m.def("metrics_from_counts",
          [](std::size_t tp, std::size_t fp, std::size_t fn, std::optional<std::size_t> tn) {
              return metrics_dict(metrics_from_counts(tp, fp, fn, tn));
          },
          py::arg("tp"), py::arg("fp"), py::arg("fn"), py::arg("tn") = py::none());
    m.def("ig_threshold_sweep",
          [](const LearningSet& train, const LearningSet& test,
             const std::vector<double>& thresholds, const DiscoveryConfig& cfg,
             const ForestParams& params) {
              auto rows = ig_threshold_sweep(train, test, thresholds, cfg, params);
              py::list out;
              for (const auto& r : rows) {
                  py::dict d;
                  d["ig_threshold"] = r.ig_threshold;
                  d["shapelet_count"] = r.shapelet_count;
                  d["test_accuracy"] = r.test_accuracy;
                  d["runtime_seconds"] = r.runtime_seconds;
                  out.append(d);
              }
              return out;
          });

    // synthesis
    m.def("gen_record", [](const SynthConfig& cfg) {
        auto [record, truth] = gen_record(cfg);
        return py::make_tuple(record, truth);
    });
    m.def("gen_learning_set",
          [](const SynthConfig& cfg, std::size_t n_event, std::size_t n_other) {
              auto [set, truth] = gen_learning_set(cfg, n_event, n_other);
              return py::make_tuple(set, truth);
          },
          py::arg("config"), py::arg("n_event_windows"), py::arg("n_other_windows"));
    m.def("split_learning_set", &split_learning_set, py::arg("learning_set"),
          py::arg("train_frac"), py::arg("seed"));

    // detection
    m.def("detect",
          [](const std::vector<TimeSeries>& windows, const Forest& model) {
              return detect(windows, model);
          },
          py::arg("windows"), py::arg("model"));
    m.def("match_catalog",
          [](const std::vector<Detection>& detections, std::vector<CatalogEvent> catalog,
             double tolerance) {
              CatalogMatch r = match_catalog(detections, std::move(catalog), tolerance);
              py::dict d;
              d["detections"] = r.detections;
              d["matched_events"] = r.matched_events;
              d["missed_event_ids"] = r.missed_event_ids;
              return d;
          },
          py::arg("detections"), py::arg("catalog"), py::arg("tolerance_seconds"));
    m.def("probability_histogram", &probability_histogram, py::arg("detections"),
          py::arg("bin_edges"));

    // files
    m.def("read_waveform", &read_waveform);
    m.def("write_waveform", &write_waveform);
    m.def("read_model_json", &read_model_json);
    m.def("write_model_json", &write_model_json, py::arg("path"), py::arg("forest"),
          py::arg("manifest_name") = "");
}
