#include "eqs/io.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

namespace fs = std::filesystem;
using nlohmann::json;

namespace eqs {

namespace {

std::string fmt_double(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

void put_u32_le(std::ostream& out, std::uint32_t v) {
    char b[4];
    for (int i = 0; i < 4; ++i) b[i] = static_cast<char>((v >> (8 * i)) & 0xff);
    out.write(b, 4);
}

void put_f64_le(std::ostream& out, double d) {
    auto v = std::bit_cast<std::uint64_t>(d);
    char b[8];
    for (int i = 0; i < 8; ++i) b[i] = static_cast<char>((v >> (8 * i)) & 0xff);
    out.write(b, 8);
}

std::uint32_t get_u32_le(std::istream& in, const std::string& path) {
    unsigned char b[4];
    if (!in.read(reinterpret_cast<char*>(b), 4))
        throw DataError(path + ": truncated binary waveform");
    std::uint32_t v = 0;
    for (int i = 0; i < 4; ++i) v |= static_cast<std::uint32_t>(b[i]) << (8 * i);
    return v;
}

double get_f64_le(std::istream& in, const std::string& path) {
    unsigned char b[8];
    if (!in.read(reinterpret_cast<char*>(b), 8))
        throw DataError(path + ": truncated binary waveform");
    std::uint64_t v = 0;
    for (int i = 0; i < 8; ++i) v |= static_cast<std::uint64_t>(b[i]) << (8 * i);
    return std::bit_cast<double>(v);
}

} // namespace

TimeSeries read_waveform_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in)
        throw DataError("cannot open waveform file: " + path);
    TimeSeries t;
    std::string line;
    bool saw_header = false;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        if (line[0] == '#') {
            std::istringstream hdr(line.substr(1));
            std::string tok;
            while (hdr >> tok) {
                auto eq = tok.find('=');
                if (eq == std::string::npos) continue;
                std::string key = tok.substr(0, eq);
                std::string val = tok.substr(eq + 1);
                try {
                    if (key == "sample_rate_hz") t.sample_rate_hz = std::stod(val);
                    else if (key == "start_time") t.start_time = std::stod(val);
                } catch (const std::exception&) {
                    throw DataError(path + ": bad header value: " + tok);
                }
            }
            saw_header = true;
            continue;
        }
        try {
            t.samples.push_back(std::stod(line));
        } catch (const std::exception&) {
            throw DataError(path + ": bad sample line: " + line);
        }
    }
    (void)saw_header; // headerless files default to 1 Hz starting at 0
    validate_series(t, path);
    return t;
}

void write_waveform_csv(const std::string& path, const TimeSeries& t) {
    std::ofstream out(path);
    if (!out)
        throw DataError("cannot write waveform file: " + path);
    out << "# sample_rate_hz=" << fmt_double(t.sample_rate_hz)
        << " start_time=" << fmt_double(t.start_time) << "\n";
    for (double v : t.samples) out << fmt_double(v) << "\n";
}

TimeSeries read_waveform_binary(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw DataError("cannot open waveform file: " + path);
    char magic[4];
    if (!in.read(magic, 4) || std::string(magic, 4) != "EQS1")
        throw DataError(path + ": missing EQS1 magic");
    std::uint32_t count = get_u32_le(in, path);
    TimeSeries t;
    t.sample_rate_hz = get_f64_le(in, path);
    t.start_time = get_f64_le(in, path);
    t.samples.resize(count);
    for (std::uint32_t i = 0; i < count; ++i) t.samples[i] = get_f64_le(in, path);
    validate_series(t, path);
    return t;
}

void write_waveform_binary(const std::string& path, const TimeSeries& t) {
    std::ofstream out(path, std::ios::binary);
    if (!out)
        throw DataError("cannot write waveform file: " + path);
    out.write("EQS1", 4);
    put_u32_le(out, static_cast<std::uint32_t>(t.samples.size()));
    put_f64_le(out, t.sample_rate_hz);
    put_f64_le(out, t.start_time);
    for (double v : t.samples) put_f64_le(out, v);
}

TimeSeries read_waveform(const std::string& path) {
    std::ifstream probe(path, std::ios::binary);
    if (!probe)
        throw DataError("cannot open waveform file: " + path);
    char magic[4] = {0, 0, 0, 0};
    probe.read(magic, 4);
    probe.close();
    if (std::string(magic, 4) == "EQS1")
        return read_waveform_binary(path);
    return read_waveform_csv(path);
}

void write_waveform(const std::string& path, const TimeSeries& t) {
    if (fs::path(path).extension() == ".csv")
        write_waveform_csv(path, t);
    else
        write_waveform_binary(path, t);
}

namespace {

bool is_waveform_file(const fs::path& p) {
    auto ext = p.extension().string();
    return ext == ".csv" || ext == ".bin" || ext == ".eqs";
}

std::vector<fs::path> list_waveforms(const std::string& dir) {
    if (!fs::is_directory(dir))
        throw DataError("not a directory: " + dir);
    std::vector<fs::path> files;
    for (const auto& e : fs::directory_iterator(dir))
        if (e.is_regular_file() && is_waveform_file(e.path()))
            files.push_back(e.path());
    std::sort(files.begin(), files.end(),
              [](const fs::path& a, const fs::path& b) {
                  return a.filename().string() < b.filename().string();
              });
    return files;
}

} // namespace

std::vector<TimeSeries> read_waveform_dir(const std::string& dir) {
    std::vector<TimeSeries> out;
    for (const auto& p : list_waveforms(dir))
        out.push_back(read_waveform(p.string()));
    if (out.empty())
        throw DataError("no waveform files in " + dir);
    return out;
}

LearningSet read_labeled_dir(const std::string& dir) {
    const fs::path event_dir = fs::path(dir) / "event";
    const fs::path other_dir = fs::path(dir) / "other";
    if (!fs::is_directory(event_dir) || !fs::is_directory(other_dir))
        throw DataError("labeled set needs event/ and other/ under " + dir);
    std::vector<LabeledWindow> windows;
    for (const auto& p : list_waveforms(event_dir.string()))
        windows.push_back({read_waveform(p.string()), Label::Event});
    for (const auto& p : list_waveforms(other_dir.string()))
        windows.push_back({read_waveform(p.string()), Label::Other});
    return LearningSet(std::move(windows));
}

namespace {

std::string window_name(std::size_t i, bool csv) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "window_%06zu.%s", i, csv ? "csv" : "bin");
    return buf;
}

} // namespace

void write_labeled_dir(const std::string& dir, const LearningSet& set, bool csv) {
    fs::create_directories(fs::path(dir) / "event");
    fs::create_directories(fs::path(dir) / "other");
    std::size_t n_event = 0, n_other = 0;
    for (const auto& w : set.windows()) {
        bool event = w.label == Label::Event;
        std::size_t& i = event ? n_event : n_other;
        fs::path p = fs::path(dir) / (event ? "event" : "other") / window_name(i, csv);
        write_waveform(p.string(), w.series);
        ++i;
    }
}

void write_waveform_dir(const std::string& dir, const std::vector<TimeSeries>& windows,
                        bool csv) {
    fs::create_directories(dir);
    for (std::size_t i = 0; i < windows.size(); ++i)
        write_waveform((fs::path(dir) / window_name(i, csv)).string(), windows[i]);
}

// --- civil time -------------------------------------------------------------

namespace {

std::int64_t days_from_civil(std::int64_t y, unsigned m, unsigned d) {
    y -= m <= 2;
    const std::int64_t era = (y >= 0 ? y : y - 399) / 400;
    const auto yoe = static_cast<unsigned>(y - era * 400);
    const unsigned doy = (153 * (m + (m > 2 ? -3 : 9)) + 2) / 5 + d - 1;
    const unsigned doe = yoe * 365 + yoe / 4 - yoe / 100 + doy;
    return era * 146097 + static_cast<std::int64_t>(doe) - 719468;
}

void civil_from_days(std::int64_t z, std::int64_t& y, unsigned& m, unsigned& d) {
    z += 719468;
    const std::int64_t era = (z >= 0 ? z : z - 146096) / 146097;
    const auto doe = static_cast<unsigned>(z - era * 146097);
    const unsigned yoe = (doe - doe / 1460 + doe / 36524 - doe / 146096) / 365;
    const std::int64_t yr = static_cast<std::int64_t>(yoe) + era * 400;
    const unsigned doy = doe - (365 * yoe + yoe / 4 - yoe / 100);
    const unsigned mp = (5 * doy + 2) / 153;
    d = doy - (153 * mp + 2) / 5 + 1;
    m = mp + (mp < 10 ? 3 : -9);
    y = yr + (m <= 2);
}

} // namespace

double parse_iso8601(const std::string& text) {
    // Numeric epoch seconds are accepted wherever a timestamp is expected.
    {
        std::size_t used = 0;
        try {
            double v = std::stod(text, &used);
            if (used == text.size()) return v;
        } catch (const std::exception&) {
        }
    }
    int y = 0, mo = 0, d = 0, h = 0, mi = 0;
    double sec = 0.0;
    char sep = 0;
    int consumed = 0;
    int got = std::sscanf(text.c_str(), "%d-%d-%d%c%d:%d:%lf%n", &y, &mo, &d, &sep,
                          &h, &mi, &sec, &consumed);
    if (got < 7 || (sep != 'T' && sep != 't' && sep != ' '))
        throw DataError("bad ISO-8601 timestamp: " + text);
    std::string rest = text.substr(static_cast<std::size_t>(consumed));
    if (!rest.empty() && rest != "Z" && rest != "z")
        throw DataError("bad ISO-8601 timestamp (only UTC supported): " + text);
    if (mo < 1 || mo > 12 || d < 1 || d > 31 || h > 23 || mi > 59 || sec >= 61.0)
        throw DataError("bad ISO-8601 timestamp: " + text);
    std::int64_t days = days_from_civil(y, static_cast<unsigned>(mo),
                                        static_cast<unsigned>(d));
    return static_cast<double>(days) * 86400.0 + h * 3600.0 + mi * 60.0 + sec;
}

std::string format_iso8601(double epoch_seconds) {
    double whole = std::floor(epoch_seconds);
    long ms = std::lround((epoch_seconds - whole) * 1000.0);
    if (ms == 1000) {
        whole += 1.0;
        ms = 0;
    }
    auto total = static_cast<std::int64_t>(whole);
    std::int64_t days = total >= 0 ? total / 86400 : (total - 86399) / 86400;
    auto rem = static_cast<long>(total - days * 86400);
    std::int64_t y;
    unsigned m, d;
    civil_from_days(days, y, m, d);
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%04lld-%02u-%02uT%02d:%02d:%02d.%03dZ",
                  static_cast<long long>(y), m, d, static_cast<int>(rem / 3600),
                  static_cast<int>((rem / 60) % 60), static_cast<int>(rem % 60),
                  static_cast<int>(ms));
    return buf;
}

// --- catalog ----------------------------------------------------------------

std::vector<CatalogEvent> read_catalog_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in)
        throw DataError("cannot open catalog: " + path);
    std::vector<CatalogEvent> events;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty() || line[0] == '#') continue;
        if (lineno == 1 && line.rfind("id,", 0) == 0) continue; // header
        std::istringstream row(line);
        std::string id, time_str, mag_str;
        std::getline(row, id, ',');
        std::getline(row, time_str, ',');
        std::getline(row, mag_str, ',');
        if (id.empty() || time_str.empty())
            throw DataError(path + ":" + std::to_string(lineno) + ": bad catalog row");
        CatalogEvent ev;
        ev.id = id;
        ev.origin_time = parse_iso8601(time_str);
        if (!mag_str.empty()) {
            try {
                ev.magnitude = std::stod(mag_str);
            } catch (const std::exception&) {
                throw DataError(path + ":" + std::to_string(lineno) + ": bad magnitude");
            }
        }
        events.push_back(std::move(ev));
    }
    std::sort(events.begin(), events.end(),
              [](const CatalogEvent& a, const CatalogEvent& b) {
                  return a.origin_time < b.origin_time;
              });
    for (std::size_t i = 0; i + 1 < events.size(); ++i)
        if (events[i].origin_time == events[i + 1].origin_time)
            throw DataError(path + ": duplicate origin time " +
                            format_iso8601(events[i].origin_time));
    return events;
}

void write_catalog_csv(const std::string& path, const std::vector<CatalogEvent>& events) {
    std::ofstream out(path);
    if (!out)
        throw DataError("cannot write catalog: " + path);
    out << "id,origin_time_iso8601,magnitude\n";
    for (const auto& ev : events) {
        out << ev.id << "," << format_iso8601(ev.origin_time) << ",";
        if (ev.magnitude) out << fmt_double(*ev.magnitude);
        out << "\n";
    }
}

void write_truth_csv(const std::string& path, const GroundTruth& truth) {
    std::ofstream out(path);
    if (!out)
        throw DataError("cannot write truth file: " + path);
    out << "id,origin_time_iso8601,magnitude,duration_seconds\n";
    for (std::size_t i = 0; i < truth.size(); ++i) {
        char id[32];
        std::snprintf(id, sizeof(id), "inj%05zu", i);
        out << id << "," << format_iso8601(truth[i].time) << ","
            << fmt_double(truth[i].amplitude) << ","
            << fmt_double(truth[i].duration) << "\n";
    }
}

// --- JSON documents ----------------------------------------------------------

namespace {

json load_json(const std::string& path, const std::string& expect_format) {
    std::ifstream in(path);
    if (!in)
        throw DataError("cannot open " + path);
    json doc;
    try {
        in >> doc;
    } catch (const json::exception& e) {
        throw DataError(path + ": " + e.what());
    }
    if (!expect_format.empty() && doc.value("format", "") != expect_format)
        throw DataError(path + ": not a " + expect_format + " document");
    return doc;
}

void save_json(const std::string& path, const json& doc) {
    std::ofstream out(path);
    if (!out)
        throw DataError("cannot write " + path);
    out << doc.dump(2) << "\n";
}

json shapelet_to_json(const Shapelet& s) {
    return json{{"values", s.values},
                {"length", s.length},
                {"quality", s.quality},
                {"split_threshold", s.split_threshold},
                {"source_window_id", s.source_window_id},
                {"source_offset", s.source_offset}};
}

Shapelet shapelet_from_json(const json& j) {
    Shapelet s;
    s.values = j.at("values").get<std::vector<double>>();
    s.length = j.at("length").get<std::size_t>();
    s.quality = j.at("quality").get<double>();
    s.split_threshold = j.at("split_threshold").get<double>();
    s.source_window_id = j.at("source_window_id").get<std::size_t>();
    s.source_offset = j.at("source_offset").get<std::size_t>();
    if (s.values.size() != s.length)
        throw DataError("shapelet length disagrees with its values");
    return s;
}

json discovery_config_to_json(const DiscoveryConfig& c) {
    return json{{"min_len", c.min_len},
                {"max_len", c.max_len},
                {"max_shapelets", c.max_shapelets},
                {"quality_threshold", c.quality_threshold},
                {"length_step", c.length_step},
                {"offset_step", c.offset_step},
                {"similarity_overlap_frac", c.similarity_overlap_frac},
                {"znormalize", c.znormalize}};
}

DiscoveryConfig discovery_config_from_json(const json& j) {
    DiscoveryConfig c;
    c.min_len = j.at("min_len").get<std::size_t>();
    c.max_len = j.at("max_len").get<std::size_t>();
    c.max_shapelets = j.at("max_shapelets").get<std::size_t>();
    c.quality_threshold = j.at("quality_threshold").get<double>();
    c.length_step = j.at("length_step").get<std::size_t>();
    c.offset_step = j.at("offset_step").get<std::size_t>();
    c.similarity_overlap_frac = j.at("similarity_overlap_frac").get<double>();
    c.znormalize = j.at("znormalize").get<bool>();
    return c;
}

} // namespace

void write_shapelets_json(const std::string& path, const ShapeletsDoc& doc,
                          const std::string& manifest_name) {
    json j{{"format", "eqshapelets.shapelets"},
           {"version", 1},
           {"window_len", doc.window_len},
           {"sample_rate_hz", doc.sample_rate_hz},
           {"config", discovery_config_to_json(doc.config)}};
    json arr = json::array();
    for (const auto& s : doc.shapelets) arr.push_back(shapelet_to_json(s));
    j["shapelets"] = std::move(arr);
    if (!manifest_name.empty()) j["manifest"] = manifest_name;
    save_json(path, j);
}

ShapeletsDoc read_shapelets_json(const std::string& path) {
    json j = load_json(path, "eqshapelets.shapelets");
    ShapeletsDoc doc;
    doc.window_len = j.at("window_len").get<std::size_t>();
    doc.sample_rate_hz = j.at("sample_rate_hz").get<double>();
    doc.config = discovery_config_from_json(j.at("config"));
    for (const auto& s : j.at("shapelets")) doc.shapelets.push_back(shapelet_from_json(s));
    return doc;
}

void write_model_json(const std::string& path, const Forest& forest,
                      const std::string& manifest_name) {
    json trees = json::array();
    for (const auto& tree : forest.trees) {
        json nodes = json::array();
        for (const auto& n : tree.nodes) {
            if (n.feature >= 0)
                nodes.push_back(json{{"f", n.feature},
                                     {"t", n.threshold},
                                     {"l", n.left},
                                     {"r", n.right},
                                     {"c", {n.n_event, n.n_other}}});
            else
                nodes.push_back(json{{"c", {n.n_event, n.n_other}}});
        }
        trees.push_back(json{{"nodes", std::move(nodes)}});
    }
    json shapelets = json::array();
    for (const auto& s : forest.shapelets) shapelets.push_back(shapelet_to_json(s));
    json j{{"format", "eqshapelets.model"},
           {"version", 1},
           {"params",
            {{"n_trees", forest.params.n_trees},
             {"max_depth", forest.params.max_depth},
             {"min_leaf", forest.params.min_leaf},
             {"seed", forest.params.seed},
             {"decision_threshold", forest.params.decision_threshold}}},
           {"znormalize", forest.znormalize},
           {"n_features", forest.n_features},
           {"shapelets", std::move(shapelets)},
           {"trees", std::move(trees)}};
    if (!manifest_name.empty()) j["manifest"] = manifest_name;
    save_json(path, j);
}

Forest read_model_json(const std::string& path) {
    json j = load_json(path, "eqshapelets.model");
    Forest f;
    const json& p = j.at("params");
    f.params.n_trees = p.at("n_trees").get<std::size_t>();
    f.params.max_depth = p.at("max_depth").get<std::size_t>();
    f.params.min_leaf = p.at("min_leaf").get<std::size_t>();
    f.params.seed = p.at("seed").get<std::uint64_t>();
    f.params.decision_threshold = p.at("decision_threshold").get<double>();
    f.znormalize = j.at("znormalize").get<bool>();
    f.n_features = j.at("n_features").get<std::size_t>();
    for (const auto& s : j.at("shapelets")) f.shapelets.push_back(shapelet_from_json(s));
    for (const auto& jt : j.at("trees")) {
        Tree tree;
        for (const auto& jn : jt.at("nodes")) {
            TreeNode n;
            if (jn.contains("f")) {
                n.feature = jn.at("f").get<int>();
                n.threshold = jn.at("t").get<double>();
                n.left = jn.at("l").get<int>();
                n.right = jn.at("r").get<int>();
            }
            n.n_event = jn.at("c").at(0).get<std::uint32_t>();
            n.n_other = jn.at("c").at(1).get<std::uint32_t>();
            tree.nodes.push_back(n);
        }
        if (tree.nodes.empty())
            throw DataError(path + ": empty tree");
        f.trees.push_back(std::move(tree));
    }
    if (f.trees.empty())
        throw DataError(path + ": model has no trees");
    return f;
}

void write_detections_jsonl(const std::string& path,
                            const std::vector<Detection>& detections) {
    std::ofstream out(path);
    if (!out)
        throw DataError("cannot write " + path);
    for (const auto& d : detections) {
        json j{{"window_start", d.window_start},
               {"window_end", d.window_end},
               {"prob_event", d.prob_event}};
        j["matched_event_id"] = d.matched_event_id ? json(*d.matched_event_id) : json();
        out << j.dump() << "\n";
    }
}

std::vector<Detection> read_detections_jsonl(const std::string& path) {
    std::ifstream in(path);
    if (!in)
        throw DataError("cannot open " + path);
    std::vector<Detection> out;
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        json j;
        try {
            j = json::parse(line);
        } catch (const json::exception& e) {
            throw DataError(path + ": " + e.what());
        }
        Detection d;
        d.window_start = j.at("window_start").get<double>();
        d.window_end = j.at("window_end").get<double>();
        d.prob_event = j.at("prob_event").get<double>();
        if (j.contains("matched_event_id") && !j.at("matched_event_id").is_null())
            d.matched_event_id = j.at("matched_event_id").get<std::string>();
        out.push_back(std::move(d));
    }
    return out;
}

void write_report_json(const std::string& path, const DetectionReport& r,
                       const std::string& manifest_name) {
    json j{{"format", "eqshapelets.report"},
           {"version", 1},
           {"total_detections", r.total_detections},
           {"catalog_matched", r.catalog_matched},
           {"new_events", r.new_events},
           {"runtime_seconds", r.runtime_seconds},
           {"histogram", {{"edges", r.histogram_edges}, {"counts", r.histogram_counts}}}};
    j["false_positives"] = r.false_positives ? json(*r.false_positives) : json();
    j["false_negatives"] = r.false_negatives ? json(*r.false_negatives) : json();
    j["precision"] = r.precision ? json(*r.precision) : json();
    j["recall"] = r.recall ? json(*r.recall) : json();
    if (!manifest_name.empty()) j["manifest"] = manifest_name;
    save_json(path, j);
}

DetectionReport read_report_json(const std::string& path) {
    json j = load_json(path, "eqshapelets.report");
    DetectionReport r;
    r.total_detections = j.at("total_detections").get<std::size_t>();
    r.catalog_matched = j.at("catalog_matched").get<std::size_t>();
    r.new_events = j.at("new_events").get<std::size_t>();
    r.runtime_seconds = j.at("runtime_seconds").get<double>();
    r.histogram_edges = j.at("histogram").at("edges").get<std::vector<double>>();
    r.histogram_counts = j.at("histogram").at("counts").get<std::vector<std::size_t>>();
    auto opt_size = [&](const char* key) -> std::optional<std::size_t> {
        if (j.contains(key) && !j.at(key).is_null())
            return j.at(key).get<std::size_t>();
        return std::nullopt;
    };
    auto opt_double = [&](const char* key) -> std::optional<double> {
        if (j.contains(key) && !j.at(key).is_null())
            return j.at(key).get<double>();
        return std::nullopt;
    };
    r.false_positives = opt_size("false_positives");
    r.false_negatives = opt_size("false_negatives");
    r.precision = opt_double("precision");
    r.recall = opt_double("recall");
    return r;
}

void write_histogram_csv(const std::string& path, const std::vector<double>& edges,
                         const std::vector<std::size_t>& counts) {
    if (edges.size() != counts.size() + 1)
        throw UsageError("histogram csv: edges must outnumber counts by one");
    std::ofstream out(path);
    if (!out)
        throw DataError("cannot write " + path);
    out << "bin_low,bin_high,count\n";
    for (std::size_t i = 0; i < counts.size(); ++i)
        out << fmt_double(edges[i]) << "," << fmt_double(edges[i + 1]) << ","
            << counts[i] << "\n";
}

void write_sweep_csv(const std::string& path, const std::vector<SweepRow>& rows) {
    std::ofstream out(path);
    if (!out)
        throw DataError("cannot write " + path);
    out << "ig_threshold,shapelet_count,accuracy,runtime_seconds\n";
    for (const auto& r : rows)
        out << fmt_double(r.ig_threshold) << "," << r.shapelet_count << ","
            << fmt_double(r.test_accuracy) << "," << fmt_double(r.runtime_seconds)
            << "\n";
}

std::vector<SweepRow> read_sweep_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in)
        throw DataError("cannot open " + path);
    std::vector<SweepRow> rows;
    std::string line;
    bool first = true;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        if (first) {
            first = false;
            if (line.rfind("ig_threshold", 0) == 0) continue;
        }
        std::istringstream row(line);
        std::string a, b, c, d;
        std::getline(row, a, ',');
        std::getline(row, b, ',');
        std::getline(row, c, ',');
        std::getline(row, d, ',');
        try {
            SweepRow r;
            r.ig_threshold = std::stod(a);
            r.shapelet_count = static_cast<std::size_t>(std::stoull(b));
            r.test_accuracy = std::stod(c);
            r.runtime_seconds = std::stod(d);
            rows.push_back(r);
        } catch (const std::exception&) {
            throw DataError(path + ": bad sweep row: " + line);
        }
    }
    return rows;
}

} // namespace eqs
