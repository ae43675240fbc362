#ifndef EQS_IO_HPP
#define EQS_IO_HPP

#include <string>
#include <vector>

#include "eqs/classifier.hpp"
#include "eqs/detection.hpp"
#include "eqs/discovery.hpp"
#include "eqs/synth.hpp"
#include "eqs/time_series.hpp"

namespace eqs {

// --- waveform files -------------------------------------------------------
// CSV: one sample per line, optional "# sample_rate_hz=<r> start_time=<t>"
// header. Binary: magic "EQS1", little-endian u32 sample count, f64 sample
// rate, f64 start time, then f64 samples.

TimeSeries read_waveform_csv(const std::string& path);
void write_waveform_csv(const std::string& path, const TimeSeries& t);

TimeSeries read_waveform_binary(const std::string& path);
void write_waveform_binary(const std::string& path, const TimeSeries& t);

// Sniffs the EQS1 magic; falls back to CSV.
TimeSeries read_waveform(const std::string& path);
// ".csv" writes text, anything else the framed binary.
void write_waveform(const std::string& path, const TimeSeries& t);

// --- directories ----------------------------------------------------------
// A labeled set lives in <dir>/event/ and <dir>/other/; windows and records
// are any mix of .csv/.bin/.eqs files, read in filename order.

std::vector<TimeSeries> read_waveform_dir(const std::string& dir);
LearningSet read_labeled_dir(const std::string& dir);
void write_labeled_dir(const std::string& dir, const LearningSet& set, bool csv = false);
void write_waveform_dir(const std::string& dir, const std::vector<TimeSeries>& windows,
                        bool csv = false);

// --- catalog ---------------------------------------------------------------
// CSV columns: id,origin_time_iso8601,magnitude (extra columns ignored;
// numeric epoch seconds accepted in the time column).

std::vector<CatalogEvent> read_catalog_csv(const std::string& path);
void write_catalog_csv(const std::string& path, const std::vector<CatalogEvent>& events);
// Ground truth serialized as a catalog (amplitude in the magnitude column,
// duration_seconds appended), so detect can match against it directly.
void write_truth_csv(const std::string& path, const GroundTruth& truth);

double parse_iso8601(const std::string& text);
std::string format_iso8601(double epoch_seconds);

// --- JSON documents ---------------------------------------------------------

struct ShapeletsDoc {
    std::vector<Shapelet> shapelets;
    DiscoveryConfig config;
    std::size_t window_len = 0;
    double sample_rate_hz = 0.0;
};

void write_shapelets_json(const std::string& path, const ShapeletsDoc& doc,
                          const std::string& manifest_name = "");
ShapeletsDoc read_shapelets_json(const std::string& path);

void write_model_json(const std::string& path, const Forest& forest,
                      const std::string& manifest_name = "");
Forest read_model_json(const std::string& path);

void write_detections_jsonl(const std::string& path,
                            const std::vector<Detection>& detections);
std::vector<Detection> read_detections_jsonl(const std::string& path);

void write_report_json(const std::string& path, const DetectionReport& report,
                       const std::string& manifest_name = "");
DetectionReport read_report_json(const std::string& path);

void write_histogram_csv(const std::string& path, const std::vector<double>& edges,
                         const std::vector<std::size_t>& counts);

void write_sweep_csv(const std::string& path, const std::vector<SweepRow>& rows);
std::vector<SweepRow> read_sweep_csv(const std::string& path);

} // namespace eqs

#endif
