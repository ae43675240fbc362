#ifndef EQS_MANIFEST_HPP
#define EQS_MANIFEST_HPP

#include <cstdint>
#include <map>
#include <string>

namespace eqs {

// Written alongside every CLI output so a run can be reproduced exactly:
// the subcommand, the effective config, the paths touched, seeds, thread
// count and per-stage wall times. Output artifacts carry the manifest's
// filename (JSON docs embed it; line/binary formats rely on the sidecar
// naming convention `<output stem>.manifest.json`).
struct RunManifest {
    std::string subcommand;
    std::string tool_version;
    std::map<std::string, std::map<std::string, std::string>> config;
    std::map<std::string, std::string> inputs;
    std::map<std::string, std::string> outputs;
    std::map<std::string, std::uint64_t> seeds;
    std::map<std::string, double> timings_seconds;
    unsigned threads = 1;
};

void write_manifest(const std::string& path, const RunManifest& m);

// `<stem of primary_output>.manifest.json` next to the output.
std::string manifest_path_for(const std::string& primary_output);

} // namespace eqs

#endif
