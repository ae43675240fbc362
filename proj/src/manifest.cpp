#include "eqs/manifest.hpp"

#include <filesystem>
#include <fstream>

#include <json.hpp>

#include "eqs/errors.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace eqs {

void write_manifest(const std::string& path, const RunManifest& m) {
    json j{{"format", "eqshapelets.manifest"},
           {"version", 1},
           {"tool", "eqshapelets"},
           {"tool_version", m.tool_version},
           {"subcommand", m.subcommand},
           {"config", m.config},
           {"inputs", m.inputs},
           {"outputs", m.outputs},
           {"seeds", m.seeds},
           {"timings_seconds", m.timings_seconds},
           {"threads", m.threads}};
    std::ofstream out(path);
    if (!out)
        throw DataError("cannot write manifest: " + path);
    out << j.dump(2) << "\n";
}

std::string manifest_path_for(const std::string& primary_output) {
    fs::path p(primary_output);
    fs::path dir = p.parent_path();
    std::string stem = p.stem().string();
    return (dir / (stem + ".manifest.json")).string();
}

} // namespace eqs
