#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "json.hpp"
#include "tiler/graph.hpp"
#include "tiler/rational.hpp"

namespace tiler {

// One measured quantity. For sampled quantities the note carries the trial
// count and the confidence radius so the row stands on its own.
struct MetricRow {
    std::string name;
    Rat value;
    std::string note;
};

// One asserted inequality. The anchor states the inequality itself; detail
// shows the concrete numbers that went into the comparison.
struct AssertRow {
    std::string name;
    std::string anchor;
    bool pass = false;
    std::string detail;
};

struct RunReport {
    std::string pipeline;
    std::string config_echo;  // canonical single-line form of the run config
    std::vector<MetricRow> metrics;
    std::vector<AssertRow> checks;
    // Console display only; render() never includes it, so reports from
    // repeated runs with the same config are byte-identical.
    long long wall_ms = 0;

    bool all_pass() const;
    std::string render() const;
};

struct RunConfig {
    std::string pipeline;
    nlohmann::json graph;   // generator spec, see graph_from_spec
    nlohmann::json params;  // pipeline parameters
    std::uint64_t seed = 0;
    bool has_seed = false;
    std::filesystem::path out_dir;  // artifacts land here when nonempty
};

// Builds a host graph from a JSON spec. Supported forms:
//   {"type":"cycle","n":60}            {"type":"path","n":20}
//   {"type":"complete","n":4}          {"type":"star","leaves":3}
//   {"type":"grid","sides":[3,4]}      {"type":"torus","sides":[12,12]}
//   {"type":"tree","arity":3,"depth":8}
//   {"type":"edges","n":5,"edges":[[0,1],[1,2]]}
//   {"type":"file","path":"host.txt"}
Graph graph_from_spec(const nlohmann::json& spec);

// Parses a JSON run config: {"pipeline": ..., "graph": ..., "params": {...},
// "seed": ..., "out": ...}. Only pipeline and graph are mandatory here;
// pipelines that draw samples refuse to run without a seed.
RunConfig parse_config(const std::string& text);
RunConfig load_config(const std::filesystem::path& path);

// Dispatches to the named pipeline, collects its metric and assertion rows,
// and writes the report plus pipeline artifacts under out_dir when set.
// Pipelines: validate-witness, multipack, quasitile, ow-audit, cfw,
// rank-partition, oracle-suite.
RunReport run(const RunConfig& config);

}  // namespace tiler
