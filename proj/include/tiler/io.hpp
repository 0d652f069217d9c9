#pragma once

#include <filesystem>
#include <string>

#include "tiler/graph.hpp"
#include "tiler/measure.hpp"
#include "tiler/multipack.hpp"
#include "tiler/packing.hpp"
#include "tiler/quasitile.hpp"
#include "tiler/randseq.hpp"
#include "tiler/witness.hpp"

namespace tiler {

// Text formats for every artifact the pipelines exchange. Writers are pure
// functions of their argument, so repeated runs emit byte-identical files.
// Readers throw InputError on malformed content, naming the offending line.

// `vertices N` header, then one `u v` line per edge with u < v, ascending.
std::string write_graph(const Graph& g);
Graph read_graph(const std::string& text, const std::string& name = "file");

// `witness n r` header, then `x y num den` lines giving the weight of p(x, .)
// at y; x ascending, support order within x. Every vertex of the host must
// carry weights summing to exactly 1. The loaded family's grid is the finest
// one the weights sit on (lcm of the denominators), so lifted constructions
// accept it directly.
std::string write_witness(const WitnessFamily& w);
WitnessFamily read_witness(const Graph& g, const std::string& text);

// `packing k=<bound>` header, then one line of space-separated vertex ids per
// tile. The declared bound survives a round trip; reading verifies the
// measured diameters stay within it.
std::string write_packing(const Packing& p);
Packing read_packing(const Graph& g, const std::string& text);

// Packing blocks separated by `---` lines.
std::string write_multipacking(const Multipacking& mp);
Multipacking read_multipacking(const Graph& g, const std::string& text);

// Report rows `vertex, covered_count, m`, one per vertex.
std::string write_coverage_rows(const Graph& g, const Multipacking& mp);

// One `vertex num den` line per vertex. Reading validates the total is 1.
std::string write_measure(const Measure& mu);
Measure read_measure(const Graph& g, const std::string& text);

// Schedule table: header, then one `j eps s k D` row per level.
std::string write_schedule(const CfwSchedule& schedule);

// Structured trace rows: one `step` row per mediator sweep, then per-round
// probe coverages (round 0 is the seed packing's state).
std::string write_trace(const QuasiTileTrace& trace);

// Self-contained audit report: headline quantities with decimal columns, the
// counting chain, and per-tile marker and probe rows.
std::string write_audit(const OwAudit& audit);

std::string read_text_file(const std::filesystem::path& path);
void write_text_file(const std::filesystem::path& path, const std::string& content);

}  // namespace tiler
