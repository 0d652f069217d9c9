#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "tiler/folner.hpp"
#include "tiler/graph.hpp"
#include "tiler/multipack.hpp"
#include "tiler/packing.hpp"
#include "tiler/rational.hpp"

namespace tiler {

// Outcome of the empirical search for a packing scale: every set with
// quotient below delta packs at diameter k with coverage at least 1 - eps,
// as far as the probe family could tell.
struct CalibrationResult {
    Rat delta;
    int k = 0;
    std::string probe_log;
};

// Probes components and balls around spread-out centers, then scans candidate
// diameters in increasing order. A probe is bad for k when its greedy packing
// at (eps, k) covers less than 1 - eps of it; delta is then capped strictly
// below the best bad quotient. Fails with CalibrationError when the budget of
// packing runs ends before some qualifying probe sits under the cap.
CalibrationResult calibrate_packing_constants(const Graph& g, const Rat& eps,
                                              long long budget = 100000);

struct QuasiTileConfig {
    Rat epsilon0;
    int rounds = 0;           // outer sweep count
    int k0 = 0;               // tile diameter cap
    int k1 = 0;               // mediator tile diameter cap
    Rat eps1;                 // mediator tile quotient cap
    Rat eps2;                 // probe quotient the coverage guarantee covers
    long long mediator_budget = 4096;
    long long calibration_budget = 100000;
};

// Chains two calibrations: (delta, k0) at epsilon0/3 fixes the tile scale,
// eps1 = delta / d^(k0+1) and a second calibration at eps1/3 fix the mediator
// scale k1. eps2 starts at the second delta; finalize_eps2 tightens it once
// the mediator count is known.
QuasiTileConfig derive_constants(const Graph& g, const Rat& epsilon0,
                                 long long calibration_budget = 100000);

// Largest possible size of a set of diameter at most k1 under degree bound d,
// which also bounds how many disjoint such sets can meet one of them.
BigInt max_diameter_set_size(int d, int k1);

// eps2 = min(delta at eps1/3, epsilon0 / (3 m n d^(2(k1+1)))) with
// m = max_diameter_set_size and n = the mediator count.
Rat finalize_eps2(const Graph& g, const QuasiTileConfig& cfg, int mediator_count);

struct MediatorFamily {
    std::vector<Packing> mediators;
    std::string coverage_note;
};

// Qualifying candidates gathered from whole components, balls, per-vertex
// Folner searches, and (on hosts of at most 14 vertices) exhaustive
// enumeration. Every returned set has quotient below eps1 and diameter at
// most k1.
std::vector<VSet> default_candidate_family(const Graph& g,
                                           const QuasiTileConfig& cfg);

// Splits the candidates into packings: a distance-(2 k1 + 1) coloring of the
// centers (minimum elements) makes same-group sets disjoint, and candidates
// sharing a center are fanned out by rank. Every candidate lands in exactly
// one mediator; exceeding mediator_budget raises CalibrationError with the
// partial grouping in the log.
MediatorFamily build_mediators(const Graph& g, const QuasiTileConfig& cfg,
                               const std::vector<VSet>& candidates);

// One local update: when the tiles of f inside h cover less than
// 1 - epsilon0/3 of it, the region h minus all crossing tiles is repacked at
// (epsilon0, k0) and replaces them. Returns f unchanged when the trigger does
// not fire (ties included). Raises ImprovementError, carrying the achieved
// fraction of h, when the repack also falls short.
Packing improve_tile(const Graph& g, const Packing& f, const VSet& h,
                     const QuasiTileConfig& cfg);

struct QuasiTileStep {
    int round = 0;
    int mediator_index = 0;
    int improvements = 0;
    BigInt alteration_bound;          // improvements * max_diameter_set_size
    std::vector<VSet> improved;       // mediator tiles whose update fired
};

struct QuasiTileTrace {
    std::vector<QuasiTileStep> steps;
    std::vector<VSet> probes;
    // coverage_by_round[r][p] = covered fraction of probe p after round r+1;
    // row 0 holds the seed packing's coverage.
    std::vector<std::vector<Rat>> coverage_by_round;
    int mediator_count = 0;
    int rounds_run = 0;
};

// Sweeps the mediators in order, improving every mediator tile, for up to
// cfg.rounds rounds (capped by the largest probe size when probes are given).
// Stops early once a full round fires no update. The seed tiles must already
// satisfy the (epsilon0, k0) contract.
std::pair<Packing, QuasiTileTrace> quasi_tile(const Graph& g, const Rat& epsilon0,
                                              const Packing& seed,
                                              const QuasiTileConfig& cfg,
                                              const std::vector<VSet>& probes = {});

// Same sweep against a caller-supplied mediator family.
std::pair<Packing, QuasiTileTrace> quasi_tile(const Graph& g, const Rat& epsilon0,
                                              const Packing& seed,
                                              const QuasiTileConfig& cfg,
                                              const MediatorFamily& mediators,
                                              const std::vector<VSet>& probes);

// Covered fraction of each probe; empty probes yield nullopt instead of a
// division by zero.
std::vector<std::optional<Rat>> coverage_report(const Graph& g, const Packing& t,
                                                const std::vector<VSet>& probes);

// Smallest integer strictly above eps*size/10, provided it stays strictly
// below eps*size/5; nullopt when the window contains no integer.
std::optional<long long> pick_marker_count(long long tile_size, const Rat& eps);

struct OwMarkerRow {
    VSet tile;
    bool carved = false;      // tile lives in a component small enough to skip
    long long markers = 0;
    Rat lower;                // eps |tile| / 10
    Rat upper;                // eps |tile| / 5
};

struct OwProbeRow {
    int member = 0;           // index into the multipacking
    VSet tile;
    bool exempt = false;      // probe sits in a carved component
    long long uncovered = 0;  // |tile minus the tiles contained in it|
    long long markers = 0;    // |marker set restricted to tile|
};

struct OwChain {
    Rat lhs;                  // (1 - defect) * m * |uncovered vertices|
    Rat matches;              // total matched domain size across all members
    Rat marker_side;          // m * |marker set|
    Rat epsilon_side;         // m * eps/5 * |V|
};

struct OwAudit {
    Rat epsilon;
    Rat epsilon_prime;
    Rat defect;               // tightness defect of the auditing multipacking
    bool matchings_ok = false;
    OwChain chain;
    Rat uncovered_mass;       // uncovered vertices / |V|
    std::vector<OwMarkerRow> marker_rows;
    std::vector<OwProbeRow> probe_rows;
    VSet markers;
};

// Checks every inequality the uncovered-mass bound rests on, for a given tile
// packing and auditing multipacking: marker windows per non-carved tile, the
// per-probe deficit bound on non-carved components, explicit injections from
// uncovered probe parts into markers, and the counting chain ending at
// uncovered_mass <= eps. Raises MarkerError or AuditError at the first break.
OwAudit audit_ow(const Graph& g, const Packing& f, const Multipacking& mp,
                 const Rat& eps);

// End to end: components of size at most 10/eps become their own tiles, the
// rest is quasi-tiled at eps' = 1/(floor(10/eps) + 2), and the combined
// packing is audited against copies of the whole-component packing.
std::pair<Packing, OwAudit> ow_packing(const Graph& g, const Rat& eps,
                                       long long calibration_budget = 100000);

}  // namespace tiler
