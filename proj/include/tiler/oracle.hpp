#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "tiler/graph.hpp"
#include "tiler/packing.hpp"
#include "tiler/rational.hpp"

namespace tiler {

// Exact distance matrix by Floyd-Warshall, deliberately a different algorithm
// from the BFS utilities it cross-checks. -1 marks unreachable pairs. Guarded
// to desk-scale hosts.
std::vector<std::vector<int>> all_pairs_distances(const Graph& g);

struct ExhaustiveFolnerResult {
    std::optional<VSet> best;  // lowest-quotient subset strictly below eps
    Rat min_quotient;          // over all nonempty subsets of the universe
};

// Scans every nonempty subset of `universe` (at most 20 vertices) and measures
// inner-boundary quotients in the ambient graph.
ExhaustiveFolnerResult exhaustive_folner(const Graph& g, const VSet& universe,
                                         const Rat& eps);

// Seeded instance generators shared by the lemma sweeps and the acceptance
// round-trip tests. Hosts mix cycles, paths, grids, tori, and random connected
// graphs; packings grow greedy random blobs kept pairwise farther than
// min_separation.
Graph random_sweep_host(std::uint64_t seed, int instance, int max_vertices);
Packing random_sweep_packing(const Graph& g, std::uint64_t seed, int instance,
                             int stream, int min_separation, int max_radius);

// Claims checked per instance: the s-interior of the covered set splits into
// an s-separated packing whose tiles keep the original diameter bound, and
// shrinking every member of a multipacking multiplies the tightness defect by
// at most d^(s+1).
struct ShrinkSweepReport {
    int instances = 0;
    int separation_failures = 0;
    int diameter_failures = 0;
    int defect_failures = 0;
    std::vector<std::string> notes;  // first few counterexamples
};
ShrinkSweepReport shrink_lemma_sweep(int instances, int max_vertices,
                                     std::uint64_t seed);

// Claims checked per instance, for f 1-separated with tiles of diameter at
// most r and fp (3r)-separated with tiles of diameter at most t: the join is
// 1-separated with tiles of diameter at most 2r+t. The padded counter tracks
// the corrected bound 2r+t+2, which accounts for the unit hops that attach a
// chain to both of its end tiles.
struct JoinSweepReport {
    int instances = 0;
    int diameter_failures = 0;
    int padded_diameter_failures = 0;
    int separation_failures = 0;
    std::vector<std::string> notes;
};
JoinSweepReport join_lemma_sweep(int instances, int max_vertices,
                                 std::uint64_t seed);

// One recomputed example: the pinned value, the value measured by an
// independent brute-force path, and the verdict of their exact comparison.
struct OracleOutcome {
    std::string name;
    bool pass = false;
    std::string expected;
    std::string actual;
    std::string method;  // one-line description of the recomputation path
};

struct OracleCheck {
    std::string name;
    std::function<OracleOutcome(std::uint64_t seed)> run;
};

// The full recomputation checklist, one entry per pinned example value.
// Deterministic checks ignore the seed; Monte Carlo checks fold it into their
// sample streams.
const std::vector<OracleCheck>& derived_example_checks();

// Runs the checks whose names contain any of the given fragments; an empty
// fragment list selects nothing and yields an empty (trivially passing)
// result. Pass {""} or use `derived_example_checks` directly to run all.
std::vector<OracleOutcome> run_derived_examples(
    const std::vector<std::string>& selection, std::uint64_t seed);

}  // namespace tiler
