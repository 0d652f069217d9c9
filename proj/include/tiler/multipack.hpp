#pragma once

#include <cstdint>
#include <vector>

#include "tiler/graph.hpp"
#include "tiler/measure.hpp"
#include "tiler/packing.hpp"
#include "tiler/rational.hpp"
#include "tiler/witness.hpp"

namespace tiler {

// Ordered list of packings over one host; per-vertex coverage counts A_x
// drive the tightness defect.
struct Multipacking {
    std::vector<Packing> packings;

    int m() const { return static_cast<int>(packings.size()); }
};

// Level j in 1..M of a base vertex; a witness with denominator M assigns
// vertex x the lifted set Q(x) = {(u, j) : j <= M * p(x, u)} of size M.
struct LiftedPoint {
    int base = 0;
    int level = 1;

    friend bool operator==(const LiftedPoint& a, const LiftedPoint& b) {
        return a.base == b.base && a.level == b.level;
    }
};

std::vector<LiftedPoint> lifted_support(const WitnessFamily& w, int x);

// |Q(x) ∩ Q(y)| / |Q(x) ∪ Q(y)| for a rationalized witness.
Rat lifted_jaccard(const WitnessFamily& w, int x, int y);

// One partition of V per sample: i.i.d. uniform 64-bit ranks on the lifted
// points (a fresh random total order per sample, collisions redrawn), then
// each x joins the tile of the base vertex of its max-rank lifted point.
// Tiles have diameter <= 2 * w.support_radius. Ranks depend on
// (seed, sample index) only, so any execution order gives the same output.
std::vector<Packing> build_partitions(const Graph& g, const WitnessFamily& w,
                                      int samples, std::uint64_t seed,
                                      long long* rank_collisions = nullptr);

// Deterministic variant: ranks come from an explicit permutation of the
// lifted colors ((color(u) - 1) * M + level - 1) of a base coloring with
// separation radius >= 2 * w.support_radius + 1. perm[c] is the priority of
// lifted color c and must be a permutation of 0 .. num_colors*M - 1.
Packing partition_from_permutation(const Graph& g, const WitnessFamily& w,
                                   const Coloring& coloring,
                                   const std::vector<int>& perm);

// Shrinks each partition tilewise by s; the members become s-separated.
Multipacking partitions_to_multipacking(const Graph& g,
                                        const std::vector<Packing>& parts,
                                        int s);

// max over vertices of (# packings missing the vertex) / m, exact.
Rat tightness_defect(const Graph& g, const Multipacking& mp);

// True iff shrinking every member by s multiplies the defect by at most
// d^(s+1), d = the degree bound.
bool shrink_defect_bound_check(const Graph& g, const Multipacking& mp, int s);

// p(x) = average over the packings covering x of the uniform distribution
// on x's tile. Every vertex must be covered at least once.
WitnessFamily witness_from_multipacking(const Graph& g, const Multipacking& mp);

// Number of members whose covered set has mu-mass >= 1 - sqrt(epsilon),
// decided by squaring.
int measure_tight_count(const Graph& g, const Multipacking& mp,
                        const Measure& mu, const Rat& epsilon);

}  // namespace tiler
