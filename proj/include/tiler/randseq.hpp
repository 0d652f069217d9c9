#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "tiler/graph.hpp"
#include "tiler/measure.hpp"
#include "tiler/multipack.hpp"
#include "tiler/packing.hpp"
#include "tiler/rational.hpp"
#include "tiler/witness.hpp"

namespace tiler {

// One row of the level schedule: target coarseness eps = 2^-level, required
// member separation s, the largest tile diameter across the level's member
// packings (family_diameter), the largest tile diameter of the realized
// branch after the join (branch_diameter), and the running product of member
// counts (branch_count).
struct CfwLevel {
    int level = 0;
    Rat eps;
    long long separation = 0;
    long long family_diameter = 0;
    long long branch_diameter = 0;
    int members = 0;
    BigInt branch_count = 1;
    int witness_radius = 0;
};

struct CfwSchedule {
    // Level-0 seeds of the recursion.
    long long base_separation = 1;
    long long base_diameter = 1;
    long long base_branch_diameter = 0;
    BigInt base_branch_count = 1;
    std::vector<CfwLevel> levels;
    std::string log;
};

// Increasing sequence of packings; parent[i][t] is the index of the tile of
// packings[i+1] that contains tile t of packings[i].
struct PackingSequence {
    std::vector<Packing> packings;
    std::vector<std::vector<int>> parent;
};

// Per-level witness source. Receives the level, the separation the member
// packings must reach, the tightness target, and an attempt counter that
// increments while the produced family is not tight enough.
using LevelWitness = std::function<WitnessFamily(
    const Graph&, int level, long long separation, const Rat& eps, int attempt)>;

// Uniform-ball witness whose radius starts near 3(2s+1)/eps and doubles per
// attempt, capped at the vertex count (the ball then fills the component).
LevelWitness uniform_ball_level_witness();

struct CfwBuild {
    PackingSequence sequence;
    CfwSchedule schedule;
    std::vector<Multipacking> families;  // the members built per level
    std::vector<int> chosen;             // sampled member index per level
};

// Level-by-level construction: at level j, member packings are partitions
// from the witness source shrunk tilewise by s_j until the family is
// eps_j-tight; one member is sampled uniformly and joined onto the branch.
// Checks after every level: s_j = 2 s_{j-1} + 3 k_{j-1}, branch diameter
// D_j <= 2 D_{j-1} + k_j, 3 D_j <= s_{j+1}, members s_j-separated, branch
// 1-separated, and each previous tile contained in a branch tile
// (ScheduleError naming the level otherwise).
CfwBuild cfw_build(const Graph& g, const LevelWitness& witness, int j_max,
                   std::uint64_t seed, int members_per_level = 64);

std::pair<PackingSequence, CfwSchedule> cfw_sequence(const Graph& g,
                                                     const LevelWitness& witness,
                                                     int j_max, std::uint64_t seed);

// Exact mass of each level's covered set under mu.
std::vector<Rat> coverage_under_measure(const PackingSequence& seq,
                                        const Measure& mu);

// Smallest level from which every later level has coverage >= 1 - sqrt(eps_j)
// under mu; levels+1 when the last level misses the threshold.
int coverage_burn_in(const PackingSequence& seq, const CfwSchedule& schedule,
                     const Measure& mu);

struct SplitEstimate {
    long long trials = 0;
    long long splits = 0;
    Rat frequency;
};

// One packing per trial; draws must depend only on (seed, trial).
using LevelSampler = std::function<Packing(std::uint64_t seed, std::uint64_t trial)>;

// Frequency of trials whose packing leaves adjacent x and y in different
// tiles or uncovered.
SplitEstimate split_probability(const Graph& g, const LevelSampler& sampler,
                                int x, int y, long long trials,
                                std::uint64_t seed);

// (phat - p)^2 <= sigmas^2 * p(1-p) / trials, decided exactly.
bool within_sigma(const Rat& phat, const Rat& p, long long trials, int sigmas);

// Partition of the vertex set into the tiles of a packing plus uncovered
// singletons; class ids follow tile order, then uncovered vertices ascending.
struct FiniteEquivalence {
    std::vector<int> class_of;
    std::vector<VSet> classes;
    std::vector<long long> class_sizes;
    int diameter_bound = 0;
};

FiniteEquivalence packings_to_equivalence(const Graph& g, const Packing& f);

using EquivalenceSampler =
    std::function<FiniteEquivalence(std::uint64_t seed, std::uint64_t trial)>;

// Empirical witness p(x, y) = average over trials of 1/|class(x)| when y
// shares x's class; per-vertex weights sum to exactly 1. Declared quality n
// is the caller's; the attached report carries the measured values.
std::pair<WitnessFamily, WitnessReport> witness_from_sequence(
    const Graph& g, const EquivalenceSampler& sampler, int n, long long trials,
    std::uint64_t seed);

// Each vertex maps to the highest-ranked member of its truncated support
// (mass >= 1 - epsilon/3) under one i.i.d. uniform rank draw per vertex;
// tiles are the preimages. Always a partition of the vertex set.
Packing random_rank_partition(const Graph& g, const WitnessFamily& w,
                              const Rat& epsilon, std::uint64_t seed);

// The target vertex x maps to under the same draw random_rank_partition
// makes for this seed; x always lands in the tile bucketed at this target.
int rank_target(const Graph& g, const WitnessFamily& w, const Rat& epsilon,
                int x, std::uint64_t seed);

// Exact probability that adjacent x and y map to different rank targets:
// one minus the Jaccard index of their truncated supports.
Rat rank_split_probability(const Graph& g, const WitnessFamily& w,
                           const Rat& epsilon, int x, int y);

}  // namespace tiler
