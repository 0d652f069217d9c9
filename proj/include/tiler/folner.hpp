#pragma once

#include <optional>

#include "tiler/graph.hpp"
#include "tiler/packing.hpp"
#include "tiler/rational.hpp"

namespace tiler {

struct FolnerSearchConfig {
    Rat epsilon;
    int max_radius = 1;
    long long candidate_budget = 100000;
};

// Smallest set size a quotient below eps is asked to reach before the ball
// search stops growing: floor(2/eps) + 1. Balls on paths and cycles reach a
// quotient below eps exactly at this size, so the floor only bites on graphs
// where small sets are cheap for structural reasons.
long long folner_size_floor(const Rat& eps);

// Grows balls around x until one is a candidate, then hill-climbs (add a best
// outside neighbor / drop a worst boundary vertex, strict improvement only)
// inside B_max_radius(x). Empty result means nothing below epsilon was found.
std::optional<VSet> find_folner_in_ball(const Graph& g, int x,
                                        const FolnerSearchConfig& cfg);

// Same search over the layers N_0(j) ⊆ N_1(j) ⊆ ..., keeping j inside the
// result at every step.
std::optional<VSet> find_folner_containing(const Graph& g, const VSet& j,
                                           const Rat& epsilon, int max_radius);

struct PackingResult {
    Packing packing;
    Rat coverage;  // |covered| / |j|
};

// Greedy peel of disjoint low-quotient tiles inside j: whole qualifying
// remainder components first, then balls grown in the induced remainder
// around increasing center ids, then a pass merging leftover components into
// an adjacent tile when the union still qualifies. Quotients are measured in
// g; diameters are ambient and capped by k_cap.
PackingResult packing_principle(const Graph& g, const VSet& j,
                                const Rat& epsilon, int k_cap);

}  // namespace tiler
