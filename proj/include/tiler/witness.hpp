#pragma once

#include <vector>

#include "tiler/graph.hpp"
#include "tiler/rational.hpp"

namespace tiler {

// Finitely supported probability distribution over vertices; entries sorted by
// vertex, weights strictly positive, summing to exactly 1.
struct Dist {
    std::vector<std::pair<int, Rat>> weights;

    Rat total() const;
    Rat at(int v) const;  // 0 off support
};

// Per-vertex distributions p(x, .) with a declared support radius and a
// declared quality target n (adjacent vertices should differ by < 1/n in L1).
struct WitnessFamily {
    int n = 1;
    int support_radius = 0;
    std::vector<Dist> dist;  // indexed by vertex
    // Common denominator when every weight is a multiple of 1/grid; 0 otherwise.
    BigInt grid = 0;
};

struct WitnessReport {
    Rat max_neighbor_l1;
    int max_support_radius = 0;
    bool sums_ok = false;
    bool radius_ok = false;  // max_support_radius <= declared r
    bool l1_ok = false;      // max_neighbor_l1 < 1/n
    bool passes() const { return sums_ok && radius_ok && l1_ok; }
};

Rat l1_distance(const Dist& p, const Dist& q);

WitnessFamily uniform_ball_witness(const Graph& g, int r);

WitnessReport validate_witness(const Graph& g, const WitnessFamily& w);

// Rounds every weight to the 1/m grid by floor-then-largest-remainder, keeping
// each per-vertex sum exactly 1. Per-vertex L1 change is at most 2*support/m.
WitnessFamily rationalize(const WitnessFamily& w, const BigInt& m);

// Smallest-radius piece of supp p(x, .) holding mass >= 1 - eps/3.
VSet truncate_support(const Graph& g, const WitnessFamily& w, int x, const Rat& eps);

}  // namespace tiler
