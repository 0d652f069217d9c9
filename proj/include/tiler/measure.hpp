#pragma once

#include <string>

#include "tiler/errors.hpp"
#include "tiler/graph.hpp"
#include "tiler/rational.hpp"

namespace tiler {

// Probability vector over the vertices of a host graph, exact rationals.
struct Measure {
    std::vector<Rat> mass;
};

inline Measure uniform_measure(const Graph& g) {
    Measure mu;
    mu.mass.assign(g.vertex_count(), Rat(1, g.vertex_count()));
    return mu;
}

inline void validate_measure(const Graph& g, const Measure& mu) {
    if (static_cast<int>(mu.mass.size()) != g.vertex_count())
        throw InputError("measure has " + std::to_string(mu.mass.size()) +
                         " entries for " + std::to_string(g.vertex_count()) +
                         " vertices");
    Rat total = 0;
    for (const Rat& m : mu.mass) {
        if (m < 0) throw InputError("measure has a negative entry");
        total += m;
    }
    if (total != 1)
        throw InputError("measure sums to " + rat_string(total) + ", not 1");
}

inline Rat measure_of(const Measure& mu, const VSet& s) {
    Rat total = 0;
    for (int v : s) total += mu.mass.at(v);
    return total;
}

}  // namespace tiler
