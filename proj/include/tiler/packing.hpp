#pragma once

#include <string>
#include <vector>

#include "tiler/graph.hpp"

namespace tiler {

// Pairwise disjoint nonempty tiles, each of finite diameter at most
// diameter_bound in the host graph. Tiles sorted by smallest member.
struct Packing {
    std::vector<VSet> tiles;
    int diameter_bound = 0;
    std::string host;
};

// Normalizes tile order and fills diameter_bound with the measured maximum;
// throws StructureError on overlap, emptiness, or a cross-component tile.
Packing make_packing(const Graph& g, std::vector<VSet> tiles);

bool validate_packing(const Graph& g, const Packing& p);

VSet covered_set(const Packing& p);

// Union of the tiles fully contained in j.
VSet restrict_inside(const Packing& p, const VSet& j);

bool is_s_separated(const Graph& g, const Packing& p, int s);

// Connected components of the depth-s interior of the covered set.
Packing shrink(const Graph& g, const Packing& p, int s);

// Depth-s interior of each tile against its own complement, one output tile
// per surviving input tile. Unlike shrink, tiles never merge across input
// tiles, so the result is s-separated and respects each tile's diameter.
Packing shrink_tilewise(const Graph& g, const Packing& p, int s);

// Finest common coarsening: covered vertices chain through shared tiles of
// either packing and through edges with both ends covered. Always 1-separated.
// A nonnegative diameter_cap turns an oversized result tile into an error.
Packing join(const Graph& g, const Packing& f, const Packing& fp,
             int diameter_cap = kUnbounded);

}  // namespace tiler
