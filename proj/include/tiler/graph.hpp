#pragma once

#include <string>
#include <utility>
#include <vector>

#include "tiler/rational.hpp"

namespace tiler {

// Sorted, duplicate-free list of vertex ids.
using VSet = std::vector<int>;

constexpr int kUnbounded = -1;  // cross-component diameter marker

struct Graph {
    std::vector<std::vector<int>> adj;  // sorted neighbor lists, symmetric, loop-free
    int degree_bound = 0;               // cached max degree
    std::string name;                   // identity token for hosts of derived objects

    int vertex_count() const { return static_cast<int>(adj.size()); }
    int edge_count() const;
    bool has_edge(int u, int v) const;
    bool valid_vertex(int v) const { return v >= 0 && v < vertex_count(); }
};

struct Coloring {
    std::vector<int> color_of;  // 1-based colors
    int num_colors = 0;
    int separation_radius = 0;
};

// Generators. Grid/torus take per-dimension side lengths; torus wraps.
Graph from_edge_list(int n, const std::vector<std::pair<int, int>>& edges,
                     std::string name = "edge-list");
Graph make_cycle(int n);
Graph make_path(int n);
Graph make_complete(int n);
Graph make_star(int leaves);
Graph make_grid(const std::vector<int>& sides);
Graph make_torus(const std::vector<int>& sides);
// Rooted tree where every internal vertex has degree `arity`; `depth` levels
// below the root. arity=3, depth=8 is the usual expander-flavored negative test.
Graph make_regular_tree(int arity, int depth);
// Cayley graph from a full multiplication table and a symmetric generator list.
Graph make_cayley(const std::vector<std::vector<int>>& table,
                  const std::vector<int>& generators);

// Metric utilities. Distances use -1 for unreachable.
std::vector<int> bfs_distances(const Graph& g, int source);
std::vector<int> bfs_distances(const Graph& g, const VSet& sources);
VSet ball(const Graph& g, int x, int r);
VSet neighborhood(const Graph& g, const VSet& j, int r);  // includes j itself
VSet boundary(const Graph& g, const VSet& l);
VSet k_boundary(const Graph& g, const VSet& j, int k);
long long boundary_size(const Graph& g, const VSet& l);
Rat folner_quotient(const Graph& g, const VSet& l);
// |boundary|/|l| < num/den without building a rational; l must be nonempty.
bool quotient_below(const Graph& g, const VSet& l, const Rat& eps);
int set_diameter(const Graph& g, const VSet& l);  // kUnbounded if split across components
Coloring distance_coloring(const Graph& g, int r);
std::vector<VSet> components(const Graph& g);
// Components of the subgraph induced on `region`.
std::vector<VSet> components_within(const Graph& g, const VSet& region);

// Sorted-vector set algebra.
bool vset_contains(const VSet& s, int v);
bool is_subset(const VSet& a, const VSet& b);
VSet set_union(const VSet& a, const VSet& b);
VSet set_intersection(const VSet& a, const VSet& b);
VSet set_difference(const VSet& a, const VSet& b);

}  // namespace tiler
