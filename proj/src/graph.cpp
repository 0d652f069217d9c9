#include "tiler/graph.hpp"

#include <algorithm>
#include <deque>
#include <numeric>

#include "tiler/errors.hpp"

namespace tiler {

namespace {

Graph finalize(std::vector<std::vector<int>> adj, std::string name) {
    Graph g;
    g.adj = std::move(adj);
    for (auto& nbrs : g.adj) {
        std::sort(nbrs.begin(), nbrs.end());
        nbrs.erase(std::unique(nbrs.begin(), nbrs.end()), nbrs.end());
    }
    for (int v = 0; v < static_cast<int>(g.adj.size()); ++v) {
        for (int u : g.adj[v]) {
            if (u == v) throw InputError("self-loop at vertex " + std::to_string(v));
            if (u < 0 || u >= static_cast<int>(g.adj.size()))
                throw InputError("neighbor id out of range: " + std::to_string(u));
        }
        g.degree_bound = std::max(g.degree_bound, static_cast<int>(g.adj[v].size()));
    }
    g.name = std::move(name);
    return g;
}

int row_major_index(const std::vector<int>& sides, const std::vector<int>& coord) {
    int idx = 0;
    for (size_t i = 0; i < sides.size(); ++i) idx = idx * sides[i] + coord[i];
    return idx;
}

}  // namespace

int Graph::edge_count() const {
    long long total = 0;
    for (const auto& nbrs : adj) total += static_cast<long long>(nbrs.size());
    return static_cast<int>(total / 2);
}

bool Graph::has_edge(int u, int v) const {
    if (!valid_vertex(u) || !valid_vertex(v)) return false;
    return std::binary_search(adj[u].begin(), adj[u].end(), v);
}

Graph from_edge_list(int n, const std::vector<std::pair<int, int>>& edges,
                     std::string name) {
    if (n < 0) throw InputError("negative vertex count");
    std::vector<std::vector<int>> adj(n);
    for (auto [u, v] : edges) {
        if (u < 0 || u >= n || v < 0 || v >= n)
            throw InputError("edge endpoint out of range");
        if (u == v) throw InputError("self-loop at vertex " + std::to_string(u));
        adj[u].push_back(v);
        adj[v].push_back(u);
    }
    return finalize(std::move(adj), std::move(name));
}

Graph make_cycle(int n) {
    if (n < 3) throw InputError("cycle needs at least 3 vertices");
    std::vector<std::pair<int, int>> edges;
    for (int i = 0; i < n; ++i) edges.emplace_back(i, (i + 1) % n);
    return from_edge_list(n, edges, "cycle(" + std::to_string(n) + ")");
}

Graph make_path(int n) {
    if (n < 1) throw InputError("path needs at least 1 vertex");
    std::vector<std::pair<int, int>> edges;
    for (int i = 0; i + 1 < n; ++i) edges.emplace_back(i, i + 1);
    return from_edge_list(n, edges, "path(" + std::to_string(n) + ")");
}

Graph make_complete(int n) {
    if (n < 1) throw InputError("complete graph needs at least 1 vertex");
    std::vector<std::pair<int, int>> edges;
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) edges.emplace_back(i, j);
    return from_edge_list(n, edges, "complete(" + std::to_string(n) + ")");
}

Graph make_star(int leaves) {
    if (leaves < 1) throw InputError("star needs at least 1 leaf");
    std::vector<std::pair<int, int>> edges;
    for (int i = 1; i <= leaves; ++i) edges.emplace_back(0, i);
    return from_edge_list(leaves + 1, edges, "star(" + std::to_string(leaves) + ")");
}

static Graph lattice(const std::vector<int>& sides, bool wrap) {
    if (sides.empty()) throw InputError("lattice needs at least one dimension");
    long long n = 1;
    for (int s : sides) {
        if (s < 1) throw InputError("side lengths must be positive");
        n *= s;
        if (n > 2'000'000) throw InputError("lattice too large");
    }
    std::vector<std::pair<int, int>> edges;
    std::vector<int> coord(sides.size(), 0);
    for (int idx = 0; idx < n; ++idx) {
        for (size_t dim = 0; dim < sides.size(); ++dim) {
            std::vector<int> next = coord;
            next[dim] += 1;
            if (next[dim] == sides[dim]) {
                if (!wrap || sides[dim] <= 2) continue;  // wrap of side <= 2 duplicates the lattice edge
                next[dim] = 0;
            }
            edges.emplace_back(idx, row_major_index(sides, next));
        }
        for (size_t dim = sides.size(); dim-- > 0;) {
            if (++coord[dim] < sides[dim]) break;
            coord[dim] = 0;
        }
    }
    std::string name = wrap ? "torus(" : "grid(";
    for (size_t i = 0; i < sides.size(); ++i)
        name += (i ? "x" : "") + std::to_string(sides[i]);
    name += ")";
    return from_edge_list(static_cast<int>(n), edges, name);
}

Graph make_grid(const std::vector<int>& sides) { return lattice(sides, false); }
Graph make_torus(const std::vector<int>& sides) { return lattice(sides, true); }

Graph make_regular_tree(int arity, int depth) {
    if (arity < 2) throw InputError("tree arity must be at least 2");
    if (depth < 0) throw InputError("negative depth");
    std::vector<std::pair<int, int>> edges;
    std::vector<int> frontier = {0};
    int next_id = 1;
    for (int level = 0; level < depth; ++level) {
        std::vector<int> produced;
        for (int v : frontier) {
            int children = (v == 0) ? arity : arity - 1;
            for (int c = 0; c < children; ++c) {
                edges.emplace_back(v, next_id);
                produced.push_back(next_id++);
            }
        }
        frontier = std::move(produced);
    }
    return from_edge_list(next_id, edges,
                          "tree(" + std::to_string(arity) + "," + std::to_string(depth) + ")");
}

Graph make_cayley(const std::vector<std::vector<int>>& table,
                  const std::vector<int>& generators) {
    int n = static_cast<int>(table.size());
    if (n == 0) throw InputError("empty multiplication table");
    for (const auto& row : table) {
        if (static_cast<int>(row.size()) != n)
            throw InputError("multiplication table not square");
        for (int v : row)
            if (v < 0 || v >= n) throw InputError("table entry out of range");
    }
    // Identity: the unique e with e*x = x for all x.
    int identity = -1;
    for (int e = 0; e < n; ++e) {
        bool ok = true;
        for (int x = 0; x < n && ok; ++x) ok = table[e][x] == x;
        if (ok) { identity = e; break; }
    }
    if (identity == -1) throw InputError("table has no identity element");
    for (int gen : generators) {
        if (gen < 0 || gen >= n) throw InputError("generator out of range");
        if (gen == identity) throw InputError("identity generator would create self-loops");
        // Inverse of gen must itself be listed: the edge set must be symmetric.
        int inv = -1;
        for (int x = 0; x < n; ++x)
            if (table[gen][x] == identity) { inv = x; break; }
        if (inv == -1 || std::find(generators.begin(), generators.end(), inv) == generators.end())
            throw InputError("generator set not symmetric");
    }
    std::vector<std::pair<int, int>> edges;
    for (int x = 0; x < n; ++x)
        for (int gen : generators) edges.emplace_back(x, table[x][gen]);
    return from_edge_list(n, edges, "cayley(" + std::to_string(n) + ")");
}

std::vector<int> bfs_distances(const Graph& g, int source) {
    if (!g.valid_vertex(source)) throw InputError("invalid vertex " + std::to_string(source));
    return bfs_distances(g, VSet{source});
}

std::vector<int> bfs_distances(const Graph& g, const VSet& sources) {
    std::vector<int> dist(g.vertex_count(), -1);
    std::deque<int> queue;
    for (int s : sources) {
        if (!g.valid_vertex(s)) throw InputError("invalid vertex " + std::to_string(s));
        dist[s] = 0;
        queue.push_back(s);
    }
    while (!queue.empty()) {
        int v = queue.front();
        queue.pop_front();
        for (int u : g.adj[v])
            if (dist[u] == -1) {
                dist[u] = dist[v] + 1;
                queue.push_back(u);
            }
    }
    return dist;
}

VSet ball(const Graph& g, int x, int r) {
    if (!g.valid_vertex(x)) throw InputError("invalid vertex " + std::to_string(x));
    if (r < 0) throw InputError("negative radius");
    return neighborhood(g, VSet{x}, r);
}

VSet neighborhood(const Graph& g, const VSet& j, int r) {
    auto dist = bfs_distances(g, j);
    VSet out;
    for (int v = 0; v < g.vertex_count(); ++v)
        if (dist[v] != -1 && dist[v] <= r) out.push_back(v);
    return out;
}

VSet boundary(const Graph& g, const VSet& l) {
    std::vector<char> in(g.vertex_count(), 0);
    for (int v : l) {
        if (!g.valid_vertex(v)) throw InputError("invalid vertex " + std::to_string(v));
        in[v] = 1;
    }
    VSet out;
    for (int v : l)
        for (int u : g.adj[v])
            if (!in[u]) { out.push_back(v); break; }
    return out;
}

VSet k_boundary(const Graph& g, const VSet& j, int k) {
    if (k < 1) throw InputError("k must be at least 1");
    std::vector<char> in(g.vertex_count(), 0);
    for (int v : j) in[v] = 1;
    VSet complement;
    for (int v = 0; v < g.vertex_count(); ++v)
        if (!in[v]) complement.push_back(v);
    if (complement.empty()) return {};
    auto dist = bfs_distances(g, complement);
    VSet out;
    for (int v : j)
        if (dist[v] != -1 && dist[v] <= k) out.push_back(v);
    return out;
}

long long boundary_size(const Graph& g, const VSet& l) {
    return static_cast<long long>(boundary(g, l).size());
}

Rat folner_quotient(const Graph& g, const VSet& l) {
    if (l.empty()) throw InputError("quotient of empty set");
    return Rat(BigInt(boundary_size(g, l)), BigInt(l.size()));
}

bool quotient_below(const Graph& g, const VSet& l, const Rat& eps) {
    if (l.empty()) throw InputError("quotient of empty set");
    // |boundary| * den < |l| * num
    return BigInt(boundary_size(g, l)) * rat_den(eps) <
           BigInt(l.size()) * rat_num(eps);
}

int set_diameter(const Graph& g, const VSet& l) {
    if (l.empty()) throw InputError("diameter of empty set");
    int best = 0;
    for (int v : l) {
        auto dist = bfs_distances(g, v);
        for (int u : l) {
            if (dist[u] == -1) return kUnbounded;
            best = std::max(best, dist[u]);
        }
    }
    return best;
}

Coloring distance_coloring(const Graph& g, int r) {
    if (r < 1) throw InputError("coloring radius must be at least 1");
    Coloring c;
    c.separation_radius = r;
    c.color_of.assign(g.vertex_count(), 0);
    std::vector<int> dist(g.vertex_count(), -1);
    std::vector<int> touched;
    for (int v = 0; v < g.vertex_count(); ++v) {
        // Bounded BFS collecting colors already used within distance r.
        std::vector<char> used(static_cast<size_t>(c.num_colors) + 2, 0);
        touched.clear();
        dist[v] = 0;
        touched.push_back(v);
        std::deque<int> queue = {v};
        while (!queue.empty()) {
            int w = queue.front();
            queue.pop_front();
            if (c.color_of[w] != 0) used[c.color_of[w]] = 1;
            if (dist[w] == r) continue;
            for (int u : g.adj[w])
                if (dist[u] == -1) {
                    dist[u] = dist[w] + 1;
                    touched.push_back(u);
                    queue.push_back(u);
                }
        }
        for (int t : touched) dist[t] = -1;
        int color = 1;
        while (used[color]) ++color;
        c.color_of[v] = color;
        c.num_colors = std::max(c.num_colors, color);
    }
    return c;
}

std::vector<VSet> components(const Graph& g) {
    VSet all(g.vertex_count());
    std::iota(all.begin(), all.end(), 0);
    return components_within(g, all);
}

std::vector<VSet> components_within(const Graph& g, const VSet& region) {
    std::vector<char> in(g.vertex_count(), 0);
    for (int v : region) in[v] = 1;
    std::vector<char> seen(g.vertex_count(), 0);
    std::vector<VSet> out;
    for (int v : region) {
        if (seen[v]) continue;
        VSet comp;
        std::deque<int> queue = {v};
        seen[v] = 1;
        while (!queue.empty()) {
            int w = queue.front();
            queue.pop_front();
            comp.push_back(w);
            for (int u : g.adj[w])
                if (in[u] && !seen[u]) {
                    seen[u] = 1;
                    queue.push_back(u);
                }
        }
        std::sort(comp.begin(), comp.end());
        out.push_back(std::move(comp));
    }
    return out;
}

bool vset_contains(const VSet& s, int v) {
    return std::binary_search(s.begin(), s.end(), v);
}

bool is_subset(const VSet& a, const VSet& b) {
    return std::includes(b.begin(), b.end(), a.begin(), a.end());
}

VSet set_union(const VSet& a, const VSet& b) {
    VSet out;
    std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
    return out;
}

VSet set_intersection(const VSet& a, const VSet& b) {
    VSet out;
    std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
    return out;
}

VSet set_difference(const VSet& a, const VSet& b) {
    VSet out;
    std::set_difference(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
    return out;
}

}  // namespace tiler
