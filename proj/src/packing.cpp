#include "tiler/packing.hpp"

#include <algorithm>
#include <numeric>

#include "tiler/errors.hpp"

namespace tiler {

namespace {

struct UnionFind {
    std::vector<int> parent;
    explicit UnionFind(int n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
    int find(int v) {
        while (parent[v] != v) v = parent[v] = parent[parent[v]];
        return v;
    }
    void unite(int a, int b) { parent[find(a)] = find(b); }
};

std::vector<VSet> normalize_tiles(std::vector<VSet> tiles) {
    for (auto& t : tiles) std::sort(t.begin(), t.end());
    std::sort(tiles.begin(), tiles.end(),
              [](const VSet& a, const VSet& b) { return a.front() < b.front(); });
    return tiles;
}

}  // namespace

Packing make_packing(const Graph& g, std::vector<VSet> tiles) {
    Packing p;
    p.host = g.name;
    for (const auto& t : tiles)
        if (t.empty()) throw StructureError("empty tile");
    p.tiles = normalize_tiles(std::move(tiles));
    std::vector<char> seen(g.vertex_count(), 0);
    for (const auto& t : p.tiles) {
        for (int v : t) {
            if (!g.valid_vertex(v)) throw StructureError("tile vertex out of range");
            if (seen[v]) throw StructureError("tiles overlap at vertex " + std::to_string(v));
            seen[v] = 1;
        }
        int d = set_diameter(g, t);
        if (d == kUnbounded) throw StructureError("tile spans components");
        p.diameter_bound = std::max(p.diameter_bound, d);
    }
    return p;
}

bool validate_packing(const Graph& g, const Packing& p) {
    std::vector<char> seen(g.vertex_count(), 0);
    for (const auto& t : p.tiles) {
        if (t.empty()) return false;
        for (int v : t) {
            if (!g.valid_vertex(v) || seen[v]) return false;
            seen[v] = 1;
        }
        int d = set_diameter(g, t);
        if (d == kUnbounded || d > p.diameter_bound) return false;
    }
    return true;
}

VSet covered_set(const Packing& p) {
    VSet out;
    for (const auto& t : p.tiles) out.insert(out.end(), t.begin(), t.end());
    std::sort(out.begin(), out.end());
    return out;
}

VSet restrict_inside(const Packing& p, const VSet& j) {
    VSet out;
    for (const auto& t : p.tiles)
        if (is_subset(t, j)) out.insert(out.end(), t.begin(), t.end());
    std::sort(out.begin(), out.end());
    return out;
}

bool is_s_separated(const Graph& g, const Packing& p, int s) {
    if (s < 0) throw InputError("negative separation");
    std::vector<int> tile_of(g.vertex_count(), -1);
    for (size_t i = 0; i < p.tiles.size(); ++i)
        for (int v : p.tiles[i]) tile_of[v] = static_cast<int>(i);
    for (size_t i = 0; i < p.tiles.size(); ++i) {
        auto dist = bfs_distances(g, p.tiles[i]);
        for (int v = 0; v < g.vertex_count(); ++v)
            if (tile_of[v] != -1 && tile_of[v] != static_cast<int>(i) &&
                dist[v] != -1 && dist[v] <= s)
                return false;
    }
    return true;
}

Packing shrink(const Graph& g, const Packing& p, int s) {
    if (s < 1) throw InputError("shrink depth must be at least 1");
    std::vector<char> covered(g.vertex_count(), 0);
    for (const auto& t : p.tiles)
        for (int v : t) covered[v] = 1;
    VSet complement;
    for (int v = 0; v < g.vertex_count(); ++v)
        if (!covered[v]) complement.push_back(v);
    VSet deep;
    if (complement.empty()) {
        deep = covered_set(p);
    } else {
        auto dist = bfs_distances(g, complement);
        for (int v = 0; v < g.vertex_count(); ++v)
            if (covered[v] && (dist[v] == -1 || dist[v] > s)) deep.push_back(v);
    }
    std::vector<VSet> tiles = components_within(g, deep);
    if (tiles.empty()) {
        Packing empty;
        empty.host = g.name;
        return empty;
    }
    return make_packing(g, std::move(tiles));
}

Packing shrink_tilewise(const Graph& g, const Packing& p, int s) {
    if (s < 1) throw InputError("shrink depth must be at least 1");
    std::vector<VSet> tiles;
    for (const auto& t : p.tiles) {
        std::vector<char> in(g.vertex_count(), 0);
        for (int v : t) in[v] = 1;
        VSet outside;
        for (int v = 0; v < g.vertex_count(); ++v)
            if (!in[v]) outside.push_back(v);
        VSet deep;
        if (outside.empty()) {
            deep = t;
        } else {
            auto dist = bfs_distances(g, outside);
            for (int v : t)
                if (dist[v] == -1 || dist[v] > s) deep.push_back(v);
        }
        // Kept whole: splitting into components could leave sibling pieces
        // of one tile within distance s of each other.
        if (!deep.empty()) tiles.push_back(std::move(deep));
    }
    if (tiles.empty()) {
        Packing empty;
        empty.host = g.name;
        return empty;
    }
    return make_packing(g, std::move(tiles));
}

Packing join(const Graph& g, const Packing& f, const Packing& fp, int diameter_cap) {
    UnionFind uf(g.vertex_count());
    std::vector<char> covered(g.vertex_count(), 0);
    for (const Packing* p : {&f, &fp})
        for (const auto& t : p->tiles) {
            for (int v : t) {
                covered[v] = 1;
                uf.unite(t.front(), v);
            }
        }
    for (int v = 0; v < g.vertex_count(); ++v)
        if (covered[v])
            for (int u : g.adj[v])
                if (u > v && covered[u]) uf.unite(v, u);
    std::vector<VSet> buckets(g.vertex_count());
    for (int v = 0; v < g.vertex_count(); ++v)
        if (covered[v]) buckets[uf.find(v)].push_back(v);
    std::vector<VSet> tiles;
    for (auto& b : buckets)
        if (!b.empty()) tiles.push_back(std::move(b));
    if (tiles.empty()) {
        Packing empty;
        empty.host = g.name;
        return empty;
    }
    Packing out = make_packing(g, std::move(tiles));
    if (diameter_cap >= 0)
        for (const auto& t : out.tiles)
            if (set_diameter(g, t) > diameter_cap)
                throw StructureError("join tile through vertex " +
                                     std::to_string(t.front()) + " has diameter " +
                                     std::to_string(set_diameter(g, t)) +
                                     " above cap " + std::to_string(diameter_cap));
    return out;
}

}  // namespace tiler
