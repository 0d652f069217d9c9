#include "tiler/multipack.hpp"

#include <algorithm>
#include <cstdint>
#include <limits>
#include <map>
#include <unordered_set>
#include <utility>

#include "tiler/errors.hpp"
#include "tiler/rng.hpp"

namespace tiler {

namespace {

long long grid_denominator(const WitnessFamily& w) {
    if (w.grid < 1)
        throw InputError("witness is not rationalized (no common denominator)");
    if (w.grid > std::numeric_limits<long long>::max() / 4)
        throw InputError("witness denominator too large for lifted levels");
    return w.grid.convert_to<long long>();
}

// Base vertices of supp p(x) with their level counts i(x, u) = M * p(x, u).
std::vector<std::pair<int, long long>> level_counts(const WitnessFamily& w,
                                                    long long m, int x) {
    std::vector<std::pair<int, long long>> out;
    long long total = 0;
    for (const auto& [u, p] : w.dist.at(x).weights) {
        Rat scaled = p * m;
        if (rat_den(scaled) != 1)
            throw InputError("witness weight at vertex " + std::to_string(x) +
                             " is not a multiple of 1/" + std::to_string(m));
        long long levels = rat_num(scaled).convert_to<long long>();
        out.emplace_back(u, levels);
        total += levels;
    }
    if (total != m)
        throw InputError("lifted support of vertex " + std::to_string(x) +
                         " has size " + std::to_string(total) + ", expected " +
                         std::to_string(m));
    return out;
}

int checked_degree_bound(const Graph& g) {
    if (g.degree_bound != kUnbounded) return g.degree_bound;
    int d = 0;
    for (const auto& nbrs : g.adj) d = std::max(d, static_cast<int>(nbrs.size()));
    return d;
}

}  // namespace

std::vector<LiftedPoint> lifted_support(const WitnessFamily& w, int x) {
    long long m = grid_denominator(w);
    std::vector<LiftedPoint> out;
    for (const auto& [u, levels] : level_counts(w, m, x))
        for (long long j = 1; j <= levels; ++j)
            out.push_back({u, static_cast<int>(j)});
    return out;
}

Rat lifted_jaccard(const WitnessFamily& w, int x, int y) {
    long long m = grid_denominator(w);
    std::map<int, long long> lx;
    for (const auto& [u, levels] : level_counts(w, m, x)) lx[u] = levels;
    long long common = 0;
    for (const auto& [u, levels] : level_counts(w, m, y)) {
        auto it = lx.find(u);
        if (it != lx.end()) common += std::min(levels, it->second);
    }
    return Rat(common, 2 * m - common);
}

std::vector<Packing> build_partitions(const Graph& g, const WitnessFamily& w,
                                      int samples, std::uint64_t seed,
                                      long long* rank_collisions) {
    const int n = g.vertex_count();
    if (static_cast<int>(w.dist.size()) != n)
        throw InputError("witness covers " + std::to_string(w.dist.size()) +
                         " vertices, graph has " + std::to_string(n));
    if (samples < 1) throw InputError("sample count must be at least 1");
    const long long m = grid_denominator(w);

    std::vector<std::vector<std::pair<int, long long>>> levels(n);
    std::vector<long long> max_level(n, 0);
    for (int x = 0; x < n; ++x) {
        levels[x] = level_counts(w, m, x);
        for (const auto& [u, lv] : levels[x])
            max_level[u] = std::max(max_level[u], lv);
    }
    std::vector<std::size_t> offset(n + 1, 0);
    for (int u = 0; u < n; ++u)
        offset[u + 1] = offset[u] + static_cast<std::size_t>(max_level[u]);

    if (rank_collisions) *rank_collisions = 0;
    std::vector<Packing> out;
    out.reserve(samples);
    std::vector<std::uint64_t> rank(offset[n]);
    std::unordered_set<std::uint64_t> used;
    std::vector<std::vector<int>> bucket(n);
    for (int sample = 0; sample < samples; ++sample) {
        used.clear();
        used.reserve(rank.size() * 2);
        for (int u = 0; u < n; ++u)
            for (long long j = 1; j <= max_level[u]; ++j) {
                std::uint64_t r = draw_u64(seed, sample, u, j);
                std::uint64_t nonce = 0;
                while (!used.insert(r).second) {
                    ++nonce;
                    if (rank_collisions) ++*rank_collisions;
                    r = draw_u64(seed, sample, u, j, nonce);
                }
                rank[offset[u] + static_cast<std::size_t>(j - 1)] = r;
            }

        std::vector<int> touched;
        for (int x = 0; x < n; ++x) {
            bool first = true;
            std::uint64_t best = 0;
            int base = -1;
            for (const auto& [u, lv] : levels[x])
                for (long long j = 1; j <= lv; ++j) {
                    std::uint64_t r = rank[offset[u] + static_cast<std::size_t>(j - 1)];
                    if (first || r > best) {
                        first = false;
                        best = r;
                        base = u;
                    }
                }
            if (bucket[base].empty()) touched.push_back(base);
            bucket[base].push_back(x);
        }
        std::vector<VSet> tiles;
        tiles.reserve(touched.size());
        for (int base : touched) {
            tiles.push_back(std::move(bucket[base]));
            bucket[base].clear();
        }
        out.push_back(make_packing(g, std::move(tiles)));
    }
    return out;
}

Packing partition_from_permutation(const Graph& g, const WitnessFamily& w,
                                   const Coloring& coloring,
                                   const std::vector<int>& perm) {
    const int n = g.vertex_count();
    if (static_cast<int>(w.dist.size()) != n)
        throw InputError("witness covers " + std::to_string(w.dist.size()) +
                         " vertices, graph has " + std::to_string(n));
    const long long m = grid_denominator(w);
    if (static_cast<int>(coloring.color_of.size()) != n)
        throw InputError("coloring size does not match the graph");
    if (coloring.separation_radius < 2 * w.support_radius + 1)
        throw InputError("coloring separation radius " +
                         std::to_string(coloring.separation_radius) +
                         " is below 2R+1 = " +
                         std::to_string(2 * w.support_radius + 1));
    const long long lifted_colors = coloring.num_colors * m;
    if (static_cast<long long>(perm.size()) != lifted_colors)
        throw InputError("permutation has " + std::to_string(perm.size()) +
                         " entries, expected " + std::to_string(lifted_colors));
    std::vector<char> seen(perm.size(), 0);
    for (int p : perm) {
        if (p < 0 || p >= static_cast<int>(perm.size()) || seen[p])
            throw InputError("priority list is not a permutation");
        seen[p] = 1;
    }

    std::vector<std::vector<int>> bucket(n);
    std::vector<int> touched;
    for (int x = 0; x < n; ++x) {
        bool first = true;
        int best = 0;
        int base = -1;
        for (const auto& [u, lv] : level_counts(w, m, x))
            for (long long j = 1; j <= lv; ++j) {
                int pr = perm[static_cast<std::size_t>(
                    (coloring.color_of[u] - 1) * m + (j - 1))];
                if (first || pr > best) {
                    first = false;
                    best = pr;
                    base = u;
                }
            }
        if (bucket[base].empty()) touched.push_back(base);
        bucket[base].push_back(x);
    }
    std::vector<VSet> tiles;
    for (int base : touched) tiles.push_back(std::move(bucket[base]));
    return make_packing(g, std::move(tiles));
}

Multipacking partitions_to_multipacking(const Graph& g,
                                        const std::vector<Packing>& parts,
                                        int s) {
    Multipacking mp;
    mp.packings.reserve(parts.size());
    for (const Packing& p : parts)
        mp.packings.push_back(shrink_tilewise(g, p, s));
    return mp;
}

Rat tightness_defect(const Graph& g, const Multipacking& mp) {
    if (mp.m() < 1) throw InputError("multipacking has no members");
    const int n = g.vertex_count();
    std::vector<int> missing(n, mp.m());
    for (const Packing& p : mp.packings)
        for (const VSet& tile : p.tiles)
            for (int v : tile) --missing[v];
    int worst = 0;
    for (int v = 0; v < n; ++v) worst = std::max(worst, missing[v]);
    return Rat(worst, mp.m());
}

bool shrink_defect_bound_check(const Graph& g, const Multipacking& mp, int s) {
    Rat before = tightness_defect(g, mp);
    Multipacking shrunk;
    shrunk.packings.reserve(mp.packings.size());
    for (const Packing& p : mp.packings) shrunk.packings.push_back(shrink(g, p, s));
    Rat after = tightness_defect(g, shrunk);
    Rat factor(int_pow(BigInt(checked_degree_bound(g)), s + 1));
    return after <= factor * before;
}

WitnessFamily witness_from_multipacking(const Graph& g, const Multipacking& mp) {
    const int n = g.vertex_count();
    if (mp.m() < 1) throw InputError("multipacking has no members");

    // tile_of[i][v] = index of v's tile in packing i, or -1.
    std::vector<std::vector<int>> tile_of(mp.m(), std::vector<int>(n, -1));
    for (int i = 0; i < mp.m(); ++i)
        for (std::size_t t = 0; t < mp.packings[i].tiles.size(); ++t)
            for (int v : mp.packings[i].tiles[t])
                tile_of[i][v] = static_cast<int>(t);

    WitnessFamily w;
    w.dist.resize(n);
    for (int x = 0; x < n; ++x) {
        long long covered = 0;
        for (int i = 0; i < mp.m(); ++i)
            if (tile_of[i][x] >= 0) ++covered;
        if (covered == 0)
            throw InputError("vertex " + std::to_string(x) +
                             " is uncovered by every packing");
        std::map<int, Rat> acc;
        for (int i = 0; i < mp.m(); ++i) {
            if (tile_of[i][x] < 0) continue;
            const VSet& tile = mp.packings[i].tiles[tile_of[i][x]];
            Rat share(1, covered * static_cast<long long>(tile.size()));
            for (int y : tile) acc[y] += share;
        }
        w.dist[x].weights.assign(acc.begin(), acc.end());
    }

    int radius = 0;
    for (int x = 0; x < n; ++x) {
        auto dist = bfs_distances(g, x);
        for (const auto& [y, p] : w.dist[x].weights) radius = std::max(radius, dist[y]);
    }
    w.support_radius = radius;

    Rat max_l1 = 0;
    for (int x = 0; x < n; ++x)
        for (int y : g.adj[x])
            if (x < y) max_l1 = std::max(max_l1, l1_distance(w.dist[x], w.dist[y]));
    // Largest n with max_l1 < 1/n, clamped to [1, 1e9].
    w.n = 1;
    if (max_l1 > 0) {
        BigInt best = rat_den(max_l1) / rat_num(max_l1);
        if (rat_den(max_l1) % rat_num(max_l1) == 0) best -= 1;
        if (best > 1000000000) best = 1000000000;
        if (best >= 1) w.n = static_cast<int>(best.convert_to<long long>());
    }
    return w;
}

int measure_tight_count(const Graph& g, const Multipacking& mp,
                        const Measure& mu, const Rat& epsilon) {
    validate_measure(g, mu);
    if (epsilon < 0) throw InputError("epsilon must be nonnegative");
    int count = 0;
    for (const Packing& p : mp.packings)
        if (at_least_one_minus_sqrt(measure_of(mu, covered_set(p)), epsilon))
            ++count;
    return count;
}

}  // namespace tiler
