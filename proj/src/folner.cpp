#include "tiler/folner.hpp"

#include <algorithm>
#include <limits>

#include "tiler/errors.hpp"

namespace tiler {

namespace {

void check_config(const FolnerSearchConfig& cfg) {
    if (cfg.epsilon <= 0 || cfg.epsilon >= 1)
        throw InputError("epsilon must lie strictly between 0 and 1");
    if (cfg.max_radius < 1) throw InputError("max_radius must be at least 1");
    if (cfg.candidate_budget < 1) throw InputError("candidate_budget must be at least 1");
}

struct Candidate {
    Rat quotient;
    VSet members;

    bool better_than(const Candidate& other) const {
        if (quotient != other.quotient) return quotient < other.quotient;
        if (members.size() != other.members.size())
            return members.size() < other.members.size();
        return members < other.members;
    }
};

// Strictly improving local search within `region`: add an outside neighbor or
// drop a boundary vertex, whichever lowers the quotient most. Vertices of
// `pinned` are never dropped. Every evaluated candidate costs one budget unit.
VSet hill_climb(const Graph& g, VSet l, const VSet& region, const VSet& pinned,
                long long& budget) {
    Candidate current{folner_quotient(g, l), std::move(l)};
    for (;;) {
        std::optional<Candidate> best;
        auto consider = [&](VSet&& members) {
            if (budget <= 0) return;
            --budget;
            Candidate c{folner_quotient(g, members), std::move(members)};
            if (c.better_than(current) && (!best || c.better_than(*best)))
                best = std::move(c);
        };
        VSet fringe = set_difference(
            set_intersection(neighborhood(g, current.members, 1), region),
            current.members);
        for (int v : fringe) {
            VSet grown = current.members;
            grown.insert(std::lower_bound(grown.begin(), grown.end(), v), v);
            consider(std::move(grown));
        }
        if (current.members.size() > 1) {
            for (int v : set_difference(boundary(g, current.members), pinned))
                consider(set_difference(current.members, {v}));
        }
        if (!best || budget <= 0) break;
        current = std::move(*best);
        if (budget <= 0) break;
    }
    return current.members;
}

}  // namespace

long long folner_size_floor(const Rat& eps) {
    BigInt floor_val = (2 * rat_den(eps)) / rat_num(eps);
    return static_cast<long long>(floor_val) + 1;
}

std::optional<VSet> find_folner_in_ball(const Graph& g, int x,
                                        const FolnerSearchConfig& cfg) {
    if (!g.valid_vertex(x)) throw InputError("invalid center vertex");
    check_config(cfg);
    long long budget = cfg.candidate_budget;
    const long long floor = folner_size_floor(cfg.epsilon);

    VSet region = ball(g, x, cfg.max_radius);
    std::optional<Candidate> seed;
    std::optional<Candidate> best_ball;
    for (int r = 0; r <= cfg.max_radius && budget > 0; ++r) {
        VSet b = ball(g, x, r);
        bool saturated = r == cfg.max_radius ||
                         static_cast<int>(b.size()) == g.vertex_count() ||
                         ball(g, x, r + 1).size() == b.size();
        --budget;
        Candidate c{folner_quotient(g, b), std::move(b)};
        if (!best_ball || c.better_than(*best_ball)) best_ball = c;
        if (c.quotient < cfg.epsilon &&
            (static_cast<long long>(c.members.size()) >= floor || saturated)) {
            seed = std::move(c);
            break;
        }
        if (saturated) break;
    }

    VSet l = hill_climb(g, seed ? std::move(seed->members) : std::move(best_ball->members),
                        region, {}, budget);
    if (folner_quotient(g, l) < cfg.epsilon) return l;
    return std::nullopt;
}

std::optional<VSet> find_folner_containing(const Graph& g, const VSet& j,
                                           const Rat& epsilon, int max_radius) {
    if (j.empty()) throw InputError("seed set is empty");
    if (set_diameter(g, j) == kUnbounded)
        throw InputError("seed set spans several components");
    if (epsilon <= 0 || epsilon >= 1)
        throw InputError("epsilon must lie strictly between 0 and 1");
    if (max_radius < 0) throw InputError("max_radius must be nonnegative");
    if (quotient_below(g, j, epsilon)) return j;

    VSet region = neighborhood(g, j, max_radius);
    std::optional<Candidate> seed;
    std::optional<Candidate> best_layer;
    for (int r = 0; r <= max_radius; ++r) {
        Candidate c{Rat(0), neighborhood(g, j, r)};
        c.quotient = folner_quotient(g, c.members);
        bool saturated = c.members.size() == region.size();
        if (!best_layer || c.better_than(*best_layer)) best_layer = c;
        if (c.quotient < epsilon) {
            seed = std::move(c);
            break;
        }
        if (saturated) break;
    }

    long long budget = std::numeric_limits<long long>::max();
    VSet l = hill_climb(g, seed ? std::move(seed->members) : std::move(best_layer->members),
                        region, j, budget);
    if (folner_quotient(g, l) < epsilon) return l;
    return std::nullopt;
}

namespace {

// Balls of the subgraph induced on the live remainder, by increasing radius.
// Returns the accepted tile or nothing. Growth stops at the ambient diameter
// cap or when the remainder component around the center is exhausted.
std::optional<VSet> peel_ball(const Graph& g, const std::vector<char>& live,
                              int center, const Rat& epsilon, int k_cap,
                              long long floor) {
    std::vector<int> dist(g.vertex_count(), -1);
    dist[center] = 0;
    VSet frontier = {center};
    VSet members = {center};
    auto admissible = [&](const VSet& b) {
        return set_diameter(g, b) <= k_cap;
    };
    VSet last_ok = admissible(members) ? members : VSet{};
    for (;;) {
        if (!last_ok.empty() && quotient_below(g, last_ok, epsilon) &&
            static_cast<long long>(last_ok.size()) >= floor)
            return last_ok;
        VSet next;
        for (int v : frontier)
            for (int u : g.adj[v])
                if (live[u] && dist[u] == -1) {
                    dist[u] = dist[v] + 1;
                    next.push_back(u);
                }
        std::sort(next.begin(), next.end());
        next.erase(std::unique(next.begin(), next.end()), next.end());
        if (next.empty()) break;
        VSet grown = set_union(members, next);
        if (!admissible(grown)) break;
        members = std::move(grown);
        frontier = std::move(next);
        last_ok = members;
    }
    if (!last_ok.empty() && quotient_below(g, last_ok, epsilon)) return last_ok;
    return std::nullopt;
}

}  // namespace

PackingResult packing_principle(const Graph& g, const VSet& j,
                                const Rat& epsilon, int k_cap) {
    if (j.empty()) throw InputError("probe set is empty");
    if (k_cap < 1) throw InputError("diameter cap must be at least 1");
    if (epsilon <= 0 || epsilon >= 1)
        throw InputError("epsilon must lie strictly between 0 and 1");
    const long long floor = folner_size_floor(epsilon);

    std::vector<char> live(g.vertex_count(), 0);
    for (int v : j) live[v] = 1;
    auto remove_from_remainder = [&](const VSet& s) {
        for (int v : s) live[v] = 0;
    };
    auto remainder = [&] {
        VSet out;
        for (int v : j)
            if (live[v]) out.push_back(v);
        return out;
    };

    std::vector<VSet> tiles;
    for (bool progress = true; progress;) {
        progress = false;
        for (const auto& comp : components_within(g, remainder())) {
            if (set_diameter(g, comp) <= k_cap && quotient_below(g, comp, epsilon)) {
                remove_from_remainder(comp);
                tiles.push_back(comp);
                progress = true;
            }
        }
        for (int c : remainder()) {
            if (!live[c]) continue;
            if (auto tile = peel_ball(g, live, c, epsilon, k_cap, floor)) {
                remove_from_remainder(*tile);
                tiles.push_back(std::move(*tile));
                progress = true;
            }
        }
        std::sort(tiles.begin(), tiles.end(),
                  [](const VSet& a, const VSet& b) { return a.front() < b.front(); });
        for (const auto& comp : components_within(g, remainder())) {
            VSet reach = neighborhood(g, comp, 1);
            for (auto& tile : tiles) {
                if (set_intersection(reach, tile).empty()) continue;
                VSet merged = set_union(tile, comp);
                if (set_diameter(g, merged) <= k_cap &&
                    quotient_below(g, merged, epsilon)) {
                    tile = std::move(merged);
                    remove_from_remainder(comp);
                    progress = true;
                    break;
                }
            }
        }
    }

    PackingResult result;
    long long covered = 0;
    for (const auto& t : tiles) covered += static_cast<long long>(t.size());
    result.coverage = Rat(covered, static_cast<long long>(j.size()));
    if (tiles.empty())
        result.packing.host = g.name;
    else
        result.packing = make_packing(g, std::move(tiles));
    return result;
}

}  // namespace tiler
