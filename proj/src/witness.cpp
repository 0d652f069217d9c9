#include "tiler/witness.hpp"

#include <algorithm>

#include "tiler/errors.hpp"

namespace tiler {

Rat Dist::total() const {
    Rat sum = 0;
    for (const auto& [v, w] : weights) sum += w;
    return sum;
}

Rat Dist::at(int v) const {
    auto it = std::lower_bound(weights.begin(), weights.end(), v,
                               [](const auto& e, int x) { return e.first < x; });
    if (it != weights.end() && it->first == v) return it->second;
    return 0;
}

Rat l1_distance(const Dist& p, const Dist& q) {
    if (p.total() != 1 || q.total() != 1)
        throw InputError("l1_distance requires normalized distributions");
    Rat sum = 0;
    size_t i = 0, j = 0;
    while (i < p.weights.size() || j < q.weights.size()) {
        if (j == q.weights.size() ||
            (i < p.weights.size() && p.weights[i].first < q.weights[j].first)) {
            sum += p.weights[i++].second;
        } else if (i == p.weights.size() || q.weights[j].first < p.weights[i].first) {
            sum += q.weights[j++].second;
        } else {
            sum += abs(p.weights[i].second - q.weights[j].second);
            ++i, ++j;
        }
    }
    return sum;
}

WitnessFamily uniform_ball_witness(const Graph& g, int r) {
    if (r < 0) throw InputError("negative radius");
    WitnessFamily w;
    w.support_radius = r;
    w.n = std::max(1, r);  // on cycles the neighbor L1 is 2/(2r+1) < 1/r
    w.dist.resize(g.vertex_count());
    for (int x = 0; x < g.vertex_count(); ++x) {
        VSet b = ball(g, x, r);
        Rat share(1, static_cast<long long>(b.size()));
        for (int y : b) w.dist[x].weights.emplace_back(y, share);
    }
    return w;
}

WitnessReport validate_witness(const Graph& g, const WitnessFamily& w) {
    if (static_cast<int>(w.dist.size()) != g.vertex_count())
        throw InputError("witness indexed by a different vertex set");
    WitnessReport rep;
    rep.max_neighbor_l1 = 0;
    rep.sums_ok = true;
    for (int x = 0; x < g.vertex_count(); ++x) {
        if (w.dist[x].total() != 1) rep.sums_ok = false;
        auto dist = bfs_distances(g, x);
        for (const auto& [y, weight] : w.dist[x].weights) {
            if (weight < 0) rep.sums_ok = false;
            if (weight > 0 && dist[y] != -1)
                rep.max_support_radius = std::max(rep.max_support_radius, dist[y]);
            if (weight > 0 && dist[y] == -1)
                throw InputError("witness weight across components at vertex " +
                                 std::to_string(x));
        }
        for (int z : g.adj[x])
            if (z > x)
                rep.max_neighbor_l1 =
                    std::max(rep.max_neighbor_l1, l1_distance(w.dist[x], w.dist[z]));
    }
    rep.radius_ok = rep.max_support_radius <= w.support_radius;
    rep.l1_ok = rep.max_neighbor_l1 * w.n < 1;
    return rep;
}

WitnessFamily rationalize(const WitnessFamily& w, const BigInt& m) {
    if (m < 1) throw InputError("grid denominator must be positive");
    for (const auto& d : w.dist)
        if (BigInt(d.weights.size()) > m)
            throw InputError("grid denominator below support size");
    WitnessFamily out;
    out.n = w.n;
    out.support_radius = w.support_radius;
    out.grid = m;
    out.dist.resize(w.dist.size());
    for (size_t x = 0; x < w.dist.size(); ++x) {
        const auto& entries = w.dist[x].weights;
        if (w.dist[x].total() != 1)
            throw InputError("rationalize requires normalized distributions");
        std::vector<BigInt> floors(entries.size());
        std::vector<Rat> remainders(entries.size());
        BigInt assigned = 0;
        for (size_t i = 0; i < entries.size(); ++i) {
            Rat raw = entries[i].second * m;
            floors[i] = rat_num(raw) / rat_den(raw);
            remainders[i] = raw - floors[i];
            assigned += floors[i];
        }
        BigInt residual = m - assigned;
        // Give the leftover units to the largest remainders, ties by vertex id.
        std::vector<size_t> order(entries.size());
        for (size_t i = 0; i < order.size(); ++i) order[i] = i;
        std::stable_sort(order.begin(), order.end(), [&](size_t a, size_t b) {
            return remainders[a] > remainders[b];
        });
        for (size_t i = 0; residual > 0; ++i, --residual) floors[order[i]] += 1;
        for (size_t i = 0; i < entries.size(); ++i)
            if (floors[i] > 0)
                out.dist[x].weights.emplace_back(entries[i].first, Rat(floors[i], m));
    }
    return out;
}

VSet truncate_support(const Graph& g, const WitnessFamily& w, int x, const Rat& eps) {
    if (!g.valid_vertex(x)) throw InputError("invalid vertex " + std::to_string(x));
    if (eps <= 0) throw InputError("threshold parameter must be positive");
    Rat threshold = 1 - eps / 3;
    auto dist = bfs_distances(g, x);
    const auto& entries = w.dist[x].weights;
    int max_r = 0;
    for (const auto& [y, weight] : entries)
        if (weight > 0) max_r = std::max(max_r, dist[y]);
    for (int r = 0; r <= max_r; ++r) {
        Rat mass = 0;
        VSet piece;
        for (const auto& [y, weight] : entries)
            if (weight > 0 && dist[y] != -1 && dist[y] <= r) {
                mass += weight;
                piece.push_back(y);
            }
        if (mass >= threshold) return piece;
    }
    throw InputError("distribution at vertex " + std::to_string(x) + " not normalized");
}

}  // namespace tiler
