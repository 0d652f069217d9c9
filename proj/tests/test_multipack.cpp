#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <numeric>

#include "tiler/errors.hpp"
#include "tiler/multipack.hpp"
#include "tiler/rng.hpp"

using namespace tiler;

namespace {

WitnessFamily point_mass_witness(const Graph& g) {
    WitnessFamily w;
    w.n = 1000;
    w.support_radius = 0;
    w.grid = 1;
    w.dist.resize(g.vertex_count());
    for (int v = 0; v < g.vertex_count(); ++v)
        w.dist[v].weights = {{v, Rat(1)}};
    return w;
}

// p(0) = (2/3, 1/3), p(1) = (1/3, 2/3) on the two-vertex path, grid 3.
WitnessFamily skewed_pair_witness() {
    WitnessFamily w;
    w.n = 1;
    w.support_radius = 1;
    w.grid = 3;
    w.dist.resize(2);
    w.dist[0].weights = {{0, Rat(2, 3)}, {1, Rat(1, 3)}};
    w.dist[1].weights = {{0, Rat(1, 3)}, {1, Rat(2, 3)}};
    return w;
}

VSet arc(int n, int start, int len) {
    VSet out;
    for (int i = 0; i < len; ++i) out.push_back((start + i) % n);
    std::sort(out.begin(), out.end());
    return out;
}

// Tile index per vertex, -1 when uncovered.
std::vector<int> tile_ids(const Graph& g, const Packing& p) {
    std::vector<int> tid(g.vertex_count(), -1);
    for (std::size_t t = 0; t < p.tiles.size(); ++t)
        for (int v : p.tiles[t]) tid[v] = static_cast<int>(t);
    return tid;
}

Packing random_packing(const Graph& g, std::uint64_t seed, int max_tiles,
                       int growth, int gap = 0) {
    std::vector<char> blocked(g.vertex_count(), 0);
    std::vector<VSet> tiles;
    for (int t = 0; t < max_tiles; ++t) {
        int start = static_cast<int>(
            draw_below(draw_u64(seed, t, 0), g.vertex_count()));
        if (blocked[start]) continue;
        VSet tile = {start};
        for (int step = 0; step < growth; ++step) {
            VSet frontier;
            for (int v : tile)
                for (int u : g.adj[v])
                    if (!blocked[u] && !vset_contains(tile, u)) frontier.push_back(u);
            if (frontier.empty()) break;
            std::sort(frontier.begin(), frontier.end());
            frontier.erase(std::unique(frontier.begin(), frontier.end()), frontier.end());
            int pick = frontier[draw_below(draw_u64(seed, t, 1, step), frontier.size())];
            tile.insert(std::lower_bound(tile.begin(), tile.end(), pick), pick);
        }
        bool clean = true;
        for (int v : tile)
            if (blocked[v]) clean = false;
        if (!clean) continue;
        for (int v : tile) blocked[v] = 1;
        if (gap > 0)
            for (int v : neighborhood(g, tile, gap)) blocked[v] = 1;
        tiles.push_back(tile);
    }
    if (tiles.empty()) return Packing{{}, 0, g.name};
    return make_packing(g, tiles);
}

Multipacking random_multipacking(const Graph& g, std::uint64_t seed, int m,
                                 int max_tiles, int growth, int gap = 0) {
    Multipacking mp;
    for (int i = 0; i < m; ++i)
        mp.packings.push_back(
            random_packing(g, draw_u64(seed, 7000 + i), max_tiles, growth, gap));
    return mp;
}

}  // namespace

TEST_CASE("lifted_support and lifted_jaccard on rationalized witnesses") {
    auto c6 = make_cycle(6);
    auto w = rationalize(uniform_ball_witness(c6, 1), 3);
    REQUIRE(w.grid == 3);

    auto q0 = lifted_support(w, 0);
    REQUIRE(q0.size() == 3);
    CHECK(q0[0] == LiftedPoint{0, 1});
    CHECK(q0[1] == LiftedPoint{1, 1});
    CHECK(q0[2] == LiftedPoint{5, 1});

    CHECK(lifted_jaccard(w, 0, 1) == Rat(1, 2));
    CHECK(lifted_jaccard(w, 0, 2) == Rat(1, 5));
    CHECK(lifted_jaccard(w, 0, 3) == 0);
    CHECK(lifted_jaccard(w, 0, 0) == 1);

    auto skew = skewed_pair_witness();
    CHECK(lifted_jaccard(skew, 0, 1) == Rat(1, 2));
    auto qs = lifted_support(skew, 0);
    REQUIRE(qs.size() == 3);
    CHECK(qs[0] == LiftedPoint{0, 1});
    CHECK(qs[1] == LiftedPoint{0, 2});
    CHECK(qs[2] == LiftedPoint{1, 1});

    SUBCASE("refuses witnesses without a grid") {
        auto raw = uniform_ball_witness(c6, 1);
        CHECK(raw.grid == 0);
        CHECK_THROWS_AS(lifted_support(raw, 0), InputError);
    }
    SUBCASE("refuses weights off the grid") {
        WitnessFamily bad = skewed_pair_witness();
        bad.grid = 2;
        CHECK_THROWS_AS(lifted_support(bad, 0), InputError);
    }
}

TEST_CASE("build_partitions degenerate inputs") {
    auto p5 = make_path(5);
    auto parts = build_partitions(p5, point_mass_witness(p5), 3, 99);
    REQUIRE(parts.size() == 3);
    for (const auto& p : parts) {
        CHECK(p.tiles == std::vector<VSet>{{0}, {1}, {2}, {3}, {4}});
        CHECK(p.diameter_bound == 0);
    }

    auto one = make_path(1);
    auto solo = build_partitions(one, point_mass_witness(one), 2, 5);
    for (const auto& p : solo) CHECK(p.tiles == std::vector<VSet>{{0}});

    CHECK_THROWS_AS(build_partitions(p5, uniform_ball_witness(p5, 1), 2, 1),
                    InputError);
    CHECK_THROWS_AS(build_partitions(p5, point_mass_witness(p5), 0, 1),
                    InputError);
    auto c6 = make_cycle(6);
    CHECK_THROWS_AS(
        build_partitions(c6, point_mass_witness(make_path(5)), 1, 1),
        InputError);
}

TEST_CASE("build_partitions on C_6 matches the exact same-tile probability") {
    auto c6 = make_cycle(6);
    auto w = rationalize(uniform_ball_witness(c6, 1), 3);
    const int trials = 10000;
    long long collisions = -1;
    auto parts = build_partitions(c6, w, trials, 20240601, &collisions);
    REQUIRE(parts.size() == trials);
    CHECK(collisions == 0);

    std::vector<long long> same_tile(6, 0);
    for (const auto& p : parts) {
        CHECK(p.diameter_bound <= 2 * w.support_radius);
        std::size_t covered = 0;
        for (const auto& t : p.tiles) covered += t.size();
        REQUIRE(covered == 6);
        auto tid = tile_ids(c6, p);
        for (int x = 0; x < 6; ++x)
            if (tid[x] == tid[(x + 1) % 6]) ++same_tile[x];
    }
    const std::vector<long long> pinned = {5012, 4948, 5061, 5016, 5000, 5048};
    for (int x = 0; x < 6; ++x) {
        Rat jac = lifted_jaccard(w, x, (x + 1) % 6);
        REQUIRE(jac == Rat(1, 2));
        // Equal shared weights, so the frequency must sit within 3 sigma of
        // the Jaccard value itself.
        Rat hat(same_tile[x], trials);
        Rat sigma_sq = jac * (1 - jac) / trials;
        CHECK((hat - jac) * (hat - jac) <= 9 * sigma_sq);
        CHECK(same_tile[x] == pinned[x]);
    }
}

TEST_CASE("partition_from_permutation replays the two-vertex enumeration") {
    auto p2 = make_path(2);
    auto w = skewed_pair_witness();
    auto coloring = distance_coloring(p2, 3);
    REQUIRE(coloring.num_colors == 2);
    REQUIRE(coloring.separation_radius >= 3);

    std::vector<int> perm(6);
    std::iota(perm.begin(), perm.end(), 0);
    auto ident = partition_from_permutation(p2, w, coloring, perm);
    CHECK(ident.tiles == std::vector<VSet>{{0, 1}});

    long long joined = 0, total = 0;
    std::sort(perm.begin(), perm.end());
    do {
        auto part = partition_from_permutation(p2, w, coloring, perm);
        std::size_t covered = 0;
        for (const auto& t : part.tiles) covered += t.size();
        REQUIRE(covered == 2);
        if (part.tiles.size() == 1) ++joined;
        ++total;
    } while (std::next_permutation(perm.begin(), perm.end()));
    CHECK(total == 720);
    // Exceeds the Jaccard floor of 1/2 because the shared support vertices
    // carry unequal weights.
    CHECK(joined == 480);

    SUBCASE("input validation") {
        std::vector<int> short_perm = {0, 1, 2};
        CHECK_THROWS_AS(partition_from_permutation(p2, w, coloring, short_perm),
                        InputError);
        std::vector<int> dup = {0, 1, 2, 3, 4, 4};
        CHECK_THROWS_AS(partition_from_permutation(p2, w, coloring, dup),
                        InputError);
        Coloring weak = coloring;
        weak.separation_radius = 1;
        std::vector<int> full(6);
        std::iota(full.begin(), full.end(), 0);
        CHECK_THROWS_AS(partition_from_permutation(p2, w, weak, full),
                        InputError);
    }
}

TEST_CASE("partitions_to_multipacking shrinks each partition tilewise") {
    auto c12 = make_cycle(12);
    VSet all(12);
    std::iota(all.begin(), all.end(), 0);

    auto whole = make_packing(c12, {all});
    auto mp = partitions_to_multipacking(c12, {whole, whole, whole}, 2);
    REQUIRE(mp.m() == 3);
    for (const auto& p : mp.packings) CHECK(p.tiles == std::vector<VSet>{all});

    auto p4 = make_path(4);
    auto singletons = make_packing(p4, {{0}, {1}, {2}, {3}});
    auto empty_mp = partitions_to_multipacking(p4, {singletons, singletons}, 1);
    for (const auto& p : empty_mp.packings) CHECK(p.tiles.empty());

    auto halves = make_packing(c12, {arc(12, 0, 6), arc(12, 6, 6)});
    auto shrunk = partitions_to_multipacking(c12, {halves}, 1);
    REQUIRE(shrunk.m() == 1);
    CHECK(shrunk.packings[0].tiles ==
          std::vector<VSet>{{1, 2, 3, 4}, {7, 8, 9, 10}});
    CHECK(is_s_separated(c12, shrunk.packings[0], 1));

    CHECK_THROWS_AS(partitions_to_multipacking(c12, {whole}, 0), InputError);
}

TEST_CASE("tightness_defect counts the worst vertex exactly") {
    auto c6 = make_cycle(6);
    VSet all = {0, 1, 2, 3, 4, 5};
    auto whole = make_packing(c6, {all});
    auto halves = make_packing(c6, {arc(6, 0, 3), arc(6, 3, 3)});
    Packing empty = make_packing(c6, {});

    CHECK(tightness_defect(c6, Multipacking{{whole, halves, whole}}) == 0);
    CHECK(tightness_defect(c6, Multipacking{{empty}}) == 1);
    CHECK(tightness_defect(c6, Multipacking{{whole, empty}}) == Rat(1, 2));
    CHECK_THROWS_AS(tightness_defect(c6, Multipacking{}), InputError);

    auto grid = make_grid({3, 4});
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        auto mp = random_multipacking(grid, draw_u64(404, seed), 3, 3, 4);
        Rat defect = tightness_defect(grid, mp);
        Rat worst = 0;
        for (int v = 0; v < grid.vertex_count(); ++v) {
            int miss = 0;
            for (const auto& p : mp.packings)
                if (!vset_contains(covered_set(p), v)) ++miss;
            worst = std::max(worst, Rat(miss, mp.m()));
        }
        CHECK(defect == worst);
    }
}

TEST_CASE("shrink_defect_bound_check verifies the degree-power factor") {
    auto c8 = make_cycle(8);
    std::vector<Packing> rotations;
    for (int k = 0; k < 4; ++k)
        rotations.push_back(
            make_packing(c8, {arc(8, 2 * k, 4), arc(8, 2 * k + 4, 4)}));
    // Every vertex lies in exactly 2 of the 4 shifted partitions' shrunk
    // covers, so both defects are pinned by hand.
    Multipacking flat;
    for (const auto& r : rotations) flat.packings.push_back(shrink_tilewise(c8, r, 1));
    CHECK(tightness_defect(c8, flat) == Rat(1, 2));

    Multipacking shrunk_once;
    for (const auto& p : flat.packings) shrunk_once.packings.push_back(shrink(c8, p, 1));
    CHECK(tightness_defect(c8, shrunk_once) == 1);
    CHECK(shrink_defect_bound_check(c8, flat, 1));

    auto star = make_star(3);
    Multipacking center{{make_packing(star, {{0}})}};
    CHECK(tightness_defect(star, center) == 1);
    CHECK(shrink_defect_bound_check(star, center, 1));

    VSet all = {0, 1, 2, 3, 4, 5, 6, 7};
    Multipacking covers{{make_packing(c8, {all}), make_packing(c8, {all})}};
    CHECK(tightness_defect(c8, covers) == 0);
    CHECK(shrink_defect_bound_check(c8, covers, 1));

    // Degree bound at least 2 makes the factor d^(s+1) dominate the ball
    // size, so the check holds on every instance.
    std::vector<Graph> hosts = {make_cycle(10), make_grid({3, 4}),
                                make_regular_tree(3, 3)};
    for (const auto& g : hosts)
        for (std::uint64_t seed = 0; seed < 15; ++seed)
            for (int s = 1; s <= 2; ++s) {
                auto mp = random_multipacking(g, draw_u64(505, seed), 3, 3, 4);
                CHECK(shrink_defect_bound_check(g, mp, s));
            }
}

TEST_CASE("witness_from_multipacking averages tile uniforms") {
    auto p6 = make_path(6);
    auto part = make_packing(p6, {{0, 1, 2}, {3, 4, 5}});

    auto w1 = witness_from_multipacking(p6, Multipacking{{part}});
    CHECK(w1.dist[0].weights ==
          std::vector<std::pair<int, Rat>>{{0, Rat(1, 3)}, {1, Rat(1, 3)}, {2, Rat(1, 3)}});
    CHECK(w1.dist[4].weights ==
          std::vector<std::pair<int, Rat>>{{3, Rat(1, 3)}, {4, Rat(1, 3)}, {5, Rat(1, 3)}});
    CHECK(w1.support_radius == 2);
    CHECK(w1.n == 1);

    auto w3 = witness_from_multipacking(p6, Multipacking{{part, part, part}});
    for (int v = 0; v < 6; ++v) CHECK(w3.dist[v].weights == w1.dist[v].weights);

    auto c6 = make_cycle(6);
    Multipacking two{{make_packing(c6, {{0, 1, 2}, {3, 4, 5}}),
                      make_packing(c6, {{1, 2, 3}, {0, 4, 5}})}};
    auto w = witness_from_multipacking(c6, two);
    CHECK(w.dist[0].weights ==
          std::vector<std::pair<int, Rat>>{
              {0, Rat(1, 3)}, {1, Rat(1, 6)}, {2, Rat(1, 6)}, {4, Rat(1, 6)}, {5, Rat(1, 6)}});
    CHECK(w.dist[1].weights ==
          std::vector<std::pair<int, Rat>>{
              {0, Rat(1, 6)}, {1, Rat(1, 3)}, {2, Rat(1, 3)}, {3, Rat(1, 6)}});

    auto p4 = make_path(4);
    CHECK_THROWS_WITH_AS(
        witness_from_multipacking(p4, Multipacking{{make_packing(p4, {{0, 1}})}}),
        doctest::Contains("vertex 2"), InputError);
    CHECK_THROWS_AS(witness_from_multipacking(p4, Multipacking{}), InputError);
}

TEST_CASE("round trip bound holds for separated multipackings") {
    // Six shifts of the 6-arc partition of C_12, each shrunk tilewise by 1:
    // every vertex is covered by exactly 4 of the 6 members.
    auto c12 = make_cycle(12);
    std::vector<Packing> parts;
    for (int k = 0; k < 6; ++k)
        parts.push_back(make_packing(c12, {arc(12, k, 6), arc(12, k + 6, 6)}));
    auto mp = partitions_to_multipacking(c12, parts, 1);
    for (const auto& p : mp.packings) CHECK(is_s_separated(c12, p, 1));

    Rat defect = tightness_defect(c12, mp);
    CHECK(defect == Rat(1, 3));

    auto w = witness_from_multipacking(c12, mp);
    CHECK(w.support_radius <= 3);
    Rat bound = 2 * defect / (1 - defect);
    Rat max_l1 = 0;
    for (int x = 0; x < 12; ++x)
        max_l1 = std::max(max_l1, l1_distance(w.dist[x], w.dist[(x + 1) % 12]));
    CHECK(max_l1 <= bound);

    // Without separation the bound fails: a single full partition has defect
    // zero, yet neighbors across the tile boundary disagree completely.
    auto halves = make_packing(c12, {arc(12, 0, 6), arc(12, 6, 6)});
    Multipacking partition_only{{halves}};
    CHECK(tightness_defect(c12, partition_only) == 0);
    auto wp = witness_from_multipacking(c12, partition_only);
    CHECK(l1_distance(wp.dist[5], wp.dist[6]) == 2);

    std::vector<Graph> hosts = {make_cycle(16), make_grid({4, 4})};
    for (const auto& g : hosts)
        for (std::uint64_t seed = 0; seed < 25; ++seed) {
            auto rand_mp = random_multipacking(g, draw_u64(606, seed), 5, 4, 3, 1);
            for (const auto& p : rand_mp.packings) REQUIRE(is_s_separated(g, p, 1));
            Rat eps = tightness_defect(g, rand_mp);
            if (eps == 1) continue;  // some vertex misses every member
            int max_tile_diam = 0;
            for (const auto& p : rand_mp.packings)
                max_tile_diam = std::max(max_tile_diam, p.diameter_bound);
            WitnessFamily rw;
            try {
                rw = witness_from_multipacking(g, rand_mp);
            } catch (const InputError&) {
                continue;
            }
            CHECK(rw.support_radius <= max_tile_diam);
            Rat cap = 2 * eps / (1 - eps);
            for (int x = 0; x < g.vertex_count(); ++x)
                for (int y : g.adj[x])
                    if (x < y) CHECK(l1_distance(rw.dist[x], rw.dist[y]) <= cap);
        }
}

TEST_CASE("measure_tight_count with exact square-root comparisons") {
    auto c6 = make_cycle(6);
    VSet all = {0, 1, 2, 3, 4, 5};
    auto whole = make_packing(c6, {all});
    Multipacking covers{{whole, whole, whole}};
    CHECK(measure_tight_count(c6, covers, uniform_measure(c6), Rat(1, 100)) == 3);

    Multipacking lone{{make_packing(c6, {})}};
    CHECK(measure_tight_count(c6, lone, uniform_measure(c6), Rat(1)) == 1);
    CHECK(measure_tight_count(c6, lone, uniform_measure(c6), Rat(1, 2)) == 0);

    auto c4 = make_cycle(4);
    Multipacking pair{{make_packing(c4, {{0, 1, 2}}),
                       make_packing(c4, {{0, 1, 2, 3}})}};
    int count = measure_tight_count(c4, pair, uniform_measure(c4), Rat(1, 16));
    CHECK(count == 2);
    CHECK(at_least_one_minus_sqrt(Rat(count, pair.m()), Rat(1, 16)));

    Measure bad = uniform_measure(c4);
    bad.mass[0] = Rat(1, 2);
    CHECK_THROWS_AS(measure_tight_count(c4, pair, bad, Rat(1, 4)), InputError);
    CHECK_THROWS_AS(
        measure_tight_count(c4, pair, uniform_measure(c4), Rat(-1, 4)),
        InputError);
    CHECK_THROWS_AS(
        measure_tight_count(c4, pair, uniform_measure(c6), Rat(1, 4)),
        InputError);

    // Tightness pushes most members close to full mass: with defect < eps,
    // at least (1 - sqrt(eps)) m members weigh at least 1 - sqrt(eps).
    auto c12 = make_cycle(12);
    std::vector<Packing> parts;
    for (int k = 0; k < 6; ++k)
        parts.push_back(make_packing(c12, {arc(12, k, 6), arc(12, k + 6, 6)}));
    auto mp = partitions_to_multipacking(c12, parts, 1);
    Rat eps(1, 2);
    REQUIRE(tightness_defect(c12, mp) < eps);
    int tight = measure_tight_count(c12, mp, uniform_measure(c12), eps);
    CHECK(tight == 6);
    CHECK(at_least_one_minus_sqrt(Rat(tight, mp.m()), eps));

    std::vector<Graph> hosts = {make_cycle(14), make_grid({3, 5})};
    for (const auto& g : hosts)
        for (std::uint64_t seed = 0; seed < 20; ++seed) {
            auto rand_mp = random_multipacking(g, draw_u64(707, seed), 4, 4, 4);
            Rat defect = tightness_defect(g, rand_mp);
            Rat bound_eps = (1 + defect) / 2;
            int n_tight =
                measure_tight_count(g, rand_mp, uniform_measure(g), bound_eps);
            CHECK(at_least_one_minus_sqrt(Rat(n_tight, rand_mp.m()), bound_eps));
        }
}
