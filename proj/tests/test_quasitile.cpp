#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <set>

#include "tiler/errors.hpp"
#include "tiler/quasitile.hpp"

using namespace tiler;

namespace {

VSet arc(int n, int start, int len) {
    VSet out;
    for (int i = 0; i < len; ++i) out.push_back((start + i) % n);
    std::sort(out.begin(), out.end());
    return out;
}

VSet range(int lo, int hi) {
    VSet out;
    for (int v = lo; v <= hi; ++v) out.push_back(v);
    return out;
}

QuasiTileConfig manual_config(const Rat& eps0, int k0, int k1, const Rat& eps1) {
    QuasiTileConfig cfg;
    cfg.epsilon0 = eps0;
    cfg.rounds = 4;
    cfg.k0 = k0;
    cfg.k1 = k1;
    cfg.eps1 = eps1;
    cfg.eps2 = eps1 / 3;
    return cfg;
}

// Largest subset of diameter at most k, by exhaustive scan. Hosts stay tiny.
std::size_t brute_max_diameter_set(const Graph& g, int k) {
    const int n = g.vertex_count();
    std::size_t best = 0;
    for (std::uint32_t mask = 1; mask < (1u << n); ++mask) {
        VSet s;
        for (int i = 0; i < n; ++i) {
            if (mask & (1u << i)) s.push_back(i);
        }
        const int diam = set_diameter(g, s);
        if (diam != kUnbounded && diam <= k) best = std::max(best, s.size());
    }
    return best;
}

Multipacking whole_component_multipacking(const Graph& g, int copies) {
    const Packing whole = make_packing(g, components(g));
    Multipacking mp;
    mp.packings.assign(static_cast<std::size_t>(copies), whole);
    return mp;
}

// Count of improved mediator tiles contained in j during one round.
int improvements_inside(const QuasiTileTrace& trace, int round, const VSet& j) {
    int h = 0;
    for (const auto& step : trace.steps) {
        if (step.round != round) continue;
        for (const auto& tile : step.improved) {
            if (is_subset(tile, j)) ++h;
        }
    }
    return h;
}

void check_round_ledger(const Graph& g, const QuasiTileTrace& trace, int k1, int n) {
    for (int round = 1; round <= trace.rounds_run; ++round) {
        const auto& before = trace.coverage_by_round[static_cast<std::size_t>(round - 1)];
        const auto& after = trace.coverage_by_round[static_cast<std::size_t>(round)];
        for (std::size_t p = 0; p < trace.probes.size(); ++p) {
            const auto& j = trace.probes[p];
            const Rat size(static_cast<long long>(j.size()));
            const Rat gain = (after[p] - before[p]) * size;
            const long long border =
                static_cast<long long>(k_boundary(g, j, k1).size());
            const int h = improvements_inside(trace, round, j);
            CHECK(gain >= Rat(h) - Rat(n) * Rat(border));
        }
    }
}

void check_monotone_progress(const QuasiTileTrace& trace, const Rat& eps0) {
    for (int round = 1; round <= trace.rounds_run; ++round) {
        const auto& before = trace.coverage_by_round[static_cast<std::size_t>(round - 1)];
        const auto& after = trace.coverage_by_round[static_cast<std::size_t>(round)];
        for (std::size_t p = 0; p < trace.probes.size(); ++p) {
            const Rat size(static_cast<long long>(trace.probes[p].size()));
            const bool met = after[p] >= Rat(1) - eps0;
            const bool gained = (after[p] - before[p]) * size >= 1;
            CHECK((met || gained));
        }
    }
}

void check_tiles_folner(const Graph& g, const Packing& f, const Rat& eps0, int k0) {
    CHECK(validate_packing(g, f));
    for (const auto& t : f.tiles) {
        CHECK(quotient_below(g, t, eps0));
        const int diam = set_diameter(g, t);
        CHECK(diam != kUnbounded);
        CHECK(diam <= k0);
    }
}

}  // namespace

TEST_CASE("calibration on the sixty-cycle settles on the thirteen-arc scale") {
    const Graph c60 = make_cycle(60);
    const CalibrationResult cal = calibrate_packing_constants(c60, Rat(1, 6));
    CHECK(cal.k == 12);
    CHECK(cal.delta == Rat(2, 59));
    CHECK(cal.probe_log.find("193 qualifying probes") != std::string::npos);
    CHECK(cal.probe_log.find("k=12 bad=112 delta=2/59 family=1") != std::string::npos);

    // The binding probe: a ball one vertex short of the cycle strands two
    // stubs around the hole, so four thirteen-arcs are all the peel places.
    const PackingResult run = packing_principle(c60, ball(c60, 0, 29), Rat(1, 6), 12);
    CHECK(run.coverage == Rat(39, 59));
    CHECK(run.coverage < Rat(5, 6));
    CHECK(folner_quotient(c60, ball(c60, 0, 29)) == Rat(2, 59));

    // Everything strictly below delta packs fine: the whole cycle.
    const PackingResult whole = packing_principle(c60, range(0, 59), Rat(1, 6), 12);
    CHECK(whole.coverage == Rat(13, 15));
    CHECK(whole.coverage >= Rat(5, 6));
}

TEST_CASE("calibration input validation and budget exhaustion") {
    const Graph c60 = make_cycle(60);
    CHECK_THROWS_AS(calibrate_packing_constants(c60, Rat(0)), InputError);
    CHECK_THROWS_AS(calibrate_packing_constants(c60, Rat(1)), InputError);
    CHECK_THROWS_AS(calibrate_packing_constants(c60, Rat(-1, 2)), InputError);
    CHECK_THROWS_AS(calibrate_packing_constants(c60, Rat(1, 6), 0), InputError);
    CHECK_THROWS_AS(calibrate_packing_constants(from_edge_list(0, {}, "empty"), Rat(1, 6)),
                    InputError);
    try {
        calibrate_packing_constants(c60, Rat(1, 6), 3);
        FAIL("budget of three packing runs cannot succeed here");
    } catch (const CalibrationError& e) {
        CHECK(e.probe_log.find("budget exhausted") != std::string::npos);
    }
}

TEST_CASE("derived constants on the sixty-cycle") {
    const Graph c60 = make_cycle(60);
    const QuasiTileConfig cfg = derive_constants(c60, Rat(1, 2));
    CHECK(cfg.epsilon0 == Rat(1, 2));
    CHECK(cfg.k0 == 12);
    // eps1 = (2/59) / 2^13
    CHECK(cfg.eps1 == Rat(1, 241664));
    CHECK(cfg.k1 == 30);
    // second calibration finds no bad probe, so delta stays eps1/3
    CHECK(cfg.eps2 == Rat(1, 724992));
    CHECK(cfg.rounds == 60);

    CHECK_THROWS_AS(derive_constants(c60, Rat(1)), InputError);
    CHECK_THROWS_AS(derive_constants(c60, Rat(3, 2)), InputError);
    CHECK_THROWS_AS(derive_constants(c60, Rat(0)), InputError);
    CHECK_THROWS_AS(derive_constants(from_edge_list(0, {}, "empty"), Rat(1, 2)),
                    InputError);
}

TEST_CASE("derived constants on a single vertex") {
    const QuasiTileConfig cfg = derive_constants(make_path(1), Rat(1, 2));
    CHECK(cfg.k0 == 0);
    CHECK(cfg.k1 == 0);
    CHECK(cfg.eps1 == Rat(1, 6));
    CHECK(cfg.eps2 == Rat(1, 18));
}

TEST_CASE("size bound for bounded-diameter sets") {
    CHECK(max_diameter_set_size(2, 0) == 1);
    CHECK(max_diameter_set_size(2, 3) == 7);
    CHECK(max_diameter_set_size(2, 30) == 61);
    CHECK(max_diameter_set_size(3, 2) == 10);
    CHECK(max_diameter_set_size(4, 1) == 5);
    CHECK(max_diameter_set_size(1, 0) == 1);
    CHECK(max_diameter_set_size(1, 5) == 2);
    CHECK(max_diameter_set_size(0, 7) == 1);
    CHECK_THROWS_AS(max_diameter_set_size(-1, 2), InputError);
    CHECK_THROWS_AS(max_diameter_set_size(2, -1), InputError);

    // Valid upper bound against exhaustive search; tight on a complete graph.
    const Graph c10 = make_cycle(10);
    CHECK(brute_max_diameter_set(c10, 2) == 3);
    CHECK(max_diameter_set_size(2, 2) >= 3);
    const Graph k5 = make_complete(5);
    CHECK(brute_max_diameter_set(k5, 1) == 5);
    CHECK(max_diameter_set_size(4, 1) == 5);
    for (int k = 1; k <= 4; ++k) {
        CHECK(BigInt(static_cast<long long>(brute_max_diameter_set(c10, k))) <=
              max_diameter_set_size(2, k));
    }
}

TEST_CASE("eps2 finalization picks the smaller branch") {
    const Graph c60 = make_cycle(60);
    const QuasiTileConfig cfg = derive_constants(c60, Rat(1, 2));
    // (1/2) / (3 * 61 * 1 * 2^62) = 1 / (183 * 2^63)
    const Rat combinatorial(BigInt(1), BigInt(183) * int_pow(BigInt(2), 63));
    CHECK(finalize_eps2(c60, cfg, 1) == combinatorial);
    CHECK(combinatorial < cfg.eps2);
    CHECK_THROWS_AS(finalize_eps2(c60, cfg, 0), InputError);

    // On a two-vertex path the calibrated delta can be the smaller branch.
    QuasiTileConfig tame = manual_config(Rat(1, 2), 1, 0, Rat(1, 2));
    tame.eps2 = Rat(1, 1000000);
    CHECK(finalize_eps2(make_path(2), tame, 1) == Rat(1, 1000000));
}

TEST_CASE("default candidate family keeps only qualifying sets") {
    const Graph c60 = make_cycle(60);
    const QuasiTileConfig cfg = derive_constants(c60, Rat(1, 2));
    const auto cands = default_candidate_family(c60, cfg);
    REQUIRE(cands.size() == 1);
    CHECK(cands.front() == range(0, 59));

    // A generous threshold on a small path lets the exhaustive pass through.
    const Graph p6 = make_path(6);
    const auto family =
        default_candidate_family(p6, manual_config(Rat(1, 2), 5, 5, Rat(1, 2)));
    const std::set<VSet> as_set(family.begin(), family.end());
    CHECK(as_set.count(range(0, 2)) == 1);
    CHECK(as_set.count(range(3, 5)) == 1);
    CHECK(as_set.count(range(0, 5)) == 1);
    CHECK(as_set.count({0}) == 0);
    for (const auto& s : family) {
        CHECK(quotient_below(p6, s, Rat(1, 2)));
        CHECK(set_diameter(p6, s) <= 5);
    }
}

TEST_CASE("mediators from singleton candidates are the color classes") {
    const Graph c6 = make_cycle(6);
    std::vector<VSet> singletons;
    for (int v = 0; v < 6; ++v) singletons.push_back({v});
    const QuasiTileConfig cfg = manual_config(Rat(1, 2), 1, 0, Rat(3));
    const MediatorFamily fam = build_mediators(c6, cfg, singletons);
    REQUIRE(fam.mediators.size() == 2);
    std::set<VSet> classes;
    for (const auto& m : fam.mediators) classes.insert(covered_set(m));
    CHECK(classes == std::set<VSet>{{0, 2, 4}, {1, 3, 5}});
}

TEST_CASE("mediators jointly contain every five-arc of the thirty-cycle") {
    const Graph c30 = make_cycle(30);
    std::vector<VSet> arcs;
    for (int a = 0; a < 30; ++a) arcs.push_back(arc(30, a, 5));
    const QuasiTileConfig cfg = manual_config(Rat(1, 2), 6, 4, Rat(1, 2));
    const MediatorFamily fam = build_mediators(c30, cfg, arcs);
    CHECK(fam.mediators.size() == 14);
    std::size_t total = 0;
    for (const auto& m : fam.mediators) {
        CHECK(validate_packing(c30, m));
        total += m.tiles.size();
        for (const auto& t : m.tiles) {
            CHECK(quotient_below(c30, t, cfg.eps1));
            CHECK(set_diameter(c30, t) <= cfg.k1);
        }
    }
    CHECK(total == 30);
    for (const auto& a : arcs) {
        int homes = 0;
        for (const auto& m : fam.mediators) {
            homes += static_cast<int>(std::count(m.tiles.begin(), m.tiles.end(), a));
        }
        CHECK(homes == 1);
    }

    QuasiTileConfig tight = cfg;
    tight.mediator_budget = 10;
    CHECK_THROWS_AS(build_mediators(c30, tight, arcs), CalibrationError);
}

TEST_CASE("mediator construction validates candidates") {
    const Graph c30 = make_cycle(30);
    const QuasiTileConfig cfg = manual_config(Rat(1, 2), 6, 4, Rat(1, 2));

    const MediatorFamily empty = build_mediators(c30, cfg, {});
    CHECK(empty.mediators.empty());
    CHECK(empty.coverage_note == "empty candidate family");

    CHECK_THROWS_AS(build_mediators(c30, cfg, {VSet{}}), InputError);
    CHECK_THROWS_AS(build_mediators(c30, cfg, {VSet{99}}), InputError);
    CHECK_THROWS_AS(build_mediators(c30, cfg, {arc(30, 0, 7)}), InputError);
    const QuasiTileConfig strict = manual_config(Rat(1, 2), 6, 4, Rat(1, 3));
    CHECK_THROWS_AS(build_mediators(c30, strict, {arc(30, 0, 5)}), InputError);
}

TEST_CASE("tile improvement repacks an uncovered region") {
    const Graph p20 = make_path(20);
    const QuasiTileConfig cfg = manual_config(Rat(1, 2), 6, 9, Rat(1, 2));
    Packing empty;
    empty.host = p20.name;

    const Packing out = improve_tile(p20, empty, range(0, 9), cfg);
    REQUIRE(out.tiles.size() == 2);
    CHECK(out.tiles[0] == range(0, 4));
    CHECK(out.tiles[1] == range(5, 9));

    // Fully covered region: the trigger stays quiet.
    const Packing again = improve_tile(p20, out, range(0, 9), cfg);
    CHECK(again.tiles == out.tiles);

    // Coverage exactly at the threshold is a tie and does not fire.
    const QuasiTileConfig tie_cfg = manual_config(Rat(3, 4), 6, 9, Rat(1, 2));
    const Packing three = make_packing(p20, {range(0, 2)});
    const Packing tied = improve_tile(p20, three, range(0, 3), tie_cfg);
    CHECK(tied.tiles == three.tiles);

    CHECK_THROWS_AS(improve_tile(p20, empty, VSet{}, cfg), InputError);
    CHECK_THROWS_AS(improve_tile(p20, empty, VSet{77}, cfg), InputError);
}

TEST_CASE("tile improvement failure carries the achieved coverage") {
    const Graph p20 = make_path(20);
    const QuasiTileConfig cfg = manual_config(Rat(1, 2), 6, 9, Rat(1, 2));

    // A crossing tile eats the back of the region; the front repacks to only
    // half of the mediator tile.
    const Packing crossing = make_packing(p20, {range(8, 12)});
    try {
        improve_tile(p20, crossing, range(0, 9), cfg);
        FAIL("five of ten vertices cannot reach the five-sixths target");
    } catch (const ImprovementError& e) {
        CHECK(e.achieved_coverage == Rat(1, 2));
    }

    // A crossing tile covering everything leaves nothing to repack.
    const Packing everything = make_packing(p20, {range(0, 19)});
    try {
        improve_tile(p20, everything, range(5, 9), cfg);
        FAIL("the region is fully shadowed by a crossing tile");
    } catch (const ImprovementError& e) {
        CHECK(e.achieved_coverage == Rat(0));
    }
}

TEST_CASE("quasi-tiling a single Folner component yields one tile after round one") {
    const Graph c8 = make_cycle(8);
    const QuasiTileConfig cfg = derive_constants(c8, Rat(1, 2));
    CHECK(cfg.k0 == 4);
    CHECK(cfg.eps1 == Rat(1, 192));
    CHECK(cfg.eps2 == Rat(1, 576));

    const auto [packed, trace] =
        quasi_tile(c8, Rat(1, 2), Packing{}, cfg, std::vector<VSet>{range(0, 7)});
    REQUIRE(packed.tiles.size() == 1);
    CHECK(packed.tiles.front() == range(0, 7));
    CHECK(trace.rounds_run == 2);
    CHECK(trace.mediator_count == 1);
    REQUIRE(trace.steps.size() == 2);
    CHECK(trace.steps[0].improvements == 1);
    CHECK(trace.steps[0].improved == std::vector<VSet>{range(0, 7)});
    CHECK(trace.steps[0].alteration_bound == 9);  // improvements * (1 + 2 * k1)
    CHECK(trace.steps[1].improvements == 0);
    REQUIRE(trace.coverage_by_round.size() == 3);
    CHECK(trace.coverage_by_round[0] == std::vector<Rat>{Rat(0)});
    CHECK(trace.coverage_by_round[1] == std::vector<Rat>{Rat(1)});
    CHECK(trace.coverage_by_round[2] == std::vector<Rat>{Rat(1)});
}

TEST_CASE("quasi-tiling the sixty-cycle covers every twenty-arc probe") {
    const Graph c60 = make_cycle(60);
    const QuasiTileConfig cfg = derive_constants(c60, Rat(1, 2));
    std::vector<VSet> probes;
    for (int a = 0; a < 60; ++a) probes.push_back(arc(60, a, 20));

    const auto [packed, trace] = quasi_tile(c60, Rat(1, 2), Packing{}, cfg, probes);
    REQUIRE(packed.tiles.size() == 12);
    CHECK(packed.tiles[0] == VSet{0, 1, 2, 58, 59});
    for (int i = 1; i < 12; ++i) {
        CHECK(packed.tiles[static_cast<std::size_t>(i)] == range(5 * i - 2, 5 * i + 2));
    }
    check_tiles_folner(c60, packed, Rat(1, 2), cfg.k0);
    CHECK(trace.rounds_run == 2);

    const auto& final_row = trace.coverage_by_round.back();
    for (int a = 0; a < 60; ++a) {
        const Rat expected = (a % 5 == 3) ? Rat(1) : Rat(3, 4);
        CHECK(final_row[static_cast<std::size_t>(a)] == expected);
        CHECK(final_row[static_cast<std::size_t>(a)] >= Rat(1, 2));
    }

    // Independent recount of the report against direct containment sums.
    const auto report = coverage_report(c60, packed, probes);
    for (int a = 0; a < 60; ++a) {
        long long inside = 0;
        for (const auto& t : packed.tiles) {
            if (is_subset(t, probes[static_cast<std::size_t>(a)])) {
                inside += static_cast<long long>(t.size());
            }
        }
        CHECK(*report[static_cast<std::size_t>(a)] == Rat(inside, 20));
    }

    check_round_ledger(c60, trace, cfg.k1, trace.mediator_count);
    check_monotone_progress(trace, Rat(1, 2));
}

TEST_CASE("quasi-tiling seed handling") {
    const Graph c8 = make_cycle(8);
    const QuasiTileConfig cfg = derive_constants(c8, Rat(1, 2));

    const Packing whole = make_packing(c8, {range(0, 7)});
    const auto [packed, trace] = quasi_tile(c8, Rat(1, 2), whole, cfg, {});
    CHECK(packed.tiles == whole.tiles);
    CHECK(trace.rounds_run == 1);
    CHECK(trace.steps.front().improvements == 0);

    CHECK_THROWS_AS(quasi_tile(c8, Rat(1, 3), Packing{}, cfg, {}), InputError);
    const Packing bad_seed = make_packing(c8, {{0, 1}});
    CHECK_THROWS_AS(quasi_tile(c8, Rat(1, 2), bad_seed, cfg, {}), InputError);
}

TEST_CASE("quasi-tiling an empty graph is a no-op") {
    const Graph empty = from_edge_list(0, {}, "empty");
    const QuasiTileConfig cfg = manual_config(Rat(1, 2), 1, 1, Rat(1, 6));
    const auto [packed, trace] = quasi_tile(empty, Rat(1, 2), Packing{}, cfg, {});
    CHECK(packed.tiles.empty());
    CHECK(trace.steps.empty());
    CHECK(trace.rounds_run == 0);

    const auto [packed2, trace2] =
        quasi_tile(empty, Rat(1, 2), Packing{}, cfg, MediatorFamily{}, {});
    CHECK(packed2.tiles.empty());
    CHECK(trace2.steps.empty());
}

TEST_CASE("explicit mediator family drives several updates in one round") {
    std::vector<std::pair<int, int>> edges;
    for (int i = 0; i < 16; ++i) edges.emplace_back(i, (i + 1) % 16);
    for (int i = 0; i < 16; ++i) edges.emplace_back(16 + i, 16 + (i + 1) % 16);
    for (int i = 0; i < 12; ++i) edges.emplace_back(32 + i, 32 + (i + 1) % 12);
    const Graph g = from_edge_list(44, edges, "three-cycles");

    const QuasiTileConfig cfg = manual_config(Rat(1, 2), 8, 8, Rat(1, 6));
    const std::vector<VSet> comps = components(g);
    const MediatorFamily fam = build_mediators(g, cfg, comps);
    REQUIRE(fam.mediators.size() == 1);
    CHECK(fam.mediators.front().tiles.size() == 3);

    const auto [packed, trace] =
        quasi_tile(g, Rat(1, 2), Packing{}, cfg, fam, comps);
    CHECK(packed.tiles.size() == 3);
    CHECK(trace.steps.front().improvements == 3);
    CHECK(trace.steps.front().alteration_bound == 3 * 17);
    check_tiles_folner(g, packed, Rat(1, 2), cfg.k0);
    check_round_ledger(g, trace, cfg.k1, trace.mediator_count);
    check_monotone_progress(trace, Rat(1, 2));

    // Replay the sweep step by step: the packing stays valid throughout.
    Packing replay;
    replay.host = g.name;
    for (const auto& h : fam.mediators.front().tiles) {
        replay = improve_tile(g, replay, h, cfg);
        check_tiles_folner(g, replay, Rat(1, 2), cfg.k0);
    }
    CHECK(replay.tiles == packed.tiles);
}

TEST_CASE("quasi-tiling invariants hold across small hosts") {
    struct Host {
        Graph graph;
        Rat eps0;
    };
    const std::vector<Host> hosts = {
        {make_cycle(34), Rat(1, 2)},  {make_cycle(16), Rat(1, 3)},
        {make_regular_tree(3, 3), Rat(1, 2)}, {make_grid({4, 5}), Rat(1, 3)},
        {make_cycle(12), Rat(1, 2)},
    };
    for (const auto& host : hosts) {
        const QuasiTileConfig cfg = derive_constants(host.graph, host.eps0);
        auto probes = default_candidate_family(host.graph, cfg);
        const MediatorFamily fam = build_mediators(host.graph, cfg, probes);
        // Extra off-family probes exercise the ledger's boundary slack.
        const std::size_t family_count = probes.size();
        for (int x = 0; x < host.graph.vertex_count(); x += 5) {
            probes.push_back(ball(host.graph, x, 2));
        }
        const auto [packed, trace] =
            quasi_tile(host.graph, host.eps0, Packing{}, cfg, fam, probes);
        check_tiles_folner(host.graph, packed, host.eps0, cfg.k0);
        check_round_ledger(host.graph, trace, cfg.k1, trace.mediator_count);

        QuasiTileTrace family_only = trace;
        family_only.probes.resize(family_count);
        for (auto& row : family_only.coverage_by_round) row.resize(family_count);
        check_monotone_progress(family_only, host.eps0);
        for (const auto& q : family_only.coverage_by_round.back()) {
            CHECK(q >= Rat(1) - host.eps0);
        }
    }
}

TEST_CASE("coverage report fractions") {
    const Graph c12 = make_cycle(12);
    const Packing partition = make_packing(c12, {range(0, 5), range(6, 11)});
    const auto full = coverage_report(c12, partition, {range(0, 11)});
    CHECK(*full.front() == Rat(1));

    Packing none;
    none.host = c12.name;
    const auto zeros = coverage_report(c12, none, {range(0, 5), range(3, 7)});
    CHECK(*zeros[0] == Rat(0));
    CHECK(*zeros[1] == Rat(0));

    const Packing pair = make_packing(c12, {range(1, 4), range(7, 10)});
    const auto rows = coverage_report(c12, pair, {range(0, 5), VSet{}});
    CHECK(*rows[0] == Rat(4, 6));
    CHECK_FALSE(rows[1].has_value());
}

TEST_CASE("marker counts sit strictly inside their window") {
    CHECK(pick_marker_count(576, Rat(1, 2)) == 29);
    CHECK(pick_marker_count(21, Rat(1, 2)) == 2);
    CHECK(pick_marker_count(30, Rat(1, 2)) == 2);
    CHECK_FALSE(pick_marker_count(20, Rat(1, 2)).has_value());
    CHECK_FALSE(pick_marker_count(25, Rat(2, 5)).has_value());
    CHECK_FALSE(pick_marker_count(5, Rat(1)).has_value());
    CHECK_THROWS_AS(pick_marker_count(0, Rat(1, 2)), InputError);
    CHECK_THROWS_AS(pick_marker_count(10, Rat(0)), InputError);
    CHECK_THROWS_AS(pick_marker_count(10, Rat(3, 2)), InputError);

    for (long long size = 1; size <= 60; ++size) {
        for (const Rat& eps : {Rat(1, 2), Rat(1, 3), Rat(2, 5), Rat(3, 7), Rat(1)}) {
            const auto got = pick_marker_count(size, eps);
            std::optional<long long> brute;
            for (long long c = 1; c <= size + 1; ++c) {
                if (Rat(c) > eps * Rat(size) / 10 && Rat(c) < eps * Rat(size) / 5) {
                    brute = c;
                    break;
                }
            }
            CHECK(got == brute);
        }
    }
}

TEST_CASE("small components are carved into their own tiles") {
    const Graph p10 = make_path(10);
    const auto [f, audit] = ow_packing(p10, Rat(1, 2));
    REQUIRE(f.tiles.size() == 1);
    CHECK(f.tiles.front() == range(0, 9));
    CHECK(audit.uncovered_mass == Rat(0));
    CHECK(audit.markers.empty());
    REQUIRE(audit.marker_rows.size() == 1);
    CHECK(audit.marker_rows.front().carved);
    for (const auto& row : audit.probe_rows) CHECK(row.exempt);

    // epsilon = 1 keeps the carve threshold at ten vertices.
    const auto [f1, audit1] = ow_packing(p10, Rat(1));
    CHECK(f1.tiles.size() == 1);
    CHECK(audit1.uncovered_mass == Rat(0));
}

TEST_CASE("the torus audit passes with a single tile") {
    const Graph torus = make_torus({24, 24});
    const auto [f, audit] = ow_packing(torus, Rat(1, 2));
    REQUIRE(f.tiles.size() == 1);
    CHECK(f.tiles.front().size() == 576);
    CHECK(audit.epsilon_prime == Rat(1, 22));
    CHECK(audit.epsilon_prime < audit.epsilon / 10 * (Rat(1) - audit.epsilon_prime));
    CHECK(audit.defect == Rat(0));
    CHECK(audit.matchings_ok);
    CHECK(audit.markers == range(0, 28));
    REQUIRE(audit.marker_rows.size() == 1);
    CHECK_FALSE(audit.marker_rows.front().carved);
    CHECK(audit.marker_rows.front().markers == 29);
    CHECK(audit.marker_rows.front().lower == Rat(144, 5));
    CHECK(audit.marker_rows.front().upper == Rat(288, 5));
    CHECK(Rat(29) > audit.marker_rows.front().lower);
    CHECK(Rat(29) < audit.marker_rows.front().upper);
    CHECK(audit.chain.lhs == Rat(0));
    CHECK(audit.chain.matches == Rat(0));
    CHECK(audit.chain.marker_side == Rat(116));
    CHECK(audit.chain.epsilon_side == Rat(1152, 5));
    CHECK(audit.uncovered_mass == Rat(0));

    // Direct recount: every vertex is covered.
    CHECK(covered_set(f).size() == 576);
    CHECK(audit.probe_rows.size() == 4);
    for (const auto& row : audit.probe_rows) {
        CHECK(row.uncovered == 0);
        CHECK(row.markers == 29);
        CHECK_FALSE(row.exempt);
    }
}

TEST_CASE("mixed hosts carve the small component and tile the large one") {
    std::vector<std::pair<int, int>> edges;
    for (int i = 0; i < 30; ++i) edges.emplace_back(i, (i + 1) % 30);
    for (int i = 30; i < 34; ++i) edges.emplace_back(i, i + 1);
    const Graph mixed = from_edge_list(35, edges, "mixed");

    const auto [f, audit] = ow_packing(mixed, Rat(1, 2));
    REQUIRE(f.tiles.size() == 2);
    CHECK(f.tiles[0] == range(0, 29));
    CHECK(f.tiles[1] == range(30, 34));
    CHECK(audit.epsilon_prime == Rat(1, 22));
    CHECK(audit.markers == VSet{0, 1});
    CHECK(audit.uncovered_mass == Rat(0));
    bool saw_carved = false;
    bool saw_open = false;
    for (const auto& row : audit.marker_rows) {
        if (row.carved) {
            saw_carved = true;
            CHECK(row.tile == range(30, 34));
            CHECK(row.markers == 0);
        } else {
            saw_open = true;
            CHECK(row.tile == range(0, 29));
            CHECK(row.markers == 2);
        }
    }
    CHECK(saw_carved);
    CHECK(saw_open);
}

TEST_CASE("handcrafted audit exercises every chain link") {
    const Graph c40 = make_cycle(40);
    const Packing f = make_packing(c40, {range(0, 21), range(22, 37)});
    const Multipacking mp = whole_component_multipacking(c40, 4);
    const OwAudit audit = audit_ow(c40, f, mp, Rat(1, 2));
    CHECK(audit.markers == VSet{0, 1, 22});
    CHECK(audit.defect == Rat(0));
    CHECK(audit.chain.lhs == Rat(8));
    CHECK(audit.chain.matches == Rat(8));
    CHECK(audit.chain.marker_side == Rat(12));
    CHECK(audit.chain.epsilon_side == Rat(16));
    CHECK(audit.uncovered_mass == Rat(1, 20));
    CHECK(audit.matchings_ok);
    REQUIRE(audit.probe_rows.size() == 4);
    for (const auto& row : audit.probe_rows) {
        CHECK(row.uncovered == 2);
        CHECK(row.markers == 3);
    }
}

TEST_CASE("audit failures name their witness") {
    const Graph c30 = make_cycle(30);
    const Multipacking mp = whole_component_multipacking(c30, 4);

    // A twenty-vertex tile has no integer strictly between one and two.
    const Packing no_window = make_packing(c30, {range(0, 19), range(20, 29)});
    try {
        audit_ow(c30, no_window, mp, Rat(1, 2));
        FAIL("the marker window around a twenty-tile is empty");
    } catch (const MarkerError& e) {
        CHECK(e.offending_tile == range(0, 19));
    }

    // A lone small tile leaves a deficit far above its marker count.
    const Packing sparse = make_packing(c30, {range(0, 10)});
    CHECK_THROWS_WITH_AS(audit_ow(c30, sparse, mp, Rat(1, 2)),
                         doctest::Contains("probe deficit"), AuditError);

    CHECK_THROWS_AS(audit_ow(c30, no_window, Multipacking{}, Rat(1, 2)), InputError);
    CHECK_THROWS_AS(audit_ow(c30, no_window, mp, Rat(0)), InputError);
    CHECK_THROWS_AS(audit_ow(c30, no_window, mp, Rat(2)), InputError);
    Packing corrupt;
    corrupt.host = c30.name;
    corrupt.tiles = {{0, 1}, {1, 2}};
    CHECK_THROWS_AS(audit_ow(c30, corrupt, mp, Rat(1, 2)), InputError);
}

TEST_CASE("ow packing validates inputs and bounds uncovered mass on cycles") {
    CHECK_THROWS_AS(ow_packing(from_edge_list(0, {}, "empty"), Rat(1, 2)), InputError);
    CHECK_THROWS_AS(ow_packing(make_path(5), Rat(0)), InputError);
    CHECK_THROWS_AS(ow_packing(make_path(5), Rat(2)), InputError);

    for (int n : {25, 40, 55}) {
        const Graph cn = make_cycle(n);
        const auto [f, audit] = ow_packing(cn, Rat(1, 2));
        CHECK(audit.uncovered_mass <= Rat(1, 2));
        const long long covered = static_cast<long long>(covered_set(f).size());
        CHECK(audit.uncovered_mass == Rat(n - covered, n));
    }
}
