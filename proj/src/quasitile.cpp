#include "tiler/quasitile.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <sstream>
#include <utility>

#include "tiler/errors.hpp"

namespace tiler {

namespace {

int degree_floor_one(const Graph& g) {
    int d = g.degree_bound;
    if (d <= 0) {
        for (const auto& nbrs : g.adj) d = std::max(d, static_cast<int>(nbrs.size()));
    }
    return std::max(d, 1);
}

Rat fraction_of(std::size_t part, std::size_t whole) {
    return Rat(static_cast<long long>(part), static_cast<long long>(whole));
}

struct CalibrationProbe {
    VSet set;
    Rat quotient;
    int diameter = 0;
};

// Whole components plus balls around up to eight spread-out centers per
// component, grown until they saturate.
std::vector<VSet> calibration_probes(const Graph& g) {
    std::vector<VSet> out;
    std::set<VSet> seen;
    auto push = [&](VSet s) {
        if (!s.empty() && seen.insert(s).second) out.push_back(std::move(s));
    };
    for (const auto& comp : components(g)) {
        const auto cn = comp.size();
        const std::size_t centers = std::min<std::size_t>(8, cn);
        for (std::size_t i = 0; i < centers; ++i) {
            const int x = comp[i * cn / centers];
            for (int r = 1;; ++r) {
                VSet b = ball(g, x, r);
                const bool whole = b.size() == cn;
                push(std::move(b));
                if (whole) break;
            }
        }
        push(comp);
    }
    return out;
}

}  // namespace

CalibrationResult calibrate_packing_constants(const Graph& g, const Rat& eps,
                                              long long budget) {
    if (eps <= 0 || eps >= 1) throw InputError("calibration epsilon must lie in (0, 1)");
    if (budget < 1) throw InputError("calibration budget must be positive");
    if (g.vertex_count() == 0) throw InputError("calibration needs a nonempty graph");

    std::vector<CalibrationProbe> qualifying;
    for (auto& s : calibration_probes(g)) {
        Rat q = folner_quotient(g, s);
        if (q < eps) qualifying.push_back({std::move(s), std::move(q), 0});
    }
    std::ostringstream log;
    log << "epsilon " << rat_string(eps) << ", " << qualifying.size()
        << " qualifying probes\n";
    if (qualifying.empty()) {
        throw CalibrationError("no probe has quotient below epsilon", log.str());
    }

    std::vector<int> diameters;
    for (auto& p : qualifying) {
        p.diameter = set_diameter(g, p.set);
        diameters.push_back(p.diameter);
    }
    std::sort(diameters.begin(), diameters.end());
    diameters.erase(std::unique(diameters.begin(), diameters.end()), diameters.end());

    long long used = 0;
    const Rat target = Rat(1) - eps;
    for (int k : diameters) {
        Rat delta = eps;
        long long bad = 0;
        for (const auto& p : qualifying) {
            if (used >= budget) {
                log << "budget exhausted at k=" << k << "\n";
                throw CalibrationError("packing budget exhausted before a scale was found",
                                       log.str());
            }
            ++used;
            PackingResult run = packing_principle(g, p.set, eps, std::max(1, k));
            if (run.coverage < target) {
                ++bad;
                if (p.quotient < delta) delta = p.quotient;
            }
        }
        long long family = 0;
        for (const auto& p : qualifying) {
            if (p.quotient < delta) ++family;
        }
        log << "k=" << k << " bad=" << bad << " delta=" << rat_string(delta)
            << " family=" << family << "\n";
        if (delta > 0 && family > 0) {
            return CalibrationResult{delta, k, log.str()};
        }
    }
    throw CalibrationError("no candidate diameter admits a packing scale", log.str());
}

QuasiTileConfig derive_constants(const Graph& g, const Rat& epsilon0,
                                 long long calibration_budget) {
    if (epsilon0 <= 0 || epsilon0 >= 1) throw InputError("epsilon0 must lie in (0, 1)");
    if (g.vertex_count() == 0) throw InputError("cannot derive constants for an empty graph");

    QuasiTileConfig cfg;
    cfg.epsilon0 = epsilon0;
    cfg.calibration_budget = calibration_budget;
    cfg.rounds = g.vertex_count();

    const CalibrationResult base =
        calibrate_packing_constants(g, epsilon0 / 3, calibration_budget);
    cfg.k0 = base.k;
    const int d = degree_floor_one(g);
    cfg.eps1 = base.delta / Rat(int_pow(BigInt(d), cfg.k0 + 1));

    const CalibrationResult fine =
        calibrate_packing_constants(g, cfg.eps1 / 3, calibration_budget);
    cfg.k1 = fine.k;
    cfg.eps2 = fine.delta;
    return cfg;
}

BigInt max_diameter_set_size(int d, int k1) {
    if (d < 0 || k1 < 0) throw InputError("degree and diameter must be nonnegative");
    if (d <= 1) return BigInt(k1 >= 1 ? d + 1 : 1);
    BigInt total = 1;
    BigInt layer = d;
    for (int i = 1; i <= k1; ++i) {
        total += layer;
        layer *= d - 1;
    }
    return total;
}

Rat finalize_eps2(const Graph& g, const QuasiTileConfig& cfg, int mediator_count) {
    if (mediator_count < 1) throw InputError("mediator count must be positive");
    const int d = degree_floor_one(g);
    const BigInt m = max_diameter_set_size(d, cfg.k1);
    const Rat denom =
        Rat(3) * Rat(m) * Rat(mediator_count) * Rat(int_pow(BigInt(d), 2 * (cfg.k1 + 1)));
    return std::min(cfg.eps2, Rat(cfg.epsilon0 / denom));
}

std::vector<VSet> default_candidate_family(const Graph& g, const QuasiTileConfig& cfg) {
    std::set<VSet> raw;
    const auto comps = components(g);
    for (const auto& comp : comps) raw.insert(comp);

    const int n = g.vertex_count();
    const int r_max = std::max(1, cfg.k1);
    for (int x = 0; x < n; ++x) {
        std::size_t prev = 0;
        for (int r = 1; r <= r_max; ++r) {
            VSet b = ball(g, x, r);
            if (b.size() == prev) break;
            prev = b.size();
            raw.insert(std::move(b));
        }
        FolnerSearchConfig fc;
        fc.epsilon = cfg.eps1;
        fc.max_radius = r_max;
        fc.candidate_budget = cfg.calibration_budget;
        if (auto found = find_folner_in_ball(g, x, fc)) raw.insert(std::move(*found));
    }

    if (n <= 14) {
        for (const auto& comp : comps) {
            const auto cn = comp.size();
            for (std::uint32_t mask = 1; mask < (1u << cn); ++mask) {
                VSet s;
                for (std::size_t i = 0; i < cn; ++i) {
                    if (mask & (1u << i)) s.push_back(comp[i]);
                }
                raw.insert(std::move(s));
            }
        }
    }

    std::vector<VSet> out;
    for (const auto& s : raw) {
        if (!quotient_below(g, s, cfg.eps1)) continue;
        const int diam = set_diameter(g, s);
        if (diam == kUnbounded || diam > cfg.k1) continue;
        out.push_back(s);
    }
    return out;
}

MediatorFamily build_mediators(const Graph& g, const QuasiTileConfig& cfg,
                               const std::vector<VSet>& candidates) {
    std::set<VSet> distinct(candidates.begin(), candidates.end());
    for (const auto& s : distinct) {
        if (s.empty()) throw InputError("candidate set is empty");
        for (int v : s) {
            if (!g.valid_vertex(v)) throw InputError("candidate vertex out of range");
        }
        const int diam = set_diameter(g, s);
        if (diam == kUnbounded || diam > cfg.k1) {
            throw InputError("candidate exceeds the mediator diameter cap");
        }
        if (!quotient_below(g, s, cfg.eps1)) {
            throw InputError("candidate quotient is not below eps1");
        }
    }

    MediatorFamily fam;
    if (distinct.empty()) {
        fam.coverage_note = "empty candidate family";
        return fam;
    }

    // Same-color centers sit further than 2 k1 + 1 apart, and every candidate
    // contains its center with diameter at most k1, so the sets grouped under
    // one (color, rank) key are pairwise disjoint.
    const Coloring col = distance_coloring(g, 2 * cfg.k1 + 1);
    std::map<int, std::vector<VSet>> by_center;
    for (const auto& s : distinct) by_center[s.front()].push_back(s);

    std::map<std::pair<int, int>, std::vector<VSet>> groups;
    for (const auto& [center, list] : by_center) {
        const int color = col.color_of[center];
        for (std::size_t rank = 0; rank < list.size(); ++rank) {
            groups[{color, static_cast<int>(rank)}].push_back(list[rank]);
        }
    }

    if (static_cast<long long>(groups.size()) > cfg.mediator_budget) {
        std::ostringstream report;
        report << distinct.size() << " candidates need " << groups.size()
               << " mediators, budget " << cfg.mediator_budget;
        throw CalibrationError("mediator budget exceeded", report.str());
    }

    for (auto& [key, tiles] : groups) {
        fam.mediators.push_back(make_packing(g, std::move(tiles)));
    }
    std::ostringstream note;
    note << distinct.size() << " candidates across " << fam.mediators.size()
         << " mediators, each contained verbatim as a tile";
    fam.coverage_note = note.str();
    return fam;
}

Packing improve_tile(const Graph& g, const Packing& f, const VSet& h,
                     const QuasiTileConfig& cfg) {
    if (h.empty()) throw InputError("mediator tile is empty");
    for (int v : h) {
        if (!g.valid_vertex(v)) throw InputError("mediator tile vertex out of range");
    }

    const VSet inside = restrict_inside(f, h);
    const Rat threshold = (Rat(3) - cfg.epsilon0) * Rat(static_cast<long long>(h.size()));
    if (Rat(3 * static_cast<long long>(inside.size())) >= threshold) return f;

    VSet region = h;
    std::vector<VSet> kept;
    for (const auto& t : f.tiles) {
        if (is_subset(t, h)) continue;
        kept.push_back(t);
        if (!set_intersection(t, h).empty()) region = set_difference(region, t);
    }
    if (region.empty()) {
        throw ImprovementError("crossing tiles cover the whole region", Rat(0));
    }

    const PackingResult run =
        packing_principle(g, region, cfg.epsilon0, std::max(1, cfg.k0));
    const Rat achieved = fraction_of(covered_set(run.packing).size(), h.size());
    if (achieved < Rat(1) - cfg.epsilon0 / 3) {
        throw ImprovementError("repack fell short of the coverage target", achieved);
    }
    for (const auto& t : run.packing.tiles) kept.push_back(t);
    return make_packing(g, std::move(kept));
}

std::pair<Packing, QuasiTileTrace> quasi_tile(const Graph& g, const Rat& epsilon0,
                                              const Packing& seed,
                                              const QuasiTileConfig& cfg,
                                              const MediatorFamily& mediators,
                                              const std::vector<VSet>& probes) {
    QuasiTileTrace trace;
    trace.probes = probes;
    if (g.vertex_count() == 0) {
        Packing empty;
        empty.host = g.name;
        return {empty, trace};
    }
    if (epsilon0 != cfg.epsilon0) throw InputError("epsilon0 does not match the config");

    Packing f;
    if (seed.tiles.empty()) {
        f.host = g.name;
    } else {
        if (!validate_packing(g, seed)) throw InputError("seed packing is invalid");
        for (const auto& t : seed.tiles) {
            const int diam = set_diameter(g, t);
            if (diam == kUnbounded || diam > cfg.k0 ||
                !quotient_below(g, t, cfg.epsilon0)) {
                throw InputError("seed tile breaks the (epsilon0, k0) contract");
            }
        }
        f = seed;
    }

    trace.mediator_count = static_cast<int>(mediators.mediators.size());
    const BigInt m = max_diameter_set_size(degree_floor_one(g), cfg.k1);

    int rounds_cap = cfg.rounds;
    if (!probes.empty()) {
        std::size_t largest = 0;
        for (const auto& j : probes) largest = std::max(largest, j.size());
        rounds_cap = std::min<long long>(rounds_cap, static_cast<long long>(largest));
    }

    auto probe_row = [&]() {
        std::vector<Rat> row;
        row.reserve(probes.size());
        for (const auto& j : probes) {
            row.push_back(j.empty() ? Rat(0)
                                    : fraction_of(restrict_inside(f, j).size(), j.size()));
        }
        return row;
    };
    trace.coverage_by_round.push_back(probe_row());

    for (int round = 1; round <= rounds_cap; ++round) {
        int fired_in_round = 0;
        for (std::size_t mi = 0; mi < mediators.mediators.size(); ++mi) {
            QuasiTileStep step;
            step.round = round;
            step.mediator_index = static_cast<int>(mi);
            for (const auto& h : mediators.mediators[mi].tiles) {
                const VSet inside = restrict_inside(f, h);
                const Rat lhs = Rat(3 * static_cast<long long>(inside.size()));
                const Rat rhs =
                    (Rat(3) - cfg.epsilon0) * Rat(static_cast<long long>(h.size()));
                if (lhs >= rhs) continue;
                f = improve_tile(g, f, h, cfg);
                ++step.improvements;
                step.improved.push_back(h);
            }
            step.alteration_bound = BigInt(step.improvements) * m;
            fired_in_round += step.improvements;
            trace.steps.push_back(std::move(step));
        }
        trace.coverage_by_round.push_back(probe_row());
        trace.rounds_run = round;
        if (fired_in_round == 0) break;
    }
    return {f, trace};
}

std::pair<Packing, QuasiTileTrace> quasi_tile(const Graph& g, const Rat& epsilon0,
                                              const Packing& seed,
                                              const QuasiTileConfig& cfg,
                                              const std::vector<VSet>& probes) {
    if (g.vertex_count() == 0) {
        QuasiTileTrace trace;
        trace.probes = probes;
        Packing empty;
        empty.host = g.name;
        return {empty, trace};
    }
    const MediatorFamily fam = build_mediators(g, cfg, default_candidate_family(g, cfg));
    return quasi_tile(g, epsilon0, seed, cfg, fam, probes);
}

std::vector<std::optional<Rat>> coverage_report(const Graph& g, const Packing& t,
                                                const std::vector<VSet>& probes) {
    (void)g;
    std::vector<std::optional<Rat>> out;
    out.reserve(probes.size());
    for (const auto& j : probes) {
        if (j.empty()) {
            out.push_back(std::nullopt);
            continue;
        }
        out.push_back(fraction_of(restrict_inside(t, j).size(), j.size()));
    }
    return out;
}

std::optional<long long> pick_marker_count(long long tile_size, const Rat& eps) {
    if (tile_size < 1) throw InputError("tile size must be positive");
    if (eps <= 0 || eps > 1) throw InputError("epsilon must lie in (0, 1]");
    const Rat tenth = eps * Rat(tile_size) / 10;
    const BigInt count = rat_num(tenth) / rat_den(tenth) + 1;
    if (Rat(count) < eps * Rat(tile_size) / 5) return count.convert_to<long long>();
    return std::nullopt;
}

OwAudit audit_ow(const Graph& g, const Packing& f, const Multipacking& mp,
                 const Rat& eps) {
    if (g.vertex_count() == 0) throw InputError("cannot audit an empty graph");
    if (eps <= 0 || eps > 1) throw InputError("epsilon must lie in (0, 1]");
    if (!validate_packing(g, f)) throw InputError("tile packing is invalid");
    if (mp.m() < 1) throw InputError("multipacking has no members");

    OwAudit a;
    a.epsilon = eps;
    const Rat ten_over = Rat(10) / eps;
    const BigInt floor10 = rat_num(ten_over) / rat_den(ten_over);
    a.epsilon_prime = Rat(1, floor10 + 2);
    if (!(a.epsilon_prime < eps / 10 * (Rat(1) - a.epsilon_prime))) {
        throw AuditError("epsilon' fails the marker spacing inequality");
    }

    const auto comps = components(g);
    std::vector<int> comp_of(static_cast<std::size_t>(g.vertex_count()), -1);
    std::vector<char> carved(comps.size(), 0);
    for (std::size_t c = 0; c < comps.size(); ++c) {
        if (Rat(static_cast<long long>(comps[c].size())) * eps <= 10) carved[c] = 1;
        for (int v : comps[c]) comp_of[static_cast<std::size_t>(v)] = static_cast<int>(c);
    }
    auto in_carved = [&](const VSet& s) {
        return carved[static_cast<std::size_t>(comp_of[static_cast<std::size_t>(s.front())])] != 0;
    };

    VSet markers;
    for (const auto& t : f.tiles) {
        OwMarkerRow row;
        row.tile = t;
        row.carved = in_carved(t);
        row.lower = eps * Rat(static_cast<long long>(t.size())) / 10;
        row.upper = eps * Rat(static_cast<long long>(t.size())) / 5;
        if (!row.carved) {
            const auto count = pick_marker_count(static_cast<long long>(t.size()), eps);
            if (!count) throw MarkerError("no admissible marker count for tile", t);
            row.markers = *count;
            for (long long i = 0; i < *count; ++i) {
                markers.push_back(t[static_cast<std::size_t>(i)]);
            }
        }
        a.marker_rows.push_back(std::move(row));
    }
    std::sort(markers.begin(), markers.end());
    a.markers = std::move(markers);

    a.defect = tightness_defect(g, mp);
    const VSet covered = covered_set(f);

    bool matchings = true;
    Rat total_matches = 0;
    long long uncovered_open = 0;  // uncovered vertices outside carved components
    {
        const VSet all_uncovered = [&]() {
            VSet everything(static_cast<std::size_t>(g.vertex_count()));
            for (int v = 0; v < g.vertex_count(); ++v) {
                everything[static_cast<std::size_t>(v)] = v;
            }
            return set_difference(everything, covered);
        }();
        for (int v : all_uncovered) {
            if (!carved[static_cast<std::size_t>(comp_of[static_cast<std::size_t>(v)])]) {
                ++uncovered_open;
            }
        }
        a.uncovered_mass = fraction_of(all_uncovered.size(),
                                       static_cast<std::size_t>(g.vertex_count()));
    }

    for (int j = 0; j < mp.m(); ++j) {
        for (const auto& probe : mp.packings[static_cast<std::size_t>(j)].tiles) {
            OwProbeRow row;
            row.member = j;
            row.tile = probe;
            row.exempt = in_carved(probe);
            const VSet inside = restrict_inside(f, probe);
            const VSet deficit = set_difference(probe, inside);
            const VSet local_markers = set_intersection(a.markers, probe);
            row.uncovered = static_cast<long long>(deficit.size());
            row.markers = static_cast<long long>(local_markers.size());
            if (!row.exempt) {
                if (row.uncovered >= row.markers) {
                    std::ostringstream msg;
                    msg << "probe deficit " << row.uncovered << " reaches the marker count "
                        << row.markers << " (member " << j << ", tile at " << probe.front()
                        << ")";
                    throw AuditError(msg.str());
                }
                const VSet domain = set_difference(probe, covered);
                if (domain.size() > local_markers.size()) {
                    matchings = false;
                } else {
                    total_matches += Rat(static_cast<long long>(domain.size()));
                }
            }
            a.probe_rows.push_back(std::move(row));
        }
    }
    a.matchings_ok = matchings;
    if (!matchings) throw AuditError("an uncovered probe part exceeds its marker supply");

    const Rat m(static_cast<long long>(mp.m()));
    a.chain.lhs = (Rat(1) - a.defect) * m * Rat(uncovered_open);
    a.chain.matches = total_matches;
    a.chain.marker_side = m * Rat(static_cast<long long>(a.markers.size()));
    a.chain.epsilon_side = m * (eps / 5) * Rat(g.vertex_count());
    if (a.chain.lhs > a.chain.matches) {
        throw AuditError("counting chain: coverage lower bound exceeds the matched total");
    }
    if (a.chain.matches > a.chain.marker_side) {
        throw AuditError("counting chain: matched total exceeds the marker capacity");
    }
    if (!(a.chain.marker_side < a.chain.epsilon_side)) {
        throw AuditError("counting chain: marker capacity reaches the epsilon budget");
    }
    if (a.uncovered_mass > eps) throw AuditError("uncovered mass exceeds epsilon");
    return a;
}

namespace {

struct InducedGraph {
    Graph graph;
    VSet original;  // original[i] = vertex of g behind sub vertex i
};

InducedGraph induced_subgraph(const Graph& g, const VSet& keep) {
    std::vector<int> to_sub(static_cast<std::size_t>(g.vertex_count()), -1);
    for (std::size_t i = 0; i < keep.size(); ++i) {
        to_sub[static_cast<std::size_t>(keep[i])] = static_cast<int>(i);
    }
    std::vector<std::pair<int, int>> edges;
    for (int v : keep) {
        for (int u : g.adj[static_cast<std::size_t>(v)]) {
            if (u > v && to_sub[static_cast<std::size_t>(u)] >= 0) {
                edges.emplace_back(to_sub[static_cast<std::size_t>(v)],
                                   to_sub[static_cast<std::size_t>(u)]);
            }
        }
    }
    return {from_edge_list(static_cast<int>(keep.size()), edges, g.name + "-restricted"),
            keep};
}

}  // namespace

std::pair<Packing, OwAudit> ow_packing(const Graph& g, const Rat& eps,
                                       long long calibration_budget) {
    if (g.vertex_count() == 0) throw InputError("cannot tile an empty graph");
    if (eps <= 0 || eps > 1) throw InputError("epsilon must lie in (0, 1]");

    const Rat ten_over = Rat(10) / eps;
    const BigInt floor10 = rat_num(ten_over) / rat_den(ten_over);
    const Rat eps_prime(1, floor10 + 2);

    std::vector<VSet> tiles;
    VSet open_part;
    for (const auto& comp : components(g)) {
        if (Rat(static_cast<long long>(comp.size())) * eps <= 10) {
            tiles.push_back(comp);
        } else {
            open_part = set_union(open_part, comp);
        }
    }

    if (!open_part.empty()) {
        const InducedGraph sub = induced_subgraph(g, open_part);
        const QuasiTileConfig cfg =
            derive_constants(sub.graph, eps_prime, calibration_budget);
        const auto [packed, trace] = quasi_tile(sub.graph, eps_prime, Packing{}, cfg);
        (void)trace;
        for (const auto& t : packed.tiles) {
            VSet mapped;
            mapped.reserve(t.size());
            for (int v : t) mapped.push_back(sub.original[static_cast<std::size_t>(v)]);
            tiles.push_back(std::move(mapped));
        }
    }

    const Packing f = make_packing(g, std::move(tiles));
    Multipacking mp;
    const Packing whole = make_packing(g, components(g));
    mp.packings = {whole, whole, whole, whole};
    OwAudit audit = audit_ow(g, f, mp, eps);
    return {f, audit};
}

}  // namespace tiler
