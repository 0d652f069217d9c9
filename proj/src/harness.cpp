#include "tiler/harness.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "tiler/errors.hpp"
#include "tiler/folner.hpp"
#include "tiler/io.hpp"
#include "tiler/measure.hpp"
#include "tiler/multipack.hpp"
#include "tiler/oracle.hpp"
#include "tiler/packing.hpp"
#include "tiler/quasitile.hpp"
#include "tiler/randseq.hpp"
#include "tiler/rng.hpp"
#include "tiler/witness.hpp"

namespace tiler {
namespace {

using nlohmann::json;

[[noreturn]] void bad_config(const std::string& message) { throw InputError(message); }

long long take_int(const json& params, const std::string& key, long long min_value) {
    if (!params.contains(key)) bad_config("missing required parameter '" + key + "'");
    const json& v = params.at(key);
    if (!v.is_number_integer()) bad_config("parameter '" + key + "' must be an integer");
    const long long value = v.get<long long>();
    if (value < min_value)
        bad_config("parameter '" + key + "' must be at least " + std::to_string(min_value));
    return value;
}

long long take_int_or(const json& params, const std::string& key, long long fallback,
                      long long min_value) {
    if (!params.contains(key)) return fallback;
    return take_int(params, key, min_value);
}

Rat take_rat(const json& params, const std::string& key) {
    if (!params.contains(key)) bad_config("missing required parameter '" + key + "'");
    const json& v = params.at(key);
    if (v.is_string()) return parse_rational(v.get<std::string>());
    if (v.is_number_integer()) return Rat(v.get<long long>());
    bad_config("parameter '" + key + "' must be a rational string like \"1/2\" or an integer");
}

std::uint64_t required_seed(const RunConfig& cfg) {
    if (!cfg.has_seed)
        bad_config("pipeline '" + cfg.pipeline + "' draws samples and needs a seed");
    return cfg.seed;
}

void add_metric(RunReport& rep, std::string name, Rat value, std::string note = "") {
    rep.metrics.push_back({std::move(name), std::move(value), std::move(note)});
}

void add_check(RunReport& rep, std::string name, std::string anchor, bool pass,
               std::string detail) {
    rep.checks.push_back({std::move(name), std::move(anchor), pass, std::move(detail)});
}

void emit(const RunConfig& cfg, const std::string& filename, const std::string& text) {
    if (cfg.out_dir.empty()) return;
    write_text_file(cfg.out_dir / filename, text);
}

// One-sided slack for a mean of [0,1]-valued samples: variance is at most 1/4,
// so three standard errors fit under 3 / (2 sqrt(trials)), compared by squaring.
bool within_conservative_radius(const Rat& mean, const Rat& bound, long long trials) {
    if (mean <= bound) return true;
    const Rat excess = mean - bound;
    return excess * excess * Rat(4 * trials) <= Rat(9);
}

std::string radius_note(long long trials) {
    const double radius = 1.5 / std::sqrt(static_cast<double>(trials));
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.6f", radius);
    return "trials " + std::to_string(trials) + ", 3 sigma radius <= " + buf;
}

std::vector<int> tile_index_of(const Graph& g, const Packing& p) {
    std::vector<int> idx(g.vertex_count(), -1);
    for (std::size_t t = 0; t < p.tiles.size(); ++t)
        for (int v : p.tiles[t]) idx[v] = static_cast<int>(t);
    return idx;
}

void pipe_validate_witness(const RunConfig& cfg, const Graph& g, RunReport& rep) {
    const int radius = static_cast<int>(take_int(cfg.params, "radius", 0));
    const WitnessFamily w = uniform_ball_witness(g, radius);
    const WitnessReport wr = validate_witness(g, w);
    add_metric(rep, "quality-n", Rat(w.n));
    add_metric(rep, "max-support-radius", Rat(wr.max_support_radius));
    add_metric(rep, "max-neighbor-l1", wr.max_neighbor_l1);
    add_check(rep, "mass", "sum_y p(x,y) == 1", wr.sums_ok,
              wr.sums_ok ? "every per-vertex sum is 1" : "a per-vertex sum misses 1");
    add_check(rep, "radius", "supp p(x,.) inside B(x,r)", wr.radius_ok,
              "max support radius " + std::to_string(wr.max_support_radius) +
                  " vs declared " + std::to_string(w.support_radius));
    add_check(rep, "neighbor-l1", "l1(p(x,.), p(y,.)) < 1/n", wr.l1_ok,
              "max l1 " + rat_string(wr.max_neighbor_l1) + " vs 1/" + std::to_string(w.n));
    emit(cfg, "witness.txt", write_witness(w));
}

void pipe_multipack(const RunConfig& cfg, const Graph& g, RunReport& rep) {
    const std::uint64_t seed = required_seed(cfg);
    const int radius = static_cast<int>(take_int(cfg.params, "radius", 0));
    const int samples = static_cast<int>(take_int_or(cfg.params, "samples", 10000, 1));
    const int separation = static_cast<int>(take_int_or(cfg.params, "separation", 1, 0));

    WitnessFamily w = uniform_ball_witness(g, radius);
    BigInt grid = 1;
    if (cfg.params.contains("grid")) {
        grid = BigInt(take_int(cfg.params, "grid", 1));
    } else {
        for (const Dist& dist : w.dist)
            for (const auto& [v, weight] : dist.weights)
                grid = boost::multiprecision::lcm(grid, rat_den(weight));
    }
    w = rationalize(w, grid);

    const std::vector<Packing> parts = build_partitions(g, w, samples, seed);

    std::vector<std::pair<int, int>> edges;
    for (int u = 0; u < g.vertex_count(); ++u)
        for (int v : g.adj[u])
            if (u < v) edges.emplace_back(u, v);

    std::vector<long long> splits(edges.size(), 0);
    long long boundary_total = 0;
    for (const Packing& part : parts) {
        const std::vector<int> idx = tile_index_of(g, part);
        std::vector<char> on_boundary(g.vertex_count(), 0);
        for (std::size_t e = 0; e < edges.size(); ++e) {
            if (idx[edges[e].first] != idx[edges[e].second]) {
                ++splits[e];
                on_boundary[edges[e].first] = 1;
                on_boundary[edges[e].second] = 1;
            }
        }
        boundary_total += std::count(on_boundary.begin(), on_boundary.end(), char(1));
    }

    const Rat cap(2, w.n + 2);
    bool sigma_ok = true;
    bool cap_ok = true;
    Rat worst_gap(-1);
    Rat worst_freq(0);
    Rat worst_exact(0);
    std::pair<int, int> worst_edge{-1, -1};
    Rat max_exact(0);
    Rat max_freq(0);
    for (std::size_t e = 0; e < edges.size(); ++e) {
        const Rat freq(splits[e], samples);
        const Rat exact = Rat(1) - lifted_jaccard(w, edges[e].first, edges[e].second);
        if (!within_sigma(freq, exact, samples, 3)) sigma_ok = false;
        if (exact > cap) cap_ok = false;
        const Rat gap = freq >= exact ? freq - exact : exact - freq;
        if (gap > worst_gap) {
            worst_gap = gap;
            worst_freq = freq;
            worst_exact = exact;
            worst_edge = edges[e];
        }
        max_exact = std::max(max_exact, exact);
        max_freq = std::max(max_freq, freq);
    }

    const Multipacking mp = partitions_to_multipacking(g, parts, separation);
    const Rat defect = tightness_defect(g, mp);
    const Rat mean_boundary =
        g.vertex_count() > 0
            ? Rat(boundary_total, static_cast<long long>(samples) * g.vertex_count())
            : Rat(0);
    Rat boundary_eps(2 * g.degree_bound, w.n + 2);
    if (cfg.params.contains("boundary_eps")) boundary_eps = take_rat(cfg.params, "boundary_eps");
    const bool boundary_ok = within_conservative_radius(mean_boundary, boundary_eps, samples);

    add_metric(rep, "quality-n", Rat(w.n));
    add_metric(rep, "grid", Rat(grid));
    add_metric(rep, "edges", Rat(static_cast<long long>(edges.size())));
    add_metric(rep, "members", Rat(mp.m()));
    add_metric(rep, "defect", defect);
    add_metric(rep, "max-exact-split", max_exact);
    add_metric(rep, "max-split-frequency", max_freq, radius_note(samples));
    add_metric(rep, "mean-boundary-fraction", mean_boundary, radius_note(samples));

    const std::string edge_tag =
        worst_edge.first < 0 ? "no edges"
                             : "worst edge (" + std::to_string(worst_edge.first) + "," +
                                   std::to_string(worst_edge.second) + ") frequency " +
                                   rat_string(worst_freq) + " vs exact " +
                                   rat_string(worst_exact);
    add_check(rep, "split-vs-jaccard", "|freq(x,y) - (1 - jaccard(x,y))| <= 3 sigma", sigma_ok,
              edge_tag + "; " + radius_note(samples));
    add_check(rep, "split-cap", "1 - jaccard(x,y) <= 2/(n+2)", cap_ok,
              "max exact split " + rat_string(max_exact) + " vs cap " + rat_string(cap));
    add_check(rep, "boundary-fraction", "mean |bd(partition)|/|V| <= eps + 3 sigma", boundary_ok,
              "mean " + rat_string(mean_boundary) + " vs eps " + rat_string(boundary_eps) +
                  "; " + radius_note(samples));

    emit(cfg, "multipacking.txt", write_multipacking(mp));
    emit(cfg, "coverage.txt", write_coverage_rows(g, mp));
}

void pipe_quasitile(const RunConfig& cfg, const Graph& g, RunReport& rep) {
    const Rat eps0 = take_rat(cfg.params, "eps0");
    const long long budget = take_int_or(cfg.params, "calibration_budget", 100000, 1);
    if (g.vertex_count() == 0) {
        add_metric(rep, "tiles", Rat(0));
        add_check(rep, "coverage", "|J cap V_T| >= (1 - eps0) |J|", true,
                  "empty host, nothing to cover");
        emit(cfg, "packing.txt", write_packing(Packing{}));
        return;
    }

    const QuasiTileConfig qc = derive_constants(g, eps0, budget);
    const std::vector<VSet> probes = default_candidate_family(g, qc);
    const auto [tiling, trace] = quasi_tile(g, eps0, Packing{}, qc, probes);
    const std::vector<std::optional<Rat>> cov = coverage_report(g, tiling, probes);

    const Rat floor_cov = Rat(1) - eps0;
    bool cover_ok = true;
    Rat min_cov(1);
    int worst_probe = -1;
    for (std::size_t p = 0; p < cov.size(); ++p) {
        if (!cov[p]) continue;
        if (worst_probe < 0 || *cov[p] < min_cov) {
            min_cov = *cov[p];
            worst_probe = static_cast<int>(p);
        }
        if (*cov[p] < floor_cov) cover_ok = false;
    }

    bool tiles_ok = true;
    for (const VSet& tile : tiling.tiles) {
        const int diam = set_diameter(g, tile);
        if (!quotient_below(g, tile, eps0) || diam == kUnbounded || diam > qc.k0)
            tiles_ok = false;
    }

    // Ledger replay: in each round, over any probe J, the coverage gain must
    // beat the number of updates fired inside J minus n |bd^k1 J|, since only
    // mediator tiles meeting that boundary can lose ground already won.
    std::vector<VSet> probe_kb(probes.size());
    for (std::size_t p = 0; p < probes.size(); ++p)
        probe_kb[p] = k_boundary(g, probes[p], qc.k1);
    bool ledger_ok = true;
    bool monotone_ok = true;
    Rat min_margin(0);
    bool have_margin = false;
    const auto& rounds = trace.coverage_by_round;
    for (std::size_t r = 1; r < rounds.size(); ++r) {
        std::vector<long long> fired_inside(probes.size(), 0);
        for (const QuasiTileStep& step : trace.steps) {
            if (step.round != static_cast<int>(r)) continue;
            for (const VSet& h : step.improved)
                for (std::size_t p = 0; p < probes.size(); ++p)
                    if (is_subset(h, probes[p])) ++fired_inside[p];
        }
        for (std::size_t p = 0; p < probes.size(); ++p) {
            const Rat size(static_cast<long long>(probes[p].size()));
            const Rat gain = (rounds[r][p] - rounds[r - 1][p]) * size;
            const Rat rhs = Rat(fired_inside[p]) -
                            Rat(trace.mediator_count) *
                                Rat(static_cast<long long>(probe_kb[p].size()));
            const Rat margin = gain - rhs;
            if (!have_margin || margin < min_margin) {
                min_margin = margin;
                have_margin = true;
            }
            if (gain < rhs) ledger_ok = false;
            if (rounds[r][p] < floor_cov && gain < Rat(1)) monotone_ok = false;
        }
    }

    add_metric(rep, "k0", Rat(qc.k0));
    add_metric(rep, "k1", Rat(qc.k1));
    add_metric(rep, "eps1", qc.eps1);
    add_metric(rep, "eps2", qc.eps2);
    add_metric(rep, "mediators", Rat(trace.mediator_count));
    add_metric(rep, "rounds-run", Rat(trace.rounds_run));
    add_metric(rep, "probes", Rat(static_cast<long long>(probes.size())));
    add_metric(rep, "tiles", Rat(static_cast<long long>(tiling.tiles.size())));
    add_metric(rep, "min-probe-coverage", min_cov);

    add_check(rep, "coverage", "|J cap V_T| >= (1 - eps0) |J|", cover_ok,
              "min coverage " + rat_string(min_cov) + " at probe " +
                  std::to_string(worst_probe) + " of " + std::to_string(probes.size()));
    add_check(rep, "tile-contract", "|bd F|/|F| < eps0 and diam(F) <= k0", tiles_ok,
              std::to_string(tiling.tiles.size()) + " tiles against k0=" +
                  std::to_string(qc.k0));
    add_check(rep, "round-ledger", "gain over J >= fires inside J - n |bd^k1 J|", ledger_ok,
              have_margin ? "min margin " + rat_string(min_margin) + " over " +
                                std::to_string(rounds.size() - 1) + " rounds"
                          : "no rounds ran");
    add_check(rep, "round-progress", "coverage >= 1 - eps0 or round gain >= 1", monotone_ok,
              "checked every probe in every round");

    emit(cfg, "packing.txt", write_packing(tiling));
    emit(cfg, "trace.txt", write_trace(trace));
}

void pipe_ow_audit(const RunConfig& cfg, const Graph& g, RunReport& rep) {
    const Rat eps = take_rat(cfg.params, "eps");
    const long long budget = take_int_or(cfg.params, "calibration_budget", 100000, 1);
    const auto [packed, audit] = ow_packing(g, eps, budget);

    bool windows_ok = true;
    int carved = 0;
    for (const OwMarkerRow& row : audit.marker_rows) {
        if (row.carved) {
            ++carved;
            continue;
        }
        if (!(row.lower < Rat(row.markers) && Rat(row.markers) < row.upper)) windows_ok = false;
    }
    bool deficits_ok = true;
    int exempt = 0;
    for (const OwProbeRow& row : audit.probe_rows) {
        if (row.exempt) {
            ++exempt;
            continue;
        }
        if (!(Rat(row.uncovered) < Rat(row.markers))) deficits_ok = false;
    }
    const bool chain_ok = audit.chain.lhs <= audit.chain.matches &&
                          audit.chain.matches <= audit.chain.marker_side &&
                          audit.chain.marker_side <= audit.chain.epsilon_side;

    add_metric(rep, "eps-prime", audit.epsilon_prime);
    add_metric(rep, "defect", audit.defect);
    add_metric(rep, "uncovered-mass", audit.uncovered_mass);
    add_metric(rep, "markers", Rat(static_cast<long long>(audit.markers.size())));
    add_metric(rep, "tiles", Rat(static_cast<long long>(packed.tiles.size())));

    add_check(rep, "uncovered-mass", "|V minus V_F| / |V| <= eps",
              audit.uncovered_mass <= eps,
              rat_string(audit.uncovered_mass) + " vs eps " + rat_string(eps));
    add_check(rep, "matchings", "injection from T minus V_F into A cap T per member",
              audit.matchings_ok, audit.matchings_ok ? "all members matched" : "a member broke");
    add_check(rep, "counting-chain",
              "(1 - defect) m u <= matched <= m |A| <= m (eps/5) |V|", chain_ok,
              rat_string(audit.chain.lhs) + " <= " + rat_string(audit.chain.matches) +
                  " <= " + rat_string(audit.chain.marker_side) + " <= " +
                  rat_string(audit.chain.epsilon_side));
    add_check(rep, "marker-windows", "eps |T| / 10 < |A cap T| < eps |T| / 5", windows_ok,
              std::to_string(audit.marker_rows.size()) + " tiles, " + std::to_string(carved) +
                  " carved");
    add_check(rep, "probe-deficits", "|T minus V_F| < |A cap T|", deficits_ok,
              std::to_string(audit.probe_rows.size()) + " probe rows, " +
                  std::to_string(exempt) + " exempt");

    emit(cfg, "packing.txt", write_packing(packed));
    emit(cfg, "audit.txt", write_audit(audit));
}

void pipe_cfw(const RunConfig& cfg, const Graph& g, RunReport& rep) {
    const std::uint64_t seed = required_seed(cfg);
    const int j_max = static_cast<int>(take_int(cfg.params, "j_max", 0));
    const int members = static_cast<int>(take_int_or(cfg.params, "members", 64, 1));
    const CfwBuild build = cfw_build(g, uniform_ball_level_witness(), j_max, seed, members);
    const CfwSchedule& sch = build.schedule;
    const PackingSequence& seq = build.sequence;

    bool sep_ok = true;
    bool diam_ok = true;
    bool count_ok = true;
    long long s_prev = sch.base_separation;
    long long k_prev = sch.base_diameter;
    long long d_prev = sch.base_branch_diameter;
    BigInt m_prev = sch.base_branch_count;
    for (const CfwLevel& lvl : sch.levels) {
        if (lvl.separation != 2 * s_prev + 3 * k_prev) sep_ok = false;
        if (lvl.branch_diameter > 2 * d_prev + lvl.family_diameter) diam_ok = false;
        if (lvl.branch_count != m_prev * lvl.members) count_ok = false;
        s_prev = lvl.separation;
        k_prev = lvl.family_diameter;
        d_prev = lvl.branch_diameter;
        m_prev = lvl.branch_count;
    }

    bool refine_ok = true;
    for (std::size_t i = 0; i + 1 < seq.packings.size(); ++i) {
        const auto& fine = seq.packings[i].tiles;
        const auto& coarse = seq.packings[i + 1].tiles;
        for (std::size_t t = 0; refine_ok && t < fine.size(); ++t) {
            int container = -1;
            int count = 0;
            for (std::size_t c = 0; c < coarse.size(); ++c)
                if (is_subset(fine[t], coarse[c])) {
                    container = static_cast<int>(c);
                    ++count;
                }
            if (count != 1 || seq.parent[i][t] != container) refine_ok = false;
        }
    }

    const Measure mu = uniform_measure(g);
    const std::vector<Rat> cov = coverage_under_measure(seq, mu);
    const int burn = coverage_burn_in(seq, sch, mu);
    bool cov_ok = sch.levels.empty() || burn <= static_cast<int>(sch.levels.size());
    for (int j = burn; cov_ok && j <= static_cast<int>(sch.levels.size()); ++j)
        if (!at_least_one_minus_sqrt(cov[j - 1], sch.levels[j - 1].eps)) cov_ok = false;

    add_metric(rep, "levels", Rat(static_cast<long long>(sch.levels.size())));
    add_metric(rep, "members-per-level", Rat(members));
    add_metric(rep, "burn-in", Rat(burn));
    for (std::size_t j = 0; j < cov.size(); ++j)
        add_metric(rep, "coverage-level-" + std::to_string(j + 1), cov[j],
                   "eps " + rat_string(sch.levels[j].eps));

    add_check(rep, "separation-recursion", "s_j == 2 s_(j-1) + 3 k_(j-1)", sep_ok,
              std::to_string(sch.levels.size()) + " levels from base s=" +
                  std::to_string(sch.base_separation) + " k=" +
                  std::to_string(sch.base_diameter));
    add_check(rep, "branch-diameter", "D_j <= 2 D_(j-1) + k_j", diam_ok,
              "checked every level");
    add_check(rep, "branch-count", "M_j == M_(j-1) * members", count_ok,
              "checked every level");
    add_check(rep, "refinement", "every tile of F_j lies in exactly one tile of F_(j+1)",
              refine_ok, "containment rescanned tile by tile");
    add_check(rep, "coverage", "mu([F_j]) >= 1 - sqrt(eps_j) for j >= burn-in", cov_ok,
              "burn-in " + std::to_string(burn) + " of " +
                  std::to_string(sch.levels.size()) + " levels");

    emit(cfg, "schedule.txt", write_schedule(sch));
    emit(cfg, "measure.txt", write_measure(mu));
    for (std::size_t j = 0; j < seq.packings.size(); ++j)
        emit(cfg, "level_" + std::to_string(j + 1) + ".txt", write_packing(seq.packings[j]));
}

void pipe_rank_partition(const RunConfig& cfg, const Graph& g, RunReport& rep) {
    const std::uint64_t seed = required_seed(cfg);
    const int radius = static_cast<int>(take_int(cfg.params, "radius", 0));
    const Rat eps = take_rat(cfg.params, "eps");
    const long long trials = take_int_or(cfg.params, "trials", 10000, 1);
    if (g.vertex_count() == 0) bad_config("rank-partition needs a nonempty host");
    const int x = static_cast<int>(take_int_or(cfg.params, "x", 0, 0));
    if (!g.valid_vertex(x)) bad_config("parameter 'x' is not a vertex");
    int y;
    if (cfg.params.contains("y")) {
        y = static_cast<int>(take_int(cfg.params, "y", 0));
    } else {
        if (g.adj[x].empty()) bad_config("vertex x has no neighbor to pair with");
        y = g.adj[x][0];
    }
    if (!g.valid_vertex(y) || !g.has_edge(x, y))
        bad_config("parameters x and y must name an edge");

    const WitnessFamily w = uniform_ball_witness(g, radius);
    const Rat exact = rank_split_probability(g, w, eps, x, y);
    // The two endpoints land in the same tile exactly when they pick the same
    // rank target, so sampling the pair of targets replaces whole partitions.
    long long split_count = 0;
    for (long long trial = 0; trial < trials; ++trial) {
        const std::uint64_t draw = draw_u64(seed, 0x726b7074, static_cast<std::uint64_t>(trial));
        if (rank_target(g, w, eps, x, draw) != rank_target(g, w, eps, y, draw)) ++split_count;
    }
    const Rat freq(split_count, trials);
    const VSet core = truncate_support(g, w, x, eps);

    add_metric(rep, "exact-split", exact);
    add_metric(rep, "split-frequency", freq, radius_note(trials));
    add_metric(rep, "truncated-support", Rat(static_cast<long long>(core.size())));

    add_check(rep, "split-vs-exact", "|freq - p_split(x,y)| <= 3 sigma",
              within_sigma(freq, exact, trials, 3),
              "frequency " + rat_string(freq) + " vs exact " + rat_string(exact) + "; " +
                  radius_note(trials));
    add_check(rep, "split-cap", "p_split(x,y) <= eps", exact <= eps,
              rat_string(exact) + " vs eps " + rat_string(eps));

    emit(cfg, "partition.txt", write_packing(random_rank_partition(g, w, eps, seed)));
}

void pipe_oracle_suite(const RunConfig& cfg, const Graph&, RunReport& rep) {
    const std::uint64_t seed = required_seed(cfg);
    std::vector<std::string> fragments{""};
    if (cfg.params.contains("selection")) {
        const json& sel = cfg.params.at("selection");
        if (!sel.is_array()) bad_config("parameter 'selection' must be an array of strings");
        fragments.clear();
        for (const json& item : sel) {
            if (!item.is_string()) bad_config("parameter 'selection' must contain strings");
            fragments.push_back(item.get<std::string>());
        }
    }
    const std::vector<OracleOutcome> outcomes = run_derived_examples(fragments, seed);
    long long passed = 0;
    for (const OracleOutcome& o : outcomes) {
        if (o.pass) ++passed;
        add_check(rep, o.name, "recomputed value == pinned value", o.pass,
                  "expected " + o.expected + "; got " + o.actual + "; " + o.method);
    }
    add_metric(rep, "rows", Rat(static_cast<long long>(outcomes.size())));
    add_metric(rep, "rows-passed", Rat(passed));
}

long long spec_int(const json& spec, const std::string& key) {
    if (!spec.contains(key) || !spec.at(key).is_number_integer())
        bad_config("graph spec needs integer '" + key + "'");
    return spec.at(key).get<long long>();
}

std::string canonical_echo(const RunConfig& cfg) {
    json echo;
    echo["graph"] = cfg.graph;
    echo["params"] = cfg.params;
    echo["pipeline"] = cfg.pipeline;
    if (cfg.has_seed) echo["seed"] = cfg.seed;
    return echo.dump();
}

}  // namespace

Graph graph_from_spec(const nlohmann::json& spec) {
    if (!spec.is_object() || !spec.contains("type") || !spec.at("type").is_string())
        bad_config("graph spec needs a string 'type'");
    const std::string type = spec.at("type").get<std::string>();
    if (type == "cycle") return make_cycle(static_cast<int>(spec_int(spec, "n")));
    if (type == "path") return make_path(static_cast<int>(spec_int(spec, "n")));
    if (type == "complete") return make_complete(static_cast<int>(spec_int(spec, "n")));
    if (type == "star") return make_star(static_cast<int>(spec_int(spec, "leaves")));
    if (type == "grid" || type == "torus") {
        if (!spec.contains("sides") || !spec.at("sides").is_array())
            bad_config("graph spec needs an integer array 'sides'");
        std::vector<int> sides;
        for (const json& s : spec.at("sides")) {
            if (!s.is_number_integer()) bad_config("graph spec needs an integer array 'sides'");
            sides.push_back(static_cast<int>(s.get<long long>()));
        }
        return type == "grid" ? make_grid(sides) : make_torus(sides);
    }
    if (type == "tree")
        return make_regular_tree(static_cast<int>(spec_int(spec, "arity")),
                                 static_cast<int>(spec_int(spec, "depth")));
    if (type == "edges") {
        if (!spec.contains("edges") || !spec.at("edges").is_array())
            bad_config("graph spec needs an 'edges' array");
        std::vector<std::pair<int, int>> pairs;
        for (const json& e : spec.at("edges")) {
            if (!e.is_array() || e.size() != 2 || !e[0].is_number_integer() ||
                !e[1].is_number_integer())
                bad_config("each edge must be a two-integer array");
            pairs.emplace_back(static_cast<int>(e[0].get<long long>()),
                               static_cast<int>(e[1].get<long long>()));
        }
        return from_edge_list(static_cast<int>(spec_int(spec, "n")), pairs);
    }
    if (type == "file") {
        if (!spec.contains("path") || !spec.at("path").is_string())
            bad_config("graph spec needs a string 'path'");
        const std::filesystem::path path = spec.at("path").get<std::string>();
        return read_graph(read_text_file(path), path.stem().string());
    }
    bad_config("unknown graph type '" + type + "'");
}

RunConfig parse_config(const std::string& text) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::parse_error& e) {
        throw InputError(std::string("config is not valid JSON: ") + e.what());
    }
    if (!doc.is_object()) throw InputError("config must be a JSON object");
    for (const auto& [key, value] : doc.items()) {
        (void)value;
        if (key != "pipeline" && key != "graph" && key != "params" && key != "seed" &&
            key != "out")
            throw InputError("unknown config key '" + key + "'");
    }
    RunConfig cfg;
    if (!doc.contains("pipeline") || !doc.at("pipeline").is_string())
        throw InputError("config needs a string 'pipeline'");
    cfg.pipeline = doc.at("pipeline").get<std::string>();
    if (!doc.contains("graph")) throw InputError("config needs a 'graph' spec");
    cfg.graph = doc.at("graph");
    cfg.params = json::object();
    if (doc.contains("params")) {
        if (!doc.at("params").is_object()) throw InputError("'params' must be an object");
        cfg.params = doc.at("params");
    }
    if (doc.contains("seed")) {
        const json& s = doc.at("seed");
        if (s.is_number_unsigned()) {
            cfg.seed = s.get<std::uint64_t>();
        } else if (s.is_number_integer() && s.get<long long>() >= 0) {
            cfg.seed = static_cast<std::uint64_t>(s.get<long long>());
        } else {
            throw InputError("'seed' must be a nonnegative integer");
        }
        cfg.has_seed = true;
    }
    if (doc.contains("out")) {
        if (!doc.at("out").is_string()) throw InputError("'out' must be a path string");
        cfg.out_dir = doc.at("out").get<std::string>();
    }
    return cfg;
}

RunConfig load_config(const std::filesystem::path& path) {
    return parse_config(read_text_file(path));
}

bool RunReport::all_pass() const {
    return std::all_of(checks.begin(), checks.end(),
                       [](const AssertRow& c) { return c.pass; });
}

std::string RunReport::render() const {
    std::string out = "tiler report\npipeline " + pipeline + "\nconfig " + config_echo + "\n";
    for (const MetricRow& m : metrics) {
        out += "metric " + m.name + " = " + rat_string(m.value) + " (" + rat_decimal(m.value) +
               ")";
        if (!m.note.empty()) out += " ; " + m.note;
        out += '\n';
    }
    for (const AssertRow& c : checks) {
        out += std::string("check ") + (c.pass ? "pass" : "FAIL") + " " + c.name + " [" +
               c.anchor + "]";
        if (!c.detail.empty()) out += " ; " + c.detail;
        out += '\n';
    }
    out += std::string("verdict ") + (all_pass() ? "pass" : "fail") + "\n";
    return out;
}

RunReport run(const RunConfig& config) {
    const auto start = std::chrono::steady_clock::now();
    RunReport rep;
    rep.pipeline = config.pipeline;
    rep.config_echo = canonical_echo(config);
    const Graph g = graph_from_spec(config.graph);

    using Pipe = void (*)(const RunConfig&, const Graph&, RunReport&);
    static const std::map<std::string, Pipe> pipelines = {
        {"validate-witness", pipe_validate_witness},
        {"multipack", pipe_multipack},
        {"quasitile", pipe_quasitile},
        {"ow-audit", pipe_ow_audit},
        {"cfw", pipe_cfw},
        {"rank-partition", pipe_rank_partition},
        {"oracle-suite", pipe_oracle_suite},
    };
    const auto it = pipelines.find(config.pipeline);
    if (it == pipelines.end()) bad_config("unknown pipeline '" + config.pipeline + "'");
    it->second(config, g, rep);

    emit(config, "report.txt", rep.render());
    rep.wall_ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                      std::chrono::steady_clock::now() - start)
                      .count();
    return rep;
}

}  // namespace tiler
