#include "tiler/randseq.hpp"

#include <algorithm>
#include <limits>
#include <map>
#include <sstream>
#include <unordered_set>

#include "tiler/errors.hpp"
#include "tiler/rng.hpp"

namespace tiler {

namespace {

constexpr int kTightnessAttempts = 40;
constexpr long long kSeparationCap = 1'000'000'000;

// Rank draw streams; keeps level sampling and member choice independent.
constexpr std::uint64_t kStreamPartitions = 0x70617274;
constexpr std::uint64_t kStreamMemberPick = 0x7069636b;
constexpr std::uint64_t kStreamVertexRank = 0x72616e6b;

BigInt lcm_of_support_sizes(const WitnessFamily& w) {
    BigInt l = 1;
    for (const auto& d : w.dist) {
        const BigInt size(static_cast<long long>(d.weights.size()));
        if (size > 0) l = boost::multiprecision::lcm(l, size);
    }
    return l;
}

long long max_tile_diameter(const Multipacking& mp) {
    long long k = 0;
    for (const auto& p : mp.packings)
        k = std::max<long long>(k, p.diameter_bound);
    return k;
}

int containing_tile(const Packing& coarse, const VSet& tile) {
    for (std::size_t i = 0; i < coarse.tiles.size(); ++i)
        if (is_subset(tile, coarse.tiles[i])) return static_cast<int>(i);
    return -1;
}

int tile_of(const Packing& p, int v) {
    for (std::size_t i = 0; i < p.tiles.size(); ++i)
        if (std::binary_search(p.tiles[i].begin(), p.tiles[i].end(), v))
            return static_cast<int>(i);
    return -1;
}

void require_adjacent(const Graph& g, int x, int y) {
    if (!g.valid_vertex(x) || !g.valid_vertex(y))
        throw InputError("edge endpoint out of range");
    const auto& nb = g.adj[static_cast<std::size_t>(x)];
    if (std::find(nb.begin(), nb.end(), y) == nb.end())
        throw InputError("vertices " + std::to_string(x) + " and " +
                         std::to_string(y) + " are not adjacent");
}

}  // namespace

LevelWitness uniform_ball_level_witness() {
    return [](const Graph& g, int, long long separation, const Rat& eps,
              int attempt) {
        BigInt scaled = BigInt(3) * (2 * separation + 1) * rat_den(eps);
        BigInt radius = (scaled + rat_num(eps) - 1) / rat_num(eps);
        if (attempt < 63) radius <<= attempt;
        const BigInt cap = std::max(1, g.vertex_count());
        if (attempt >= 63 || radius > cap) radius = cap;
        WitnessFamily w = uniform_ball_witness(g, radius.convert_to<int>());
        return rationalize(w, lcm_of_support_sizes(w));
    };
}

CfwBuild cfw_build(const Graph& g, const LevelWitness& witness, int j_max,
                   std::uint64_t seed, int members_per_level) {
    if (j_max < 0) throw InputError("level count must be nonnegative");
    if (members_per_level < 1) throw InputError("need at least one member per level");
    if (!witness) throw InputError("level witness source is empty");

    CfwBuild out;
    std::ostringstream log;
    long long s_prev = 1;
    long long k_prev = 1;
    long long d_prev = 0;
    BigInt branch_count = 1;
    Packing branch;
    branch.host = g.name;

    for (int j = 1; j <= j_max; ++j) {
        const std::string tag = "level " + std::to_string(j);
        const Rat eps_j(BigInt(1), int_pow(BigInt(2), j));
        const long long s_j = 2 * s_prev + 3 * k_prev;
        if (s_j > kSeparationCap)
            throw ScheduleError(tag + " separation " + std::to_string(s_j) +
                                " exceeds the supported range");

        Multipacking family;
        int radius_used = 0;
        bool tight = false;
        for (int attempt = 0; attempt <= kTightnessAttempts; ++attempt) {
            const WitnessFamily w = witness(g, j, s_j, eps_j, attempt);
            const WitnessReport rep = validate_witness(g, w);
            if (!rep.sums_ok || !rep.radius_ok)
                throw InputError(tag + " witness fails structural validation");
            const auto parts = build_partitions(
                g, w, members_per_level,
                draw_u64(seed, kStreamPartitions, static_cast<std::uint64_t>(j),
                         static_cast<std::uint64_t>(attempt)));
            family = partitions_to_multipacking(g, parts, static_cast<int>(s_j));
            const Rat defect = tightness_defect(g, family);
            log << tag << " attempt " << attempt << " radius "
                << w.support_radius << " defect " << rat_string(defect) << "\n";
            if (defect < eps_j) {
                tight = true;
                radius_used = w.support_radius;
                break;
            }
        }
        if (!tight)
            throw ScheduleError(tag + " never reached tightness " +
                                rat_string(eps_j) + "\n" + log.str());

        const long long k_j = max_tile_diameter(family);
        branch_count *= members_per_level;

        // Join hypotheses: the branch is 1-separated with diameter <= D_{j-1}
        // and the members must be at least 3 D_{j-1} apart.
        if (3 * d_prev > s_j)
            throw ScheduleError(tag + " separation " + std::to_string(s_j) +
                                " is below three branch diameters (" +
                                std::to_string(d_prev) + ")");
        for (const auto& member : family.packings)
            if (!is_s_separated(g, member, static_cast<int>(s_j)))
                throw ScheduleError(tag + " member is not " +
                                    std::to_string(s_j) + "-separated");

        const int pick = static_cast<int>(draw_below(
            draw_u64(seed, kStreamMemberPick, static_cast<std::uint64_t>(j)),
            static_cast<std::uint64_t>(members_per_level)));
        Packing next = join(g, branch, family.packings[static_cast<std::size_t>(pick)]);
        const long long d_j = next.diameter_bound;
        if (d_j > 2 * d_prev + k_j)
            throw ScheduleError(tag + " branch diameter " + std::to_string(d_j) +
                                " exceeds " + std::to_string(2 * d_prev + k_j));
        if (3 * d_j > 2 * s_j + 3 * k_j)
            throw ScheduleError(tag + " branch diameter " + std::to_string(d_j) +
                                " breaks 3 D <= " + std::to_string(2 * s_j + 3 * k_j));
        if (!is_s_separated(g, next, 1))
            throw ScheduleError(tag + " branch is not 1-separated");
        if (j >= 2) {
            std::vector<int> parents;
            parents.reserve(branch.tiles.size());
            for (const auto& tile : branch.tiles) {
                const int home = containing_tile(next, tile);
                if (home < 0)
                    throw ScheduleError(tag + " leaves a previous tile uncontained");
                parents.push_back(home);
            }
            out.sequence.parent.push_back(std::move(parents));
        }

        CfwLevel row;
        row.level = j;
        row.eps = eps_j;
        row.separation = s_j;
        row.family_diameter = k_j;
        row.branch_diameter = d_j;
        row.members = members_per_level;
        row.branch_count = branch_count;
        row.witness_radius = radius_used;
        out.schedule.levels.push_back(row);
        out.sequence.packings.push_back(next);
        out.families.push_back(std::move(family));
        out.chosen.push_back(pick);
        branch = std::move(next);
        s_prev = s_j;
        k_prev = k_j;
        d_prev = d_j;
    }
    out.schedule.log = log.str();
    return out;
}

std::pair<PackingSequence, CfwSchedule> cfw_sequence(const Graph& g,
                                                     const LevelWitness& witness,
                                                     int j_max,
                                                     std::uint64_t seed) {
    CfwBuild build = cfw_build(g, witness, j_max, seed);
    return {std::move(build.sequence), std::move(build.schedule)};
}

std::vector<Rat> coverage_under_measure(const PackingSequence& seq,
                                        const Measure& mu) {
    std::vector<Rat> out;
    out.reserve(seq.packings.size());
    for (const auto& p : seq.packings) {
        Rat mass = 0;
        for (const auto& tile : p.tiles)
            for (int v : tile) {
                if (v < 0 || static_cast<std::size_t>(v) >= mu.mass.size())
                    throw InputError("measure does not cover vertex " +
                                     std::to_string(v));
                mass += mu.mass[static_cast<std::size_t>(v)];
            }
        out.push_back(mass);
    }
    return out;
}

int coverage_burn_in(const PackingSequence& seq, const CfwSchedule& schedule,
                     const Measure& mu) {
    if (seq.packings.size() != schedule.levels.size())
        throw InputError("sequence and schedule have different level counts");
    const std::vector<Rat> mass = coverage_under_measure(seq, mu);
    int burn_in = static_cast<int>(mass.size()) + 1;
    for (int j = static_cast<int>(mass.size()); j >= 1; --j) {
        const auto idx = static_cast<std::size_t>(j - 1);
        if (!at_least_one_minus_sqrt(mass[idx], schedule.levels[idx].eps)) break;
        burn_in = j;
    }
    return burn_in;
}

SplitEstimate split_probability(const Graph& g, const LevelSampler& sampler,
                                int x, int y, long long trials,
                                std::uint64_t seed) {
    require_adjacent(g, x, y);
    if (trials < 1) throw InputError("trial count must be at least 1");
    if (!sampler) throw InputError("level sampler is empty");
    SplitEstimate est;
    est.trials = trials;
    for (long long t = 0; t < trials; ++t) {
        const Packing p = sampler(seed, static_cast<std::uint64_t>(t));
        const int tx = tile_of(p, x);
        if (tx < 0 || tx != tile_of(p, y)) ++est.splits;
    }
    est.frequency = Rat(est.splits, trials);
    return est;
}

bool within_sigma(const Rat& phat, const Rat& p, long long trials, int sigmas) {
    if (trials < 1) throw InputError("trial count must be at least 1");
    const Rat gap = phat - p;
    return gap * gap * trials <= Rat(sigmas) * Rat(sigmas) * p * (Rat(1) - p);
}

FiniteEquivalence packings_to_equivalence(const Graph& g, const Packing& f) {
    if (!validate_packing(g, f)) throw InputError("packing fails validation");
    FiniteEquivalence eq;
    eq.class_of.assign(static_cast<std::size_t>(g.vertex_count()), -1);
    eq.diameter_bound = f.diameter_bound;
    for (const auto& tile : f.tiles) {
        for (int v : tile) eq.class_of[static_cast<std::size_t>(v)] =
            static_cast<int>(eq.classes.size());
        eq.classes.push_back(tile);
    }
    for (int v = 0; v < g.vertex_count(); ++v)
        if (eq.class_of[static_cast<std::size_t>(v)] < 0) {
            eq.class_of[static_cast<std::size_t>(v)] =
                static_cast<int>(eq.classes.size());
            eq.classes.push_back({v});
        }
    for (const auto& c : eq.classes)
        eq.class_sizes.push_back(static_cast<long long>(c.size()));
    return eq;
}

std::pair<WitnessFamily, WitnessReport> witness_from_sequence(
    const Graph& g, const EquivalenceSampler& sampler, int n, long long trials,
    std::uint64_t seed) {
    if (n < 1) throw InputError("quality index must be at least 1");
    if (trials < 1) throw InputError("trial count must be at least 1");
    if (!sampler) throw InputError("equivalence sampler is empty");

    const auto count = static_cast<std::size_t>(g.vertex_count());
    std::vector<std::map<int, Rat>> sums(count);
    int radius_bound = 0;
    for (long long t = 0; t < trials; ++t) {
        const FiniteEquivalence eq = sampler(seed, static_cast<std::uint64_t>(t));
        if (eq.class_of.size() != count)
            throw InputError("sampled equivalence covers a different vertex set");
        radius_bound = std::max(radius_bound, eq.diameter_bound);
        for (int x = 0; x < g.vertex_count(); ++x) {
            const auto& cls =
                eq.classes[static_cast<std::size_t>(eq.class_of[static_cast<std::size_t>(x)])];
            const Rat share(1, static_cast<long long>(cls.size()));
            for (int y : cls) sums[static_cast<std::size_t>(x)][y] += share;
        }
    }

    WitnessFamily w;
    w.n = n;
    w.support_radius = radius_bound;
    w.dist.resize(count);
    for (std::size_t x = 0; x < count; ++x) {
        Rat total = 0;
        for (const auto& [y, s] : sums[x]) total += s;
        for (const auto& [y, s] : sums[x]) {
            const Rat weight = s / total;
            if (weight > 0) w.dist[x].weights.emplace_back(y, weight);
        }
    }
    return {w, validate_witness(g, w)};
}

namespace {

std::vector<std::uint64_t> vertex_ranks(int n, std::uint64_t seed) {
    std::vector<std::uint64_t> rank(static_cast<std::size_t>(n));
    std::unordered_set<std::uint64_t> used;
    used.reserve(static_cast<std::size_t>(n) * 2);
    for (int v = 0; v < n; ++v) {
        std::uint64_t r = draw_u64(seed, kStreamVertexRank, static_cast<std::uint64_t>(v));
        std::uint64_t nonce = 0;
        while (!used.insert(r).second)
            r = draw_u64(seed, kStreamVertexRank, static_cast<std::uint64_t>(v), ++nonce);
        rank[static_cast<std::size_t>(v)] = r;
    }
    return rank;
}

int best_ranked(const VSet& support, const std::vector<std::uint64_t>& rank) {
    if (support.empty()) throw InputError("empty truncated support");
    int best = support.front();
    for (int u : support)
        if (rank[static_cast<std::size_t>(u)] > rank[static_cast<std::size_t>(best)])
            best = u;
    return best;
}

}  // namespace

Packing random_rank_partition(const Graph& g, const WitnessFamily& w,
                              const Rat& epsilon, std::uint64_t seed) {
    if (epsilon <= 0 || epsilon >= 1)
        throw InputError("epsilon must be strictly between 0 and 1");
    const int n = g.vertex_count();
    if (n == 0) {
        Packing empty;
        empty.host = g.name;
        return empty;
    }

    const std::vector<std::uint64_t> rank = vertex_ranks(n, seed);
    std::vector<VSet> buckets(static_cast<std::size_t>(n));
    for (int x = 0; x < n; ++x) {
        const int best = best_ranked(truncate_support(g, w, x, epsilon), rank);
        buckets[static_cast<std::size_t>(best)].push_back(x);
    }
    std::vector<VSet> tiles;
    for (auto& b : buckets)
        if (!b.empty()) tiles.push_back(std::move(b));
    return make_packing(g, std::move(tiles));
}

int rank_target(const Graph& g, const WitnessFamily& w, const Rat& epsilon,
                int x, std::uint64_t seed) {
    if (epsilon <= 0 || epsilon >= 1)
        throw InputError("epsilon must be strictly between 0 and 1");
    if (!g.valid_vertex(x)) throw InputError("vertex out of range");
    const std::vector<std::uint64_t> rank = vertex_ranks(g.vertex_count(), seed);
    return best_ranked(truncate_support(g, w, x, epsilon), rank);
}

Rat rank_split_probability(const Graph& g, const WitnessFamily& w,
                           const Rat& epsilon, int x, int y) {
    require_adjacent(g, x, y);
    const VSet sx = truncate_support(g, w, x, epsilon);
    const VSet sy = truncate_support(g, w, y, epsilon);
    VSet common;
    std::set_intersection(sx.begin(), sx.end(), sy.begin(), sy.end(),
                          std::back_inserter(common));
    const auto joint = sx.size() + sy.size() - common.size();
    return Rat(1) - Rat(static_cast<long long>(common.size()),
                        static_cast<long long>(joint));
}

}  // namespace tiler
