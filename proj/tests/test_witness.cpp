#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "tiler/errors.hpp"
#include "tiler/rng.hpp"
#include "tiler/witness.hpp"

using namespace tiler;

namespace {

Dist uniform_on(const std::vector<int>& support) {
    Dist d;
    for (int v : support)
        d.weights.emplace_back(v, Rat(1, static_cast<long long>(support.size())));
    return d;
}

}  // namespace

TEST_CASE("l1_distance exact values") {
    auto p = uniform_on({0, 1, 2, 3, 4});
    auto q = uniform_on({1, 2, 3, 4, 5});
    CHECK(l1_distance(p, p) == 0);
    CHECK(l1_distance(p, q) == Rat(2, 5));
    CHECK(l1_distance(uniform_on({0, 1}), uniform_on({7, 8})) == 2);

    Dist bad;
    bad.weights.emplace_back(0, Rat(1, 2));
    CHECK_THROWS_AS(l1_distance(bad, p), InputError);
}

TEST_CASE("l1_distance is a metric on sampled triples") {
    std::uint64_t seed = 7;
    for (int trial = 0; trial < 50; ++trial) {
        Dist d[3];
        for (int k = 0; k < 3; ++k) {
            // Random positive integer masses over a random support in 0..9.
            long long total = 0;
            std::vector<std::pair<int, long long>> raw;
            for (int v = 0; v < 10; ++v) {
                auto m = draw_below(draw_u64(seed, trial, k, v), 5);
                if (m > 0) raw.emplace_back(v, static_cast<long long>(m)), total += m;
            }
            if (raw.empty()) raw.emplace_back(0, 1), total = 1;
            for (auto [v, m] : raw) d[k].weights.emplace_back(v, Rat(m, total));
        }
        CHECK(l1_distance(d[0], d[1]) == l1_distance(d[1], d[0]));
        CHECK(l1_distance(d[0], d[2]) <=
              l1_distance(d[0], d[1]) + l1_distance(d[1], d[2]));
    }
}

TEST_CASE("uniform_ball_witness exact neighbor L1 on cycles") {
    auto c100 = make_cycle(100);
    auto w = uniform_ball_witness(c100, 10);
    auto rep = validate_witness(c100, w);
    CHECK(rep.max_neighbor_l1 == Rat(2, 21));
    CHECK(rep.max_support_radius == 10);
    CHECK(rep.sums_ok);
    CHECK(rep.passes());

    // Analytic oracle across radii: 2/(2r+1) whenever the cycle is long enough.
    auto c30 = make_cycle(30);
    for (int r = 0; r <= 13; ++r) {
        auto rep30 = validate_witness(c30, uniform_ball_witness(c30, r));
        CHECK(rep30.max_neighbor_l1 == Rat(2, 2 * r + 1));
    }
}

TEST_CASE("validate_witness flags point masses and isolated vertices") {
    auto p2 = make_path(2);
    auto w = uniform_ball_witness(p2, 0);
    auto rep = validate_witness(p2, w);
    CHECK(rep.max_neighbor_l1 == 2);
    CHECK_FALSE(rep.l1_ok);

    auto p1 = make_path(1);
    auto rep1 = validate_witness(p1, uniform_ball_witness(p1, 0));
    CHECK(rep1.max_neighbor_l1 == 0);
    CHECK(rep1.passes());
}

TEST_CASE("rationalize hits the grid and preserves sums") {
    auto c6 = make_cycle(6);
    auto w = uniform_ball_witness(c6, 1);  // weights 1/3 each

    auto same = rationalize(w, 3);
    for (int x = 0; x < 6; ++x) CHECK(same.dist[x].weights == w.dist[x].weights);

    Dist d;
    d.weights.emplace_back(0, Rat(1, 2));
    d.weights.emplace_back(1, Rat(3, 10));
    d.weights.emplace_back(2, Rat(1, 5));
    WitnessFamily f;
    f.dist = {d};
    f.support_radius = 2;
    auto r10 = rationalize(f, 10);
    CHECK(r10.dist[0].weights[0].second == Rat(5, 10));
    CHECK(r10.dist[0].weights[1].second == Rat(3, 10));
    CHECK(r10.dist[0].weights[2].second == Rat(2, 10));

    // Off-grid weights: sums stay exactly 1 and the L1 bound holds.
    Dist odd;
    odd.weights.emplace_back(0, Rat(1, 3));
    odd.weights.emplace_back(1, Rat(1, 3));
    odd.weights.emplace_back(2, Rat(1, 3));
    WitnessFamily f2;
    f2.dist = {odd};
    f2.support_radius = 2;
    for (int m : {4, 7, 100}) {
        auto r = rationalize(f2, m);
        CHECK(r.dist[0].total() == 1);
        CHECK(l1_distance(r.dist[0], odd) <= Rat(2 * 3, m));
        for (const auto& [v, weight] : r.dist[0].weights)
            CHECK(rat_den(weight * m) == 1);
    }
    CHECK_THROWS_AS(rationalize(f2, 2), InputError);  // below support size

    // Entries at or above 1/m survive rounding.
    auto r4 = rationalize(f2, 4);
    CHECK(r4.dist[0].weights.size() == 3);
}

TEST_CASE("truncate_support picks the smallest sufficient radius") {
    auto c100 = make_cycle(100);
    auto w = uniform_ball_witness(c100, 5);

    // Threshold 1 - (3/11)/3 = 10/11; arc masses (2r+1)/11 reach it at r=5.
    auto piece = truncate_support(c100, w, 0, Rat(3, 11));
    CHECK(piece == ball(c100, 0, 5));

    // Larger eps: threshold 1 - 1/3 = 2/3; (2r+1)/11 >= 2/3 first at r=4.
    CHECK(truncate_support(c100, w, 0, 1) == ball(c100, 0, 4));

    // Point mass.
    auto pm = uniform_ball_witness(c100, 0);
    CHECK(truncate_support(c100, pm, 7, Rat(1, 2)) == VSet{7});

    // Threshold forced to or below zero: radius-0 piece.
    CHECK(truncate_support(c100, pm, 7, 3) == VSet{7});
    auto big = truncate_support(c100, w, 0, 3);
    CHECK(big == VSet{0});  // the r=0 slice of a radius-5 ball distribution
}
