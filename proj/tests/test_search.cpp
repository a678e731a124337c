#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <cstdint>
#include <limits>
#include <stdexcept>

#include "gnoma/analysis.hpp"
#include "gnoma/refdata.hpp"
#include "gnoma/search.hpp"

using namespace gnoma;

namespace {

RankPmf reference_pmf(int m) {
    RankPmf pmf;
    pmf.m = m;
    pmf.trials = 10'000'000;
    for (const auto& e : refdata::rank_reference())
        if (e.m == m) pmf.p[e.r] = e.p;
    return pmf;
}

}  // namespace

TEST_CASE("canonical permutation counting") {
    CHECK(count_canonical(2) == 1);
    CHECK(count_canonical(3) == 3);
    CHECK(count_canonical(4) == 12);
    CHECK(count_canonical(5) == 60);
    CHECK(count_canonical(10) == 1814400);
    CHECK(count_canonical(30) == std::numeric_limits<std::int64_t>::max());
}

TEST_CASE("feasible rank ceiling") {
    CHECK(max_feasible_rank(3) == 2);
    CHECK(max_feasible_rank(4) == 4);
    CHECK(max_feasible_rank(5) == 4);
    CHECK(max_feasible_rank(6) == 6);
    CHECK(max_feasible_rank(7) == 6);
    CHECK_THROWS_AS(max_feasible_rank(1), std::invalid_argument);
}

TEST_CASE("m=3 pairs always have rank two") {
    const RankPmf pmf = estimate_rank_pmf(3, 500, 123);
    CHECK(pmf.rank_zero_count == 0);
    CHECK(pmf.p.at(2) == 1.0);
    double sum = 0.0;
    for (const auto& [r, p] : pmf.p) sum += p;
    CHECK(sum == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("pmf estimation is reproducible and worker invariant") {
    const RankPmf a = estimate_rank_pmf(5, 2000, 9, 1);
    const RankPmf b = estimate_rank_pmf(5, 2000, 9, 4);
    REQUIRE(a.p.size() == b.p.size());
    for (const auto& [r, p] : a.p) CHECK(b.p.at(r) == p);

    const RankPmf c = estimate_rank_pmf(5, 2000, 10, 1);
    bool same = true;
    for (const auto& [r, p] : a.p) same = same && (c.p.at(r) == p);
    CHECK(!same);
}

TEST_CASE("two independent estimates agree within Monte-Carlo error") {
    const std::int64_t trials = 20000;
    const RankPmf a = estimate_rank_pmf(5, trials, 1);
    const RankPmf b = estimate_rank_pmf(5, trials, 2);
    const double band = 3.0 / std::sqrt(static_cast<double>(trials));
    for (const auto& [r, p] : a.p) CHECK(std::abs(p - b.p.at(r)) <= band);
}

TEST_CASE("estimates land on the published distribution") {
    const RankPmf est = estimate_rank_pmf(6, 50000, 3);
    const RankPmf ref = reference_pmf(6);
    REQUIRE(!ref.p.empty());
    for (const auto& [r, p] : ref.p) CHECK(std::abs(est.p.at(r) - p) < 0.01);
}

TEST_CASE("set probability telescopes over the exact pmf") {
    RankPmf pmf;
    pmf.m = 5;
    pmf.p = {{2, 0.25}, {4, 0.75}};

    CHECK(coherence_probability(pmf, 2, 4) == 0.75);
    CHECK(coherence_probability(pmf, 2, 2) == 0.25);
    CHECK(coherence_probability(pmf, 3, 4) == 0.421875);  // 0.75^3, three pairs
    CHECK(coherence_probability(pmf, 3, 2) == doctest::Approx(1.0 - 0.421875).epsilon(1e-15));

    for (int l : {2, 3, 8}) {
        double sum = 0.0;
        for (int r = 2; r <= max_feasible_rank(pmf.m); r += 2)
            sum += coherence_probability(pmf, l, r);
        CHECK(sum == doctest::Approx(1.0).epsilon(1e-12));
    }
}

TEST_CASE("set probability validates its arguments") {
    const RankPmf pmf = reference_pmf(6);
    CHECK_THROWS_AS(coherence_probability(pmf, 1, 4), std::invalid_argument);
    CHECK_THROWS_AS(coherence_probability(pmf, 4, 3), std::invalid_argument);
    CHECK_THROWS_AS(coherence_probability(pmf, 4, 0), std::invalid_argument);
    CHECK_THROWS_AS(coherence_probability(pmf, 4, 8), std::invalid_argument);
}

TEST_CASE("trial budget bound") {
    auto t = min_trials(0.7456074, 0.01);
    REQUIRE(t.has_value());
    CHECK(*t == 4);

    t = min_trials(0.5, 0.5);
    REQUIRE(t.has_value());
    CHECK(*t == 1);

    t = min_trials(1.0, 0.01);
    REQUIRE(t.has_value());
    CHECK(*t == 0);

    CHECK(!min_trials(0.0, 0.01).has_value());
    CHECK_THROWS_AS(min_trials(1.5, 0.01), std::invalid_argument);
    CHECK_THROWS_AS(min_trials(0.5, 0.0), std::invalid_argument);
    CHECK_THROWS_AS(min_trials(0.5, 1.0), std::invalid_argument);
}

TEST_CASE("search accepts immediately when every pair qualifies") {
    const SearchOutcome out = search_permutation_set(3, 2, 2, 100, 5);
    CHECK(out.achieved);
    CHECK(out.trials_used == 1);
    CHECK(out.achieved_r_min == 2);
    REQUIRE(out.gamma.size() == 2);
    const CoherenceReport rep = coherence_by_rank(out.gamma);
    REQUIRE(rep.r_min.has_value());
    CHECK(*rep.r_min == 2);
}

TEST_CASE("search is reproducible and worker invariant") {
    const SearchOutcome a = search_permutation_set(5, 4, 4, 200000, 42, 1);
    const SearchOutcome b = search_permutation_set(5, 4, 4, 200000, 42, 3);
    CHECK(a.achieved);
    CHECK(a.achieved == b.achieved);
    CHECK(a.trials_used == b.trials_used);
    CHECK(a.achieved_r_min == b.achieved_r_min);
    REQUIRE(a.gamma.size() == b.gamma.size());
    for (std::size_t i = 0; i < a.gamma.size(); ++i) CHECK(a.gamma[i] == b.gamma[i]);

    const CoherenceReport rep = coherence_by_rank(a.gamma);
    REQUIRE(rep.r_min.has_value());
    CHECK(*rep.r_min == a.achieved_r_min);
    CHECK(rep.mu == std::ldexp(1.0, -a.achieved_r_min / 2));
}

TEST_CASE("exhausted budget returns the best set seen") {
    // One trial of an L=8 set at m=5 essentially never reaches rank 4.
    const SearchOutcome out = search_permutation_set(5, 8, 4, 1, 7);
    CHECK(!out.achieved);
    CHECK(out.trials_used == 1);
    REQUIRE(out.gamma.size() == 8);
    CHECK(out.achieved_r_min >= 2);
    CHECK(out.achieved_r_min < 4);
}

TEST_CASE("search validates its arguments") {
    CHECK_THROWS_AS(search_permutation_set(5, 4, 3, 10, 1), std::invalid_argument);
    CHECK_THROWS_AS(search_permutation_set(5, 4, 6, 10, 1), std::invalid_argument);
    CHECK_THROWS_AS(search_permutation_set(3, 4, 2, 10, 1), std::invalid_argument);
    CHECK_THROWS_AS(search_permutation_set(5, 1, 2, 10, 1), std::invalid_argument);
    CHECK_THROWS_AS(search_permutation_set(5, 4, 4, 0, 1), std::invalid_argument);
}

TEST_CASE("one-trial success rate matches the closed form") {
    const RankPmf ref = reference_pmf(5);
    const double p_hit = coherence_probability(ref, 3, 4);

    int hits = 0;
    const int runs = 1000;
    for (int s = 0; s < runs; ++s)
        if (search_permutation_set(5, 3, 4, 1, static_cast<std::uint64_t>(s)).achieved) ++hits;

    const double freq = static_cast<double>(hits) / runs;
    CHECK(std::abs(freq - p_hit) < 0.05);
}
