#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <complex>
#include <stdexcept>
#include <vector>

#include "gnoma/analysis.hpp"
#include "gnoma/baselines.hpp"
#include "gnoma/refdata.hpp"
#include "gnoma/rng.hpp"
#include "oracles.hpp"

using namespace gnoma;

namespace {

double witness_ip(const SpreadingMatrix& s, const CoherenceReport& rep) {
    const Eigen::VectorXcd a = s.column_complex(rep.j1);
    const Eigen::VectorXcd b = s.column_complex(rep.j2);
    return std::abs(a.dot(b)) / (a.norm() * b.norm());
}

}  // namespace

TEST_CASE("papr of tiny sequences is exact") {
    const std::vector<double> two_tone = {1.0, 1.0};
    CHECK(papr(std::span<const double>(two_tone)).papr_linear ==
          doctest::Approx(2.0).epsilon(1e-12));

    const std::vector<double> ones(8, 1.0);
    const PaprReport rep = papr(std::span<const double>(ones), 8);
    CHECK(rep.papr_linear == doctest::Approx(8.0).epsilon(1e-12));
    CHECK(rep.papr_db == doctest::Approx(10.0 * std::log10(8.0)).epsilon(1e-12));
    CHECK(rep.oversample == 8);

    const std::vector<double> single = {5.0};
    CHECK(papr(std::span<const double>(single)).papr_linear ==
          doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("papr agrees with direct dense-grid evaluation") {
    const auto mod = golay_sequence(Permutation::parse("3,1,4,2"), 9).modulated();
    const double grid = oracles::papr_dense_grid(mod, 16);
    const double fft = papr(std::span<const double>(mod), 16).papr_linear;
    CHECK(fft == doctest::Approx(grid).epsilon(1e-9));
}

TEST_CASE("denser oversampling only raises the reported peak") {
    const auto mod = golay_sequence(Permutation::parse("2,4,1,3,5"), 17).modulated();
    const double p4 = papr(std::span<const double>(mod), 4).papr_linear;
    const double p16 = papr(std::span<const double>(mod), 16).papr_linear;
    const double p64 = papr(std::span<const double>(mod), 64).papr_linear;
    CHECK(p4 <= p16 * (1.0 + 1e-12));
    CHECK(p16 <= p64 * (1.0 + 1e-12));
    // The two-sided refinement gap closes quickly.
    CHECK(10.0 * std::log10(p16 / p4) < 0.1);
}

TEST_CASE("every golay sequence stays under the factor-2 peak bound") {
    for (int m = 4; m <= 5; ++m) {
        for (const Permutation& pi : oracles::all_canonical(m)) {
            const auto n = std::uint64_t{1} << m;
            for (std::uint64_t c = 0; c < n; ++c) {
                const auto mod = golay_sequence(pi, c).modulated();
                CHECK(papr(std::span<const double>(mod)).papr_linear <= 2.0 + 1e-9);
            }
        }
    }
}

TEST_CASE("papr is scale and sign invariant") {
    const auto mod = golay_sequence(Permutation::parse("2,1,3,4"), 5).modulated();
    const double base = papr(std::span<const double>(mod)).papr_linear;
    std::vector<double> scaled(mod.size());
    for (std::size_t i = 0; i < mod.size(); ++i) scaled[i] = -3.0 * mod[i];
    CHECK(papr(std::span<const double>(scaled)).papr_linear ==
          doctest::Approx(base).epsilon(1e-12));
}

TEST_CASE("papr validates inputs") {
    const std::vector<double> empty;
    CHECK_THROWS_AS(papr(std::span<const double>(empty)), std::invalid_argument);
    const std::vector<double> ok = {1.0, -1.0};
    CHECK_THROWS_AS(papr(std::span<const double>(ok), 0), std::invalid_argument);
}

TEST_CASE("matrix papr is the worst column papr") {
    const std::vector<Permutation> perms = {Permutation::parse("2,1,3,4"),
                                            Permutation::parse("1,3,2,4")};
    const SpreadingMatrix s = golay_spreading_matrix(perms);
    double worst = 0.0;
    for (int j = 0; j < s.cols(); ++j) {
        std::vector<double> col(static_cast<std::size_t>(s.rows()));
        for (int i = 0; i < s.rows(); ++i) col[static_cast<std::size_t>(i)] = s.real(i, j);
        worst = std::max(worst, papr(std::span<const double>(col)).papr_linear);
    }
    CHECK(max_papr_db(s) == doctest::Approx(10.0 * std::log10(worst)).epsilon(1e-12));
    CHECK(max_papr_db(s) <= 10.0 * std::log10(2.0) + 1e-6);
}

TEST_CASE("single block is orthogonal: coherence zero") {
    const std::vector<Permutation> perms = {Permutation::parse("2,1,3")};
    const CoherenceReport rep = coherence_exact(golay_spreading_matrix(perms));
    CHECK(rep.mu == 0.0);
    CHECK(!rep.r_min.has_value());
    CHECK(rep.j1 == 0);
    CHECK(rep.j2 == 1);

    const CoherenceReport by_rank = coherence_by_rank(perms);
    CHECK(by_rank.mu == 0.0);
    CHECK(!by_rank.r_min.has_value());
}

TEST_CASE("two-block worked case: coherence one half") {
    const std::vector<Permutation> gamma = {Permutation::parse("1,2,3"),
                                            Permutation::parse("2,1,3")};
    const SpreadingMatrix s = golay_spreading_matrix(gamma);

    const CoherenceReport exact = coherence_exact(s);
    CHECK(exact.mu == 0.5);
    REQUIRE(exact.r_min.has_value());
    CHECK(*exact.r_min == 2);
    CHECK(witness_ip(s, exact) == doctest::Approx(0.5).epsilon(1e-12));

    const CoherenceReport ranked = coherence_by_rank(gamma);
    CHECK(ranked.mu == 0.5);
    REQUIRE(ranked.r_min.has_value());
    CHECK(*ranked.r_min == 2);
    CHECK(witness_ip(s, ranked) == doctest::Approx(0.5).epsilon(1e-12));
}

TEST_CASE("repeated quadratic form drives coherence to one") {
    const std::vector<Permutation> gamma = {Permutation::parse("2,1,3"),
                                            Permutation::parse("3,1,2")};
    const CoherenceReport rep = coherence_by_rank(gamma);
    CHECK(rep.mu == 1.0);
    REQUIRE(rep.r_min.has_value());
    CHECK(*rep.r_min == 0);
    CHECK(rep.j1 == 0);
    CHECK(rep.j2 == 8);
}

TEST_CASE("cross-block inner products take only the two predicted magnitudes") {
    Rng rng(0x1ea5);
    for (int trial = 0; trial < 5; ++trial) {
        const Permutation a = Permutation::random_canonical(5, rng);
        Permutation b = Permutation::random_canonical(5, rng);
        while (symplectic_rank(a, b) == 0) b = Permutation::random_canonical(5, rng);

        const int h = symplectic_rank(a, b) / 2;
        const std::int64_t allowed = std::int64_t{1} << (5 - h);
        const std::vector<Permutation> gamma = {a, b};
        const SpreadingMatrix s = golay_spreading_matrix(gamma);
        for (int j1 = 0; j1 < 32; ++j1) {
            for (int j2 = 32; j2 < 64; ++j2) {
                const std::int64_t ip = std::abs(modulated_inner_product(
                    s.column_bits[static_cast<std::size_t>(j1)],
                    s.column_bits[static_cast<std::size_t>(j2)]));
                CHECK((ip == 0 || ip == allowed));
            }
        }
    }
}

TEST_CASE("rank shortcut matches the exhaustive scan on bundled sets") {
    for (const auto& rec : refdata::permutation_sets()) {
        if (rec.m > 6) continue;
        const CoherenceReport ranked = coherence_by_rank(rec.perms);
        const CoherenceReport exact = coherence_exact(golay_spreading_matrix(rec.perms));
        CHECK(ranked.mu == exact.mu);
        REQUIRE(ranked.r_min.has_value());
        REQUIRE(exact.r_min.has_value());
        CHECK(*ranked.r_min == *exact.r_min);
    }
}

TEST_CASE("zc coherence is one over root length") {
    ZcConfig cfg;
    cfg.length = 7;
    cfg.roots = {1, 3};
    const CoherenceReport rep = coherence_exact(zc_matrix(cfg));
    CHECK(rep.mu == doctest::Approx(1.0 / std::sqrt(7.0)).epsilon(1e-12));
    CHECK(witness_ip(zc_matrix(cfg), rep) == doctest::Approx(rep.mu).epsilon(1e-12));
}

TEST_CASE("coherence requires two columns") {
    const SpreadingMatrix one = golay_spreading_matrix(
        std::vector<Permutation>{Permutation::parse("2,1,3")}, 1);
    CHECK_THROWS_AS(coherence_exact(one), std::invalid_argument);
}

TEST_CASE("recovery bounds follow the spark chain") {
    const RecoveryBounds rb = recovery_bounds(0.25, 1);
    CHECK(!rb.orthogonal);
    CHECK(rb.spark_lb == doctest::Approx(5.0).epsilon(1e-15));
    CHECK(rb.guaranteed_spark == 6);
    CHECK(rb.k_max_smv == 2);
    CHECK(rb.k_max_mmv == 2);
    CHECK(!rb.derivation.empty());

    const RecoveryBounds mmv = recovery_bounds(0.0625, 7);
    CHECK(mmv.guaranteed_spark == 18);
    CHECK(mmv.k_max_smv == 8);
    CHECK(mmv.k_max_mmv == 11);

    const RecoveryBounds parallel = recovery_bounds(1.0, 1);
    CHECK(parallel.guaranteed_spark == 2);
    CHECK(parallel.k_max_smv == 0);

    const RecoveryBounds ortho = recovery_bounds(0.0, 4);
    CHECK(ortho.orthogonal);
    CHECK(std::isinf(ortho.spark_lb));
    CHECK(ortho.k_max_smv == -1);

    CHECK_THROWS_AS(recovery_bounds(1.5, 1), std::invalid_argument);
    CHECK_THROWS_AS(recovery_bounds(-0.1, 1), std::invalid_argument);
    CHECK_THROWS_AS(recovery_bounds(0.5, 0), std::invalid_argument);
}

TEST_CASE("coherence scan is worker invariant") {
    const auto perms = refdata::default_perms(5, 4);
    const SpreadingMatrix s = golay_spreading_matrix(perms);
    const CoherenceReport w1 = coherence_exact(s, 1);
    const CoherenceReport w3 = coherence_exact(s, 3);
    CHECK(w1.mu == w3.mu);
    CHECK(w1.j1 == w3.j1);
    CHECK(w1.j2 == w3.j2);

    const SpreadingMatrix g = random_matrix(Family::gaussian, 32, 200, 11);
    const CoherenceReport f1 = coherence_exact(g, 1);
    const CoherenceReport f4 = coherence_exact(g, 4);
    CHECK(f1.mu == f4.mu);
    CHECK(f1.j1 == f4.j1);
    CHECK(f1.j2 == f4.j2);
}
