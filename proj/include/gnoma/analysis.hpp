// Sequence-set certification: coherence (exhaustive and rank-based), PAPR
// through an oversampled DFT, and the sparse-recovery bounds coherence buys.

#pragma once

#include <complex>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "gnoma/golay.hpp"
#include "gnoma/spreading.hpp"

namespace gnoma {

struct CoherenceReport {
    double mu = 0.0;
    std::optional<int> r_min;  // minimum pairwise symplectic rank (golay path)
    int j1 = -1;               // witnessing column pair, -1 when no pair exists
    int j2 = -1;
};

struct PaprReport {
    double papr_linear = 1.0;
    double papr_db = 0.0;
    int oversample = 4;
};

struct RecoveryBounds {
    bool orthogonal = false;   // mu = 0: uniqueness capped by the row count
    double spark_lb = 0.0;     // 1 + 1/mu
    int guaranteed_spark = 0;  // smallest spark consistent with the bound
    int k_max_smv = 0;         // largest K with K < spark/2
    int k_max_mmv = 0;         // largest K with K < (spark - 1 + rank_x)/2
    std::string derivation;
};

// Exhaustive max over normalized column-pair inner products. +/-1 families
// go through exact integer popcounts, other families through a float scan
// with a 1e-12 tie tolerance on the witnessing pair. Deterministic for any
// worker count: the max is reduced first, the lexicographically smallest
// witnessing pair second.
CoherenceReport coherence_exact(const SpreadingMatrix& s, int workers = 1);

// Coherence of the golay matrix of a permutation set without building it:
// mu = 2^(-r_min/2) where r_min is the minimum pairwise symplectic rank.
// Fewer than two permutations yield the orthogonal single-block report.
CoherenceReport coherence_by_rank(std::span<const Permutation> gamma);

// Peak-to-average power after zero-padding b to oversample times its
// length: max_k |X_k|^2 / sum_i |b_i|^2 (the denominator equals M for
// modulated binary sequences).
PaprReport papr(std::span<const std::complex<double>> b, int oversample = 4);
PaprReport papr(std::span<const double> b, int oversample = 4);

// Worst column PAPR of a spreading matrix, in dB.
double max_papr_db(const SpreadingMatrix& s, int oversample = 4);

// Spark and sparsity-order bounds implied by coherence mu, for a single
// measurement vector and for rank_x joint measurement vectors.
RecoveryBounds recovery_bounds(double mu, int rank_x);

}  // namespace gnoma
