// Randomized permutation-set search: Monte-Carlo rank probabilities, the
// closed-form acceptance probability for a set of L permutations, the trial
// budget that makes a miss unlikely, and the search loop itself.

#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <vector>

#include "gnoma/permutation.hpp"

namespace gnoma {

struct RankPmf {
    int m = 0;
    std::int64_t trials = 0;
    std::map<int, double> p;  // even rank -> estimated probability
    std::int64_t rank_zero_count = 0;  // should stay 0 for distinct pairs; recorded, not dropped
    std::uint64_t seed = 0;
};

struct SearchOutcome {
    std::vector<Permutation> gamma;
    int achieved_r_min = 0;
    std::int64_t trials_used = 0;
    std::uint64_t seed = 0;
    bool achieved = false;  // met the target rank before the budget ran out
};

// Number of canonical permutations m!/2, saturating at INT64_MAX.
std::int64_t count_canonical(std::int64_t m);

// Largest even symplectic rank two path forms on m variables can reach.
int max_feasible_rank(int m);

// Tallies the symplectic rank of `trials` uniformly drawn pairs of distinct
// canonical permutations. Deterministic given seed for any worker count
// (per-trial substreams, fixed-size tally blocks).
RankPmf estimate_rank_pmf(int m, std::int64_t trials, std::uint64_t seed, int workers = 1);

// Probability that L independently drawn permutations have minimum pairwise
// rank exactly r: tail(r/2)^C - tail(r/2+1)^C with C = L(L-1)/2 pairs.
double coherence_probability(const RankPmf& pmf, int l, int r);

// Trials needed so that at least one success has probability >= 1 - eps:
// ceil(log eps / log(1 - p)). p = 1 needs 0 trials; p = 0 is infeasible
// (nullopt).
std::optional<std::int64_t> min_trials(double p, double eps);

// Draws L distinct canonical permutations per trial and accepts the first
// set whose minimum pairwise symplectic rank reaches target_r. If the
// budget runs out, the best set seen is returned with achieved = false.
// The accepted trial is the lowest-index success for any worker count.
SearchOutcome search_permutation_set(int m, int l, int target_r, std::int64_t max_trials,
                                     std::uint64_t seed, int workers = 1);

}  // namespace gnoma
