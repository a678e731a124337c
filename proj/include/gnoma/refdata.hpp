// Bundled reference data: published permutation sets with their certified
// coherence, the published rank-probability table, and the worked length-8
// example used by verify-tables and as simulator defaults.

#pragma once

#include <cstdint>
#include <vector>

#include "gnoma/permutation.hpp"

namespace gnoma::refdata {

struct PermutationSetRecord {
    int m = 0;
    int l_min = 0;   // overloading-factor bracket the set is certified for
    int l_max = 0;
    double coherence = 0.0;
    std::vector<Permutation> perms;
};

const std::vector<PermutationSetRecord>& permutation_sets();

// First l permutations of the bundled set covering (m, l); throws when no
// bundled set covers the request.
std::vector<Permutation> default_perms(int m, int l);

struct RankProbability {
    int m = 0;
    int r = 0;
    double p = 0.0;
};

// Published Monte-Carlo rank distribution (10^7 trials per m).
const std::vector<RankProbability>& rank_reference();

// Worked example: permutation (2,1,3) on m = 3, its bare quadratic-form
// truth table, and the table with linear index c = 6 added.
Permutation example_permutation();
std::uint64_t example_linear_index();
std::vector<int> example_quadratic_bits();
std::vector<int> example_sequence_bits();

}  // namespace gnoma::refdata
