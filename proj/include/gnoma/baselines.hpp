#pragma once

#include <cstdint>
#include <vector>

#include "gnoma/spreading.hpp"

namespace gnoma {

bool is_prime(int n);

// Prime closest to m; ties break toward the smaller prime (128 -> 127).
int nearest_prime(int m);

struct ZcConfig {
    int length = 0;               // prime sequence length
    std::vector<int> roots;       // L distinct roots in 1..length-1
    std::uint64_t seed = 0;       // seed the roots were drawn from
};

// Picks the prime closest to m and draws l distinct roots.
ZcConfig make_zc_config(int m, int l, std::uint64_t seed);

// Zadoff-Chu comparison matrix: for each root q the odd-length base
// sequence s_q[n] = exp(-j pi q n(n+1) / M_zc), plus all M_zc cyclic
// shifts of it, each column scaled to unit norm. N = L * M_zc.
SpreadingMatrix zc_matrix(const ZcConfig& cfg);

// Random comparison matrices: bipolar draws i.i.d. +/-1/sqrt(M) entries,
// gaussian draws i.i.d. N(0, 1/M) entries (columns not renormalized).
SpreadingMatrix random_matrix(Family kind, int m, int n, std::uint64_t seed);

}  // namespace gnoma
