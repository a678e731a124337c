// Brute-force reference implementations the unit tests check the library
// against. Deliberately slow, simple and independent of the library's own
// algorithms.

#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>
#include <numeric>
#include <set>
#include <span>
#include <vector>

#include "gnoma/gf2.hpp"
#include "gnoma/permutation.hpp"

namespace gnoma::oracles {

// GF(2) rank by enumerating the row span: |span| = 2^rank.
inline int rank_by_span(const Gf2Matrix& a) {
    std::set<std::uint64_t> span{0};
    for (int r = 0; r < a.rows(); ++r) {
        const std::uint64_t row = a.row_words()[static_cast<std::size_t>(r)];
        std::set<std::uint64_t> grown = span;
        for (std::uint64_t v : span) grown.insert(v ^ row);
        span = std::move(grown);
    }
    int rank = 0;
    while ((std::size_t{1} << rank) < span.size()) ++rank;
    return rank;
}

// Peak-to-average power of the multicarrier signal sum_i b_i e^{j 2 pi i t}
// by direct summation on a dense time grid.
inline double papr_dense_grid(std::span<const double> b, int grid_per_sample) {
    const std::size_t m = b.size();
    const std::size_t pts = m * static_cast<std::size_t>(grid_per_sample);
    double mean = 0.0;
    for (double v : b) mean += v * v;
    double peak = 0.0;
    for (std::size_t k = 0; k < pts; ++k) {
        const double t = static_cast<double>(k) / static_cast<double>(pts);
        std::complex<double> s = 0.0;
        for (std::size_t i = 0; i < m; ++i) {
            const double phase = 2.0 * std::numbers::pi * static_cast<double>(i) * t;
            s += b[i] * std::complex<double>(std::cos(phase), std::sin(phase));
        }
        peak = std::max(peak, std::norm(s));
    }
    return peak / mean;
}

// Every canonical permutation of {1..m}, in lexicographic order.
inline std::vector<Permutation> all_canonical(int m) {
    std::vector<int> v(static_cast<std::size_t>(m));
    std::iota(v.begin(), v.end(), 1);
    std::vector<Permutation> out;
    do {
        if (v.front() < v.back()) out.emplace_back(v);
    } while (std::next_permutation(v.begin(), v.end()));
    return out;
}

}  // namespace gnoma::oracles
