#include "gnoma/golay.hpp"

#include <bit>
#include <cmath>
#include <stdexcept>

namespace gnoma {

BitSequence golay_sequence(const Permutation& pi, std::uint64_t c) {
    const int m = pi.m();
    if ((c >> m) != 0) throw std::invalid_argument("linear index c out of range");
    return truth_table(quadratic_matrix(pi), c, 0);
}

Eigen::MatrixXd golay_block(const Permutation& pi) {
    const int m = pi.m();
    const std::uint64_t n = std::uint64_t{1} << m;
    const BitSequence q = truth_table(quadratic_matrix(pi), 0, 0);

    Eigen::MatrixXd block(n, n);
    for (std::uint64_t i = 0; i < n; ++i) {
        const double p_i = q.get(i) ? -1.0 : 1.0;
        for (std::uint64_t c = 0; c < n; ++c) {
            const bool flip = std::popcount(i & c) & 1;
            block(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(c)) =
                flip ? -p_i : p_i;
        }
    }
    return block;
}

SpreadingMatrix golay_spreading_matrix(std::span<const Permutation> perms, int n_cols) {
    if (perms.empty()) throw std::invalid_argument("need at least one permutation");
    const int m = perms[0].m();
    const std::uint64_t big_m = std::uint64_t{1} << m;
    std::vector<Gf2Matrix> qs;
    qs.reserve(perms.size());
    for (const auto& pi : perms) {
        if (pi.m() != m) throw std::invalid_argument("permutations must share m");
        Gf2Matrix q = quadratic_matrix(pi);
        for (const auto& prev : qs)
            if (prev == q)
                throw std::invalid_argument("duplicate quadratic form in permutation set");
        qs.push_back(std::move(q));
    }

    const std::int64_t full = static_cast<std::int64_t>(perms.size()) * static_cast<std::int64_t>(big_m);
    const std::int64_t n = (n_cols < 0) ? full : n_cols;
    if (n < 1 || n > full) throw std::invalid_argument("column count out of range");

    SpreadingMatrix s;
    s.family = Family::golay;
    s.perms.assign(perms.begin(), perms.end());
    s.entry_scale = 1.0 / std::sqrt(static_cast<double>(big_m));
    s.real.resize(static_cast<Eigen::Index>(big_m), n);
    s.column_bits.reserve(static_cast<std::size_t>(n));

    // Fast path: column c of block k is the coset table q_k xor the
    // Hadamard column of L_c, i.e. diag(psi(q_k)) * H one column at a time.
    BitSequence q_table;
    for (std::int64_t j = 0; j < n; ++j) {
        const std::size_t k = static_cast<std::size_t>(j) / big_m;
        const std::uint64_t c = static_cast<std::uint64_t>(j) % big_m;
        if (c == 0) q_table = truth_table(qs[k], 0, 0);
        BitSequence a(big_m);
        for (std::uint64_t i = 0; i < big_m; ++i) {
            const bool bit = q_table.get(i) ^ static_cast<bool>(std::popcount(i & c) & 1);
            if (bit) a.set(i, true);
            s.real(static_cast<Eigen::Index>(i), j) = bit ? -s.entry_scale : s.entry_scale;
        }
        s.column_bits.push_back(std::move(a));
    }
    return s;
}

}  // namespace gnoma
