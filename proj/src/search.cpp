#include "gnoma/search.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "gnoma/gf2.hpp"
#include "gnoma/parallel.hpp"
#include "gnoma/rng.hpp"

namespace gnoma {

std::int64_t count_canonical(std::int64_t m) {
    std::int64_t count = 1;
    for (std::int64_t k = 3; k <= m; ++k) {
        if (count > std::numeric_limits<std::int64_t>::max() / k)
            return std::numeric_limits<std::int64_t>::max();
        count *= k;
    }
    return count;  // m!/2 since the factor 2 is skipped
}

int max_feasible_rank(int m) {
    if (m < 2) throw std::invalid_argument("m must be at least 2");
    return (m % 2 == 0) ? m : m - 1;
}

namespace {

// Draws l distinct canonical permutations into out using rng.
void draw_distinct(int m, int l, Rng& rng, std::vector<Permutation>& out) {
    out.clear();
    while (static_cast<int>(out.size()) < l) {
        Permutation pi = Permutation::random_canonical(m, rng);
        if (std::find(out.begin(), out.end(), pi) == out.end()) out.push_back(std::move(pi));
    }
}

int min_pairwise_rank(const std::vector<Permutation>& gamma) {
    std::vector<Gf2Matrix> qs;
    qs.reserve(gamma.size());
    for (const auto& pi : gamma) qs.push_back(quadratic_matrix(pi));
    int r_min = std::numeric_limits<int>::max();
    for (std::size_t a = 0; a < qs.size(); ++a)
        for (std::size_t b = a + 1; b < qs.size(); ++b)
            r_min = std::min(r_min, symplectic_matrix(qs[a] + qs[b]).rank());
    return r_min;
}

// Fixed tally block so results cannot depend on how trials are split
// across workers.
constexpr std::int64_t kBlock = 4096;

}  // namespace

RankPmf estimate_rank_pmf(int m, std::int64_t trials, std::uint64_t seed, int workers) {
    if (m < 2) throw std::invalid_argument("m must be at least 2");
    if (trials < 1) throw std::invalid_argument("need at least one trial");
    if (count_canonical(m) < 2) throw std::invalid_argument("fewer than two canonical permutations");

    const int max_r = max_feasible_rank(m);
    const std::int64_t n_blocks = (trials + kBlock - 1) / kBlock;
    std::vector<std::vector<std::int64_t>> block_counts(
        static_cast<std::size_t>(n_blocks), std::vector<std::int64_t>(static_cast<std::size_t>(max_r) + 1, 0));

    parallel_for(n_blocks, workers, [&](std::int64_t blk) {
        auto& counts = block_counts[static_cast<std::size_t>(blk)];
        const std::int64_t lo = blk * kBlock;
        const std::int64_t hi = std::min(trials, lo + kBlock);
        for (std::int64_t t = lo; t < hi; ++t) {
            Rng rng = Rng::substream(seed, static_cast<std::uint64_t>(t));
            const Permutation pi1 = Permutation::random_canonical(m, rng);
            Permutation pi2 = Permutation::random_canonical(m, rng);
            while (pi2 == pi1) pi2 = Permutation::random_canonical(m, rng);
            const int r = symplectic_rank(pi1, pi2);
            counts[static_cast<std::size_t>(r)] += 1;
        }
    });

    std::vector<std::int64_t> counts(static_cast<std::size_t>(max_r) + 1, 0);
    for (const auto& blk : block_counts)
        for (std::size_t r = 0; r < counts.size(); ++r) counts[r] += blk[r];

    RankPmf pmf;
    pmf.m = m;
    pmf.trials = trials;
    pmf.seed = seed;
    pmf.rank_zero_count = counts[0];
    for (int r = 2; r <= max_r; r += 2)
        pmf.p[r] = static_cast<double>(counts[static_cast<std::size_t>(r)]) /
                   static_cast<double>(trials);
    return pmf;
}

double coherence_probability(const RankPmf& pmf, int l, int r) {
    if (l < 2) throw std::invalid_argument("need at least two permutations");
    const int max_r = max_feasible_rank(pmf.m);
    if (r < 2 || r > max_r || r % 2 != 0)
        throw std::invalid_argument("rank must be even and within 2..2*floor(m/2)");

    auto tail = [&](int from_r) {
        double s = 0.0;
        for (int rr = from_r; rr <= max_r; rr += 2) {
            auto it = pmf.p.find(rr);
            if (it != pmf.p.end()) s += it->second;
        }
        return s;
    };
    const double pairs = static_cast<double>(l) * (l - 1) / 2.0;
    return std::pow(tail(r), pairs) - std::pow(tail(r + 2), pairs);
}

std::optional<std::int64_t> min_trials(double p, double eps) {
    if (!(p >= 0.0 && p <= 1.0)) throw std::invalid_argument("probability must lie in [0,1]");
    if (!(eps > 0.0 && eps < 1.0)) throw std::invalid_argument("eps must lie in (0,1)");
    if (p == 1.0) return 0;
    if (p == 0.0) return std::nullopt;
    return static_cast<std::int64_t>(std::ceil(std::log(eps) / std::log1p(-p)));
}

SearchOutcome search_permutation_set(int m, int l, int target_r, std::int64_t max_trials,
                                     std::uint64_t seed, int workers) {
    if (m < 2) throw std::invalid_argument("m must be at least 2");
    if (l < 2) throw std::invalid_argument("need at least two permutations");
    if (count_canonical(m) < l)
        throw std::invalid_argument("fewer canonical permutations than requested");
    if (target_r % 2 != 0 || target_r < 2) throw std::invalid_argument("target rank must be even and positive");
    if (target_r > max_feasible_rank(m))
        throw std::invalid_argument("target rank exceeds the feasible ceiling for this m");
    if (max_trials < 1) throw std::invalid_argument("need at least one trial");

    SearchOutcome out;
    out.seed = seed;

    auto trial_rank = [&](std::int64_t t, std::vector<Permutation>& gamma) {
        Rng rng = Rng::substream(seed, static_cast<std::uint64_t>(t));
        draw_distinct(m, l, rng, gamma);
        return min_pairwise_rank(gamma);
    };

    std::int64_t best_trial = -1;
    int best_r = -1;
    std::vector<int> wave_r(static_cast<std::size_t>(kBlock));

    for (std::int64_t wave_lo = 0; wave_lo < max_trials; wave_lo += kBlock) {
        const std::int64_t wave_hi = std::min(max_trials, wave_lo + kBlock);
        const std::int64_t wave_n = wave_hi - wave_lo;

        parallel_for(wave_n, workers, [&](std::int64_t i) {
            thread_local std::vector<Permutation> gamma;
            wave_r[static_cast<std::size_t>(i)] = trial_rank(wave_lo + i, gamma);
        });

        for (std::int64_t i = 0; i < wave_n; ++i) {
            const int r = wave_r[static_cast<std::size_t>(i)];
            if (r > best_r) {
                best_r = r;
                best_trial = wave_lo + i;
            }
            if (r >= target_r) {
                out.achieved = true;
                out.trials_used = wave_lo + i + 1;
                std::vector<Permutation> gamma;
                out.achieved_r_min = trial_rank(wave_lo + i, gamma);
                out.gamma = std::move(gamma);
                return out;
            }
        }
    }

    out.achieved = false;
    out.trials_used = max_trials;
    std::vector<Permutation> gamma;
    out.achieved_r_min = trial_rank(best_trial, gamma);
    out.gamma = std::move(gamma);
    return out;
}

}  // namespace gnoma
