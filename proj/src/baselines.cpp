#include "gnoma/baselines.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <set>
#include <stdexcept>

#include "gnoma/rng.hpp"

namespace gnoma {

bool is_prime(int n) {
    if (n < 2) return false;
    for (int d = 2; static_cast<long long>(d) * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

int nearest_prime(int m) {
    if (m < 2) return 2;
    for (int delta = 0;; ++delta) {
        if (is_prime(m - delta)) return m - delta;
        if (is_prime(m + delta)) return m + delta;
    }
}

ZcConfig make_zc_config(int m, int l, std::uint64_t seed) {
    if (l < 1) throw std::invalid_argument("need at least one root");
    ZcConfig cfg;
    cfg.length = nearest_prime(m);
    cfg.seed = seed;
    if (l > cfg.length - 1) throw std::invalid_argument("more roots requested than exist");

    Rng rng = Rng::substream(seed, 0x5a43);  // root draw stream
    std::set<int> seen;
    while (static_cast<int>(cfg.roots.size()) < l) {
        const int q = static_cast<int>(rng.next_below(static_cast<std::uint64_t>(cfg.length - 1))) + 1;
        if (seen.insert(q).second) cfg.roots.push_back(q);
    }
    return cfg;
}

SpreadingMatrix zc_matrix(const ZcConfig& cfg) {
    const int mzc = cfg.length;
    if (!is_prime(mzc)) throw std::invalid_argument("ZC length must be prime");
    {
        std::set<int> seen(cfg.roots.begin(), cfg.roots.end());
        if (seen.size() != cfg.roots.size()) throw std::invalid_argument("duplicate ZC roots");
        for (int q : cfg.roots)
            if (q < 1 || q > mzc - 1) throw std::invalid_argument("ZC root out of range");
    }

    const int l = static_cast<int>(cfg.roots.size());
    const int n_cols = l * mzc;
    const double scale = 1.0 / std::sqrt(static_cast<double>(mzc));

    SpreadingMatrix s;
    s.family = Family::zc;
    s.zc_length = mzc;
    s.zc_roots = cfg.roots;
    s.seed = cfg.seed;
    s.cplx.resize(mzc, n_cols);

    for (int k = 0; k < l; ++k) {
        const long long q = cfg.roots[static_cast<std::size_t>(k)];
        // Base sequence once per root; shifts reuse it.
        std::vector<std::complex<double>> base(static_cast<std::size_t>(mzc));
        for (int n = 0; n < mzc; ++n) {
            // Reduce q*n*(n+1) mod 2*M_zc so the phase argument stays small.
            const long long t = (q * n % (2LL * mzc)) * (n + 1) % (2LL * mzc);
            const double phase = -std::numbers::pi * static_cast<double>(t) / mzc;
            base[static_cast<std::size_t>(n)] =
                scale * std::complex<double>(std::cos(phase), std::sin(phase));
        }
        for (int shift = 0; shift < mzc; ++shift) {
            const int j = k * mzc + shift;
            for (int n = 0; n < mzc; ++n)
                s.cplx(n, j) = base[static_cast<std::size_t>((n + shift) % mzc)];
        }
    }
    return s;
}

SpreadingMatrix random_matrix(Family kind, int m, int n, std::uint64_t seed) {
    if (m < 1 || n < 1) throw std::invalid_argument("matrix dimensions must be positive");
    if (kind != Family::bipolar && kind != Family::gaussian)
        throw std::invalid_argument("random_matrix builds bipolar or gaussian families");

    SpreadingMatrix s;
    s.family = kind;
    s.seed = seed;
    s.real.resize(m, n);

    Rng rng = Rng::substream(seed, kind == Family::bipolar ? 0x6270 : 0x6773);
    if (kind == Family::bipolar) {
        s.entry_scale = 1.0 / std::sqrt(static_cast<double>(m));
        s.column_bits.reserve(static_cast<std::size_t>(n));
        for (int j = 0; j < n; ++j) {
            BitSequence a(static_cast<std::size_t>(m));
            for (int i = 0; i < m; ++i) {
                const bool bit = rng.next_u64() & 1;
                if (bit) a.set(static_cast<std::size_t>(i), true);
                s.real(i, j) = bit ? -s.entry_scale : s.entry_scale;
            }
            s.column_bits.push_back(std::move(a));
        }
    } else {
        const double sigma = 1.0 / std::sqrt(static_cast<double>(m));
        for (int j = 0; j < n; ++j) rng.fill_normal(s.real.col(j).data(), static_cast<std::size_t>(m), sigma);
    }
    return s;
}

}  // namespace gnoma
