#include "gnoma/analysis.hpp"

#include <fftw3.h>

#include <bit>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <limits>
#include <stdexcept>

#include "gnoma/parallel.hpp"

namespace gnoma {

namespace {

// Linear-form truth table psi(L_d) as packed bits: bit i = parity(i & d).
BitSequence linear_table(std::size_t n, std::uint64_t d) {
    BitSequence t(n);
    for (std::size_t i = 0; i < n; ++i)
        if (std::popcount(i & d) & 1) t.set(i, true);
    return t;
}

CoherenceReport scan_bits(const SpreadingMatrix& s, int workers) {
    const int n = s.cols();
    const auto m = static_cast<std::int64_t>(s.rows());
    std::vector<std::int64_t> row_best(static_cast<std::size_t>(n - 1), -1);
    std::vector<int> row_j2(static_cast<std::size_t>(n - 1), -1);

    parallel_for(n - 1, workers, [&](std::int64_t j1) {
        std::int64_t best = -1;
        int best_j2 = -1;
        const auto& a = s.column_bits[static_cast<std::size_t>(j1)];
        for (int j2 = static_cast<int>(j1) + 1; j2 < n; ++j2) {
            const std::int64_t ip =
                std::abs(modulated_inner_product(a, s.column_bits[static_cast<std::size_t>(j2)]));
            if (ip > best) {
                best = ip;
                best_j2 = j2;
            }
        }
        row_best[static_cast<std::size_t>(j1)] = best;
        row_j2[static_cast<std::size_t>(j1)] = best_j2;
    });

    std::int64_t max_ip = -1;
    for (auto v : row_best) max_ip = std::max(max_ip, v);
    CoherenceReport rep;
    rep.mu = static_cast<double>(max_ip) / static_cast<double>(m);
    for (std::size_t j1 = 0; j1 < row_best.size(); ++j1) {
        if (row_best[j1] == max_ip) {
            rep.j1 = static_cast<int>(j1);
            rep.j2 = row_j2[j1];
            break;
        }
    }
    return rep;
}

CoherenceReport scan_float(const SpreadingMatrix& s, int workers) {
    const int n = s.cols();
    Eigen::VectorXd norms(n);
    for (int j = 0; j < n; ++j)
        norms(j) = s.is_real() ? s.real.col(j).norm() : s.cplx.col(j).norm();

    std::vector<double> row_best(static_cast<std::size_t>(n - 1),
                                 -std::numeric_limits<double>::infinity());
    std::vector<int> row_j2(static_cast<std::size_t>(n - 1), -1);

    parallel_for(n - 1, workers, [&](std::int64_t j1) {
        double best = -std::numeric_limits<double>::infinity();
        int best_j2 = -1;
        for (int j2 = static_cast<int>(j1) + 1; j2 < n; ++j2) {
            const double ip = s.is_real()
                                  ? std::abs(s.real.col(j1).dot(s.real.col(j2)))
                                  : std::abs(s.cplx.col(j1).dot(s.cplx.col(j2)));
            const double v = ip / (norms(j1) * norms(j2));
            if (v > best) {
                best = v;
                best_j2 = j2;
            }
        }
        row_best[static_cast<std::size_t>(j1)] = best;
        row_j2[static_cast<std::size_t>(j1)] = best_j2;
    });

    double max_v = -std::numeric_limits<double>::infinity();
    for (double v : row_best) max_v = std::max(max_v, v);
    CoherenceReport rep;
    rep.mu = max_v;
    const double tol = 1e-12 * std::max(1.0, max_v);
    for (std::size_t j1 = 0; j1 < row_best.size(); ++j1) {
        if (row_best[j1] >= max_v - tol) {
            rep.j1 = static_cast<int>(j1);
            rep.j2 = row_j2[j1];
            break;
        }
    }
    return rep;
}

}  // namespace

CoherenceReport coherence_exact(const SpreadingMatrix& s, int workers) {
    if (s.cols() < 2) throw std::invalid_argument("coherence needs at least two columns");
    const bool bits_cover_all =
        (s.family == Family::golay || s.family == Family::bipolar) &&
        s.column_bits.size() == static_cast<std::size_t>(s.cols());
    CoherenceReport rep = bits_cover_all ? scan_bits(s, workers) : scan_float(s, workers);
    if (s.family == Family::golay && rep.mu > 0.0) {
        // 2^(-r/2) = mu, exact for the power-of-two values golay attains.
        const double r = -2.0 * std::log2(rep.mu);
        const int ri = static_cast<int>(std::lround(r));
        if (std::abs(r - ri) < 1e-9) rep.r_min = ri;
    }
    return rep;
}

CoherenceReport coherence_by_rank(std::span<const Permutation> gamma) {
    CoherenceReport rep;
    if (gamma.size() < 2) return rep;  // orthogonal single block, mu = 0

    const int m = gamma[0].m();
    for (const auto& pi : gamma)
        if (pi.m() != m) throw std::invalid_argument("permutation set mixes dimensions");

    std::vector<Gf2Matrix> qs;
    qs.reserve(gamma.size());
    for (const auto& pi : gamma) qs.push_back(quadratic_matrix(pi));

    int r_min = std::numeric_limits<int>::max();
    int k1 = -1, k2 = -1;
    for (std::size_t a = 0; a < qs.size(); ++a) {
        for (std::size_t b = a + 1; b < qs.size(); ++b) {
            const int r = symplectic_matrix(qs[a] + qs[b]).rank();
            if (r < r_min) {
                r_min = r;
                k1 = static_cast<int>(a);
                k2 = static_cast<int>(b);
            }
        }
    }

    rep.r_min = r_min;
    rep.mu = std::ldexp(1.0, -r_min / 2);

    // Witness columns: the cross-block inner product depends only on the
    // xor d of the two linear indices, so scan d once.
    const std::size_t big_m = std::size_t{1} << m;
    const BitSequence base = truth_table(qs[static_cast<std::size_t>(k1)], 0, 0) ^
                             truth_table(qs[static_cast<std::size_t>(k2)], 0, 0);
    std::int64_t best = -1;
    std::uint64_t best_d = 0;
    for (std::uint64_t d = 0; d < big_m; ++d) {
        const std::int64_t ip = std::abs(static_cast<std::int64_t>(big_m) -
                                         2 * static_cast<std::int64_t>((base ^ linear_table(big_m, d)).weight()));
        if (ip > best) {
            best = ip;
            best_d = d;
        }
    }
    rep.j1 = k1 * static_cast<int>(big_m);
    rep.j2 = k2 * static_cast<int>(big_m) + static_cast<int>(best_d);
    return rep;
}

namespace {

// One DFT workspace per sequence length; reused across the columns of a
// matrix. FFTW planning is not thread-safe, so PAPR stays sequential.
class DftWorkspace {
  public:
    DftWorkspace(std::size_t n)
        : n_(n),
          in_(fftw_alloc_complex(n)),
          out_(fftw_alloc_complex(n)),
          plan_(fftw_plan_dft_1d(static_cast<int>(n), in_, out_, FFTW_FORWARD, FFTW_ESTIMATE)) {
        if (!in_ || !out_ || !plan_) throw std::runtime_error("FFTW allocation failed");
    }
    DftWorkspace(const DftWorkspace&) = delete;
    DftWorkspace& operator=(const DftWorkspace&) = delete;
    ~DftWorkspace() {
        fftw_destroy_plan(plan_);
        fftw_free(in_);
        fftw_free(out_);
    }

    // max_k |DFT(b zero-padded)|^2 for b of length <= n_.
    double peak_power(std::span<const std::complex<double>> b) {
        for (std::size_t i = 0; i < b.size(); ++i) {
            in_[i][0] = b[i].real();
            in_[i][1] = b[i].imag();
        }
        for (std::size_t i = b.size(); i < n_; ++i) in_[i][0] = in_[i][1] = 0.0;
        fftw_execute(plan_);
        double peak = 0.0;
        for (std::size_t k = 0; k < n_; ++k)
            peak = std::max(peak, out_[k][0] * out_[k][0] + out_[k][1] * out_[k][1]);
        return peak;
    }

  private:
    std::size_t n_;
    fftw_complex* in_;
    fftw_complex* out_;
    fftw_plan plan_;
};

double mean_power(std::span<const std::complex<double>> b) {
    double s = 0.0;
    for (const auto& v : b) s += std::norm(v);
    return s;
}

PaprReport papr_with(DftWorkspace& ws, std::span<const std::complex<double>> b, int oversample) {
    PaprReport rep;
    rep.oversample = oversample;
    rep.papr_linear = ws.peak_power(b) / mean_power(b);
    rep.papr_db = 10.0 * std::log10(rep.papr_linear);
    return rep;
}

}  // namespace

PaprReport papr(std::span<const std::complex<double>> b, int oversample) {
    if (oversample < 1) throw std::invalid_argument("oversample must be at least 1");
    if (b.empty()) throw std::invalid_argument("empty sequence");
    DftWorkspace ws(b.size() * static_cast<std::size_t>(oversample));
    return papr_with(ws, b, oversample);
}

PaprReport papr(std::span<const double> b, int oversample) {
    std::vector<std::complex<double>> c(b.size());
    for (std::size_t i = 0; i < b.size(); ++i) c[i] = b[i];
    return papr(std::span<const std::complex<double>>(c), oversample);
}

double max_papr_db(const SpreadingMatrix& s, int oversample) {
    if (oversample < 1) throw std::invalid_argument("oversample must be at least 1");
    const int m = s.rows();
    const int n = s.cols();
    if (n < 1) throw std::invalid_argument("empty matrix");
    DftWorkspace ws(static_cast<std::size_t>(m) * static_cast<std::size_t>(oversample));
    std::vector<std::complex<double>> col(static_cast<std::size_t>(m));
    double worst = 0.0;
    for (int j = 0; j < n; ++j) {
        for (int i = 0; i < m; ++i)
            col[static_cast<std::size_t>(i)] =
                s.is_real() ? std::complex<double>(s.real(i, j), 0.0) : s.cplx(i, j);
        worst = std::max(worst, papr_with(ws, col, oversample).papr_linear);
    }
    return 10.0 * std::log10(worst);
}

RecoveryBounds recovery_bounds(double mu, int rank_x) {
    if (!(mu >= 0.0 && mu <= 1.0)) throw std::invalid_argument("mu must lie in [0,1]");
    if (rank_x < 1) throw std::invalid_argument("rank_x must be at least 1");

    RecoveryBounds rb;
    char buf[512];
    if (mu == 0.0) {
        rb.orthogonal = true;
        rb.spark_lb = std::numeric_limits<double>::infinity();
        rb.guaranteed_spark = -1;
        rb.k_max_smv = -1;
        rb.k_max_mmv = -1;
        rb.derivation =
            "mu = 0: columns are orthogonal, so no sparsity limit follows from "
            "coherence; K is bounded only by the row count.";
        return rb;
    }

    rb.spark_lb = 1.0 + 1.0 / mu;
    if (mu == 1.0) {
        // Coherence 1 exhibits two parallel columns, so the spark is exactly 2
        // and the strict lower bound is not informative.
        rb.guaranteed_spark = 2;
    } else {
        rb.guaranteed_spark = static_cast<int>(std::floor(rb.spark_lb)) + 1;
    }
    rb.k_max_smv = (rb.guaranteed_spark - 1) / 2;
    rb.k_max_mmv = (rb.guaranteed_spark + rank_x - 2) / 2;

    std::snprintf(buf, sizeof buf,
                  "mu = %.10g: spark > 1 + 1/mu = %.10g, so spark >= %d; "
                  "unique SMV recovery needs K < spark/2, giving K <= %d; "
                  "with rank(X) = %d joint vectors the condition K < "
                  "(spark - 1 + rank(X))/2 gives K <= %d.",
                  mu, rb.spark_lb, rb.guaranteed_spark, rb.k_max_smv, rank_x, rb.k_max_mmv);
    rb.derivation = buf;
    return rb;
}

}  // namespace gnoma
