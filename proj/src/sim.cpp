#include "gnoma/sim.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdio>
#include <limits>
#include <numbers>
#include <numeric>
#include <stdexcept>

#include "gnoma/baselines.hpp"
#include "gnoma/golay.hpp"
#include "gnoma/parallel.hpp"
#include "gnoma/refdata.hpp"
#include "gnoma/rng.hpp"

namespace gnoma {

const char* stopping_name(StoppingRule rule) {
    switch (rule) {
        case StoppingRule::row_max: return "row_max";
        case StoppingRule::frobenius: return "frobenius";
    }
    throw std::logic_error("unknown stopping rule");
}

StoppingRule stopping_from_name(const std::string& name) {
    if (name == "row_max") return StoppingRule::row_max;
    if (name == "frobenius") return StoppingRule::frobenius;
    throw std::invalid_argument("unknown stopping rule: " + name);
}

namespace {

// Keys for deriving the matrix draw from the master seed; large constants
// so they can never collide with grid-point indices.
constexpr std::uint64_t kMatrixStream = 0x8f1bbcdcbfa53e0bULL;

constexpr double kQpskAmp = std::numbers::sqrt2 / 2.0;  // 1/sqrt(2)

void validate(const ScenarioConfig& cfg) {
    if (cfg.spread_len < 2) throw std::invalid_argument("spreading length must be at least 2");
    if (cfg.l < 1) throw std::invalid_argument("overloading factor must be at least 1");
    if (cfg.j < 2) throw std::invalid_argument("need a pilot slot plus at least one data slot");
    if (!(cfg.p_a >= 0.0 && cfg.p_a <= 1.0)) throw std::invalid_argument("p_a must lie in [0,1]");
    if (cfg.frames < 1) throw std::invalid_argument("need at least one frame");
}

}  // namespace

SpreadingMatrix scenario_matrix(const ScenarioConfig& cfg, std::uint64_t matrix_seed) {
    validate(cfg);
    switch (cfg.family) {
        case Family::golay: {
            const auto len = static_cast<unsigned>(cfg.spread_len);
            if (cfg.spread_len < 4 || std::popcount(len) != 1)
                throw std::invalid_argument("golay spreading length must be a power of two >= 4");
            const int m = std::countr_zero(len);
            std::vector<Permutation> perms = cfg.perms;
            if (perms.empty()) perms = refdata::default_perms(m, cfg.l);
            if (static_cast<int>(perms.size()) < cfg.l)
                throw std::invalid_argument("fewer permutations than the overloading factor");
            perms.erase(perms.begin() + cfg.l, perms.end());
            for (const auto& pi : perms)
                if (pi.m() != m) throw std::invalid_argument("permutation dimension does not match M");
            return golay_spreading_matrix(perms);
        }
        case Family::zc:
            return zc_matrix(make_zc_config(cfg.spread_len, cfg.l, matrix_seed));
        case Family::bipolar:
        case Family::gaussian:
            return random_matrix(cfg.family, cfg.spread_len, cfg.spread_len * cfg.l, matrix_seed);
    }
    throw std::logic_error("unknown family");
}

FrameScenario generate_frame(const SpreadingMatrix& s, const ScenarioConfig& cfg,
                             std::uint64_t frame_seed) {
    validate(cfg);
    const int rows = s.rows();
    const int n = s.cols();
    const int j = cfg.j;
    const double snr_lin = std::pow(10.0, cfg.snr_db / 10.0);

    FrameScenario fr;
    for (int attempt = 0;; ++attempt) {
        Rng rng = Rng::substream(frame_seed, static_cast<std::uint64_t>(attempt));

        fr.active.clear();
        for (int d = 0; d < n; ++d)
            if (rng.bernoulli(cfg.p_a)) fr.active.push_back(d);
        if (fr.active.empty() && !cfg.allow_empty_frames) continue;  // per-device SNR undefined
        fr.redraws = attempt;

        fr.h.resize(n);
        for (int d = 0; d < n; ++d) fr.h(d) = rng.next_cnormal();

        fr.u = Eigen::MatrixXcd::Zero(n, j);
        for (int d : fr.active) {
            fr.u(d, 0) = 1.0;
            for (int t = 1; t < j; ++t) {
                const std::uint64_t bits = rng.next_u64();
                fr.u(d, t) = std::complex<double>((bits & 1) ? -kQpskAmp : kQpskAmp,
                                                  (bits & 2) ? -kQpskAmp : kQpskAmp);
            }
        }

        const int k = static_cast<int>(fr.active.size());
        Eigen::MatrixXcd y0 = Eigen::MatrixXcd::Zero(rows, j);
        if (k > 0) {
            Eigen::MatrixXcd coeff(k, j);
            for (int a = 0; a < k; ++a) {
                const int d = fr.active[static_cast<std::size_t>(a)];
                coeff.row(a) = fr.h(d) * fr.u.row(d);
            }
            if (s.is_real()) {
                Eigen::MatrixXd sub(rows, k);
                for (int a = 0; a < k; ++a) sub.col(a) = s.real.col(fr.active[static_cast<std::size_t>(a)]);
                y0.real() = sub * coeff.real();
                y0.imag() = sub * coeff.imag();
            } else {
                Eigen::MatrixXcd sub(rows, k);
                for (int a = 0; a < k; ++a) sub.col(a) = s.cplx.col(fr.active[static_cast<std::size_t>(a)]);
                y0 = sub * coeff;
            }
        }

        // Per-device SNR calibration from the frame's noiseless energy;
        // K = 0 frames (only kept on request) fall back to unit variance.
        fr.sigma_n2 = (k > 0) ? y0.squaredNorm() / (static_cast<double>(j) * rows * k * snr_lin)
                              : 1.0;

        fr.y = std::move(y0);
        const double sn = std::sqrt(fr.sigma_n2);
        for (int t = 0; t < j; ++t)
            for (int i = 0; i < rows; ++i) fr.y(i, t) += sn * rng.next_cnormal();
        return fr;
    }
}

namespace {

// Shared bookkeeping of the greedy loop: selection order, the triangular
// factor T with S_sel = Q T, and B = Q^H Y, enough to recover the
// least-squares estimate without refactoring.
struct SompCore {
    std::vector<int> selected;
    Eigen::MatrixXcd t;  // upper triangular, selection order
    Eigen::MatrixXcd b;
    bool degenerate = false;
};

double stopping_threshold_sq(double sigma_n2, int j, int rows, StoppingRule rule,
                             double y_frob_sq) {
    double thr = 3.0 * sigma_n2 * j;
    if (rule == StoppingRule::frobenius) thr *= rows;
    // Numerical floor: residuals at the round-off level of Y count as zero,
    // which also makes noiseless runs terminate.
    const double floor_sq = 1e-24 * y_frob_sq;
    return std::max(thr, floor_sq);
}

SompCore somp_core_real(const Eigen::MatrixXd& s, const Eigen::VectorXd& col_norms,
                        const Eigen::MatrixXcd& y, double sigma_n2, int max_iter,
                        StoppingRule rule) {
    const int rows = static_cast<int>(s.rows());
    const int n = static_cast<int>(s.cols());
    const int j = static_cast<int>(y.cols());

    const Eigen::MatrixXd yre = y.real();
    const Eigen::MatrixXd yim = y.imag();
    Eigen::MatrixXd rre = yre;
    Eigen::MatrixXd rim = yim;
    Eigen::MatrixXd q(rows, max_iter);

    SompCore core;
    core.t = Eigen::MatrixXcd::Zero(max_iter, max_iter);
    core.b = Eigen::MatrixXcd::Zero(max_iter, j);
    std::vector<char> used(static_cast<std::size_t>(n), 0);
    const double thr_sq =
        stopping_threshold_sq(sigma_n2, j, rows, rule, yre.squaredNorm() + yim.squaredNorm());

    while (static_cast<int>(core.selected.size()) < max_iter) {
        const Eigen::ArrayXd row_sq =
            (rre.array().square() + rim.array().square()).rowwise().sum();
        const double stat_sq =
            (rule == StoppingRule::row_max) ? row_sq.maxCoeff() : row_sq.sum();
        if (stat_sq <= thr_sq) break;

        const Eigen::MatrixXd cre = s.transpose() * rre;
        const Eigen::MatrixXd cim = s.transpose() * rim;
        int best_col = -1;
        double best_score = 0.0;
        for (int col = 0; col < n; ++col) {
            if (used[static_cast<std::size_t>(col)]) continue;
            double sc = 0.0;
            for (int t = 0; t < j; ++t) sc += std::hypot(cre(col, t), cim(col, t));
            sc /= col_norms(col);
            if (sc > best_score) {
                best_score = sc;
                best_col = col;
            }
        }
        if (best_col < 0) break;

        const int k = static_cast<int>(core.selected.size());
        Eigen::VectorXd v = s.col(best_col);
        for (int i = 0; i < k; ++i) {
            const double c = q.col(i).dot(v);
            core.t(i, k) = c;
            v -= c * q.col(i);
        }
        const double nv = v.norm();
        if (nv < 1e-10 * col_norms(best_col)) {
            core.degenerate = true;
            break;
        }
        q.col(k) = v / nv;
        core.t(k, k) = nv;

        const Eigen::RowVectorXd bre = q.col(k).transpose() * yre;
        const Eigen::RowVectorXd bim = q.col(k).transpose() * yim;
        for (int t = 0; t < j; ++t) core.b(k, t) = std::complex<double>(bre(t), bim(t));

        const Eigen::RowVectorXd pre = q.col(k).transpose() * rre;
        const Eigen::RowVectorXd pim = q.col(k).transpose() * rim;
        rre.noalias() -= q.col(k) * pre;
        rim.noalias() -= q.col(k) * pim;

        used[static_cast<std::size_t>(best_col)] = 1;
        core.selected.push_back(best_col);
    }
    return core;
}

SompCore somp_core_cplx(const Eigen::MatrixXcd& s, const Eigen::VectorXd& col_norms,
                        const Eigen::MatrixXcd& y, double sigma_n2, int max_iter,
                        StoppingRule rule) {
    const int rows = static_cast<int>(s.rows());
    const int n = static_cast<int>(s.cols());
    const int j = static_cast<int>(y.cols());

    Eigen::MatrixXcd r = y;
    Eigen::MatrixXcd q(rows, max_iter);

    SompCore core;
    core.t = Eigen::MatrixXcd::Zero(max_iter, max_iter);
    core.b = Eigen::MatrixXcd::Zero(max_iter, j);
    std::vector<char> used(static_cast<std::size_t>(n), 0);
    const double thr_sq = stopping_threshold_sq(sigma_n2, j, rows, rule, y.squaredNorm());

    while (static_cast<int>(core.selected.size()) < max_iter) {
        const Eigen::ArrayXd row_sq = r.array().abs2().rowwise().sum();
        const double stat_sq =
            (rule == StoppingRule::row_max) ? row_sq.maxCoeff() : row_sq.sum();
        if (stat_sq <= thr_sq) break;

        const Eigen::MatrixXcd corr = s.adjoint() * r;
        int best_col = -1;
        double best_score = 0.0;
        for (int col = 0; col < n; ++col) {
            if (used[static_cast<std::size_t>(col)]) continue;
            double sc = 0.0;
            for (int t = 0; t < j; ++t) sc += std::abs(corr(col, t));
            sc /= col_norms(col);
            if (sc > best_score) {
                best_score = sc;
                best_col = col;
            }
        }
        if (best_col < 0) break;

        const int k = static_cast<int>(core.selected.size());
        Eigen::VectorXcd v = s.col(best_col);
        for (int i = 0; i < k; ++i) {
            const std::complex<double> c = q.col(i).dot(v);  // conjugates q
            core.t(i, k) = c;
            v -= c * q.col(i);
        }
        const double nv = v.norm();
        if (nv < 1e-10 * col_norms(best_col)) {
            core.degenerate = true;
            break;
        }
        q.col(k) = v / nv;
        core.t(k, k) = nv;
        core.b.row(k) = q.col(k).adjoint() * y;

        r.noalias() -= q.col(k) * (q.col(k).adjoint() * r);

        used[static_cast<std::size_t>(best_col)] = 1;
        core.selected.push_back(best_col);
    }
    return core;
}

// Nearest QPSK point of x/h per data slot; h = 0 slices the raw estimate.
Eigen::MatrixXcd slice_symbols(const Eigen::MatrixXcd& x_hat) {
    const Eigen::Index k = x_hat.rows();
    const Eigen::Index j = x_hat.cols();
    Eigen::MatrixXcd u(k, j - 1);
    for (Eigen::Index r = 0; r < k; ++r) {
        const std::complex<double> h = x_hat(r, 0);
        for (Eigen::Index t = 1; t < j; ++t) {
            const std::complex<double> z =
                (h == std::complex<double>(0.0, 0.0)) ? x_hat(r, t) : x_hat(r, t) / h;
            u(r, t - 1) = std::complex<double>(z.real() >= 0.0 ? kQpskAmp : -kQpskAmp,
                                               z.imag() >= 0.0 ? kQpskAmp : -kQpskAmp);
        }
    }
    return u;
}

RecoveryResult finish_recovery(SompCore&& core, int j) {
    RecoveryResult res;
    res.degenerate = core.degenerate;
    res.iterations = static_cast<int>(core.selected.size());

    const int k = static_cast<int>(core.selected.size());
    if (k == 0) {
        res.x_hat.resize(0, j);
        res.h_hat.resize(0);
        res.u_hat.resize(0, j - 1);
        return res;
    }

    // Back-substitute T x = B in selection order.
    Eigen::MatrixXcd x(k, j);
    for (int i = k - 1; i >= 0; --i) {
        Eigen::RowVectorXcd acc = core.b.row(i).head(j);
        for (int p = i + 1; p < k; ++p) acc -= core.t(i, p) * x.row(p);
        x.row(i) = acc / core.t(i, i);
    }

    // Reorder rows so support is ascending.
    std::vector<int> order(static_cast<std::size_t>(k));
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(),
              [&](int a, int b) { return core.selected[static_cast<std::size_t>(a)] <
                                         core.selected[static_cast<std::size_t>(b)]; });
    res.support.resize(static_cast<std::size_t>(k));
    res.x_hat.resize(k, j);
    for (int i = 0; i < k; ++i) {
        res.support[static_cast<std::size_t>(i)] =
            core.selected[static_cast<std::size_t>(order[static_cast<std::size_t>(i)])];
        res.x_hat.row(i) = x.row(order[static_cast<std::size_t>(i)]);
    }
    res.h_hat = res.x_hat.col(0);
    res.u_hat = slice_symbols(res.x_hat);
    return res;
}

Eigen::VectorXd column_norms(const SpreadingMatrix& s) {
    const int n = s.cols();
    Eigen::VectorXd norms(n);
    for (int j = 0; j < n; ++j)
        norms(j) = s.is_real() ? s.real.col(j).norm() : s.cplx.col(j).norm();
    return norms;
}

}  // namespace

RecoveryResult somp_recover(const SpreadingMatrix& s, const Eigen::MatrixXcd& y, double sigma_n2,
                            int max_iter, StoppingRule stopping) {
    const int rows = s.rows();
    if (static_cast<int>(y.rows()) != rows) throw std::invalid_argument("observation rows != M");
    if (y.cols() < 2) throw std::invalid_argument("need a pilot slot plus at least one data slot");
    if (sigma_n2 < 0.0) throw std::invalid_argument("negative noise variance");

    if (max_iter <= 0) max_iter = rows / 2;
    max_iter = std::min({max_iter, rows, s.cols()});

    const Eigen::VectorXd norms = column_norms(s);
    SompCore core = s.is_real()
                        ? somp_core_real(s.real, norms, y, sigma_n2, max_iter, stopping)
                        : somp_core_cplx(s.cplx, norms, y, sigma_n2, max_iter, stopping);
    return finish_recovery(std::move(core), static_cast<int>(y.cols()));
}

RecoveryResult oracle_ls(const SpreadingMatrix& s, const Eigen::MatrixXcd& y,
                         const std::vector<int>& support) {
    const int rows = s.rows();
    const int j = static_cast<int>(y.cols());
    if (static_cast<int>(y.rows()) != rows) throw std::invalid_argument("observation rows != M");
    const int k = static_cast<int>(support.size());
    if (k > rows) throw std::invalid_argument("support exceeds the measurement dimension");

    RecoveryResult res;
    res.support = support;
    std::sort(res.support.begin(), res.support.end());
    if (k == 0) {
        res.x_hat.resize(0, j);
        res.h_hat.resize(0);
        res.u_hat.resize(0, j - 1);
        return res;
    }
    for (int d : res.support)
        if (d < 0 || d >= s.cols()) throw std::out_of_range("support index out of range");

    if (s.is_real()) {
        Eigen::MatrixXd sub(rows, k);
        for (int i = 0; i < k; ++i) sub.col(i) = s.real.col(res.support[static_cast<std::size_t>(i)]);
        const Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(sub);
        res.x_hat.resize(k, j);
        res.x_hat.real() = qr.solve(Eigen::MatrixXd(y.real()));
        res.x_hat.imag() = qr.solve(Eigen::MatrixXd(y.imag()));
    } else {
        Eigen::MatrixXcd sub(rows, k);
        for (int i = 0; i < k; ++i) sub.col(i) = s.cplx.col(res.support[static_cast<std::size_t>(i)]);
        res.x_hat = Eigen::ColPivHouseholderQR<Eigen::MatrixXcd>(sub).solve(y);
    }
    res.h_hat = res.x_hat.col(0);
    res.u_hat = slice_symbols(res.x_hat);
    return res;
}

FrameMetrics evaluate_metrics(const FrameScenario& truth, const RecoveryResult& result,
                              int n_devices, int j) {
    FrameMetrics fm;
    fm.k = static_cast<int>(truth.active.size());

    double err = 0.0;
    double ref = 0.0;
    std::size_t bi = 0;
    for (int d : truth.active) {
        while (bi < result.support.size() && result.support[bi] < d) ++bi;
        const bool detected = bi < result.support.size() && result.support[bi] == d;
        const std::complex<double> hd = truth.h(d);
        ref += std::norm(hd);
        if (detected) {
            const auto row = static_cast<Eigen::Index>(bi);
            err += std::norm(hd - result.x_hat(row, 0));
            for (int t = 1; t < j; ++t)
                if (std::abs(result.u_hat(row, t - 1) - truth.u(d, t)) > 1e-6) ++fm.symbol_errors;
        } else {
            ++fm.missed;
            err += std::norm(hd);
            fm.symbol_errors += j - 1;
        }
    }
    fm.false_alarms = static_cast<int>(result.support.size()) - (fm.k - fm.missed);
    fm.aer = static_cast<double>(fm.missed + fm.false_alarms) / n_devices;
    if (fm.k > 0 && ref > 0.0) {
        fm.nmse = err / ref;
        fm.ser = static_cast<double>(fm.symbol_errors) / (static_cast<double>(fm.k) * (j - 1));
    } else {
        fm.valid = false;
    }
    return fm;
}

PointResult simulate_point(const ScenarioConfig& cfg, std::uint64_t point_index, int workers,
                           std::vector<FrameOutcome>* keep_frames) {
    validate(cfg);
    PointResult pr;
    pr.cfg = cfg;

    const std::uint64_t matrix_seed = substream_seed(
        cfg.seed, kMatrixStream, static_cast<std::uint64_t>(cfg.family),
        static_cast<std::uint64_t>(cfg.l));
    const SpreadingMatrix s = scenario_matrix(cfg, matrix_seed);
    pr.rows = s.rows();
    pr.n_devices = s.cols();
    const int max_iter = cfg.max_iter > 0 ? cfg.max_iter : pr.rows / 2;

    std::vector<FrameOutcome> outcomes(static_cast<std::size_t>(cfg.frames));
    parallel_for(cfg.frames, workers, [&](std::int64_t f) {
        const std::uint64_t frame_seed =
            substream_seed(cfg.seed, point_index, static_cast<std::uint64_t>(f));
        const FrameScenario fr = generate_frame(s, cfg, frame_seed);
        const RecoveryResult somp = somp_recover(s, fr.y, fr.sigma_n2, max_iter, cfg.stopping);
        const RecoveryResult orc = oracle_ls(s, fr.y, fr.active);
        auto& slot = outcomes[static_cast<std::size_t>(f)];
        slot.somp = evaluate_metrics(fr, somp, pr.n_devices, cfg.j);
        slot.oracle = evaluate_metrics(fr, orc, pr.n_devices, cfg.j);
    });

    std::int64_t missed = 0, false_alarms = 0, sym_err = 0, k_total = 0, oracle_sym_err = 0;
    std::int64_t valid = 0;
    std::vector<double> nmse(static_cast<std::size_t>(cfg.frames), 0.0);
    std::vector<double> oracle_nmse(static_cast<std::size_t>(cfg.frames), 0.0);
    for (std::size_t f = 0; f < outcomes.size(); ++f) {
        const auto& o = outcomes[f];
        missed += o.somp.missed;
        false_alarms += o.somp.false_alarms;
        if (o.somp.valid) {
            ++valid;
            sym_err += o.somp.symbol_errors;
            oracle_sym_err += o.oracle.symbol_errors;
            k_total += o.somp.k;
            nmse[f] = o.somp.nmse;
            oracle_nmse[f] = o.oracle.nmse;
        }
    }

    pr.aer = static_cast<double>(missed + false_alarms) /
             (static_cast<double>(pr.n_devices) * cfg.frames);
    const double sym_den = static_cast<double>(k_total) * (cfg.j - 1);
    pr.ser = sym_den > 0 ? static_cast<double>(sym_err) / sym_den : 0.0;
    pr.oracle_ser = sym_den > 0 ? static_cast<double>(oracle_sym_err) / sym_den : 0.0;
    pr.nmse = valid > 0 ? pairwise_sum(nmse) / static_cast<double>(valid)
                        : std::numeric_limits<double>::quiet_NaN();
    pr.oracle_nmse = valid > 0 ? pairwise_sum(oracle_nmse) / static_cast<double>(valid)
                               : std::numeric_limits<double>::quiet_NaN();
    pr.nmse_db = 10.0 * std::log10(pr.nmse);
    pr.oracle_nmse_db = 10.0 * std::log10(pr.oracle_nmse);

    if (keep_frames) *keep_frames = std::move(outcomes);
    return pr;
}

std::vector<PointResult> run_campaign(const CampaignGrid& grid, int workers) {
    std::vector<PointResult> out;
    std::uint64_t point_index = 0;
    for (const Family family : grid.families) {
        for (const int l : grid.l_values) {
            for (const double p_a : grid.p_a_values) {
                for (const double snr : grid.snr_values) {
                    ScenarioConfig cfg;
                    cfg.family = family;
                    cfg.spread_len = grid.spread_len;
                    cfg.l = l;
                    cfg.j = grid.j;
                    cfg.p_a = p_a;
                    cfg.snr_db = snr;
                    cfg.frames = grid.frames;
                    cfg.seed = grid.seed;
                    cfg.max_iter = grid.max_iter;
                    cfg.stopping = grid.stopping;
                    cfg.perms = grid.perms;
                    try {
                        out.push_back(simulate_point(cfg, point_index, workers));
                    } catch (const std::exception& e) {
                        PointResult pr;
                        pr.cfg = cfg;
                        pr.error = e.what();
                        out.push_back(std::move(pr));
                    }
                    ++point_index;
                }
            }
        }
    }
    return out;
}

std::string campaign_csv(const std::vector<PointResult>& points) {
    std::string out = "family,M,N,L,J,p_a,snr_db,frames,seed,aer,nmse_db,ser,oracle_nmse_db,oracle_ser\n";
    char buf[512];
    for (const auto& p : points) {
        if (!p.error.empty()) continue;
        std::snprintf(buf, sizeof buf, "%s,%d,%d,%d,%d,%.10g,%.10g,%d,%llu,%.10g,%.10g,%.10g,%.10g,%.10g\n",
                      family_name(p.cfg.family), p.rows, p.n_devices, p.cfg.l, p.cfg.j,
                      p.cfg.p_a, p.cfg.snr_db, p.cfg.frames,
                      static_cast<unsigned long long>(p.cfg.seed), p.aer, p.nmse_db, p.ser,
                      p.oracle_nmse_db, p.oracle_ser);
        out += buf;
    }
    return out;
}

}  // namespace gnoma
