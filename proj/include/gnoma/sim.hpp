// Frame-based uplink grant-free NOMA simulation: sporadic activity, flat
// Rayleigh fading, pilot + QPSK data slots, sparsity-blind SOMP recovery,
// oracle least squares, and the AER/NMSE/SER metrics.

#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <string>
#include <vector>

#include "gnoma/spreading.hpp"

namespace gnoma {

// Stopping statistic for sparsity-blind SOMP. frobenius compares the whole
// residual against sqrt(3 sigma^2 J M): pure noise has expected squared
// norm J M sigma^2, the factor 3 is margin, and leftover signal counts by
// total energy alone, keeping comparisons across sequence families fair.
// row_max compares the largest per-row l2 norm against sqrt(3 sigma^2 J);
// it digs deeper but rewards sequences whose energy concentrates in few
// rows (random Gaussian over any constant-modulus family), so it serves
// as the sensitivity-analysis variant rather than the default.
enum class StoppingRule { row_max, frobenius };

const char* stopping_name(StoppingRule rule);
StoppingRule stopping_from_name(const std::string& name);

struct ScenarioConfig {
    Family family = Family::golay;
    int spread_len = 128;  // M; zc rounds it to the nearest prime
    int l = 4;             // overloading factor, N = L * M devices
    int j = 7;             // slots per frame; slot 1 is the pilot
    double p_a = 0.1;      // per-device activity probability
    double snr_db = 10.0;  // per-device SNR target
    int frames = 1000;
    std::uint64_t seed = 1;
    int max_iter = 0;  // 0 resolves to floor(rows/2)
    StoppingRule stopping = StoppingRule::frobenius;
    std::vector<Permutation> perms;   // golay: explicit set; empty uses the bundled one
    bool allow_empty_frames = false;  // keep K = 0 frames instead of redrawing
};

struct FrameScenario {
    std::vector<int> active;  // 0-based device indices, ascending
    Eigen::VectorXcd h;       // channel gains, all N devices
    Eigen::MatrixXcd u;       // N x J symbols, zero off support, pilot column first
    Eigen::MatrixXcd y;       // rows x J observations
    double sigma_n2 = 0.0;
    int redraws = 0;  // K = 0 frames redrawn before this one
};

struct RecoveryResult {
    std::vector<int> support;  // ascending
    Eigen::MatrixXcd x_hat;    // |support| x J least-squares estimate
    Eigen::VectorXcd h_hat;    // x_hat column 1
    Eigen::MatrixXcd u_hat;    // |support| x (J-1) sliced QPSK symbols
    int iterations = 0;
    bool degenerate = false;  // stopped on a rank-deficient selection
};

struct FrameMetrics {
    int k = 0;  // true actives
    int missed = 0;
    int false_alarms = 0;
    int symbol_errors = 0;
    double aer = 0.0;
    double nmse = 0.0;  // channel error over true actives; undetected count as zero estimates
    double ser = 0.0;
    bool valid = true;  // false for K = 0 frames (NMSE/SER undefined)
};

// Matrix a scenario calls for. golay derives from permutations only; the
// other families draw from matrix_seed.
SpreadingMatrix scenario_matrix(const ScenarioConfig& cfg, std::uint64_t matrix_seed);

// One frame of ground truth. All randomness comes from frame_seed; K = 0
// draws are retried with an incremented subdraw and counted in redraws.
FrameScenario generate_frame(const SpreadingMatrix& s, const ScenarioConfig& cfg,
                             std::uint64_t frame_seed);

// Sparsity-blind simultaneous OMP. Per iteration picks the column with the
// largest aggregate correlation (lowest index on ties), never reselects,
// then reprojects; stops on the stopping statistic, max_iter, or a
// degenerate selection. The returned estimate is the least-squares fit of
// y onto the selected columns.
RecoveryResult somp_recover(const SpreadingMatrix& s, const Eigen::MatrixXcd& y, double sigma_n2,
                            int max_iter, StoppingRule stopping = StoppingRule::frobenius);

// Least squares on a known support; the performance ceiling for SOMP.
RecoveryResult oracle_ls(const SpreadingMatrix& s, const Eigen::MatrixXcd& y,
                         const std::vector<int>& support);

// Per-frame error accounting. Undetected and false-alarmed devices both
// count toward AER; an undetected active device contributes J-1 symbol
// errors; false alarms carry no symbols of their own.
FrameMetrics evaluate_metrics(const FrameScenario& truth, const RecoveryResult& result,
                              int n_devices, int j);

struct FrameOutcome {
    FrameMetrics somp;
    FrameMetrics oracle;
};

struct PointResult {
    ScenarioConfig cfg;
    int rows = 0;       // actual spreading length (zc: the prime)
    int n_devices = 0;  // actual device count
    double aer = 0.0;
    double nmse = 0.0;
    double nmse_db = 0.0;
    double ser = 0.0;
    double oracle_nmse = 0.0;
    double oracle_nmse_db = 0.0;
    double oracle_ser = 0.0;
    std::string error;  // nonempty when the point failed; metrics unset
};

// Runs cfg.frames frames and aggregates. Frame seeds derive from
// (cfg.seed, point_index, frame_index), so outputs are identical for any
// worker count; keep_frames (optional) receives per-frame outcomes.
PointResult simulate_point(const ScenarioConfig& cfg, std::uint64_t point_index, int workers,
                           std::vector<FrameOutcome>* keep_frames = nullptr);

struct CampaignGrid {
    std::vector<Family> families = {Family::golay};
    int spread_len = 128;
    std::vector<int> l_values = {4};
    int j = 7;
    std::vector<double> p_a_values = {0.1};
    std::vector<double> snr_values = {10.0};
    int frames = 1000;
    std::uint64_t seed = 1;
    int max_iter = 0;
    StoppingRule stopping = StoppingRule::frobenius;
    std::vector<Permutation> perms;  // golay override for every L
};

// Expands family x L x p_a x snr in order and simulates each point.
// Per-point failures are recorded in PointResult::error, not thrown.
std::vector<PointResult> run_campaign(const CampaignGrid& grid, int workers);

// CSV with the campaign schema; failed points are skipped (callers report
// PointResult::error separately).
std::string campaign_csv(const std::vector<PointResult>& points);

}  // namespace gnoma
