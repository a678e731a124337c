// golay-noma: generate spreading matrices, certify coherence and PAPR,
// estimate rank probabilities, search permutation sets, verify the bundled
// reference tables, and run NOMA simulation campaigns.
//
// Every run writes a JSON sidecar next to its main artifact with the fully
// resolved configuration and seed, so any output can be regenerated from
// the sidecar alone. Exit codes: 0 success, 1 verification mismatch or
// runtime failure, 2 usage errors.

#include <CLI11.hpp>
#include <json.hpp>

#include <cmath>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "gnoma/analysis.hpp"
#include "gnoma/baselines.hpp"
#include "gnoma/golay.hpp"
#include "gnoma/parallel.hpp"
#include "gnoma/refdata.hpp"
#include "gnoma/rng.hpp"
#include "gnoma/search.hpp"
#include "gnoma/sim.hpp"
#include "gnoma/spreading.hpp"

using nlohmann::json;

namespace {

struct VerifyMismatch : std::runtime_error {
    using std::runtime_error::runtime_error;
};

std::uint64_t resolve_seed(const std::optional<std::uint64_t>& seed, json& sidecar) {
    if (seed) {
        sidecar["seed"] = *seed;
        return *seed;
    }
    std::random_device rd;
    const std::uint64_t s = (static_cast<std::uint64_t>(rd()) << 32) ^ rd();
    sidecar["seed"] = s;
    sidecar["seed_auto_drawn"] = true;
    std::cerr << "note: no --seed given, drew " << s << " (recorded in the sidecar)\n";
    return s;
}

void write_text(const std::string& path, const std::string& text) {
    std::ofstream os(path);
    if (!os) throw std::runtime_error("cannot open for writing: " + path);
    os << text;
    if (!os) throw std::runtime_error("write failed: " + path);
}

void write_sidecar(const std::string& artifact_path, json sidecar) {
    write_text(artifact_path + ".json", sidecar.dump(2) + "\n");
}

json perms_json(const std::vector<gnoma::Permutation>& perms) {
    json arr = json::array();
    for (const auto& pi : perms) arr.push_back(pi.str());
    return arr;
}

// Shared matrix construction for gen/coherence/papr. m is the length
// exponent (M = 2^m; zc rounds M to the nearest prime).
gnoma::SpreadingMatrix build_matrix(const std::string& family_name_str, int m, int l,
                                    std::uint64_t seed, const std::string& perm_file,
                                    json& sidecar) {
    if (m < 2 || m > 24) throw CLI::ValidationError("--m", "length exponent must be in 2..24");
    if (l < 1) throw CLI::ValidationError("--L", "overloading factor must be at least 1");
    const gnoma::Family family = gnoma::family_from_name(family_name_str);
    const int big_m = 1 << m;
    sidecar["family"] = family_name_str;
    sidecar["m"] = m;
    sidecar["M"] = big_m;
    sidecar["L"] = l;

    switch (family) {
        case gnoma::Family::golay: {
            std::vector<gnoma::Permutation> perms;
            if (!perm_file.empty()) {
                perms = gnoma::read_permutation_file(perm_file);
                sidecar["perm_file"] = perm_file;
            } else {
                perms = gnoma::refdata::default_perms(m, l);
            }
            if (static_cast<int>(perms.size()) < l)
                throw std::invalid_argument("permutation file has fewer entries than L");
            perms.erase(perms.begin() + l, perms.end());
            sidecar["perms"] = perms_json(perms);
            return gnoma::golay_spreading_matrix(perms);
        }
        case gnoma::Family::zc: {
            const auto cfg = gnoma::make_zc_config(big_m, l, seed);
            sidecar["zc_length"] = cfg.length;
            sidecar["zc_roots"] = cfg.roots;
            return gnoma::zc_matrix(cfg);
        }
        case gnoma::Family::bipolar:
        case gnoma::Family::gaussian:
            return gnoma::random_matrix(family, big_m, big_m * l, seed);
    }
    throw std::logic_error("unknown family");
}

std::string analysis_csv(const gnoma::SpreadingMatrix& s, const gnoma::CoherenceReport& rep,
                         double papr_db, int l) {
    char buf[256];
    std::snprintf(buf, sizeof buf, "%s,%d,%d,%d,%.10g,%s,%.10g\n", gnoma::family_name(s.family),
                  s.rows(), s.cols(), l, rep.mu,
                  rep.r_min ? std::to_string(*rep.r_min).c_str() : "", papr_db);
    return std::string("family,M,N,L,mu,r_min,max_papr_db\n") + buf;
}

int count_failures(const std::vector<gnoma::PointResult>& points, std::ostream& err) {
    int failures = 0;
    for (const auto& p : points) {
        if (p.error.empty()) continue;
        ++failures;
        err << "point failed: family=" << gnoma::family_name(p.cfg.family) << " L=" << p.cfg.l
            << " p_a=" << p.cfg.p_a << " snr=" << p.cfg.snr_db << ": " << p.error << "\n";
    }
    return failures;
}

// ---- subcommand bodies ------------------------------------------------

void cmd_gen(const std::string& family, int m, int l, std::optional<std::uint64_t> seed_opt,
             const std::string& perm_file, const std::string& out, const std::string& csv_out) {
    json sidecar{{"command", "gen"}, {"out", out}};
    const std::uint64_t seed = resolve_seed(seed_opt, sidecar);
    const auto s = build_matrix(family, m, l, seed, perm_file, sidecar);
    gnoma::write_matrix_binary(out, s);
    if (!csv_out.empty()) {
        gnoma::write_matrix_csv(csv_out, s);
        sidecar["csv"] = csv_out;
    }
    write_sidecar(out, sidecar);
    std::cout << "wrote " << s.rows() << "x" << s.cols() << " " << family << " matrix to " << out
              << "\n";
}

void cmd_analysis(bool papr_focus, const std::string& family, int m, int l,
                  std::optional<std::uint64_t> seed_opt, const std::string& perm_file,
                  int oversample, int workers, const std::string& out) {
    json sidecar{{"command", papr_focus ? "papr" : "coherence"},
                 {"out", out},
                 {"oversample", oversample},
                 {"workers", workers}};
    const std::uint64_t seed = resolve_seed(seed_opt, sidecar);
    const auto s = build_matrix(family, m, l, seed, perm_file, sidecar);

    const auto rep = gnoma::coherence_exact(s, gnoma::resolve_workers(workers));
    if (s.family == gnoma::Family::golay && !s.perms.empty() && s.perms.size() >= 2) {
        const auto rank_rep = gnoma::coherence_by_rank(s.perms);
        if (rank_rep.mu != rep.mu)
            throw VerifyMismatch("rank-based coherence " + std::to_string(rank_rep.mu) +
                                 " disagrees with the exact scan " + std::to_string(rep.mu));
        sidecar["r_min"] = rank_rep.r_min ? json(*rank_rep.r_min) : json();
    }
    const double papr_db = gnoma::max_papr_db(s, oversample);

    sidecar["mu"] = rep.mu;
    sidecar["witness_pair"] = {rep.j1, rep.j2};
    sidecar["max_papr_db"] = papr_db;
    write_text(out, analysis_csv(s, rep, papr_db, l));
    write_sidecar(out, sidecar);

    if (papr_focus)
        std::cout << "max column PAPR " << papr_db << " dB (oversample " << oversample
                  << "), coherence " << rep.mu << "\n";
    else
        std::cout << "coherence " << rep.mu << " (witness columns " << rep.j1 << "," << rep.j2
                  << "), max PAPR " << papr_db << " dB\n";
}

void cmd_pr_table(int m, std::int64_t trials, std::optional<std::uint64_t> seed_opt, int workers,
                  const std::string& out) {
    json sidecar{{"command", "pr-table"}, {"m", m}, {"trials", trials}, {"workers", workers},
                 {"out", out}};
    const std::uint64_t seed = resolve_seed(seed_opt, sidecar);
    const auto pmf = gnoma::estimate_rank_pmf(m, trials, seed, gnoma::resolve_workers(workers));
    sidecar["rank_zero_count"] = pmf.rank_zero_count;

    std::string csv = "m,r,p_r,trials,seed\n";
    char buf[160];
    for (const auto& [r, p] : pmf.p) {
        std::snprintf(buf, sizeof buf, "%d,%d,%.10g,%lld,%llu\n", m, r, p,
                      static_cast<long long>(trials), static_cast<unsigned long long>(seed));
        csv += buf;
        std::cout << "r=" << r << "  p=" << p << "\n";
    }
    write_text(out, csv);
    write_sidecar(out, sidecar);
}

void cmd_search(int m, int l, std::optional<int> target_r_opt, std::optional<std::int64_t> trials_opt,
                double eps, std::int64_t pmf_trials, std::optional<std::uint64_t> seed_opt,
                int workers, const std::string& out) {
    json sidecar{{"command", "search"}, {"m", m}, {"L", l}, {"eps", eps}, {"out", out},
                 {"workers", workers}};
    const std::uint64_t seed = resolve_seed(seed_opt, sidecar);
    const int nworkers = gnoma::resolve_workers(workers);
    const int target_r = target_r_opt.value_or(gnoma::max_feasible_rank(m));
    sidecar["target_r"] = target_r;

    std::int64_t budget;
    if (trials_opt) {
        budget = *trials_opt;
        sidecar["trials"] = budget;
    } else {
        // No explicit budget: estimate the acceptance probability, then take
        // the smallest trial count that succeeds with probability 1 - eps.
        const auto pmf = gnoma::estimate_rank_pmf(
            m, pmf_trials, gnoma::substream_seed(seed, 0x706d66), nworkers);
        const double p = gnoma::coherence_probability(pmf, l, target_r);
        const auto t = gnoma::min_trials(p, eps);
        if (!t)
            throw std::runtime_error(
                "estimated acceptance probability is 0 at the target rank; pass an explicit "
                "--trials budget");
        budget = std::max<std::int64_t>(*t, 1);
        sidecar["pmf_trials"] = pmf_trials;
        sidecar["estimated_p"] = p;
        sidecar["trials"] = budget;
        sidecar["trials_from_eps"] = true;
    }

    const auto outcome = gnoma::search_permutation_set(m, l, target_r, budget, seed, nworkers);
    gnoma::write_permutation_file(out, outcome.gamma);

    const auto rep = gnoma::coherence_by_rank(outcome.gamma);
    sidecar["achieved_r_min"] = outcome.achieved_r_min;
    sidecar["achieved"] = outcome.achieved;
    sidecar["trials_used"] = outcome.trials_used;
    sidecar["coherence"] = rep.mu;
    sidecar["perms"] = perms_json(outcome.gamma);
    write_sidecar(out, sidecar);

    std::cout << (outcome.achieved ? "found" : "budget exhausted; best") << " set with r_min "
              << outcome.achieved_r_min << " (coherence " << rep.mu << ") after "
              << outcome.trials_used << " trials -> " << out << "\n";
}

bool check(bool ok, const std::string& what, const std::string& expected,
           const std::string& got, int& mismatches) {
    if (ok) {
        std::cout << "[ok]       " << what << "\n";
    } else {
        ++mismatches;
        std::cout << "[MISMATCH] " << what << ": expected " << expected << ", got " << got << "\n";
    }
    return ok;
}

std::string bits_str(const std::vector<int>& bits) {
    std::string s;
    for (int b : bits) s += char('0' + b);
    return s;
}

void verify_table1(int& mismatches) {
    const auto pi = gnoma::refdata::example_permutation();
    const auto quad = gnoma::golay_sequence(pi, 0).bits();
    const auto seq = gnoma::golay_sequence(pi, gnoma::refdata::example_linear_index()).bits();
    check(quad == gnoma::refdata::example_quadratic_bits(), "table 1 quadratic-form column",
          bits_str(gnoma::refdata::example_quadratic_bits()), bits_str(quad), mismatches);
    check(seq == gnoma::refdata::example_sequence_bits(), "table 1 sequence column (c=6)",
          bits_str(gnoma::refdata::example_sequence_bits()), bits_str(seq), mismatches);
}

void verify_table2(std::int64_t trials, std::uint64_t seed, int workers, int& mismatches) {
    const double tol = 0.01;
    int prev_m = -1;
    gnoma::RankPmf pmf;
    for (const auto& ref : gnoma::refdata::rank_reference()) {
        if (ref.m != prev_m) {
            pmf = gnoma::estimate_rank_pmf(ref.m, trials,
                                           gnoma::substream_seed(seed, static_cast<std::uint64_t>(ref.m)),
                                           workers);
            prev_m = ref.m;
        }
        const double est = pmf.p.count(ref.r) ? pmf.p.at(ref.r) : 0.0;
        char what[96], exp[48], got[48];
        std::snprintf(what, sizeof what, "table 2 m=%d r=%d (tol %.2g)", ref.m, ref.r, tol);
        std::snprintf(exp, sizeof exp, "%.7g", ref.p);
        std::snprintf(got, sizeof got, "%.7g (diff %.2e)", est, est - ref.p);
        check(std::abs(est - ref.p) <= tol, what, exp, got, mismatches);
    }
}

void verify_table3(int& mismatches) {
    for (const auto& rec : gnoma::refdata::permutation_sets()) {
        const auto rep = gnoma::coherence_by_rank(rec.perms);
        char what[96], exp[48], got[48];
        std::snprintf(what, sizeof what, "table 3 m=%d L=%d..%d set", rec.m, rec.l_min, rec.l_max);
        std::snprintf(exp, sizeof exp, "coherence %.10g", rec.coherence);
        std::snprintf(got, sizeof got, "coherence %.10g (r_min %d)", rep.mu,
                      rep.r_min.value_or(-1));
        check(rep.mu == rec.coherence, what, exp, got, mismatches);
    }
}

void cmd_verify_tables(std::vector<int> tables, std::int64_t trials,
                       std::optional<std::uint64_t> seed_opt, int workers,
                       const std::string& out) {
    if (tables.empty()) tables = {1, 2, 3};
    json sidecar{{"command", "verify-tables"}, {"tables", tables}, {"trials", trials},
                 {"workers", workers}, {"out", out}};
    const std::uint64_t seed = resolve_seed(seed_opt, sidecar);

    int mismatches = 0;
    for (int t : tables) {
        switch (t) {
            case 1: verify_table1(mismatches); break;
            case 2: verify_table2(trials, seed, gnoma::resolve_workers(workers), mismatches); break;
            case 3: verify_table3(mismatches); break;
            default: throw CLI::ValidationError("--table", "tables are 1, 2 or 3");
        }
    }
    sidecar["mismatches"] = mismatches;
    write_sidecar(out, sidecar);
    if (mismatches > 0)
        throw VerifyMismatch(std::to_string(mismatches) + " table entries did not match");
    std::cout << "all table entries match\n";
}

// simulate config: JSON file merged under explicit flags.
struct SimulateArgs {
    std::string config_file;
    std::vector<std::string> families{"golay"};
    int m = 7;
    std::vector<int> l_values{4};
    int j = 7;
    std::vector<double> p_a_values{0.1};
    std::vector<double> snr_values{10.0};
    int frames = 1000;
    std::optional<std::uint64_t> seed;
    int workers = 0;
    int max_iter = 0;
    std::string stopping = "frobenius";
    std::string perm_file;
    std::string out = "campaign.csv";
};

template <typename T>
std::vector<T> scalar_or_array(const json& v) {
    if (v.is_array()) return v.get<std::vector<T>>();
    return {v.get<T>()};
}

void load_config(const std::string& path, SimulateArgs& a, const CLI::App* cmd) {
    std::ifstream is(path);
    if (!is) throw CLI::ValidationError("--config", "cannot open " + path);
    json cfg;
    try {
        is >> cfg;
    } catch (const json::parse_error& e) {
        throw CLI::ValidationError("--config", std::string("malformed JSON: ") + e.what());
    }
    const auto given = [&](const std::string& flag) { return cmd->count(flag) > 0; };

    for (const auto& [key, value] : cfg.items()) {
        if (key == "family" || key == "families") {
            if (!given("--family")) a.families = scalar_or_array<std::string>(value);
        } else if (key == "M") {
            const int big_m = value.get<int>();
            int m = 0;
            while ((1 << m) < big_m) ++m;
            if ((1 << m) != big_m)
                throw CLI::ValidationError("--config", "M must be a power of two (zc rounds it to a prime)");
            if (!given("--m")) a.m = m;
        } else if (key == "L") {
            if (!given("--L")) a.l_values = scalar_or_array<int>(value);
        } else if (key == "J") {
            if (!given("--J")) a.j = value.get<int>();
        } else if (key == "p_a") {
            if (!given("--p-a")) a.p_a_values = scalar_or_array<double>(value);
        } else if (key == "snr_db") {
            if (!given("--snr")) a.snr_values = scalar_or_array<double>(value);
        } else if (key == "frames") {
            if (!given("--frames")) a.frames = value.get<int>();
        } else if (key == "seed") {
            if (!given("--seed")) a.seed = value.get<std::uint64_t>();
        } else if (key == "max_iter") {
            if (!given("--max-iter")) a.max_iter = value.get<int>();
        } else if (key == "stopping") {
            if (!given("--stopping")) a.stopping = value.get<std::string>();
        } else if (key == "perm_file") {
            if (!given("--perms")) a.perm_file = value.get<std::string>();
        } else if (key == "workers") {
            if (!given("--workers")) a.workers = value.get<int>();
        } else {
            throw CLI::ValidationError("--config", "unknown key: " + key);
        }
    }
}

void cmd_simulate(SimulateArgs& a, const CLI::App* cmd) {
    if (!a.config_file.empty()) load_config(a.config_file, a, cmd);

    json sidecar{{"command", "simulate"}, {"out", a.out}};
    const std::uint64_t seed = resolve_seed(a.seed, sidecar);

    gnoma::CampaignGrid grid;
    grid.families.clear();
    for (const auto& f : a.families) grid.families.push_back(gnoma::family_from_name(f));
    if (a.m < 2 || a.m > 24) throw CLI::ValidationError("--m", "length exponent must be in 2..24");
    grid.spread_len = 1 << a.m;
    grid.l_values = a.l_values;
    grid.j = a.j;
    grid.p_a_values = a.p_a_values;
    grid.snr_values = a.snr_values;
    grid.frames = a.frames;
    grid.seed = seed;
    grid.max_iter = a.max_iter;
    grid.stopping = gnoma::stopping_from_name(a.stopping);
    if (!a.perm_file.empty()) {
        grid.perms = gnoma::read_permutation_file(a.perm_file);
        sidecar["perm_file"] = a.perm_file;
    }

    sidecar["families"] = a.families;
    sidecar["M"] = grid.spread_len;
    sidecar["L"] = grid.l_values;
    sidecar["J"] = grid.j;
    sidecar["p_a"] = grid.p_a_values;
    sidecar["snr_db"] = grid.snr_values;
    sidecar["frames"] = grid.frames;
    sidecar["max_iter"] = grid.max_iter;
    sidecar["stopping"] = a.stopping;
    sidecar["workers"] = a.workers;

    const auto points = gnoma::run_campaign(grid, gnoma::resolve_workers(a.workers));
    const int failures = count_failures(points, std::cerr);
    write_text(a.out, gnoma::campaign_csv(points));

    json errors = json::array();
    for (const auto& p : points)
        if (!p.error.empty())
            errors.push_back({{"family", gnoma::family_name(p.cfg.family)},
                              {"L", p.cfg.l},
                              {"p_a", p.cfg.p_a},
                              {"snr_db", p.cfg.snr_db},
                              {"error", p.error}});
    sidecar["point_errors"] = errors;
    write_sidecar(a.out, sidecar);

    std::cout << "simulated " << points.size() - failures << "/" << points.size()
              << " grid points -> " << a.out << "\n";
    if (failures == static_cast<int>(points.size()))
        throw std::runtime_error("every grid point failed");
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Binary Golay spreading sequences for grant-free NOMA"};
    app.require_subcommand(1);

    // gen
    auto* gen = app.add_subcommand("gen", "Build a spreading matrix and export it");
    std::string gen_family = "golay", gen_perms, gen_out = "matrix.bin", gen_csv;
    int gen_m = 7, gen_l = 4;
    std::optional<std::uint64_t> gen_seed;
    gen->add_option("--family", gen_family, "golay|zc|bipolar|gaussian");
    gen->add_option("--m", gen_m, "length exponent, M = 2^m");
    gen->add_option("--L", gen_l, "overloading factor");
    gen->add_option("--seed", gen_seed, "seed for random families / zc roots");
    gen->add_option("--perms", gen_perms, "permutation file (golay)");
    gen->add_option("--out", gen_out, "output matrix file");
    gen->add_option("--csv", gen_csv, "also write a CSV dump");
    gen->callback([&] { cmd_gen(gen_family, gen_m, gen_l, gen_seed, gen_perms, gen_out, gen_csv); });

    // coherence / papr share flags
    std::string ana_family = "golay", ana_perms, ana_out;
    int ana_m = 7, ana_l = 4, ana_oversample = 4, ana_workers = 0;
    std::optional<std::uint64_t> ana_seed;
    for (bool papr_focus : {false, true}) {
        auto* cmd = app.add_subcommand(papr_focus ? "papr" : "coherence",
                                       papr_focus
                                           ? "Worst-column PAPR (and coherence) of a matrix"
                                           : "Exact coherence (and worst-column PAPR) of a matrix");
        cmd->add_option("--family", ana_family, "golay|zc|bipolar|gaussian");
        cmd->add_option("--m", ana_m, "length exponent, M = 2^m");
        cmd->add_option("--L", ana_l, "overloading factor");
        cmd->add_option("--seed", ana_seed, "seed for random families / zc roots");
        cmd->add_option("--perms", ana_perms, "permutation file (golay)");
        cmd->add_option("--oversample", ana_oversample, "DFT oversampling factor");
        cmd->add_option("--workers", ana_workers, "worker threads (0 = auto)");
        cmd->add_option("--out", ana_out, "output CSV");
        cmd->callback([&, papr_focus] {
            if (ana_out.empty()) ana_out = papr_focus ? "papr.csv" : "coherence.csv";
            cmd_analysis(papr_focus, ana_family, ana_m, ana_l, ana_seed, ana_perms,
                         ana_oversample, ana_workers, ana_out);
        });
    }

    // pr-table
    auto* prt = app.add_subcommand("pr-table", "Monte-Carlo rank probability table");
    int prt_m = 5, prt_workers = 0;
    std::int64_t prt_trials = 100000;
    std::optional<std::uint64_t> prt_seed;
    std::string prt_out = "pr_table.csv";
    prt->add_option("--m", prt_m, "permutation dimension");
    prt->add_option("--trials", prt_trials, "Monte-Carlo trials");
    prt->add_option("--seed", prt_seed, "RNG seed");
    prt->add_option("--workers", prt_workers, "worker threads (0 = auto)");
    prt->add_option("--out", prt_out, "output CSV");
    prt->callback([&] { cmd_pr_table(prt_m, prt_trials, prt_seed, prt_workers, prt_out); });

    // search
    auto* sea = app.add_subcommand("search", "Randomized permutation-set search");
    int sea_m = 7, sea_l = 4, sea_workers = 0;
    std::optional<int> sea_target;
    std::optional<std::int64_t> sea_trials;
    double sea_eps = 0.01;
    std::int64_t sea_pmf_trials = 100000;
    std::optional<std::uint64_t> sea_seed;
    std::string sea_out = "perms.txt";
    sea->add_option("--m", sea_m, "permutation dimension");
    sea->add_option("--L", sea_l, "set size");
    sea->add_option("--target-r", sea_target, "target minimum rank (default: feasible maximum)");
    sea->add_option("--trials", sea_trials, "explicit trial budget");
    sea->add_option("--eps", sea_eps, "miss probability used to size the budget");
    sea->add_option("--pmf-trials", sea_pmf_trials, "trials for the budget-sizing rank table");
    sea->add_option("--seed", sea_seed, "RNG seed");
    sea->add_option("--workers", sea_workers, "worker threads (0 = auto)");
    sea->add_option("--out", sea_out, "output permutation file");
    sea->callback([&] {
        cmd_search(sea_m, sea_l, sea_target, sea_trials, sea_eps, sea_pmf_trials, sea_seed,
                   sea_workers, sea_out);
    });

    // verify-tables
    auto* ver = app.add_subcommand("verify-tables", "Recompute the bundled reference tables");
    std::vector<int> ver_tables;
    std::int64_t ver_trials = 100000;
    int ver_workers = 0;
    std::optional<std::uint64_t> ver_seed;
    std::string ver_out = "verify_tables";
    ver->add_option("--table", ver_tables, "table number (1, 2 or 3); repeatable, default all");
    ver->add_option("--trials", ver_trials, "Monte-Carlo trials for table 2");
    ver->add_option("--seed", ver_seed, "RNG seed for table 2");
    ver->add_option("--workers", ver_workers, "worker threads (0 = auto)");
    ver->add_option("--out", ver_out, "sidecar base name");
    ver->callback([&] { cmd_verify_tables(ver_tables, ver_trials, ver_seed, ver_workers, ver_out); });

    // simulate
    auto* simc = app.add_subcommand("simulate", "Run a NOMA recovery campaign");
    SimulateArgs sa;
    simc->add_option("--config", sa.config_file, "JSON config (flags override it)");
    simc->add_option("--family", sa.families, "families to sweep; repeatable");
    simc->add_option("--m", sa.m, "length exponent, M = 2^m");
    simc->add_option("--L", sa.l_values, "overloading factors; repeatable");
    simc->add_option("--J", sa.j, "slots per frame (pilot + data)");
    simc->add_option("--p-a", sa.p_a_values, "activity probabilities; repeatable");
    simc->add_option("--snr", sa.snr_values, "per-device SNR (dB); repeatable");
    simc->add_option("--frames", sa.frames, "frames per grid point");
    simc->add_option("--seed", sa.seed, "master seed");
    simc->add_option("--workers", sa.workers, "worker threads (0 = auto)");
    simc->add_option("--max-iter", sa.max_iter, "SOMP iteration cap (0 = M/2)");
    simc->add_option("--stopping", sa.stopping, "row_max|frobenius");
    simc->add_option("--perms", sa.perm_file, "permutation file (golay)");
    simc->add_option("--out", sa.out, "output CSV");
    simc->callback([&] { cmd_simulate(sa, simc); });

    try {
        app.parse(argc, argv);
        return 0;
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    } catch (const VerifyMismatch& e) {
        std::cerr << "verification failed: " << e.what() << "\n";
        return 1;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
