#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "ppmkx/attacker.hpp"

namespace ppmkx {

// When a run counts as broken: t_b <= t_s (default; a correct guess lets the
// attacker track every later state), or strictly t_b < t_s.
enum class SuccessRule { break_not_after_sync, break_before_sync };

struct TrialConfig {
    PpmConfig ppm;
    AttackerConfig attack;
    int max_outer = 30;
    std::uint64_t seed = 1;
    SuccessRule success_rule = SuccessRule::break_not_after_sync;
};

struct TrialResult {
    int run_id = 0;
    int inputs_per_unit = 0;
    int hidden_units = 0;
    int state_bits = 0;
    int samples_per_round = 0;
    int max_outer = 0;
    std::uint64_t seed = 0;
    std::optional<int> sync_time;   // t_s
    std::optional<int> break_time;  // t_b
    bool success = false;
    bool aborted = false;           // no usable outcome; excluded from statistics
    std::optional<AbortReason> abort_reason;
    long long inner_rounds_total = 0;
    long long resets = 0;
    double elapsed_seconds = 0.0;
};

struct EnsembleStats {
    int n_runs = 0;
    int n_discarded = 0;
    int n_success = 0;
    int ts_count = 0;
    int tb_count = 0;
    double mean_ts = 0.0, std_ts = 0.0;
    double mean_tb = 0.0, std_tb = 0.0;
    double p_success = 0.0;  // successes / (n_runs - n_discarded)
};

// Least-squares fit of t = slope * N + offset.
struct RegressionFit {
    double slope = 0.0;
    double offset = 0.0;
    double stderr_slope = 0.0;
    double stderr_offset = 0.0;
    int n_points = 0;
};

// Extra sinks for a single supervised trial.
struct TrialHooks {
    RoundObserver on_record;
    std::function<void(int outer_index, const BeliefVector&)> on_outer_belief;
};

// One full key exchange with the attacker subscribed to the transcript.
// Deterministic given cfg.seed: the exchange uses stream derive_seed(seed, 0)
// and the attacker stream derive_seed(seed, 1).
TrialResult run_trial(const TrialConfig& cfg);
TrialResult run_trial(const TrialConfig& cfg, const TrialHooks& hooks);

// `runs` independent trials; trial i gets run_id = first_run_id + i and seed
// derive_seed(base_seed, run_id). Executes on up to `jobs` worker threads;
// results and statistics do not depend on the execution order.
std::pair<std::vector<TrialResult>, EnsembleStats> run_ensemble(const TrialConfig& tmpl, int runs,
                                                                std::uint64_t base_seed,
                                                                int first_run_id = 0,
                                                                int jobs = 1);

// Aggregates over non-discarded runs; standard deviations use the n-1
// convention.
EnsembleStats compute_stats(std::span<const TrialResult> results);

// Ordinary least squares for points (N, t); standard errors from the
// residual variance. Requires at least two distinct abscissae.
RegressionFit fit_linear(std::span<const std::pair<double, double>> points);

// Results CSV, one row per trial:
// run_id,N,K,G,M,max_outer,seed,t_s,t_b,success,aborted,abort_reason,inner_rounds_total
// Missing optionals are empty fields; flags serialize as true/false.
void write_results(std::span<const TrialResult> results, const std::string& path);
std::vector<TrialResult> read_results(const std::string& path);

// Per-N mean of t_s ("ts") or t_b ("tb") from CSV rows, then fit_linear.
RegressionFit regress_results(std::span<const TrialResult> rows, const std::string& column);

std::string format_stats(int inputs_per_unit, const EnsembleStats& stats);

}  // namespace ppmkx
