#pragma once

#include <cstdint>
#include <optional>
#include <ostream>
#include <span>
#include <vector>

#include "ppmkx/protocol.hpp"

namespace ppmkx {

// Attacker's per-bit marginals: belief[i] approximates P(state bit i+1 of A
// is 0, given everything public so far). Entries stay inside [0, 1].
using BeliefVector = std::vector<double>;

// Which entries the reset heuristic may scan: the whole belief vector, or
// only the indices selected by the current round's pi.
enum class ResetScope { global_scan, current_round };

struct AttackerConfig {
    int samples_per_round = 1000;        // M: accepted candidates per inner round
    long long max_attempts = 1000000;    // consecutive rejections before a reset
    ResetScope reset_scope = ResetScope::global_scan;

    void validate() const;
};

// Accepted-candidate summary for one inner round: for every distinct selected
// state index (1-based, in first-appearance order) the number of accepted
// candidates that assigned it 0.
struct SampleSet {
    std::vector<std::uint32_t> indices;
    std::vector<std::uint32_t> zero_counts;
    int sample_count = 0;
    long long attempts = 0;  // total candidate draws, accepted + rejected
};

struct CollectOutcome {
    std::optional<SampleSet> samples;  // nullopt: attempt limit hit, reset needed
    long long attempts = 0;
};

struct AttackerState {
    BeliefVector belief;
    std::vector<RoundInput> agreed_rounds;  // tau_a == tau_b rounds of the current outer round
    long long resets_performed = 0;
};

struct BreakReport {
    std::optional<int> break_time;  // outer round of the first exact guess
    StateVector guessed;
};

// Neutral prior: every entry exactly 1/2.
BeliefVector init_belief(int state_bits);

// Distinct pi entries in first-appearance order (column-major scan). Bits are
// drawn once per distinct index, so duplicated entries stay self-consistent.
std::vector<std::uint32_t> selected_indices(const PiMatrix& pi);

// One candidate: out[d] = 0 with probability belief[indices[d] - 1].
void sample_candidate(const BeliefVector& belief, std::span<const std::uint32_t> indices,
                      Rng& rng, std::span<Bit> out);

// Rejection-samples candidates until M of them reproduce tau_a on (x, pi).
// The failure counter counts consecutive rejections and clears on every
// acceptance; reaching max_attempts yields the reset signal instead.
CollectOutcome collect_valid_samples(const BeliefVector& belief, const InputMatrix& x,
                                     const PiMatrix& pi, Bit tau_a, const AttackerConfig& cfg,
                                     const PpmConfig& config, Rng& rng);

// Selected entries become the relative frequency of 0 in the sample; all
// other entries are untouched.
void update_marginals(BeliefVector& belief, const SampleSet& samples);

// Resets the entry closest to collapse (max |p - 1/2|, ties to the lowest
// index) back to 1/2. `scan` restricts the search to the given 1-based
// indices; empty means all. Returns the 0-based position that was reset.
std::size_t reset_most_collapsed(BeliefVector& belief,
                                 std::span<const std::uint32_t> scan = {});

// Thresholded guess: bit = 0 where p > 1/2, else 1 (ties map to 1).
StateVector most_probable_state(const BeliefVector& belief);

// Average probability of a 1 in one unit's vector local field, given the
// belief and the unit's x / pi columns.
double mean_field_prob(const BeliefVector& belief, std::span<const Bit> x_col,
                       std::span<const std::uint32_t> pi_col);

// Binomial lower tail P(h <= floor(N/2)) for per-bit probability q; equals
// the probability that a hidden unit stays 0 under the mean-field model.
// Evaluated in log space, stable at least up to N = 64.
double hidden_zero_prob(double q, int inputs_per_unit);

// Outer-round boundary: the next state vector is made of the first hidden
// unit's states of the G agreeing rounds, so the new belief entry k is the
// probability that sigma_1 was 0 in agreeing round k.
BeliefVector transfer_outer(const BeliefVector& belief, std::span<const RoundInput> agreed_rounds,
                            const PpmConfig& config);

// Monte Carlo update for one observed record: collect valid samples against
// tau_a (resetting and restarting the round on sampler starvation), update
// the marginals, and remember the round input if the parties agreed.
void observe_round(AttackerState& state, const RoundRecord& record, const AttackerConfig& cfg,
                   const PpmConfig& config, Rng& rng);

// Applies transfer_outer to the collected agreeing rounds and clears them.
void finish_outer(AttackerState& state, const PpmConfig& config);

// observe_round plus finish_outer once G agreeing rounds have been seen.
void process_round(AttackerState& state, const RoundRecord& record, const AttackerConfig& cfg,
                   const PpmConfig& config, Rng& rng);

// Referee-side success test (the attacker itself never sees true_state):
// records the outer round of the first exact thresholded guess.
void check_break(const AttackerState& state, const StateVector& true_state, int outer_index,
                 BreakReport& report);

// Debug export: outer_index followed by all belief entries, comma-separated,
// 12 significant digits.
void write_belief_snapshot(std::ostream& out, int outer_index, const BeliefVector& belief);

}  // namespace ppmkx
