#include "ppmkx/attacker.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <string>

namespace ppmkx {

namespace {

// Per-round sampling topology: distinct selected indices plus, for every pi
// cell, the slot of its index in the distinct list. Built once per record and
// reused across candidates (and across reset retries).
struct RoundTopology {
    std::vector<std::uint32_t> indices;  // distinct, 1-based, first appearance
    std::vector<std::uint16_t> slots;    // column-major, pi.rows() * pi.cols()
    int rows = 0;
    int cols = 0;
};

RoundTopology make_topology(const PiMatrix& pi, std::size_t state_bits) {
    RoundTopology topo;
    topo.rows = pi.rows();
    topo.cols = pi.cols();
    topo.slots.resize(static_cast<std::size_t>(pi.rows()) * pi.cols());
    std::size_t pos = 0;
    for (int j = 0; j < pi.cols(); ++j) {
        for (int i = 0; i < pi.rows(); ++i, ++pos) {
            const std::uint32_t idx = pi.at(i, j);
            if (idx < 1 || idx > state_bits) {
                throw ConfigError("pi entry out of range: " + std::to_string(idx) + " not in [1, " +
                                  std::to_string(state_bits) + "]");
            }
            auto it = std::find(topo.indices.begin(), topo.indices.end(), idx);
            if (it == topo.indices.end()) {
                topo.indices.push_back(idx);
                topo.slots[pos] = static_cast<std::uint16_t>(topo.indices.size() - 1);
            } else {
                topo.slots[pos] =
                    static_cast<std::uint16_t>(std::distance(topo.indices.begin(), it));
            }
        }
    }
    return topo;
}

CollectOutcome collect_with_topology(const BeliefVector& belief, const RoundTopology& topo,
                                     const InputMatrix& x, Bit tau_a, const AttackerConfig& cfg,
                                     Rng& rng) {
    const std::size_t n_distinct = topo.indices.size();
    std::vector<double> zero_prob(n_distinct);
    for (std::size_t d = 0; d < n_distinct; ++d) zero_prob[d] = belief[topo.indices[d] - 1];

    std::vector<Bit> candidate(n_distinct);
    std::vector<std::uint32_t> zero_counts(n_distinct, 0);
    const int n = topo.rows;
    const int k = topo.cols;

    CollectOutcome out;
    long long consecutive_failures = 0;
    int accepted = 0;
    while (accepted < cfg.samples_per_round) {
        for (std::size_t d = 0; d < n_distinct; ++d)
            candidate[d] = rng.zero_with_probability(zero_prob[d]);
        Bit tau = 0;
        for (int j = 0; j < k; ++j) {
            const std::span<const Bit> x_col = x.col(j);
            const std::uint16_t* slot_col = topo.slots.data() + static_cast<std::size_t>(j) * n;
            int field = 0;
            for (int i = 0; i < n; ++i) field += x_col[i] ^ candidate[slot_col[i]];
            tau ^= static_cast<Bit>(2 * field > n ? 1 : 0);
        }
        ++out.attempts;
        if (tau == tau_a) {
            ++accepted;
            consecutive_failures = 0;
            for (std::size_t d = 0; d < n_distinct; ++d)
                zero_counts[d] += candidate[d] == 0;
        } else if (++consecutive_failures >= cfg.max_attempts) {
            return out;  // samples left empty: belief needs a reset
        }
    }
    SampleSet set;
    set.indices = topo.indices;
    set.zero_counts = std::move(zero_counts);
    set.sample_count = cfg.samples_per_round;
    set.attempts = out.attempts;
    out.samples = std::move(set);
    return out;
}

}  // namespace

void AttackerConfig::validate() const {
    if (samples_per_round < 1 || max_attempts < 1) {
        throw ConfigError("invalid attacker parameters: need samples >= 1 and max_attempts >= 1");
    }
}

BeliefVector init_belief(int state_bits) {
    if (state_bits < 1) throw ConfigError("init_belief: state length must be >= 1");
    return BeliefVector(static_cast<std::size_t>(state_bits), 0.5);
}

std::vector<std::uint32_t> selected_indices(const PiMatrix& pi) {
    std::vector<std::uint32_t> distinct;
    for (int j = 0; j < pi.cols(); ++j) {
        for (int i = 0; i < pi.rows(); ++i) {
            const std::uint32_t idx = pi.at(i, j);
            if (std::find(distinct.begin(), distinct.end(), idx) == distinct.end())
                distinct.push_back(idx);
        }
    }
    return distinct;
}

void sample_candidate(const BeliefVector& belief, std::span<const std::uint32_t> indices,
                      Rng& rng, std::span<Bit> out) {
    if (out.size() != indices.size())
        throw ContractViolation("sample_candidate: output size mismatch");
    for (std::size_t d = 0; d < indices.size(); ++d)
        out[d] = rng.zero_with_probability(belief[indices[d] - 1]);
}

CollectOutcome collect_valid_samples(const BeliefVector& belief, const InputMatrix& x,
                                     const PiMatrix& pi, Bit tau_a, const AttackerConfig& cfg,
                                     const PpmConfig& config, Rng& rng) {
    cfg.validate();
    (void)config;
    const RoundTopology topo = make_topology(pi, belief.size());
    return collect_with_topology(belief, topo, x, tau_a, cfg, rng);
}

void update_marginals(BeliefVector& belief, const SampleSet& samples) {
    if (samples.sample_count < 1)
        throw ContractViolation("update_marginals: empty sample set");
    if (samples.indices.size() != samples.zero_counts.size())
        throw ContractViolation("update_marginals: malformed sample set");
    const double m = samples.sample_count;
    for (std::size_t d = 0; d < samples.indices.size(); ++d)
        belief[samples.indices[d] - 1] = static_cast<double>(samples.zero_counts[d]) / m;
}

std::size_t reset_most_collapsed(BeliefVector& belief, std::span<const std::uint32_t> scan) {
    if (belief.empty()) throw ContractViolation("reset_most_collapsed: empty belief");
    std::size_t best_pos = 0;
    double best_dist = -1.0;
    if (scan.empty()) {
        for (std::size_t i = 0; i < belief.size(); ++i) {
            const double dist = std::abs(belief[i] - 0.5);
            if (dist > best_dist) {
                best_dist = dist;
                best_pos = i;
            }
        }
    } else {
        std::vector<std::uint32_t> ordered(scan.begin(), scan.end());
        std::sort(ordered.begin(), ordered.end());
        for (const std::uint32_t idx : ordered) {
            const std::size_t pos = idx - 1;
            const double dist = std::abs(belief[pos] - 0.5);
            if (dist > best_dist) {
                best_dist = dist;
                best_pos = pos;
            }
        }
    }
    belief[best_pos] = 0.5;
    return best_pos;
}

StateVector most_probable_state(const BeliefVector& belief) {
    StateVector state(belief.size());
    for (std::size_t i = 0; i < belief.size(); ++i) state[i] = belief[i] > 0.5 ? 0 : 1;
    return state;
}

double mean_field_prob(const BeliefVector& belief, std::span<const Bit> x_col,
                       std::span<const std::uint32_t> pi_col) {
    if (x_col.size() != pi_col.size() || x_col.empty())
        throw ContractViolation("mean_field_prob: column length mismatch");
    double sum = 0.0;
    for (std::size_t i = 0; i < x_col.size(); ++i) {
        const double p_zero = belief[pi_col[i] - 1];
        sum += x_col[i] ? p_zero : 1.0 - p_zero;
    }
    return std::clamp(sum / static_cast<double>(x_col.size()), 0.0, 1.0);
}

double hidden_zero_prob(double q, int inputs_per_unit) {
    if (!(q >= 0.0 && q <= 1.0))
        throw ContractViolation("hidden_zero_prob: q outside [0, 1]");
    if (inputs_per_unit < 1)
        throw ContractViolation("hidden_zero_prob: need at least one input");
    const int n = inputs_per_unit;
    const int tail_max = n / 2;
    if (q == 0.0) return 1.0;
    if (q == 1.0) return tail_max >= n ? 1.0 : 0.0;
    const double log_q = std::log(q);
    const double log_1q = std::log1p(-q);
    const double log_fact_n = std::lgamma(n + 1.0);
    double sum = 0.0;
    for (int ones = 0; ones <= tail_max; ++ones) {
        const double log_choose =
            log_fact_n - std::lgamma(ones + 1.0) - std::lgamma(n - ones + 1.0);
        sum += std::exp(log_choose + ones * log_q + (n - ones) * log_1q);
    }
    return std::clamp(sum, 0.0, 1.0);
}

BeliefVector transfer_outer(const BeliefVector& belief, std::span<const RoundInput> agreed_rounds,
                            const PpmConfig& config) {
    if (agreed_rounds.size() != static_cast<std::size_t>(config.state_bits)) {
        throw ProtocolError("transfer_outer: have " + std::to_string(agreed_rounds.size()) +
                            " agreeing rounds, need " + std::to_string(config.state_bits));
    }
    BeliefVector next(agreed_rounds.size());
    for (std::size_t k = 0; k < agreed_rounds.size(); ++k) {
        const RoundInput& round = agreed_rounds[k];
        const double q = mean_field_prob(belief, round.x.col(0), round.pi.col(0));
        next[k] = hidden_zero_prob(q, config.inputs_per_unit);
    }
    return next;
}

void observe_round(AttackerState& state, const RoundRecord& record, const AttackerConfig& cfg,
                   const PpmConfig& config, Rng& rng) {
    cfg.validate();
    const RoundTopology topo = make_topology(record.input.pi, state.belief.size());
    for (;;) {
        CollectOutcome out =
            collect_with_topology(state.belief, topo, record.input.x, record.tau_a, cfg, rng);
        if (out.samples) {
            update_marginals(state.belief, *out.samples);
            break;
        }
        // Sampler starved: some entry collapsed to the wrong side. Soften the
        // most collapsed one and redo the whole round with a fresh counter.
        if (cfg.reset_scope == ResetScope::current_round)
            reset_most_collapsed(state.belief, topo.indices);
        else
            reset_most_collapsed(state.belief);
        ++state.resets_performed;
    }
    if (record.agreed) state.agreed_rounds.push_back(record.input);
    (void)config;
}

void finish_outer(AttackerState& state, const PpmConfig& config) {
    state.belief = transfer_outer(state.belief, state.agreed_rounds, config);
    state.agreed_rounds.clear();
}

void process_round(AttackerState& state, const RoundRecord& record, const AttackerConfig& cfg,
                   const PpmConfig& config, Rng& rng) {
    observe_round(state, record, cfg, config, rng);
    if (state.agreed_rounds.size() == static_cast<std::size_t>(config.state_bits))
        finish_outer(state, config);
}

void check_break(const AttackerState& state, const StateVector& true_state, int outer_index,
                 BreakReport& report) {
    if (report.break_time) return;
    StateVector guess = most_probable_state(state.belief);
    if (guess == true_state) {
        report.break_time = outer_index;
        report.guessed = std::move(guess);
    }
}

void write_belief_snapshot(std::ostream& out, int outer_index, const BeliefVector& belief) {
    out << outer_index;
    char buf[32];
    for (const double p : belief) {
        std::snprintf(buf, sizeof buf, "%.12g", p);
        out << ',' << buf;
    }
    out << '\n';
}

}  // namespace ppmkx
