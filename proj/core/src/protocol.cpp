#include "ppmkx/protocol.hpp"

#include <string>

namespace ppmkx {

Party init_party(const PpmConfig& config, Rng& rng, PartyLabel label) {
    Party p;
    p.label = label;
    p.state.resize(config.state_bits);
    for (auto& bit : p.state) bit = rng.bit();
    p.buffer.reserve(config.state_bits);
    return p;
}

RoundInput generate_round(const PpmConfig& config, Rng& rng, int outer_index, int inner_index) {
    RoundInput round;
    round.outer_index = outer_index;
    round.inner_index = inner_index;
    round.x = InputMatrix(config.inputs_per_unit, config.hidden_units);
    round.pi = PiMatrix(config.inputs_per_unit, config.hidden_units);
    const auto g = static_cast<std::uint32_t>(config.state_bits);
    for (int j = 0; j < config.hidden_units; ++j)
        for (int i = 0; i < config.inputs_per_unit; ++i) round.x.at(i, j) = rng.bit();
    for (int j = 0; j < config.hidden_units; ++j)
        for (int i = 0; i < config.inputs_per_unit; ++i)
            round.pi.at(i, j) = 1 + rng.uniform_index(g);
    return round;
}

RoundRecord inner_round(Party& a, Party& b, const RoundInput& round, const PpmConfig& config) {
    if (a.buffer.size() >= static_cast<std::size_t>(config.state_bits) ||
        b.buffer.size() >= static_cast<std::size_t>(config.state_bits)) {
        throw ProtocolError("inner_round on a full buffer: outer-round commit was missed");
    }
    const Evaluation ea = evaluate(a.state, round.x, round.pi, config);
    const Evaluation eb = evaluate(b.state, round.x, round.pi, config);
    RoundRecord rec;
    rec.input = round;
    rec.tau_a = ea.output;
    rec.tau_b = eb.output;
    rec.agreed = ea.output == eb.output;
    if (rec.agreed) {
        a.buffer.push_back(ea.hidden_states[0]);
        b.buffer.push_back(eb.hidden_states[0]);
    }
    rec.buffer_len_after = static_cast<int>(a.buffer.size());
    return rec;
}

void commit_outer(Party& party) {
    if (party.buffer.size() != party.state.size()) {
        throw ProtocolError("commit_outer with buffer length " +
                            std::to_string(party.buffer.size()) + ", state length " +
                            std::to_string(party.state.size()));
    }
    party.state = party.buffer;
    party.buffer.clear();
}

bool is_synchronized(const Party& a, const Party& b) { return a.state == b.state; }

bool is_antiparallel(const Party& a, const Party& b) {
    if (a.state.size() != b.state.size()) return false;
    for (std::size_t i = 0; i < a.state.size(); ++i)
        if (a.state[i] == b.state[i]) return false;
    return true;
}

RunOutcome run_key_exchange(Party& a, Party& b, const PpmConfig& config, Rng& rng, int max_outer,
                            const RoundObserver& observer) {
    if (max_outer < 1) throw ContractViolation("run_key_exchange: max_outer must be >= 1");
    RunOutcome outcome;
    const auto g = static_cast<std::size_t>(config.state_bits);
    for (int outer = 1; outer <= max_outer; ++outer) {
        int inner = 1;
        while (a.buffer.size() < g) {
            const RoundInput round = generate_round(config, rng, outer, inner);
            const RoundRecord rec = inner_round(a, b, round, config);
            ++outcome.total_inner_rounds;
            ++inner;
            if (observer) observer(rec);
        }
        commit_outer(a);
        commit_outer(b);
        if (is_synchronized(a, b)) {
            outcome.sync_time = outer;
            return outcome;
        }
        if (is_antiparallel(a, b)) {
            outcome.aborted = true;
            outcome.abort_reason = AbortReason::antiparallel;
            return outcome;
        }
    }
    outcome.aborted = true;
    outcome.abort_reason = AbortReason::cap_reached;
    return outcome;
}

RunOutcome run_key_exchange(const PpmConfig& config, Rng& rng, int max_outer,
                            const RoundObserver& observer) {
    Party a = init_party(config, rng, PartyLabel::A);
    Party b = init_party(config, rng, PartyLabel::B);
    return run_key_exchange(a, b, config, rng, max_outer, observer);
}

TranscriptWriter::TranscriptWriter(std::ostream& out, const PpmConfig& config)
    : out_(out), inputs_per_unit_(config.inputs_per_unit), hidden_units_(config.hidden_units) {
    out_ << "outer_index,inner_index,tau_a,tau_b,agreed";
    for (int i = 1; i <= inputs_per_unit_; ++i)
        for (int j = 1; j <= hidden_units_; ++j) out_ << ",pi_" << i << "_" << j;
    for (int i = 1; i <= inputs_per_unit_; ++i)
        for (int j = 1; j <= hidden_units_; ++j) out_ << ",x_" << i << "_" << j;
    out_ << '\n';
}

void TranscriptWriter::write(const RoundRecord& record) {
    out_ << record.input.outer_index << ',' << record.input.inner_index << ','
         << static_cast<int>(record.tau_a) << ',' << static_cast<int>(record.tau_b) << ','
         << (record.agreed ? "true" : "false");
    for (int i = 0; i < inputs_per_unit_; ++i)
        for (int j = 0; j < hidden_units_; ++j) out_ << ',' << record.input.pi.at(i, j);
    for (int i = 0; i < inputs_per_unit_; ++i)
        for (int j = 0; j < hidden_units_; ++j)
            out_ << ',' << static_cast<int>(record.input.x.at(i, j));
    out_ << '\n';
}

}  // namespace ppmkx
