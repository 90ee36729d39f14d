#include "ppmkx/ppm.hpp"

#include <string>

namespace ppmkx {

std::vector<std::string> PpmConfig::validate() const {
    if (inputs_per_unit < 1 || hidden_units < 1 || state_bits < 1) {
        throw ConfigError("invalid machine geometry: need N >= 1, K >= 1, G >= 1, got N=" +
                          std::to_string(inputs_per_unit) + " K=" + std::to_string(hidden_units) +
                          " G=" + std::to_string(state_bits));
    }
    std::vector<std::string> warnings;
    const long long selected = static_cast<long long>(inputs_per_unit) * hidden_units;
    if (state_bits <= selected) {
        warnings.push_back("G=" + std::to_string(state_bits) + " does not exceed K*N=" +
                           std::to_string(selected) +
                           "; the exchange assumes a state vector much longer than one round's "
                           "selection");
    }
    return warnings;
}

Grid<Bit> select_weights(const StateVector& state, const PiMatrix& pi) {
    const auto g = static_cast<std::uint32_t>(state.size());
    Grid<Bit> weights(pi.rows(), pi.cols());
    for (int j = 0; j < pi.cols(); ++j) {
        for (int i = 0; i < pi.rows(); ++i) {
            const std::uint32_t idx = pi.at(i, j);
            if (idx < 1 || idx > g) {
                throw ConfigError("pi entry out of range: " + std::to_string(idx) +
                                  " not in [1, " + std::to_string(g) + "]");
            }
            weights.at(i, j) = state[idx - 1];
        }
    }
    return weights;
}

HiddenUnit hidden_unit_state(std::span<const Bit> x_col, std::span<const Bit> w_col) {
    if (x_col.size() != w_col.size())
        throw ContractViolation("hidden_unit_state: column length mismatch");
    int field = 0;
    for (std::size_t i = 0; i < x_col.size(); ++i) field += x_col[i] ^ w_col[i];
    const int n = static_cast<int>(x_col.size());
    // majority of ones; the tie at exactly N/2 stays inactive
    return {field, static_cast<Bit>(2 * field > n ? 1 : 0)};
}

Bit ppm_output(std::span<const Bit> hidden_states) {
    Bit parity = 0;
    for (Bit s : hidden_states) parity ^= s;
    return parity;
}

Evaluation evaluate(const StateVector& state, const InputMatrix& x, const PiMatrix& pi,
                    const PpmConfig& config) {
    if (x.rows() != config.inputs_per_unit || x.cols() != config.hidden_units ||
        pi.rows() != config.inputs_per_unit || pi.cols() != config.hidden_units ||
        state.size() != static_cast<std::size_t>(config.state_bits)) {
        throw ContractViolation("evaluate: shapes inconsistent with configuration");
    }
    Evaluation eval;
    eval.weights = select_weights(state, pi);
    eval.vector_fields = Grid<Bit>(x.rows(), x.cols());
    eval.scalar_fields.resize(config.hidden_units);
    eval.hidden_states.resize(config.hidden_units);
    for (int j = 0; j < config.hidden_units; ++j) {
        const auto unit = hidden_unit_state(x.col(j), eval.weights.col(j));
        for (int i = 0; i < config.inputs_per_unit; ++i)
            eval.vector_fields.at(i, j) = x.at(i, j) ^ eval.weights.at(i, j);
        eval.scalar_fields[j] = unit.scalar_field;
        eval.hidden_states[j] = unit.state;
    }
    eval.output = ppm_output(eval.hidden_states);
    return eval;
}

}  // namespace ppmkx
