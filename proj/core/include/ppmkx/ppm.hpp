#pragma once

#include <span>
#include <string>
#include <vector>

#include "ppmkx/bits.hpp"
#include "ppmkx/errors.hpp"

namespace ppmkx {

// Geometry of a permutation parity machine: a two-layer binary network with
// `hidden_units` majority gates, each fed `inputs_per_unit` XOR local fields,
// whose weights are bits selected from a `state_bits`-long state vector.
struct PpmConfig {
    int inputs_per_unit = 1;  // N
    int hidden_units = 1;     // K
    int state_bits = 1;       // G

    // Throws ConfigError if any size is < 1. Returns non-fatal warnings,
    // e.g. when the state vector is not much larger than the number of
    // selected weights (the exchange assumes G >> K*N).
    std::vector<std::string> validate() const;
};

// Full bookkeeping of one machine evaluation.
struct Evaluation {
    Grid<Bit> weights;              // w[i][j] = s[pi[i][j]]
    Grid<Bit> vector_fields;        // h[i][j] = x[i][j] xor w[i][j]
    std::vector<int> scalar_fields; // per unit, sum of its vector field column
    BitVector hidden_states;        // 1 iff the column majority is 1 (ties -> 0)
    Bit output = 0;                 // parity of the hidden states
};

struct HiddenUnit {
    int scalar_field = 0;
    Bit state = 0;
};

// Weight selection w[i][j] = s[pi[i][j]] with 1-based pi entries.
// Out-of-range entries signal a corrupt pi and raise ConfigError.
Grid<Bit> select_weights(const StateVector& state, const PiMatrix& pi);

// Scalar local field (count of ones in x xor w) and the majority state of
// one hidden unit. The tie at exactly half maps to state 0.
HiddenUnit hidden_unit_state(std::span<const Bit> x_col, std::span<const Bit> w_col);

// Parity (XOR fold) of the hidden states.
Bit ppm_output(std::span<const Bit> hidden_states);

// Pure composition of the above for a full round; same inputs always yield
// the same Evaluation.
Evaluation evaluate(const StateVector& state, const InputMatrix& x, const PiMatrix& pi,
                    const PpmConfig& config);

}  // namespace ppmkx
