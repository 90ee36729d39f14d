#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <ostream>

#include "ppmkx/ppm.hpp"
#include "ppmkx/rng.hpp"

namespace ppmkx {

enum class PartyLabel : std::uint8_t { A, B };

// One synchronizing endpoint. `state` always has length G; `buffer` collects
// the first hidden unit's states of agreeing rounds and never exceeds G.
struct Party {
    StateVector state;
    BitVector buffer;
    PartyLabel label = PartyLabel::A;
};

// Public data of one inner round. Indices are 1-based.
struct RoundInput {
    InputMatrix x;
    PiMatrix pi;
    int outer_index = 1;
    int inner_index = 1;
};

// Public transcript entry: what an eavesdropper sees of one inner round.
struct RoundRecord {
    RoundInput input;
    Bit tau_a = 0;
    Bit tau_b = 0;
    bool agreed = false;           // tau_a == tau_b
    int buffer_len_after = 0;      // both buffers, they always move together
};

enum class AbortReason { cap_reached, antiparallel };

inline const char* to_string(AbortReason r) {
    return r == AbortReason::cap_reached ? "cap_reached" : "antiparallel";
}

struct RunOutcome {
    std::optional<int> sync_time;  // completed outer rounds until s_A == s_B
    bool aborted = false;
    std::optional<AbortReason> abort_reason;
    long long total_inner_rounds = 0;
};

using RoundObserver = std::function<void(const RoundRecord&)>;

// Fresh party with a uniformly random state and an empty buffer.
Party init_party(const PpmConfig& config, Rng& rng, PartyLabel label);

// Draws x uniform on {0,1} and pi uniform on [1, G], all entries independent
// (with replacement).
RoundInput generate_round(const PpmConfig& config, Rng& rng, int outer_index, int inner_index);

// Evaluates both machines on the public round; on agreement each party
// appends its first hidden state to its buffer. States are not modified.
// Calling with full buffers means a commit was missed -> ProtocolError.
RoundRecord inner_round(Party& a, Party& b, const RoundInput& round, const PpmConfig& config);

// buffer -> state (k-th agreeing round's bit becomes state bit k), buffer
// emptied. Requires a full buffer.
void commit_outer(Party& party);

bool is_synchronized(const Party& a, const Party& b);
bool is_antiparallel(const Party& a, const Party& b);

// Full exchange between two existing parties: inner rounds until the buffers
// fill, commit, test synchronization / antiparallel, repeat up to max_outer
// completed outer rounds. Every record is handed to the observer (before the
// commit it may complete); observer exceptions abort the run and propagate.
RunOutcome run_key_exchange(Party& a, Party& b, const PpmConfig& config, Rng& rng, int max_outer,
                            const RoundObserver& observer = {});

// Convenience form that creates both parties from the same stream.
RunOutcome run_key_exchange(const PpmConfig& config, Rng& rng, int max_outer,
                            const RoundObserver& observer = {});

// CSV transcript: header plus one line per record with outer_index,
// inner_index, tau_a, tau_b, agreed, the pi entries in row-major order
// (1-based values), then the x entries in row-major order.
class TranscriptWriter {
public:
    TranscriptWriter(std::ostream& out, const PpmConfig& config);
    void write(const RoundRecord& record);

private:
    std::ostream& out_;
    int inputs_per_unit_;
    int hidden_units_;
};

}  // namespace ppmkx
