#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "siglogic/midas.hpp"
#include "siglogic/model.hpp"

namespace siglogic {

/// Steady-state values of every model node: 0, 1, or kNA for nodes that did
/// not stabilize within the iteration budget.
struct SimState {
    static constexpr std::int8_t kNA = -1;

    std::vector<std::string> node_names;  // sorted
    std::vector<std::int8_t> values;      // aligned with node_names

    std::int8_t value_of(const std::string& node) const;
};

/// Synchronous boolean simulation to the first fixed point. Initial state:
/// stimuli at their condition value, everything else 0. Each step a node
/// becomes the OR over its kept incoming reactions of the AND over their
/// (possibly negated) inputs; nodes without incoming reactions hold their
/// initial value; stimuli stay clamped to the condition value and inhibited
/// nodes to 0. After max_iter steps without a fixed point, nodes that still
/// changed in the last step are reported as kNA. max_iter 0 selects the
/// default budget of |nodes| + 1.
SimState simulate_steady(const PknModel& m, const ExperimentCondition& condition,
                         int max_iter = 0);

/// Signal steady states over every stimulus/inhibitor assignment. Row c
/// assigns bit j of c to input_names[j] (sorted stimuli first, then sorted
/// inhibitors). Refuses more than 20 binary inputs.
struct TruthTable {
    std::vector<std::string> input_names;
    std::size_t n_stimuli = 0;
    std::vector<std::string> signal_names;             // sorted
    std::vector<std::vector<std::int8_t>> rows;        // rows[c][signal]

    bool operator==(const TruthTable&) const = default;
};

TruthTable truth_table(const PknModel& m, int max_iter = 0);

}  // namespace siglogic
