#pragma once

// Indexed form of a model shared by the simulator and the scorer. Internal.

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "siglogic/model.hpp"

namespace siglogic::detail {

struct CompiledNetwork {
    struct Lit {
        int node;
        bool negate;
    };
    struct Rx {
        std::vector<Lit> lits;
        int output;
    };

    std::vector<std::string> names;  // sorted model nodes
    std::map<std::string, int> index;
    std::vector<Rx> reactions;                 // canonical order
    std::vector<std::vector<int>> incoming;    // node -> reaction ids
    std::vector<int> stimuli, inhibitors, signals;  // node ids, sorted by name

    explicit CompiledNetwork(const PknModel& m);

    int default_max_iter() const { return static_cast<int>(names.size()) + 1; }

    /// Runs the synchronous update with the given reaction mask. stim_value
    /// and inhibited are per-node vectors (only stimulus / inhibitor slots
    /// are read). Returns one value per node: 0, 1 or -1 (not stabilized).
    std::vector<std::int8_t> steady(const std::vector<std::uint8_t>& mask,
                                    const std::vector<std::uint8_t>& stim_value,
                                    const std::vector<std::uint8_t>& inhibited,
                                    int max_iter) const;
};

}  // namespace siglogic::detail
