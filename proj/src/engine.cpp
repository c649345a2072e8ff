#include "engine.hpp"

#include <algorithm>
#include <map>

namespace siglogic::detail {

namespace {

// Extra steps spent looking for a revisited state once the fixed-point
// budget is exhausted. Attractors of these networks are short; the bound
// only guards against pathological transients.
constexpr int kAttractorBudget = 4096;

}  // namespace

CompiledNetwork::CompiledNetwork(const PknModel& m) {
    names.assign(m.nodes().begin(), m.nodes().end());
    for (int i = 0; i < static_cast<int>(names.size()); ++i) index.emplace(names[i], i);
    incoming.resize(names.size());
    for (const auto& r : m.reactions()) {
        Rx rx;
        rx.output = index.at(r.output());
        for (const auto& in : r.inputs())
            rx.lits.push_back({index.at(in.node), in.sign == Sign::inhibit});
        incoming[rx.output].push_back(static_cast<int>(reactions.size()));
        reactions.push_back(std::move(rx));
    }
    for (const auto& s : m.stimuli()) stimuli.push_back(index.at(s));
    for (const auto& s : m.inhibitors()) inhibitors.push_back(index.at(s));
    for (const auto& s : m.signals()) signals.push_back(index.at(s));
}

// Synchronous run. Looks for a fixed point within max_iter steps, then
// keeps going a bounded while to find the attractor cycle: nodes that vary
// across the cycle have not stabilized and are reported as -1. The cycle
// search makes the outcome independent of where a trajectory is truncated.
std::vector<std::int8_t> CompiledNetwork::steady(const std::vector<std::uint8_t>& mask,
                                                 const std::vector<std::uint8_t>& stim_value,
                                                 const std::vector<std::uint8_t>& inhibited,
                                                 int max_iter) const {
    const std::size_t n = names.size();
    std::vector<std::int8_t> state(n, 0);
    for (int v : stimuli) state[static_cast<std::size_t>(v)] = stim_value[v] ? 1 : 0;
    for (std::size_t v = 0; v < n; ++v)
        if (inhibited[v]) state[v] = 0;
    if (n == 0) return state;

    auto step = [&](const std::vector<std::int8_t>& cur) {
        std::vector<std::int8_t> next(n, 0);
        for (std::size_t v = 0; v < n; ++v) {
            bool any = false, active = false;
            for (int ri : incoming[v]) {
                if (!mask[static_cast<std::size_t>(ri)]) continue;
                any = true;
                bool val = true;
                for (const Lit& lit : reactions[static_cast<std::size_t>(ri)].lits) {
                    const bool x = cur[static_cast<std::size_t>(lit.node)] != 0;
                    if (lit.negate ? x : !x) {
                        val = false;
                        break;
                    }
                }
                if (val) {
                    active = true;
                    break;
                }
            }
            // Without a kept incoming reaction a node holds its initial
            // value, which the clamps below reproduce for everything else.
            next[v] = any ? (active ? 1 : 0) : 0;
        }
        for (int v : stimuli) next[static_cast<std::size_t>(v)] = stim_value[v] ? 1 : 0;
        for (std::size_t v = 0; v < n; ++v)
            if (inhibited[v]) next[v] = 0;
        return next;
    };

    std::vector<std::vector<std::int8_t>> trajectory{state};
    std::map<std::vector<std::int8_t>, std::size_t> seen{{state, 0}};
    const int hard_cap = max_iter + kAttractorBudget;
    for (int t = 1; t <= hard_cap; ++t) {
        std::vector<std::int8_t> next = step(trajectory.back());
        if (next == trajectory.back()) return next;  // fixed point

        auto [it, inserted] = seen.emplace(next, trajectory.size());
        if (!inserted) {
            // Cycle covering trajectory[it->second .. end]; every node
            // that varies inside it is unresolved.
            std::vector<std::int8_t> out = trajectory.back();
            for (std::size_t s = it->second; s < trajectory.size(); ++s)
                for (std::size_t v = 0; v < n; ++v)
                    if (trajectory[s][v] != out[v]) out[v] = -1;
            return out;
        }
        trajectory.push_back(std::move(next));
    }

    // No fixed point and no revisit within the budget: flag what still
    // moved in the very last step.
    std::vector<std::int8_t> out = trajectory.back();
    const auto& prev = trajectory[trajectory.size() - 2];
    for (std::size_t v = 0; v < n; ++v)
        if (out[v] != prev[v]) out[v] = -1;
    return out;
}

}  // namespace siglogic::detail
