#include "siglogic/simulate.hpp"

#include <algorithm>

#include "engine.hpp"
#include "siglogic/errors.hpp"

namespace siglogic {

std::int8_t SimState::value_of(const std::string& node) const {
    auto it = std::lower_bound(node_names.begin(), node_names.end(), node);
    if (it == node_names.end() || *it != node)
        throw LookupError("unknown node '" + node + "'");
    return values[static_cast<std::size_t>(it - node_names.begin())];
}

namespace {

void check_condition_names(const PknModel& m, const ExperimentCondition& cond) {
    std::string bad;
    for (const auto& [name, _] : cond.stimuli)
        if (!m.stimuli().count(name)) bad += (bad.empty() ? "" : ", ") + name;
    for (const auto& name : cond.inhibited)
        if (!m.inhibitors().count(name)) bad += (bad.empty() ? "" : ", ") + name;
    if (!bad.empty())
        throw UsageError("condition names not in the model's annotations: " + bad);
}

}  // namespace

SimState simulate_steady(const PknModel& m, const ExperimentCondition& condition,
                         int max_iter) {
    if (max_iter < 0) throw UsageError("max_iter must be >= 1 (or 0 for the default)");
    check_condition_names(m, condition);

    detail::CompiledNetwork net(m);
    std::vector<std::uint8_t> mask(net.reactions.size(), 1);
    std::vector<std::uint8_t> stim(net.names.size(), 0), inhibited(net.names.size(), 0);
    for (const auto& [name, value] : condition.stimuli)
        stim[static_cast<std::size_t>(net.index.at(name))] = value ? 1 : 0;
    for (const auto& name : condition.inhibited)
        inhibited[static_cast<std::size_t>(net.index.at(name))] = 1;

    SimState out;
    out.node_names = net.names;
    out.values = net.steady(mask, stim, inhibited,
                            max_iter == 0 ? net.default_max_iter() : max_iter);
    return out;
}

TruthTable truth_table(const PknModel& m, int max_iter) {
    detail::CompiledNetwork net(m);
    const std::size_t k = net.stimuli.size() + net.inhibitors.size();
    if (k > 20)
        throw SizeGuardError("truth table refused: " + std::to_string(k) +
                             " binary inputs exceed the bound of 20");

    TruthTable table;
    table.n_stimuli = net.stimuli.size();
    for (int v : net.stimuli) table.input_names.push_back(net.names[v]);
    for (int v : net.inhibitors) table.input_names.push_back(net.names[v]);
    for (int v : net.signals) table.signal_names.push_back(net.names[v]);

    const std::vector<std::uint8_t> mask(net.reactions.size(), 1);
    const int iters = max_iter == 0 ? net.default_max_iter() : max_iter;
    std::vector<std::uint8_t> stim(net.names.size(), 0), inhibited(net.names.size(), 0);
    table.rows.reserve(std::size_t{1} << k);
    for (std::uint32_t c = 0; c < (std::uint32_t{1} << k); ++c) {
        std::fill(stim.begin(), stim.end(), 0);
        std::fill(inhibited.begin(), inhibited.end(), 0);
        for (std::size_t j = 0; j < net.stimuli.size(); ++j)
            stim[static_cast<std::size_t>(net.stimuli[j])] = (c >> j) & 1u;
        for (std::size_t j = 0; j < net.inhibitors.size(); ++j)
            inhibited[static_cast<std::size_t>(net.inhibitors[j])] =
                (c >> (net.stimuli.size() + j)) & 1u;
        const auto state = net.steady(mask, stim, inhibited, iters);
        std::vector<std::int8_t> row;
        row.reserve(net.signals.size());
        for (int v : net.signals) row.push_back(state[static_cast<std::size_t>(v)]);
        table.rows.push_back(std::move(row));
    }
    return table;
}

}  // namespace siglogic
