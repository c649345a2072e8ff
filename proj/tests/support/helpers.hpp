#pragma once

// Shared test utilities: an independent reference simulator, random model /
// dataset generators and canonical comparison helpers. The reference
// simulator deliberately re-implements the synchronous semantics over the
// string-level model so the indexed engine is checked against a second
// route.

#include <algorithm>
#include <map>
#include <optional>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "siglogic/bitstring.hpp"
#include "siglogic/midas.hpp"
#include "siglogic/model.hpp"
#include "siglogic/reaction.hpp"

namespace test_support {

using namespace siglogic;

// ---------------------------------------------------------------------------
// Reference synchronous simulator (map based, scans the reaction list).

inline std::map<std::string, int> ref_steady(const PknModel& m,
                                             const std::map<std::string, int>& stim_values,
                                             const std::set<std::string>& inhibited,
                                             int max_iter = 0) {
    if (max_iter == 0) max_iter = static_cast<int>(m.nodes().size()) + 1;
    std::map<std::string, int> state;
    for (const auto& n : m.nodes()) state[n] = 0;
    auto clamp = [&](std::map<std::string, int>& s) {
        for (const auto& stim : m.stimuli()) {
            auto it = stim_values.find(stim);
            s[stim] = (it != stim_values.end() && it->second) ? 1 : 0;
        }
        for (const auto& n : inhibited) s[n] = 0;
    };
    clamp(state);
    if (m.nodes().empty()) return state;

    auto step = [&](const std::map<std::string, int>& cur) {
        std::map<std::string, int> next;
        for (const auto& n : m.nodes()) {
            bool any = false, active = false;
            for (const auto& r : m.reactions()) {
                if (r.output() != n) continue;
                any = true;
                bool val = true;
                for (const auto& in : r.inputs()) {
                    const bool x = cur.at(in.node) != 0;
                    if (in.sign == Sign::activate ? !x : x) val = false;
                }
                if (val) active = true;
            }
            next[n] = any ? (active ? 1 : 0) : 0;
        }
        clamp(next);
        return next;
    };

    // Same contract as the engine: fixed point, otherwise the attractor
    // cycle decides which nodes count as stabilized.
    std::vector<std::map<std::string, int>> trajectory{state};
    for (int t = 1; t <= max_iter + 4096; ++t) {
        auto next = step(trajectory.back());
        if (next == trajectory.back()) return next;
        auto first = std::find(trajectory.begin(), trajectory.end(), next);
        if (first != trajectory.end()) {
            std::map<std::string, int> out = trajectory.back();
            for (auto it = first; it != trajectory.end(); ++it)
                for (const auto& [n, v] : *it)
                    if (out.at(n) != v) out[n] = -1;
            return out;
        }
        trajectory.push_back(std::move(next));
    }
    std::map<std::string, int> out = trajectory.back();
    for (const auto& [n, v] : trajectory[trajectory.size() - 2])
        if (out.at(n) != v) out[n] = -1;
    return out;
}

// All signal rows over every stimulus/inhibitor assignment, via ref_steady.
inline std::vector<std::vector<int>> ref_signal_table(const PknModel& m) {
    std::vector<std::string> stim(m.stimuli().begin(), m.stimuli().end());
    std::vector<std::string> inh(m.inhibitors().begin(), m.inhibitors().end());
    std::vector<std::string> sig(m.signals().begin(), m.signals().end());
    const std::size_t k = stim.size() + inh.size();
    std::vector<std::vector<int>> rows;
    for (std::uint32_t c = 0; c < (1u << k); ++c) {
        std::map<std::string, int> sv;
        std::set<std::string> on;
        for (std::size_t j = 0; j < stim.size(); ++j) sv[stim[j]] = (c >> j) & 1u;
        for (std::size_t j = 0; j < inh.size(); ++j)
            if ((c >> (stim.size() + j)) & 1u) on.insert(inh[j]);
        auto state = ref_steady(m, sv, on);
        std::vector<int> row;
        for (const auto& s : sig) row.push_back(state.at(s));
        rows.push_back(std::move(row));
    }
    return rows;
}

// ---------------------------------------------------------------------------
// Plain BFS reachability, kept independent from the library's pruning code.

inline std::set<std::string> ref_reachable(const PknModel& m,
                                           const std::set<std::string>& seeds,
                                           bool forward) {
    std::set<std::string> seen = seeds;
    std::vector<std::string> queue(seeds.begin(), seeds.end());
    while (!queue.empty()) {
        const std::string v = queue.back();
        queue.pop_back();
        for (const auto& r : m.reactions()) {
            if (forward) {
                bool from = false;
                for (const auto& in : r.inputs()) from = from || in.node == v;
                if (from && seen.insert(r.output()).second) queue.push_back(r.output());
            } else if (r.output() == v) {
                for (const auto& in : r.inputs())
                    if (seen.insert(in.node).second) queue.push_back(in.node);
            }
        }
    }
    return seen;
}

// ---------------------------------------------------------------------------
// Random generators (all deterministic under the supplied engine).

struct ModelOptions {
    int min_nodes = 4;
    int max_nodes = 12;
    int max_reactions = 16;
    double and_prob = 0.25;
    double inhibit_prob = 0.3;
    bool with_inhibitors = true;
};

inline PknModel random_model(std::mt19937_64& rng, const ModelOptions& opt = {}) {
    std::uniform_int_distribution<int> node_count(opt.min_nodes, opt.max_nodes);
    const int n = node_count(rng);
    std::vector<std::string> names;
    for (int i = 0; i < n; ++i) {
        std::ostringstream name;
        name << "N" << (i < 10 ? "0" : "") << i;
        names.push_back(name.str());
    }
    std::uniform_int_distribution<int> pick(0, n - 1);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    std::uniform_int_distribution<int> rc(1, opt.max_reactions);

    std::vector<Reaction> reactions;
    const int target = rc(rng);
    for (int i = 0; i < target; ++i) {
        const std::string output = names[static_cast<std::size_t>(pick(rng))];
        std::set<std::string> used{output};
        const int arity = unit(rng) < opt.and_prob ? 2 + (rng() % 2 == 0 ? 0 : 1) : 1;
        std::vector<ReactionInput> inputs;
        for (int a = 0; a < arity && static_cast<int>(used.size()) <= n - 1; ++a) {
            std::string in;
            int guard = 0;
            do {
                in = names[static_cast<std::size_t>(pick(rng))];
            } while (used.count(in) && ++guard < 32);
            if (used.count(in)) break;
            used.insert(in);
            inputs.push_back(
                {in, unit(rng) < opt.inhibit_prob ? Sign::inhibit : Sign::activate});
        }
        if (inputs.empty()) continue;
        reactions.push_back(Reaction::make(std::move(inputs), output));
    }
    if (reactions.empty())
        reactions.push_back(Reaction::make({{names[0], Sign::activate}}, names[1]));
    PknModel m = PknModel::from_reactions(std::move(reactions));

    std::vector<std::string> nodes(m.nodes().begin(), m.nodes().end());
    auto draw_subset = [&](std::size_t lo, std::size_t hi,
                           const std::set<std::string>& exclude) {
        std::set<std::string> out;
        std::vector<std::string> pool;
        for (const auto& v : nodes)
            if (!exclude.count(v)) pool.push_back(v);
        if (pool.empty()) return out;
        std::uniform_int_distribution<std::size_t> size_dist(lo, std::min(hi, pool.size()));
        const std::size_t want = size_dist(rng);
        while (out.size() < want) {
            std::uniform_int_distribution<std::size_t> ix(0, pool.size() - 1);
            out.insert(pool[ix(rng)]);
        }
        return out;
    };
    const auto stimuli = draw_subset(1, 3, {});
    const auto inhibitors =
        opt.with_inhibitors ? draw_subset(0, 2, stimuli) : std::set<std::string>{};
    auto signals = draw_subset(1, 3, stimuli);
    if (signals.empty()) signals.insert(nodes.back());
    return annotate(m, stimuli, inhibitors, signals);
}

// Dataset whose values are the steady states of `hidden` cut from `m`, one
// experiment per stimulus/inhibitor assignment, measured at `time`.
// Unstabilized signals become missing cells.
inline XMidas simulate_dataset(const PknModel& m, const BitString& hidden,
                               double time = 10.0) {
    const PknModel sub = cut(m, hidden);
    std::vector<std::string> stim(m.stimuli().begin(), m.stimuli().end());
    std::vector<std::string> inh(m.inhibitors().begin(), m.inhibitors().end());
    MidasBuilder builder;
    const std::size_t k = stim.size() + inh.size();
    for (std::uint32_t c = 0; c < (1u << k); ++c) {
        std::map<std::string, int> sv;
        std::set<std::string> on;
        std::map<std::string, int> stim_map, inh_map;
        for (std::size_t j = 0; j < stim.size(); ++j) {
            sv[stim[j]] = (c >> j) & 1u;
            stim_map[stim[j]] = (c >> j) & 1u;
        }
        for (std::size_t j = 0; j < inh.size(); ++j) {
            const int v = (c >> (stim.size() + j)) & 1u;
            inh_map[inh[j]] = v;
            if (v) on.insert(inh[j]);
        }
        const auto state = ref_steady(sub, sv, on);
        for (const auto& s : m.signals()) {
            const int v = state.at(s);
            if (v < 0) continue;
            builder.add_measurement({s, time, stim_map, inh_map, static_cast<double>(v)});
        }
    }
    return builder.build();
}

inline XMidas random_dataset(std::mt19937_64& rng) {
    std::uniform_int_distribution<int> few(1, 3);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    const int n_stim = few(rng), n_inh = few(rng) - 1, n_sig = few(rng);
    std::vector<std::string> stim, inh, sig;
    for (int i = 0; i < n_stim; ++i) stim.push_back("S" + std::to_string(i));
    for (int i = 0; i < n_inh; ++i) inh.push_back("D" + std::to_string(i));
    for (int i = 0; i < n_sig; ++i) sig.push_back("P" + std::to_string(i));
    const std::vector<double> times{0.0, 5.0, 10.0};

    MidasBuilder builder;
    const int experiments = 1 + static_cast<int>(rng() % 4);
    for (int e = 0; e < experiments; ++e) {
        std::map<std::string, int> stim_map, inh_map;
        for (const auto& s : stim) stim_map[s] = rng() % 2;
        for (const auto& d : inh) inh_map[d] = rng() % 2;
        for (const auto& p : sig)
            for (double t : times) {
                if (unit(rng) < 0.15) continue;  // leave holes
                builder.add_measurement({p, t, stim_map, inh_map, unit(rng)});
            }
    }
    return builder.build();
}

// Canonical text form used for read/write round-trip comparison: column
// order and experiment naming are allowed to differ, content is not.
inline std::string midas_signature(const XMidas& d) {
    std::vector<std::string> stim = d.stimuli_names, inh = d.inhibitor_names,
                             sig = d.signal_names;
    std::sort(stim.begin(), stim.end());
    std::sort(inh.begin(), inh.end());
    std::sort(sig.begin(), sig.end());
    auto fmt = [](double v) {
        std::ostringstream os;
        os.precision(17);
        os << v;
        return os.str();
    };
    std::vector<std::string> lines;
    for (const auto& row : d.measurements) {
        std::string cond;
        for (const auto& s : stim) {
            const auto i = static_cast<std::size_t>(
                std::find(d.stimuli_names.begin(), d.stimuli_names.end(), s) -
                d.stimuli_names.begin());
            cond += s + "=" + std::to_string(d.experiments[row.experiment][i]) + ";";
        }
        for (const auto& s : inh) {
            const auto i = static_cast<std::size_t>(
                std::find(d.inhibitor_names.begin(), d.inhibitor_names.end(), s) -
                d.inhibitor_names.begin());
            cond += s + "i=" +
                    std::to_string(d.experiments[row.experiment][d.stimuli_names.size() + i]) +
                    ";";
        }
        std::string line = cond + " t=" + fmt(row.time);
        for (const auto& s : sig) {
            const auto& v = row.values[d.signal_index(s)];
            line += " " + s + "=" + (v ? fmt(*v) : "NA");
        }
        lines.push_back(line);
    }
    std::sort(lines.begin(), lines.end());
    std::string out = d.cell_line + "\n";
    for (const auto& l : lines) out += l + "\n";
    return out;
}

// ---------------------------------------------------------------------------
// The worked 3-reaction example used across the suites.

inline PknModel toy_model(bool annotated = true) {
    PknModel m;
    m = add_reaction(m, "Input2=Interm");
    m = add_reaction(m, "Input1=Output");
    m = add_reaction(m, "Interm=Output");
    if (annotated) m = annotate(m, {"Input1", "Input2"}, {}, {"Output"});
    return m;
}

inline XMidas toy_dataset() {
    MidasBuilder builder;
    for (int i1 = 0; i1 <= 1; ++i1)
        for (int i2 = 0; i2 <= 1; ++i2) {
            std::map<std::string, int> stim{{"Input1", i1}, {"Input2", i2}};
            const double response = (i1 || i2) ? 1.0 : 0.0;
            builder.add_measurement({"Output", 0.0, stim, {}, 0.0});
            builder.add_measurement({"Output", 10.0, stim, {}, response});
        }
    return builder.build();
}

}  // namespace test_support
