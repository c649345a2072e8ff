#include "siglogic/model.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <optional>

#include "siglogic/errors.hpp"
#include "siglogic/simulate.hpp"

namespace siglogic {

void PknModel::insert(const Reaction& r) {
    nodes_.insert(r.output());
    for (const auto& in : r.inputs()) nodes_.insert(in.node);
    reactions_.push_back(r);
}

void PknModel::canonicalize() {
    std::sort(reactions_.begin(), reactions_.end());
    reactions_.erase(std::unique(reactions_.begin(), reactions_.end()), reactions_.end());
}

PknModel PknModel::from_sif(const SifDocument& doc) {
    PknModel m;
    for (const auto& r : doc.reactions) m.insert(r);
    m.canonicalize();
    return m;
}

PknModel PknModel::from_reactions(std::vector<Reaction> reactions) {
    PknModel m;
    for (const auto& r : reactions) m.insert(r);
    m.canonicalize();
    return m;
}

SifDocument PknModel::to_sif(std::string source_name) const {
    return SifDocument{reactions_, std::move(source_name)};
}

PknModel add_reaction(const PknModel& m, const std::string& text) {
    PknModel out = m;
    for (const auto& r : parse_reaction(text)) out.insert(r);
    out.canonicalize();
    return out;
}

PknModel annotate(const PknModel& m, const std::set<std::string>& stimuli,
                  const std::set<std::string>& inhibitors,
                  const std::set<std::string>& signals) {
    std::string unknown;
    for (const auto* set : {&stimuli, &inhibitors, &signals})
        for (const auto& name : *set)
            if (!m.nodes().count(name)) unknown += (unknown.empty() ? "" : ", ") + name;
    if (!unknown.empty())
        throw UsageError("annotation names not in the model: " + unknown);
    PknModel out = m;
    out.stimuli_ = stimuli;
    out.inhibitors_ = inhibitors;
    out.signals_ = signals;
    return out;
}

PknModel annotate_from(const PknModel& m, const XMidas& data) {
    return annotate(m,
                    {data.stimuli_names.begin(), data.stimuli_names.end()},
                    {data.inhibitor_names.begin(), data.inhibitor_names.end()},
                    {data.signal_names.begin(), data.signal_names.end()});
}

PknModel expand_and_gates(const PknModel& m, int max_inputs) {
    if (max_inputs < 2) throw UsageError("max_inputs must be >= 2");
    PknModel out = m;
    for (const auto& node : m.nodes()) {
        std::vector<ReactionInput> feeders;
        for (const auto& r : m.reactions())
            if (r.kind() == Reaction::Kind::simple && r.output() == node)
                feeders.push_back(r.inputs()[0]);
        const std::size_t k = feeders.size();
        if (k < 2) continue;
        const std::size_t top = std::min<std::size_t>(k, static_cast<std::size_t>(max_inputs));
        for (std::size_t size = 2; size <= top; ++size) {
            // Enumerate k-choose-size index combinations in lexicographic order.
            std::vector<std::size_t> idx(size);
            for (std::size_t i = 0; i < size; ++i) idx[i] = i;
            while (true) {
                std::vector<ReactionInput> inputs;
                inputs.reserve(size);
                for (std::size_t i : idx) inputs.push_back(feeders[i]);
                std::sort(inputs.begin(), inputs.end());
                bool conflict = false;
                for (std::size_t i = 1; i < inputs.size(); ++i)
                    if (inputs[i].node == inputs[i - 1].node) conflict = true;
                if (!conflict) out.insert(Reaction::make(inputs, node));

                std::size_t pos = size;
                while (pos > 0 && idx[pos - 1] == k - size + pos - 1) --pos;
                if (pos == 0) break;
                ++idx[pos - 1];
                for (std::size_t i = pos; i < size; ++i) idx[i] = idx[i - 1] + 1;
            }
        }
    }
    out.canonicalize();
    out.expanded_ = true;
    return out;
}

namespace {

bool is_acyclic(const PknModel& m) {
    std::map<std::string, std::vector<std::string>> succ;
    for (const auto& r : m.reactions())
        for (const auto& in : r.inputs()) succ[in.node].push_back(r.output());
    std::map<std::string, int> color;  // 0 white, 1 grey, 2 black
    std::function<bool(const std::string&)> dfs = [&](const std::string& v) {
        color[v] = 1;
        for (const auto& w : succ[v]) {
            if (color[w] == 1) return false;
            if (color[w] == 0 && !dfs(w)) return false;
        }
        color[v] = 2;
        return true;
    };
    for (const auto& v : m.nodes())
        if (color[v] == 0 && !dfs(v)) return false;
    return true;
}

ReactionInput negated(ReactionInput in) {
    in.sign = in.sign == Sign::activate ? Sign::inhibit : Sign::activate;
    return in;
}

enum class Combine { ok, constant_false, self_loop };

// Merges the literal lists of a rewired reaction. Duplicate literals
// collapse; a species required with both signs makes the conjunction
// constant false; the output appearing among the inputs is a self-loop.
Combine combine(std::vector<ReactionInput> inputs, const std::string& output,
                std::vector<Reaction>& sink) {
    std::sort(inputs.begin(), inputs.end());
    inputs.erase(std::unique(inputs.begin(), inputs.end()), inputs.end());
    for (std::size_t i = 1; i < inputs.size(); ++i)
        if (inputs[i].node == inputs[i - 1].node) return Combine::constant_false;
    for (const auto& in : inputs)
        if (in.node == output) return Combine::self_loop;
    sink.push_back(Reaction::make(std::move(inputs), output));
    return Combine::ok;
}

// Reactions that replace the incoming reactions and uses of `node` when it
// is removed. nullopt when the node cannot be removed (self-loop, constant
// source, fan shape not covered, or a replacement blow-up).
std::optional<std::vector<Reaction>> plan_removal(const PknModel& m, const std::string& node) {
    std::vector<const Reaction*> incoming;
    std::vector<std::pair<const Reaction*, Sign>> uses;
    for (const auto& r : m.reactions()) {
        if (r.output() == node) incoming.push_back(&r);
        for (const auto& in : r.inputs())
            if (in.node == node) uses.emplace_back(&r, in.sign);
    }
    // A node without incoming reactions holds the constant 0; removing it
    // would silently flip any negated use to constant 1.
    if (incoming.empty()) return std::nullopt;
    if (incoming.size() != 1 && uses.size() != 1) return std::nullopt;

    std::vector<Reaction> repl;
    auto base_of = [&](const Reaction& use, Sign sign) {
        std::vector<ReactionInput> base;
        bool skipped = false;
        for (const auto& in : use.inputs()) {
            if (!skipped && in.node == node && in.sign == sign) {
                skipped = true;
                continue;
            }
            base.push_back(in);
        }
        return base;
    };
    auto extend = [](std::vector<ReactionInput> base,
                     std::initializer_list<ReactionInput> more) {
        base.insert(base.end(), more.begin(), more.end());
        return base;
    };

    if (incoming.size() == 1) {
        const auto& lits = incoming[0]->inputs();
        for (const auto& [use, sign] : uses) {
            auto base = base_of(*use, sign);
            if (sign == Sign::activate) {
                auto merged = base;
                merged.insert(merged.end(), lits.begin(), lits.end());
                if (combine(std::move(merged), use->output(), repl) == Combine::self_loop)
                    return std::nullopt;
            } else {
                // NOT over a conjunction splits into one reaction per literal.
                for (const auto& lit : lits)
                    if (combine(extend(base, {negated(lit)}), use->output(), repl) ==
                        Combine::self_loop)
                        return std::nullopt;
            }
        }
    } else {
        const auto& [use, sign] = uses[0];
        auto base = base_of(*use, sign);
        if (sign == Sign::activate) {
            for (const auto* rin : incoming) {
                auto merged = base;
                merged.insert(merged.end(), rin->inputs().begin(), rin->inputs().end());
                if (combine(std::move(merged), use->output(), repl) == Combine::self_loop)
                    return std::nullopt;
            }
        } else {
            // NOT over an OR of conjunctions: one replacement per choice of
            // a negated literal from every incoming reaction.
            std::size_t combos = 1;
            for (const auto* rin : incoming) {
                combos *= rin->inputs().size();
                if (combos > 64) return std::nullopt;
            }
            std::vector<std::size_t> pick(incoming.size(), 0);
            while (true) {
                auto merged = base;
                for (std::size_t i = 0; i < incoming.size(); ++i)
                    merged.push_back(negated(incoming[i]->inputs()[pick[i]]));
                if (combine(std::move(merged), use->output(), repl) == Combine::self_loop)
                    return std::nullopt;
                std::size_t i = 0;
                while (i < pick.size() && ++pick[i] == incoming[i]->inputs().size()) {
                    pick[i] = 0;
                    ++i;
                }
                if (i == pick.size()) break;
            }
        }
    }
    return repl;
}

}  // namespace

PknModel compress(const PknModel& m) {
    if (m.expanded())
        throw UsageError("compress must be applied before expand_and_gates");

    PknModel work = m;
    bool changed = true;
    while (changed) {
        changed = false;
        const bool acyclic = is_acyclic(work);
        const std::size_t k = work.stimuli().size() + work.inhibitors().size();
        const bool can_verify = k <= 12;
        const std::vector<std::string> candidates(work.nodes().begin(), work.nodes().end());
        for (const auto& node : candidates) {
            if (work.stimuli().count(node) || work.inhibitors().count(node) ||
                work.signals().count(node))
                continue;
            auto plan = plan_removal(work, node);
            if (!plan) continue;

            std::vector<Reaction> kept;
            for (const auto& r : work.reactions()) {
                if (r.output() == node) continue;
                bool touches = false;
                for (const auto& in : r.inputs())
                    if (in.node == node) touches = true;
                if (!touches) kept.push_back(r);
            }
            kept.insert(kept.end(), plan->begin(), plan->end());
            PknModel candidate = PknModel::from_reactions(std::move(kept));
            // Keep isolated nodes around; only the removed one goes.
            candidate.nodes_ = work.nodes_;
            candidate.nodes_.erase(node);
            candidate.stimuli_ = work.stimuli_;
            candidate.inhibitors_ = work.inhibitors_;
            candidate.signals_ = work.signals_;
            candidate.compressed_ = work.compressed_;

            // Inlining a definition is exact on acyclic models. On cyclic
            // models the removal changes propagation delays, which can move
            // a trajectory between a fixed point and an oscillation, so the
            // signal response is re-checked exhaustively when feasible.
            bool safe;
            if (work.signals().empty()) {
                safe = true;
            } else if (acyclic) {
                safe = true;
            } else if (can_verify) {
                safe = truth_table(work) == truth_table(candidate);
            } else {
                safe = false;
            }
            if (!safe) continue;

            work = std::move(candidate);
            changed = true;
            break;
        }
    }
    work.compressed_ = true;
    return work;
}

PknModel cut_nonc(const PknModel& m) {
    if (m.stimuli().empty() || m.signals().empty())
        throw UsageError("cut_nonc requires stimulus and signal annotations");

    std::map<std::string, std::vector<std::string>> succ, pred;
    for (const auto& r : m.reactions())
        for (const auto& in : r.inputs()) {
            succ[in.node].push_back(r.output());
            pred[r.output()].push_back(in.node);
        }
    auto reach = [&](const std::set<std::string>& seeds,
                     std::map<std::string, std::vector<std::string>>& adj) {
        std::set<std::string> seen(seeds);
        std::vector<std::string> queue(seeds.begin(), seeds.end());
        while (!queue.empty()) {
            std::string v = std::move(queue.back());
            queue.pop_back();
            for (const auto& w : adj[v])
                if (seen.insert(w).second) queue.push_back(w);
        }
        return seen;
    };
    const auto controllable = reach(m.stimuli(), succ);
    const auto observable = reach(m.signals(), pred);

    std::set<std::string> keep;
    for (const auto& v : m.nodes()) {
        const bool annotated =
            m.stimuli().count(v) || m.inhibitors().count(v) || m.signals().count(v);
        if (annotated || (controllable.count(v) && observable.count(v))) keep.insert(v);
    }

    PknModel out;
    out.nodes_ = keep;
    for (const auto& r : m.reactions()) {
        bool ok = keep.count(r.output()) > 0;
        for (const auto& in : r.inputs()) ok = ok && keep.count(in.node) > 0;
        if (ok) out.reactions_.push_back(r);
    }
    out.stimuli_ = m.stimuli();
    out.inhibitors_ = m.inhibitors();
    out.signals_ = m.signals();
    out.expanded_ = m.expanded();
    out.compressed_ = m.compressed();
    return out;
}

PknModel cut(const PknModel& m, const BitString& bits) {
    if (bits.size() != m.reactions().size())
        throw UsageError("bitstring length " + std::to_string(bits.size()) +
                         " does not match " + std::to_string(m.reactions().size()) +
                         " reactions");
    PknModel out = m;
    out.reactions_.clear();
    for (std::size_t i = 0; i < m.reactions().size(); ++i)
        if (bits.test(i)) out.reactions_.push_back(m.reactions()[i]);
    return out;
}

PknModel split_node(const PknModel& m, const std::string& node,
                    const std::vector<std::string>& variants) {
    if (!m.nodes().count(node)) throw UsageError("unknown node '" + node + "'");
    if (variants.empty()) throw UsageError("variants list is empty");
    std::set<std::string> fresh;
    for (const auto& v : variants) {
        if (!is_valid_node_id(v)) throw UsageError("invalid variant name '" + v + "'");
        if (m.nodes().count(v) || !fresh.insert(v).second)
            throw UsageError("variant name collision: '" + v + "'");
    }

    PknModel out;
    for (const auto& r : m.reactions()) {
        bool referenced = r.output() == node;
        for (const auto& in : r.inputs()) referenced = referenced || in.node == node;
        if (!referenced) {
            out.insert(r);
            continue;
        }
        for (const auto& v : variants) {
            std::vector<ReactionInput> inputs = r.inputs();
            std::string output = r.output();
            if (output == node) output = v;
            for (auto& in : inputs)
                if (in.node == node) in.node = v;
            out.insert(Reaction::make(std::move(inputs), std::move(output)));
        }
    }
    out.canonicalize();
    out.nodes_ = m.nodes();
    out.nodes_.erase(node);
    for (const auto& v : variants) out.nodes_.insert(v);

    auto transfer = [&](const std::set<std::string>& src) {
        std::set<std::string> dst = src;
        if (dst.erase(node))
            for (const auto& v : variants) dst.insert(v);
        return dst;
    };
    out.stimuli_ = transfer(m.stimuli());
    out.inhibitors_ = transfer(m.inhibitors());
    out.signals_ = transfer(m.signals());
    out.expanded_ = m.expanded();
    out.compressed_ = m.compressed();
    return out;
}

PknModel merge_nodes(const PknModel& m, const std::vector<std::string>& nodes,
                     const std::string& into) {
    if (nodes.empty()) throw UsageError("node list is empty");
    if (!is_valid_node_id(into)) throw UsageError("invalid node name '" + into + "'");
    std::set<std::string> merged;
    for (const auto& n : nodes) {
        if (!m.nodes().count(n)) throw UsageError("unknown node '" + n + "'");
        merged.insert(n);
    }
    merged.erase(into);
    auto mapped = [&](const std::string& x) { return merged.count(x) ? into : x; };

    PknModel out;
    for (const auto& r : m.reactions()) {
        std::vector<ReactionInput> inputs;
        for (const auto& in : r.inputs()) inputs.push_back({mapped(in.node), in.sign});
        const std::string output = mapped(r.output());
        std::sort(inputs.begin(), inputs.end());
        inputs.erase(std::unique(inputs.begin(), inputs.end()), inputs.end());
        bool drop = false;
        for (std::size_t i = 1; i < inputs.size(); ++i)
            if (inputs[i].node == inputs[i - 1].node) drop = true;  // contradiction
        for (const auto& in : inputs)
            if (in.node == output) drop = true;  // self-loop
        if (!drop) out.insert(Reaction::make(std::move(inputs), output));
    }
    out.canonicalize();
    out.nodes_ = m.nodes();
    for (const auto& n : merged) out.nodes_.erase(n);
    out.nodes_.insert(into);

    auto transfer = [&](const std::set<std::string>& src) {
        std::set<std::string> dst;
        bool hit = false;
        for (const auto& n : src) {
            if (merged.count(n))
                hit = true;
            else
                dst.insert(n);
        }
        if (hit || src.count(into)) dst.insert(into);
        return dst;
    };
    out.stimuli_ = transfer(m.stimuli());
    out.inhibitors_ = transfer(m.inhibitors());
    out.signals_ = transfer(m.signals());
    out.expanded_ = m.expanded();
    out.compressed_ = m.compressed();
    return out;
}

}  // namespace siglogic
