#pragma once

#include <set>
#include <string>
#include <vector>

#include "siglogic/bitstring.hpp"
#include "siglogic/midas.hpp"
#include "siglogic/reaction.hpp"
#include "siglogic/sif.hpp"

namespace siglogic {

/// Annotated logic hypergraph: a duplicate-free reaction list in canonical
/// order (the index in this list is the bitstring position) plus the
/// stimulus / inhibitor / signal node sets. Values are immutable; every
/// transformation below returns a new model.
class PknModel {
public:
    PknModel() = default;

    static PknModel from_sif(const SifDocument& doc);
    static PknModel from_reactions(std::vector<Reaction> reactions);

    const std::set<std::string>& nodes() const noexcept { return nodes_; }
    const std::vector<Reaction>& reactions() const noexcept { return reactions_; }
    const std::set<std::string>& stimuli() const noexcept { return stimuli_; }
    const std::set<std::string>& inhibitors() const noexcept { return inhibitors_; }
    const std::set<std::string>& signals() const noexcept { return signals_; }
    bool expanded() const noexcept { return expanded_; }
    bool compressed() const noexcept { return compressed_; }

    SifDocument to_sif(std::string source_name = "") const;

    bool operator==(const PknModel&) const = default;

private:
    friend PknModel add_reaction(const PknModel&, const std::string&);
    friend PknModel annotate(const PknModel&, const std::set<std::string>&,
                             const std::set<std::string>&, const std::set<std::string>&);
    friend PknModel expand_and_gates(const PknModel&, int);
    friend PknModel compress(const PknModel&);
    friend PknModel cut_nonc(const PknModel&);
    friend PknModel cut(const PknModel&, const BitString&);
    friend PknModel split_node(const PknModel&, const std::string&,
                               const std::vector<std::string>&);
    friend PknModel merge_nodes(const PknModel&, const std::vector<std::string>&,
                                const std::string&);

    void insert(const Reaction& r);
    void canonicalize();

    std::set<std::string> nodes_;
    std::vector<Reaction> reactions_;
    std::set<std::string> stimuli_, inhibitors_, signals_;
    bool expanded_ = false;
    bool compressed_ = false;
};

/// Parses `text` and inserts the resulting reactions; new nodes are created
/// on the fly, duplicates are ignored.
PknModel add_reaction(const PknModel& m, const std::string& text);

/// Replaces the annotation sets. Unknown node names raise UsageError
/// listing every offender.
PknModel annotate(const PknModel& m, const std::set<std::string>& stimuli,
                  const std::set<std::string>& inhibitors,
                  const std::set<std::string>& signals);

/// Annotates from a dataset's stimulus / inhibitor / signal name lists.
PknModel annotate_from(const PknModel& m, const XMidas& data);

/// Adds one AND gate per subset (size 2..max_inputs) of the simple
/// reactions feeding each node with at least two of them. Gates whose
/// inputs would contain a species with both signs are skipped. Existing
/// gates are untouched; the operation is idempotent and only adds
/// reactions.
PknModel expand_and_gates(const PknModel& m, int max_inputs = 2);

/// Removes pass-through nodes that are not annotated and have a single
/// incoming or a single outgoing reaction, rewiring predecessors to
/// successors with composed signs. Rewiring that would create a self-loop
/// keeps the node. A removal is only performed when the steady-state
/// response of every signal is provably unchanged: always true on acyclic
/// models; on cyclic models it is checked by exhaustive condition
/// enumeration while the condition space is small, otherwise the node is
/// kept. Must be called before expand_and_gates.
PknModel compress(const PknModel& m);

/// Drops nodes with no directed path from any stimulus or no directed path
/// to any signal, together with their reactions. Annotated nodes are never
/// dropped. Requires non-empty stimulus and signal sets.
PknModel cut_nonc(const PknModel& m);

/// Submodel keeping reaction i iff bits[i] is set; nodes and annotations
/// are retained.
PknModel cut(const PknModel& m, const BitString& bits);

/// Replaces `node` by the given fresh variants, duplicating its incoming
/// and outgoing reactions (AND gates included) once per variant.
/// Annotation membership transfers to all variants.
PknModel split_node(const PknModel& m, const std::string& node,
                    const std::vector<std::string>& variants);

/// Replaces all listed nodes by `into`. Duplicate reactions collapse,
/// reactions that become self-loops or contradictions disappear, and
/// annotation membership is the union over the merged nodes.
PknModel merge_nodes(const PknModel& m, const std::vector<std::string>& nodes,
                     const std::string& into);

/// Deterministic DOT rendering: stimuli green, signals blue, inhibited
/// nodes with a red border, inhibition edges red with a tee arrowhead, AND
/// gates drawn as small filled circles.
std::string to_dot(const PknModel& m);

/// Minimal SBML-qual document: one qualitative species per node (max level
/// 1) and one transition per output node whose function term ORs, over the
/// incoming reactions, the AND of their possibly negated inputs.
std::string to_sbmlqual(const PknModel& m);

}  // namespace siglogic
