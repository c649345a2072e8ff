#pragma once

#include <compare>
#include <string>
#include <vector>

namespace siglogic {

enum class Sign : unsigned char { activate, inhibit };

/// One signed input of a logic hyperedge.
struct ReactionInput {
    std::string node;
    Sign sign = Sign::activate;

    auto operator<=>(const ReactionInput&) const = default;
};

/// A logic hyperedge: the conjunction of its (possibly negated) inputs
/// feeding exactly one output. A reaction with a single input is a plain
/// signed edge; two or more inputs form an AND gate. OR is never stored:
/// distinct reactions into the same output combine by OR implicitly.
///
/// Invariants enforced by make():
///   - at least one input, every identifier valid
///   - no duplicate (node, sign) input, no node appearing with both signs
///   - the output never appears among the inputs
///   - inputs kept sorted by (node, sign)
class Reaction {
public:
    enum class Kind { simple, and_gate };

    /// Validates and canonicalizes; throws UsageError on invariant violation.
    static Reaction make(std::vector<ReactionInput> inputs, std::string output);

    const std::vector<ReactionInput>& inputs() const noexcept { return inputs_; }
    const std::string& output() const noexcept { return output_; }
    Kind kind() const noexcept {
        return inputs_.size() > 1 ? Kind::and_gate : Kind::simple;
    }

    bool operator==(const Reaction&) const = default;

    /// Canonical total order: lexicographic on the formatted text.
    std::strong_ordering operator<=>(const Reaction& other) const;

private:
    Reaction() = default;

    std::vector<ReactionInput> inputs_;
    std::string output_;
};

/// True when `name` can be used as a species identifier: non-empty, free of
/// whitespace and of the reserved grammar characters `! ^ + =`, and not one
/// of the literal relation tokens `1` / `-1`.
bool is_valid_node_id(const std::string& name);

/// Parses one reaction expression. "A=B" is an activation, "!A=B" an
/// inhibition, "A^B=C" an AND gate (each operand may carry `!`), and
/// "A+B=C" is shorthand for the two independent reactions A=C and B=C.
/// `+` and `^` may not be mixed in one expression. The returned list is
/// deduplicated and in canonical order. Throws ParseError with the byte
/// offset of the offending character.
std::vector<Reaction> parse_reaction(const std::string& text);

/// Canonical text of a reaction; parse_reaction(format_reaction(r)) == {r}.
std::string format_reaction(const Reaction& r);

}  // namespace siglogic
