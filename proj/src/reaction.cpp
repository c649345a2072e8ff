#include "siglogic/reaction.hpp"

#include <algorithm>
#include <cctype>
#include <set>

#include "siglogic/errors.hpp"

namespace siglogic {

namespace {

bool is_space(char c) {
    return std::isspace(static_cast<unsigned char>(c)) != 0;
}

bool is_reserved(char c) {
    return c == '!' || c == '^' || c == '+' || c == '=';
}

// Returns [first, last) of the non-space payload inside [begin, end).
std::pair<std::size_t, std::size_t> trim_span(const std::string& s,
                                              std::size_t begin, std::size_t end) {
    while (begin < end && is_space(s[begin])) ++begin;
    while (end > begin && is_space(s[end - 1])) --end;
    return {begin, end};
}

void check_node_id(const std::string& name, std::size_t offset) {
    if (name.empty()) throw ParseError("empty species name", offset);
    if (name == "1" || name == "-1")
        throw ParseError("'" + name + "' is a relation token, not a species name", offset);
    for (std::size_t i = 0; i < name.size(); ++i) {
        char c = name[i];
        if (is_reserved(c) || is_space(c))
            throw ParseError("illegal character '" + std::string(1, c) + "' in species name",
                             offset + i);
    }
}

}  // namespace

bool is_valid_node_id(const std::string& name) {
    if (name.empty() || name == "1" || name == "-1") return false;
    return std::none_of(name.begin(), name.end(),
                        [](char c) { return is_reserved(c) || is_space(c); });
}

Reaction Reaction::make(std::vector<ReactionInput> inputs, std::string output) {
    if (inputs.empty()) throw UsageError("reaction needs at least one input");
    if (!is_valid_node_id(output))
        throw UsageError("invalid output species name '" + output + "'");
    for (const auto& in : inputs) {
        if (!is_valid_node_id(in.node))
            throw UsageError("invalid input species name '" + in.node + "'");
        if (in.node == output)
            throw UsageError("output '" + output + "' may not appear among the inputs");
    }
    std::sort(inputs.begin(), inputs.end());
    for (std::size_t i = 1; i < inputs.size(); ++i) {
        if (inputs[i].node == inputs[i - 1].node) {
            if (inputs[i].sign == inputs[i - 1].sign)
                throw UsageError("duplicate input '" + inputs[i].node + "'");
            throw UsageError("input '" + inputs[i].node +
                             "' appears both activating and inhibiting");
        }
    }
    Reaction r;
    r.inputs_ = std::move(inputs);
    r.output_ = std::move(output);
    return r;
}

std::strong_ordering Reaction::operator<=>(const Reaction& other) const {
    int c = format_reaction(*this).compare(format_reaction(other));
    if (c < 0) return std::strong_ordering::less;
    if (c > 0) return std::strong_ordering::greater;
    return std::strong_ordering::equal;
}

std::string format_reaction(const Reaction& r) {
    std::string out;
    bool first = true;
    for (const auto& in : r.inputs()) {
        if (!first) out += '^';
        first = false;
        if (in.sign == Sign::inhibit) out += '!';
        out += in.node;
    }
    out += '=';
    out += r.output();
    return out;
}

std::vector<Reaction> parse_reaction(const std::string& text) {
    const std::size_t eq = text.find('=');
    if (eq == std::string::npos) throw ParseError("missing '='", text.size());

    auto [ob, oe] = trim_span(text, eq + 1, text.size());
    const std::string output = text.substr(ob, oe - ob);
    check_node_id(output, ob);

    // Split the left side on '+' or '^'; mixing the two is ambiguous.
    const std::size_t plus = text.find('+');
    const std::size_t caret = text.find('^');
    if (plus != std::string::npos && plus < eq && caret != std::string::npos && caret < eq)
        throw ParseError("'+' and '^' may not be mixed in one expression",
                         std::max(plus, caret));
    const char op = (caret != std::string::npos && caret < eq) ? '^'
                    : (plus != std::string::npos && plus < eq) ? '+'
                                                               : '\0';

    struct Operand {
        std::string node;
        Sign sign;
        std::size_t offset;
    };
    std::vector<Operand> operands;
    std::size_t start = 0;
    while (start <= eq) {
        std::size_t stop = eq;
        if (op != '\0') {
            std::size_t next = text.find(op, start);
            if (next != std::string::npos && next < eq) stop = next;
        }
        auto [b, e] = trim_span(text, start, stop);
        Sign sign = Sign::activate;
        if (b < e && text[b] == '!') {
            sign = Sign::inhibit;
            std::tie(b, e) = trim_span(text, b + 1, e);
        }
        const std::string name = text.substr(b, e - b);
        check_node_id(name, b);
        operands.push_back({name, sign, b});
        if (stop == eq) break;
        start = stop + 1;
    }

    std::vector<Reaction> result;
    auto guarded_make = [&](std::vector<ReactionInput> ins, std::size_t offset) {
        try {
            return Reaction::make(std::move(ins), output);
        } catch (const UsageError& e) {
            throw ParseError(e.what(), offset);
        }
    };
    if (op == '^') {
        std::vector<ReactionInput> ins;
        ins.reserve(operands.size());
        for (const auto& o : operands) ins.push_back({o.node, o.sign});
        result.push_back(guarded_make(std::move(ins), operands.front().offset));
    } else {
        for (const auto& o : operands)
            result.push_back(guarded_make({{o.node, o.sign}}, o.offset));
    }

    std::sort(result.begin(), result.end());
    result.erase(std::unique(result.begin(), result.end()), result.end());
    return result;
}

}  // namespace siglogic
