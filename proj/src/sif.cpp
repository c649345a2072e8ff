#include "siglogic/sif.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <istream>
#include <map>
#include <sstream>

#include "siglogic/errors.hpp"

namespace siglogic {

namespace {

bool is_and_node(const std::string& name) {
    if (name.size() < 4 || name.compare(0, 3, "and") != 0) return false;
    return std::all_of(name.begin() + 3, name.end(),
                       [](char c) { return std::isdigit(static_cast<unsigned char>(c)); });
}

std::vector<std::string> split_fields(const std::string& line) {
    std::vector<std::string> fields;
    std::string cur;
    for (char c : line) {
        if (c == ' ' || c == '\t' || c == '\r') {
            if (!cur.empty()) fields.push_back(std::move(cur)), cur.clear();
        } else {
            cur += c;
        }
    }
    if (!cur.empty()) fields.push_back(std::move(cur));
    return fields;
}

struct Edge {
    std::string source;
    std::string target;
    Sign sign;
    std::size_t line;
};

}  // namespace

SifDocument read_sif(std::istream& stream, std::string source_name) {
    std::vector<Edge> edges;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(stream, line)) {
        ++lineno;
        auto fields = split_fields(line);
        if (fields.empty() || fields[0][0] == '#') continue;
        if (fields.size() < 3)
            throw FormatError("expected at least 3 fields", lineno);
        Sign sign;
        if (fields[1] == "1")
            sign = Sign::activate;
        else if (fields[1] == "-1")
            sign = Sign::inhibit;
        else
            throw FormatError("relation must be 1 or -1, got '" + fields[1] + "'", lineno);
        if (!is_valid_node_id(fields[0]))
            throw FormatError("invalid species name '" + fields[0] + "'", lineno);
        for (std::size_t i = 2; i < fields.size(); ++i) {
            if (!is_valid_node_id(fields[i]))
                throw FormatError("invalid species name '" + fields[i] + "'", lineno);
            edges.push_back({fields[0], fields[i], sign, lineno});
        }
    }

    // Fold and<k> nodes back into AND reactions.
    std::map<std::string, std::vector<const Edge*>> and_in, and_out;
    std::vector<const Edge*> plain;
    for (const auto& e : edges) {
        const bool src_and = is_and_node(e.source);
        const bool tgt_and = is_and_node(e.target);
        if (tgt_and) and_in[e.target].push_back(&e);
        if (src_and) and_out[e.source].push_back(&e);
        if (!src_and && !tgt_and) plain.push_back(&e);
        // A node seen on only one side still needs both entries.
        if (src_and) and_in.try_emplace(e.source);
        if (tgt_and) and_out.try_emplace(e.target);
    }

    std::vector<Reaction> reactions;
    for (const auto& e : plain) {
        try {
            reactions.push_back(Reaction::make({{e->source, e->sign}}, e->target));
        } catch (const UsageError& ex) {
            throw FormatError(ex.what(), e->line);
        }
    }
    for (const auto& [name, ins] : and_in) {
        const auto& outs = and_out[name];
        if (outs.size() != 1)
            throw FormatError("and-node '" + name + "' must have exactly 1 outgoing edge, has " +
                              std::to_string(outs.size()));
        if (ins.size() < 2)
            throw FormatError("and-node '" + name + "' must have at least 2 incoming edges, has " +
                              std::to_string(ins.size()));
        if (outs[0]->sign != Sign::activate)
            throw FormatError("and-node '" + name + "' outgoing edge must be an activation",
                              outs[0]->line);
        std::vector<ReactionInput> inputs;
        for (const auto* e : ins) {
            if (is_and_node(e->source))
                throw FormatError("and-node '" + e->source + "' may not feed another and-node",
                                  e->line);
            inputs.push_back({e->source, e->sign});
        }
        try {
            reactions.push_back(Reaction::make(std::move(inputs), outs[0]->target));
        } catch (const UsageError& ex) {
            throw FormatError("and-node '" + name + "': " + ex.what());
        }
    }

    std::sort(reactions.begin(), reactions.end());
    reactions.erase(std::unique(reactions.begin(), reactions.end()), reactions.end());
    return SifDocument{std::move(reactions), std::move(source_name)};
}

SifDocument read_sif_string(const std::string& content, std::string source_name) {
    std::istringstream in(content);
    return read_sif(in, std::move(source_name));
}

SifDocument read_sif_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw FormatError("cannot open '" + path + "'");
    return read_sif(in, path);
}

std::string write_sif(const SifDocument& doc) {
    std::vector<Reaction> reactions = doc.reactions;
    std::sort(reactions.begin(), reactions.end());
    reactions.erase(std::unique(reactions.begin(), reactions.end()), reactions.end());

    std::string out;
    auto rel = [](Sign s) { return s == Sign::activate ? "1" : "-1"; };
    for (std::size_t i = 0; i < reactions.size(); ++i) {
        const Reaction& r = reactions[i];
        if (r.kind() == Reaction::Kind::simple) {
            out += r.inputs()[0].node;
            out += '\t';
            out += rel(r.inputs()[0].sign);
            out += '\t';
            out += r.output();
            out += '\n';
        } else {
            const std::string gate = "and" + std::to_string(i + 1);
            for (const auto& in : r.inputs()) {
                out += in.node;
                out += '\t';
                out += rel(in.sign);
                out += '\t';
                out += gate;
                out += '\n';
            }
            out += gate;
            out += "\t1\t";
            out += r.output();
            out += '\n';
        }
    }
    return out;
}

}  // namespace siglogic
