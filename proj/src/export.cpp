#include <algorithm>
#include <map>
#include <string>
#include <vector>

#include "siglogic/model.hpp"

namespace siglogic {

namespace {

std::string dot_quote(const std::string& s) {
    std::string out = "\"";
    for (char c : s) {
        if (c == '"' || c == '\\') out += '\\';
        out += c;
    }
    out += '"';
    return out;
}

std::string xml_escape(const std::string& s) {
    std::string out;
    for (char c : s) {
        switch (c) {
            case '&': out += "&amp;"; break;
            case '<': out += "&lt;"; break;
            case '>': out += "&gt;"; break;
            case '"': out += "&quot;"; break;
            case '\'': out += "&apos;"; break;
            default: out += c;
        }
    }
    return out;
}

}  // namespace

std::string to_dot(const PknModel& m) {
    std::string out = "digraph model {\n";
    out += "  rankdir=LR;\n";
    out += "  node [fontname=\"Helvetica\", style=filled, fillcolor=white];\n";
    for (const auto& node : m.nodes()) {
        std::vector<std::string> attrs;
        if (m.stimuli().count(node))
            attrs.push_back("fillcolor=\"#a6d96a\"");
        else if (m.signals().count(node))
            attrs.push_back("fillcolor=\"#74add1\"");
        if (m.inhibitors().count(node)) {
            attrs.push_back("color=\"#d73027\"");
            attrs.push_back("penwidth=2");
        }
        out += "  " + dot_quote(node);
        if (!attrs.empty()) {
            out += " [";
            for (std::size_t i = 0; i < attrs.size(); ++i)
                out += (i ? ", " : "") + attrs[i];
            out += "]";
        }
        out += ";\n";
    }
    const std::string inhibit_attrs = " [color=\"#d73027\", arrowhead=tee]";
    for (std::size_t i = 0; i < m.reactions().size(); ++i) {
        const Reaction& r = m.reactions()[i];
        if (r.kind() == Reaction::Kind::simple) {
            out += "  " + dot_quote(r.inputs()[0].node) + " -> " + dot_quote(r.output());
            if (r.inputs()[0].sign == Sign::inhibit) out += inhibit_attrs;
            out += ";\n";
        } else {
            const std::string gate = "and" + std::to_string(i + 1);
            out += "  " + dot_quote(gate) +
                   " [shape=circle, label=\"\", width=0.15, fillcolor=black];\n";
            for (const auto& in : r.inputs()) {
                out += "  " + dot_quote(in.node) + " -> " + dot_quote(gate);
                if (in.sign == Sign::inhibit) out += inhibit_attrs;
                out += ";\n";
            }
            out += "  " + dot_quote(gate) + " -> " + dot_quote(r.output()) + ";\n";
        }
    }
    out += "}\n";
    return out;
}

std::string to_sbmlqual(const PknModel& m) {
    std::string out;
    out += "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
    out += "<sbml xmlns=\"http://www.sbml.org/sbml/level3/version1/core\""
           " xmlns:qual=\"http://www.sbml.org/sbml/level3/version1/qual/version1\""
           " level=\"3\" version=\"1\" qual:required=\"true\">\n";
    out += "  <model id=\"logic_model\">\n";
    out += "    <listOfCompartments>\n";
    out += "      <compartment id=\"main\" constant=\"true\"/>\n";
    out += "    </listOfCompartments>\n";

    out += "    <qual:listOfQualitativeSpecies>\n";
    for (const auto& node : m.nodes())
        out += "      <qual:qualitativeSpecies qual:id=\"" + xml_escape(node) +
               "\" qual:compartment=\"main\" qual:constant=\"false\""
               " qual:maxLevel=\"1\"/>\n";
    out += "    </qual:listOfQualitativeSpecies>\n";

    // Group reactions by output; std::map keeps the node order sorted.
    std::map<std::string, std::vector<const Reaction*>> by_output;
    for (const auto& r : m.reactions()) by_output[r.output()].push_back(&r);

    auto literal = [](const ReactionInput& in) {
        const char* level = in.sign == Sign::activate ? "1" : "0";
        return "<apply><eq/><ci>" + xml_escape(in.node) + "</ci><cn type=\"integer\">" +
               level + "</cn></apply>";
    };
    auto conjunction = [&](const Reaction& r) {
        if (r.inputs().size() == 1) return literal(r.inputs()[0]);
        std::string s = "<apply><and/>";
        for (const auto& in : r.inputs()) s += literal(in);
        s += "</apply>";
        return s;
    };

    out += "    <qual:listOfTransitions>\n";
    for (const auto& [output, reactions] : by_output) {
        out += "      <qual:transition qual:id=\"tr_" + xml_escape(output) + "\">\n";
        out += "        <qual:listOfInputs>\n";
        std::map<std::string, std::pair<bool, bool>> input_signs;  // pos, neg
        for (const auto* r : reactions)
            for (const auto& in : r->inputs()) {
                auto& signs = input_signs[in.node];
                (in.sign == Sign::activate ? signs.first : signs.second) = true;
            }
        for (const auto& [name, signs] : input_signs) {
            const char* sign = signs.first && signs.second ? "dual"
                               : signs.first               ? "positive"
                                                           : "negative";
            out += "          <qual:input qual:id=\"in_" + xml_escape(output) + "_" +
                   xml_escape(name) + "\" qual:qualitativeSpecies=\"" + xml_escape(name) +
                   "\" qual:transitionEffect=\"none\" qual:sign=\"" + sign + "\"/>\n";
        }
        out += "        </qual:listOfInputs>\n";
        out += "        <qual:listOfOutputs>\n";
        out += "          <qual:output qual:qualitativeSpecies=\"" + xml_escape(output) +
               "\" qual:transitionEffect=\"assignmentLevel\"/>\n";
        out += "        </qual:listOfOutputs>\n";
        out += "        <qual:listOfFunctionTerms>\n";
        out += "          <qual:defaultTerm qual:resultLevel=\"0\"/>\n";
        out += "          <qual:functionTerm qual:resultLevel=\"1\">\n";
        out += "            <math xmlns=\"http://www.w3.org/1998/Math/MathML\">\n";
        std::string term;
        if (reactions.size() == 1) {
            term = conjunction(*reactions[0]);
        } else {
            term = "<apply><or/>";
            for (const auto* r : reactions) term += conjunction(*r);
            term += "</apply>";
        }
        out += "              " + term + "\n";
        out += "            </math>\n";
        out += "          </qual:functionTerm>\n";
        out += "        </qual:listOfFunctionTerms>\n";
        out += "      </qual:transition>\n";
    }
    out += "    </qual:listOfTransitions>\n";
    out += "  </model>\n";
    out += "</sbml>\n";
    return out;
}

}  // namespace siglogic
