#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "siglogic/reaction.hpp"

namespace siglogic {

/// A parsed Simple Interaction Format file: duplicate-free reactions in
/// canonical order, plus the name the content came from.
struct SifDocument {
    std::vector<Reaction> reactions;
    std::string source_name;
};

/// Reads SIF content. Each non-empty, non-comment line is
/// `source <rel> target [target...]` with rel 1 (activation) or -1
/// (inhibition), separated by any run of spaces or tabs. Synthetic nodes
/// named `and<k>` are folded back into AND reactions: their incoming edges
/// become the gate inputs and the single outgoing edge names the output.
/// Throws FormatError on bad relation fields or broken and-node structure.
SifDocument read_sif(std::istream& stream, std::string source_name = "");
SifDocument read_sif_string(const std::string& content, std::string source_name = "");
SifDocument read_sif_file(const std::string& path);

/// Canonical, tab-separated text. Simple reactions emit one line; an AND
/// reaction at (1-based) canonical position k emits one line per input into
/// the synthetic node `and<k>` plus the line `and<k> 1 output`.
std::string write_sif(const SifDocument& doc);

}  // namespace siglogic
