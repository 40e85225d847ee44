#pragma once

#include <optional>
#include <string>

#include "noneq/linalg.hpp"

namespace noneq {

// Parsed chain input. `q_exact` is populated when exact parsing is
// requested: integer and string entries are read exactly, float literals by
// their shortest round-trip decimal.
struct ChainDocument {
    int n = 0;
    MatD q;
    std::optional<MatR> q_exact;
    std::string name;
    std::string description;
};

ChainDocument parse_chain_json(const std::string& text, bool exact = false);
ChainDocument parse_chain_csv(const std::string& text, bool exact = false);

// Reads from `path`, or from stdin when path is "-".
ChainDocument load_chain_document(const std::string& path, bool csv, bool exact);

// Deterministic serialization: same document, same bytes.
std::string write_chain_json(const ChainDocument& doc);

}  // namespace noneq
