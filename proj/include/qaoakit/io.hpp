#pragma once

#include <string>

#include "qaoakit/problems.hpp"

namespace qaoakit {

// JSON envelope {"problem": <kind>, "sense": "...", "data": {...}} or a
// DIMACS-style edge list (`p edge n m` / `e u v [w]`) for graph kinds.
// Throws std::invalid_argument with a position-bearing message on bad input.
ProblemInstance parse_instance_text(const std::string& text, const std::string& kind_override);
ProblemInstance load_instance(const std::string& path, const std::string& kind_override);

std::string instance_to_json(const ProblemInstance& inst);

}  // namespace qaoakit
