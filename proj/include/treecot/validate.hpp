#pragma once

#include <string>
#include <vector>

#include "treecot/types.hpp"

namespace treecot {

// Structural invariants; each violation is one human-readable line naming
// the offending node/entry. Empty result == well-formed.
std::vector<std::string> validate_tree(const SearchTree& tree);

// Requires sequence.problem_id == tree.problem_id (InputError otherwise).
std::vector<std::string> validate_sequence(const LinearSequence& sequence,
                                           const SearchTree& tree);

}  // namespace treecot
