#ifndef TIEMB_DOT_H_
#define TIEMB_DOT_H_

#include <iosfwd>
#include <optional>
#include <span>
#include <string>

#include "tiemb/kb_model.h"

namespace tiemb {

// Renders `axioms` as a Graphviz digraph with parent -> child arrows. With
// `roots`, only the subtrees below them are drawn; `max_depth` limits the
// number of edge levels below each root (or below every parentless class
// when no roots are given). Throws DataError for a root that does not occur
// in any axiom.
void WriteDot(const AxiomSet &axioms, std::span<const std::string> roots,
              std::optional<int> max_depth, std::ostream &out);

}  // namespace tiemb

#endif  // TIEMB_DOT_H_
