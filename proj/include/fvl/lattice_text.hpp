#pragma once

#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "fvl/algebra.hpp"

namespace fvl {

// Line-oriented lattice format. `#` starts a comment line.
//
//   elements 0 a 1
//   order 0<a a<1            (or: meet / join, each followed by |L| rows)
//   connective -> -+
//   1 1 1
//   0 1 1
//   0 a 1
//   constant 0 = 0
LatticeDescription parse_lattice_text(std::string_view text);
std::string render_lattice_text(const LatticeDescription& description);

Lattice load_lattice_file(const std::string& path);

// Frame files: `worlds a b g` followed by `order a<b a<g`.
KripkeFrame parse_frame_text(std::string_view text);
KripkeFrame load_frame_file(const std::string& path);

// Bundled lattices by name (classical, classical0, classical1, classical01,
// goedel3, goedel3_box, luk3, three_a, three_a_abar, mc, diamond).
std::vector<std::string> bundled_lattice_names();
const std::string* bundled_lattice_text(std::string_view name);
Lattice bundled_lattice(std::string_view name);

// A path if it exists on disk, otherwise a bundled name.
Lattice resolve_lattice(const std::string& path_or_name);

}  // namespace fvl
