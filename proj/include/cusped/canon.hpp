#pragma once

#include <optional>
#include <string>
#include <vector>

#include "cusped/triangulation.hpp"

namespace cusped {

// Canonical relabeling: new_index[t] is the canonical position of old tet t,
// vertex_map[t] sends old vertex labels of tet t to canonical labels.
struct CanonicalForm {
    std::vector<int> encoding;
    std::vector<int> new_index;
    std::vector<Perm4> vertex_map;
};

// Minimal BFS labeling over all (start tet, start labeling) pairs.  Equal
// encodings exactly characterize combinatorial isomorphism; vertex kinds are
// part of the encoding.  Throws on disconnected input.
CanonicalForm canonical_form(const Triangulation& tri);

// The canonical encoding rendered as a printable string.
std::string canonical_signature(const Triangulation& tri);

struct Isomorphism {
    std::vector<int> tet_map;        // tet t of A -> tet_map[t] of B
    std::vector<Perm4> vertex_maps;  // vertex labels of A's tet t -> B's
};

// Returns the witness mapping when the two triangulations are isomorphic.
std::optional<Isomorphism> is_isomorphic(const Triangulation& a, const Triangulation& b);

}  // namespace cusped
