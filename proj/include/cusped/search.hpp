#pragma once

#include <map>
#include <string>
#include <vector>

#include "cusped/pachner.hpp"

namespace cusped {

struct SearchBudget {
    int max_moves = 8;         // combined path length cap
    int max_tetrahedra = 0;    // 0: derived from the inputs (max size + 4)
    int max_states = 100000;   // total stored states across both frontiers
};

struct Neighbor {
    Move move;
    Triangulation tri;
    std::string signature;
};

// All states one move away, respecting the tetrahedron cap; deterministic
// order (the applicable_moves enumeration order).
std::vector<Neighbor> neighbors(const Triangulation& tri, int max_tetrahedra);

enum class SearchStatus { Found, NotFoundWithinBudget, StateCapHit };

const char* search_status_name(SearchStatus s);

struct ConnectResult {
    SearchStatus status = SearchStatus::NotFoundWithinBudget;
    MoveSequence sequence;  // meaningful only when status == Found
    int states_explored = 0;
};

// Bidirectional breadth-first search in the Pachner move graph between the
// isomorphism classes of a and b.  A returned sequence replays from a (as
// labeled) to a triangulation isomorphic to b, and is verified before return.
ConnectResult connect(const Triangulation& a, const Triangulation& b, const SearchBudget& budget);

struct SphereResult {
    std::vector<int> layer_counts;  // distinct signatures at each distance
    bool state_cap_hit = false;
};

SphereResult sphere(const Triangulation& tri, int radius, const SearchBudget& budget);

}  // namespace cusped
