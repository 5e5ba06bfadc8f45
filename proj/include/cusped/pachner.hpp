#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "cusped/triangulation.hpp"

namespace cusped {

enum class MoveKind { TwoThree, ThreeTwo, OneFour, FourOne };

const char* move_kind_name(MoveKind k);  // "2-3", "3-2", "1-4", "4-1"
MoveKind move_kind_from_name(const std::string& name);

// Location fields by kind:
//   TwoThree: (tet, face)          — either side of the face works
//   ThreeTwo: (tet, a, b)          — any incidence of the edge class, a < b
//   OneFour:  (tet)
//   FourOne:  (tet, vertex)        — any incidence of the vertex class
struct Move {
    MoveKind kind = MoveKind::TwoThree;
    int tet = 0;
    int face = 0;
    int a = 0, b = 0;
    int vertex = 0;

    static Move two_three(int tet, int face) { return {MoveKind::TwoThree, tet, face, 0, 0, 0}; }
    static Move three_two(int tet, int a, int b) {
        return {MoveKind::ThreeTwo, tet, 0, a, b, 0};
    }
    static Move one_four(int tet) { return {MoveKind::OneFour, tet, 0, 0, 0, 0}; }
    static Move four_one(int tet, int vertex) {
        return {MoveKind::FourOne, tet, 0, 0, 0, vertex};
    }
    friend bool operator==(const Move&, const Move&) = default;
};

struct MoveResult {
    Triangulation tri;
    Move inverse;                    // undoes this move on `tri`
    std::vector<int> survivor_map;   // old tet index -> new index, -1 if removed
    std::vector<int> new_tets;       // indices of created tets in `tri`
};

std::vector<Move> applicable_moves(const Triangulation& tri);

// Empty string when applicable, otherwise the reason it is not.
std::string why_inapplicable(const Triangulation& tri, const Move& move);

MoveResult apply_move(const Triangulation& tri, const Move& move);

Move invert_move(const Triangulation& before, const Move& move);

struct MoveSequence {
    std::vector<Move> moves;
    std::string start_signature;
    std::string end_signature;
};

std::string move_sequence_to_json(const MoveSequence& seq);
MoveSequence move_sequence_from_json(const std::string& json_text);

// Replays the sequence; checks the start/end signatures when present.
Triangulation replay(const Triangulation& start, const MoveSequence& seq);

struct ShellingCheck {
    bool ok = false;
    int fail_index = -1;  // first position in the ordering whose prefix
                          // intersection is not a 2-disk; -1 when ok
    std::string reason;
};

ShellingCheck verify_shelling(const Triangulation& ball, const std::vector<int>& ordering);

struct StarResult {
    MoveSequence sequence;
    Triangulation complex;  // the cone over the ball's boundary
};

// Converts a shellable ball to the cone over its boundary, one Pachner move
// per tetrahedron of the ball.  Throws when the ordering is not a shelling.
StarResult star_shellable_ball(const Triangulation& ball, const std::vector<int>& ordering);

// Independent construction of the cone over a bounded complex's boundary
// surface (one tetrahedron per boundary face).
Triangulation cone_over_boundary(const Triangulation& ball);

struct SimplexCounts {
    std::uint64_t s0 = 0, s1 = 0, s2 = 0, s3 = 0;
    friend bool operator==(const SimplexCounts&, const SimplexCounts&) = default;
};

// Counts after the partial derived subdivision of level r: dimensions <= r
// are untouched, an i-simplex above splits into (i+1)·(i)·…·(r+2) pieces
// (the cone-over-subdivided-boundary recursion; r=0 gives (i+1)!).
SimplexCounts derived_counts(const SimplexCounts& counts, int level);

}  // namespace cusped
