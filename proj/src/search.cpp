#include "cusped/search.hpp"

#include <algorithm>
#include <unordered_map>

#include "cusped/canon.hpp"

namespace cusped {

namespace {

int result_size(const Triangulation& tri, const Move& m) {
    switch (m.kind) {
        case MoveKind::TwoThree: return tri.size() + 1;
        case MoveKind::ThreeTwo: return tri.size() - 1;
        case MoveKind::OneFour: return tri.size() + 3;
        case MoveKind::FourOne: return tri.size() - 3;
    }
    return tri.size();
}

// Rewrites a move's location through an isomorphism witness (domain -> range).
Move transport_move(const Move& m, const Isomorphism& iso) {
    Move r = m;
    r.tet = iso.tet_map[m.tet];
    const Perm4& vm = iso.vertex_maps[m.tet];
    switch (m.kind) {
        case MoveKind::TwoThree: r.face = vm[m.face]; break;
        case MoveKind::ThreeTwo:
            r.a = vm[m.a];
            r.b = vm[m.b];
            if (r.a > r.b) std::swap(r.a, r.b);
            break;
        case MoveKind::OneFour: break;
        case MoveKind::FourOne: r.vertex = vm[m.vertex]; break;
    }
    return r;
}

struct State {
    Triangulation tri;
    std::string sig;
    int parent = -1;
    Move from_parent;  // applied to parent's tri yields this tri exactly
    Move to_parent;    // applied to this tri yields a tri isomorphic to parent
};

}  // namespace

const char* search_status_name(SearchStatus s) {
    switch (s) {
        case SearchStatus::Found: return "found";
        case SearchStatus::NotFoundWithinBudget: return "not-found-within-budget";
        case SearchStatus::StateCapHit: return "state-cap-hit";
    }
    return "?";
}

std::vector<Neighbor> neighbors(const Triangulation& tri, int max_tetrahedra) {
    std::vector<Neighbor> out;
    for (const Move& m : applicable_moves(tri)) {
        if (result_size(tri, m) > max_tetrahedra) continue;
        MoveResult res = apply_move(tri, m);
        std::string sig = canonical_signature(res.tri);
        out.push_back({m, std::move(res.tri), std::move(sig)});
    }
    return out;
}

ConnectResult connect(const Triangulation& a, const Triangulation& b, const SearchBudget& budget) {
    const int cap = budget.max_tetrahedra > 0 ? budget.max_tetrahedra
                                              : std::max(a.size(), b.size()) + 4;
    ConnectResult out;
    std::string sig_a = canonical_signature(a);
    std::string sig_b = canonical_signature(b);

    // Two search trees; side 0 grows from a, side 1 from b.
    std::array<std::vector<State>, 2> states;
    std::array<std::unordered_map<std::string, int>, 2> visited;
    std::array<std::vector<int>, 2> frontier;
    std::array<int, 2> depth{0, 0};
    states[0].push_back({a, sig_a, -1, {}, {}});
    states[1].push_back({b, sig_b, -1, {}, {}});
    visited[0][sig_a] = 0;
    visited[1][sig_b] = 0;
    frontier[0] = {0};
    frontier[1] = {0};
    out.states_explored = 2;

    // Builds the replayable sequence from the two meeting states.
    auto stitch = [&](int ia, int ib) {
        MoveSequence seq;
        seq.start_signature = sig_a;
        seq.end_signature = sig_b;
        std::vector<int> chain_a;
        for (int i = ia; i >= 0; i = states[0][i].parent) chain_a.push_back(i);
        std::reverse(chain_a.begin(), chain_a.end());
        for (size_t k = 1; k < chain_a.size(); ++k)
            seq.moves.push_back(states[0][chain_a[k]].from_parent);

        // Walk the b-side chain from the meeting point down to b, applying
        // each stored undo move transported through an isomorphism onto the
        // current triangulation.
        Triangulation cur = states[0][ia].tri;
        for (int j = ib; states[1][j].parent >= 0; j = states[1][j].parent) {
            const State& bj = states[1][j];
            auto iso = is_isomorphic(bj.tri, cur);
            if (!iso) throw Error("internal: meeting states are not isomorphic");
            Move mv = transport_move(bj.to_parent, *iso);
            MoveResult res = apply_move(cur, mv);
            cur = std::move(res.tri);
            seq.moves.push_back(mv);
        }
        if (!is_isomorphic(cur, b)) throw Error("internal: stitched path fails verification");
        return seq;
    };

    if (sig_a == sig_b) {
        out.status = SearchStatus::Found;
        out.sequence = stitch(0, 0);
        return out;
    }

    while (!frontier[0].empty() && !frontier[1].empty() &&
           depth[0] + depth[1] < budget.max_moves) {
        int side = frontier[0].size() <= frontier[1].size() ? 0 : 1;
        int other = 1 - side;
        std::vector<int> next;
        for (int idx : frontier[side]) {
            // Copy: states[side] may reallocate while we push children.
            const Triangulation parent_tri = states[side][idx].tri;
            for (Neighbor& nb : neighbors(parent_tri, cap)) {
                if (visited[side].count(nb.signature)) continue;
                if (out.states_explored >= budget.max_states) {
                    out.status = SearchStatus::StateCapHit;
                    return out;
                }
                MoveResult res = apply_move(parent_tri, nb.move);
                int ni = int(states[side].size());
                states[side].push_back(
                    {std::move(res.tri), nb.signature, idx, nb.move, res.inverse});
                visited[side][nb.signature] = ni;
                ++out.states_explored;
                auto hit = visited[other].find(nb.signature);
                if (hit != visited[other].end()) {
                    out.status = SearchStatus::Found;
                    int ia = side == 0 ? ni : hit->second;
                    int ib = side == 0 ? hit->second : ni;
                    out.sequence = stitch(ia, ib);
                    return out;
                }
                next.push_back(ni);
            }
        }
        frontier[side] = std::move(next);
        ++depth[side];
    }
    out.status = SearchStatus::NotFoundWithinBudget;
    return out;
}

SphereResult sphere(const Triangulation& tri, int radius, const SearchBudget& budget) {
    if (radius < 0) throw Error("radius must be nonnegative");
    const int cap = budget.max_tetrahedra > 0 ? budget.max_tetrahedra : tri.size() + 4;
    SphereResult out;
    std::unordered_map<std::string, int> visited;
    std::vector<Triangulation> frontier{tri};
    visited[canonical_signature(tri)] = 0;
    out.layer_counts.push_back(1);
    for (int d = 1; d <= radius; ++d) {
        std::vector<Triangulation> next;
        for (const Triangulation& t : frontier) {
            for (Neighbor& nb : neighbors(t, cap)) {
                if (visited.count(nb.signature)) continue;
                if (int(visited.size()) >= budget.max_states) {
                    out.state_cap_hit = true;
                    out.layer_counts.push_back(int(next.size()));
                    return out;
                }
                visited[nb.signature] = d;
                next.push_back(std::move(nb.tri));
            }
        }
        out.layer_counts.push_back(int(next.size()));
        frontier = std::move(next);
        if (frontier.empty()) break;
    }
    return out;
}

}  // namespace cusped
