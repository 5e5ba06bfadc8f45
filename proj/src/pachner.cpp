#include "cusped/pachner.hpp"

#include <algorithm>
#include <map>
#include <optional>
#include <set>

#include <json.hpp>

#include "cusped/canon.hpp"

namespace cusped {

const char* move_kind_name(MoveKind k) {
    switch (k) {
        case MoveKind::TwoThree: return "2-3";
        case MoveKind::ThreeTwo: return "3-2";
        case MoveKind::OneFour: return "1-4";
        case MoveKind::FourOne: return "4-1";
    }
    return "?";
}

MoveKind move_kind_from_name(const std::string& name) {
    if (name == "2-3") return MoveKind::TwoThree;
    if (name == "3-2") return MoveKind::ThreeTwo;
    if (name == "1-4") return MoveKind::OneFour;
    if (name == "4-1") return MoveKind::FourOne;
    throw Error("unknown move kind '" + name + "'");
}

namespace {

// ---------------------------------------------------------------------------
// Region surgery.  A move removes some tetrahedra and inserts new ones; the
// spec below lists internal gluings among the new tetrahedra and, for every
// boundary face of the removed region, which new face replaces it (phi maps
// the old tet's vertex labels to the new tet's, sending the face's opposite
// vertex to the new opposite vertex).
// ---------------------------------------------------------------------------

struct RebuildSpec {
    std::vector<int> removed;  // ascending
    int new_count = 0;
    struct Internal {
        int t, f, t2;
        Perm4 p;  // labels of local tet t -> labels of local tet t2
    };
    std::vector<Internal> internal;
    struct External {
        int old_tet, old_face;
        int local;
        Perm4 phi;  // old tet labels -> new local tet labels
    };
    std::vector<External> external;
};

Triangulation rebuild(const Triangulation& old, const RebuildSpec& spec,
                      std::vector<int>& survivor_map, std::vector<int>& new_tets) {
    const int old_n = old.size();
    const int k = int(spec.removed.size());
    const int K = spec.new_count;
    const int total = old_n - k + K;

    std::vector<int> freed(spec.removed.begin() + std::min(k, K), spec.removed.end());
    auto final_of = [&](int slot) {
        int shift = 0;
        for (int fr : freed)
            if (fr < slot) ++shift;
        return slot - shift;
    };
    auto slot_of_local = [&](int j) { return j < k ? spec.removed[j] : old_n + (j - k); };
    auto is_removed = [&](int t) {
        return std::binary_search(spec.removed.begin(), spec.removed.end(), t);
    };

    survivor_map.assign(old_n, -1);
    for (int t = 0; t < old_n; ++t)
        if (!is_removed(t)) survivor_map[t] = final_of(t);
    new_tets.clear();
    for (int j = 0; j < K; ++j) new_tets.push_back(final_of(slot_of_local(j)));

    Triangulation::GluingTable table(total);
    for (int t = 0; t < old_n; ++t) {
        if (is_removed(t)) continue;
        for (int f = 0; f < 4; ++f) {
            const auto& g = old.gluing(t, f);
            if (g && !is_removed(g->tet))
                table[survivor_map[t]][f] = Gluing{survivor_map[g->tet], g->perm};
        }
    }
    for (const auto& in : spec.internal) {
        int ta = new_tets[in.t], tb = new_tets[in.t2];
        table[ta][in.f] = Gluing{tb, in.p};
        table[tb][in.p[in.f]] = Gluing{ta, in.p.inverse()};
    }
    std::map<std::pair<int, int>, const RebuildSpec::External*> ext;
    for (const auto& e : spec.external) ext[{e.old_tet, e.old_face}] = &e;
    for (const auto& e : spec.external) {
        int nt = new_tets[e.local];
        int nf = e.phi[e.old_face];
        const auto& g = old.gluing(e.old_tet, e.old_face);
        if (!g) continue;  // stays a boundary face
        if (!is_removed(g->tet)) {
            table[nt][nf] = Gluing{survivor_map[g->tet], g->perm * e.phi.inverse()};
            table[survivor_map[g->tet]][g->perm[e.old_face]] = Gluing{nt, e.phi * g->perm.inverse()};
        } else {
            auto it = ext.find({g->tet, g->perm[e.old_face]});
            if (it == ext.end()) throw Error("internal error: dangling region boundary face");
            const auto& e2 = *it->second;
            table[nt][nf] = Gluing{new_tets[e2.local], e2.phi * g->perm * e.phi.inverse()};
        }
    }
    return Triangulation(std::move(table));
}

// ---------------------------------------------------------------------------
// Walking around an edge.  Crossing the face opposite `eout` leads to the
// next incidence; `ein` is the link vertex on that face.
// ---------------------------------------------------------------------------

struct EdgeStep {
    int tet, va, vb, ein, eout;
};

std::optional<std::vector<EdgeStep>> edge_cycle(const Triangulation& tri, const EdgeRef& start) {
    int rest[2], ri = 0;
    for (int v = 0; v < 4; ++v)
        if (v != start.a && v != start.b) rest[ri++] = v;
    EdgeStep s{start.tet, start.a, start.b, rest[0], rest[1]};
    std::vector<EdgeStep> steps;
    const size_t limit = size_t(tri.size()) * 48 + 8;
    while (true) {
        steps.push_back(s);
        const auto& g = tri.gluing(s.tet, s.eout);
        if (!g) return std::nullopt;
        const Perm4& p = g->perm;
        s = EdgeStep{g->tet, p[s.va], p[s.vb], p[s.eout], p[s.ein]};
        if (s.tet == start.tet && s.va == start.a && s.vb == start.b && s.ein == rest[0] &&
            s.eout == rest[1])
            return steps;
        if (steps.size() > limit) throw Error("edge cycle failed to close");
    }
}

// Builds the sub-triangulation of `tets` (local indices in given order) with
// only the listed gluings, used for the embedded-ball model checks.
struct RegionGluing {
    int local, face, local2;
    Perm4 p;
};

Triangulation region_complex(const std::vector<RegionGluing>& glu, int count) {
    Triangulation::GluingTable table(count);
    for (const auto& g : glu) {
        table[g.local][g.face] = Gluing{g.local2, g.p};
        table[g.local2][g.p[g.face]] = Gluing{g.local, g.p.inverse()};
    }
    return Triangulation(std::move(table));
}

// Normalizes a move location to its canonical representative.
Move normalize(const Triangulation& tri, const Move& m) {
    switch (m.kind) {
        case MoveKind::TwoThree: {
            const auto& g = tri.gluing(m.tet, m.face);
            if (!g) return m;
            std::pair<int, int> here{m.tet, m.face}, there{g->tet, g->perm[m.face]};
            if (there < here) return Move::two_three(there.first, there.second);
            return m;
        }
        case MoveKind::ThreeTwo: {
            const auto& inc = tri.edge_incidences(tri.edge_class(m.tet, m.a, m.b));
            return Move::three_two(inc[0].tet, inc[0].a, inc[0].b);
        }
        case MoveKind::OneFour:
            return m;
        case MoveKind::FourOne: {
            const auto& inc = tri.vertex_incidences(tri.vertex_class(m.tet, m.vertex));
            return Move::four_one(inc[0].tet, inc[0].vertex);
        }
    }
    return m;
}

std::string check_two_three(const Triangulation& tri, const Move& m) {
    if (m.tet < 0 || m.tet >= tri.size() || m.face < 0 || m.face > 3)
        return "face reference out of range";
    const auto& g = tri.gluing(m.tet, m.face);
    if (!g) return "face is on the boundary";
    if (g->tet == m.tet) return "both sides of the face lie in the same tetrahedron";
    return "";
}

std::string check_three_two(const Triangulation& tri, const Move& m,
                            std::vector<EdgeStep>* steps_out) {
    if (m.tet < 0 || m.tet >= tri.size() || m.a < 0 || m.b > 3 || m.a >= m.b)
        return "edge reference out of range";
    int cls = tri.edge_class(m.tet, m.a, m.b);
    if (tri.edge_degree(cls) != 3)
        return "edge class has degree " + std::to_string(tri.edge_degree(cls)) + ", not 3";
    auto cyc = edge_cycle(tri, tri.edge_incidences(cls)[0]);
    if (!cyc) return "edge class meets the boundary";
    if (cyc->size() != 3) return "edge link does not close up in three steps";
    const auto& c = *cyc;
    if (c[0].tet == c[1].tet || c[0].tet == c[2].tet || c[1].tet == c[2].tet)
        return "the three incidences do not lie in distinct tetrahedra";
    std::vector<RegionGluing> glu;
    for (int i = 0; i < 3; ++i) {
        const auto& g = tri.gluing(c[i].tet, c[i].eout);
        glu.push_back({i, c[i].eout, (i + 1) % 3, g->perm});
    }
    Triangulation region = region_complex(glu, 3);
    if (region.vertex_class_count() != 5 || region.edge_class_count() != 10 ||
        region.edge_degree(region.edge_class(0, std::min(c[0].va, c[0].vb),
                                             std::max(c[0].va, c[0].vb))) != 3)
        return "region identifications are not trivial (no embedded bipyramid)";
    if (steps_out) *steps_out = c;
    return "";
}

std::string check_four_one(const Triangulation& tri, const Move& m,
                           std::vector<Perm4>* labels_out) {
    if (m.tet < 0 || m.tet >= tri.size() || m.vertex < 0 || m.vertex > 3)
        return "vertex reference out of range";
    int cls = tri.vertex_class(m.tet, m.vertex);
    if (tri.vertex_kind(cls) != VertexKind::Material) return "vertex class is not material";
    const auto& inc = tri.vertex_incidences(cls);
    if (inc.size() != 4)
        return "vertex class has degree " + std::to_string(inc.size()) + ", not 4";
    for (int i = 0; i < 4; ++i)
        for (int j = i + 1; j < 4; ++j)
            if (inc[i].tet == inc[j].tet)
                return "the four incidences do not lie in distinct tetrahedra";
    auto local_of = [&](int tet) {
        for (int i = 0; i < 4; ++i)
            if (inc[i].tet == tet) return i;
        return -1;
    };
    std::vector<RegionGluing> glu;
    for (int i = 0; i < 4; ++i)
        for (int f = 0; f < 4; ++f) {
            if (f == inc[i].vertex) continue;
            const auto& g = tri.gluing(inc[i].tet, f);
            if (!g) return "vertex star meets the boundary";
            int j = local_of(g->tet);
            if (j < 0) return "vertex star is not closed within the class";
            if (std::pair(i, f) < std::pair(j, int(g->perm[f])))
                glu.push_back({i, f, j, g->perm});
        }
    Triangulation region = region_complex(glu, 4);
    if (region.vertex_class_count() != 5 || region.edge_class_count() != 10)
        return "region identifications are not trivial (no embedded star)";
    int cone_cls = region.vertex_class(0, inc[0].vertex);
    if (int(region.vertex_incidences(cone_cls).size()) != 4)
        return "cone vertex is identified with a link vertex inside the region";

    // Label the four link vertex classes 0..3, anchored at the least tet.
    int label_of_class[16];
    std::fill(label_of_class, label_of_class + 16, -1);
    int next = 0;
    for (int v = 0; v < 4; ++v) {
        if (v == inc[0].vertex) continue;
        label_of_class[region.vertex_class(0, v)] = next++;
    }
    for (int c = 0; c < region.vertex_class_count(); ++c)
        if (c != cone_cls && label_of_class[c] < 0) label_of_class[c] = next++;
    if (next != 4) return "region does not have four link vertex classes";

    std::vector<Perm4> labels(4);
    for (int i = 0; i < 4; ++i) {
        bool used[4] = {false, false, false, false};
        int sum = 0;
        for (int v = 0; v < 4; ++v) {
            if (v == inc[i].vertex) continue;
            int l = label_of_class[region.vertex_class(i, v)];
            if (l < 0 || used[l])
                return "link vertices of one tetrahedron are identified in the region";
            used[l] = true;
            labels[i].img[v] = std::uint8_t(l);
            sum += l;
        }
        labels[i].img[inc[i].vertex] = std::uint8_t(6 - sum);
    }
    if (labels_out) *labels_out = labels;
    return "";
}

MoveResult apply_two_three(const Triangulation& tri, const Move& m) {
    const auto& g = tri.gluing(m.tet, m.face);
    const int t0 = m.tet, f0 = m.face, t1 = g->tet;
    const Perm4& p = g->perm;
    const int f1 = p[f0];
    int u[3], ui = 0;
    for (int v = 0; v < 4; ++v)
        if (v != f0) u[ui++] = v;

    RebuildSpec spec;
    spec.removed = {std::min(t0, t1), std::max(t0, t1)};
    spec.new_count = 3;
    for (int k = 0; k < 3; ++k)
        spec.internal.push_back({k, 3, (k + 2) % 3, Perm4(0, 1, 3, 2)});
    for (int k = 0; k < 3; ++k) {
        Perm4 phi0, phi1;
        phi0.img[f0] = 0;
        phi0.img[u[k]] = 1;
        phi0.img[u[(k + 1) % 3]] = 2;
        phi0.img[u[(k + 2) % 3]] = 3;
        spec.external.push_back({t0, u[k], (k + 1) % 3, phi0});
        phi1.img[f1] = 1;
        phi1.img[p[u[k]]] = 0;
        phi1.img[p[u[(k + 1) % 3]]] = 2;
        phi1.img[p[u[(k + 2) % 3]]] = 3;
        spec.external.push_back({t1, p[u[k]], (k + 1) % 3, phi1});
    }
    std::vector<int> surv, fresh;
    Triangulation out = rebuild(tri, spec, surv, fresh);
    // The new interior edge is (0,1) in every new tet; the least new index is
    // the reused smaller removed slot.
    return MoveResult{std::move(out), Move::three_two(fresh[0], 0, 1), std::move(surv),
                      std::move(fresh)};
}

MoveResult apply_three_two(const Triangulation& tri, const std::vector<EdgeStep>& c) {
    RebuildSpec spec;
    for (const auto& s : c) spec.removed.push_back(s.tet);
    std::sort(spec.removed.begin(), spec.removed.end());
    spec.new_count = 2;
    spec.internal.push_back({0, 3, 1, Perm4()});
    for (int i = 0; i < 3; ++i) {
        // Tet i holds link vertices ein (shared with tet i+1) and eout
        // (shared with tet i-1); apices va/vb go to slot 3 of the two new
        // tets.
        Perm4 to_a, to_b;
        to_a.img[c[i].va] = 3;
        to_a.img[c[i].ein] = std::uint8_t(i);
        to_a.img[c[i].eout] = std::uint8_t((i + 2) % 3);
        to_a.img[c[i].vb] = std::uint8_t((i + 1) % 3);
        spec.external.push_back({c[i].tet, c[i].vb, 0, to_a});
        to_b.img[c[i].vb] = 3;
        to_b.img[c[i].ein] = std::uint8_t(i);
        to_b.img[c[i].eout] = std::uint8_t((i + 2) % 3);
        to_b.img[c[i].va] = std::uint8_t((i + 1) % 3);
        spec.external.push_back({c[i].tet, c[i].va, 1, to_b});
    }
    std::vector<int> surv, fresh;
    Triangulation out = rebuild(tri, spec, surv, fresh);
    return MoveResult{std::move(out), Move::two_three(fresh[0], 3), std::move(surv),
                      std::move(fresh)};
}

MoveResult apply_one_four(const Triangulation& tri, const Move& m) {
    RebuildSpec spec;
    spec.removed = {m.tet};
    spec.new_count = 4;
    for (int i = 0; i < 4; ++i)
        for (int j = i + 1; j < 4; ++j) {
            Perm4 swap;
            std::swap(swap.img[i], swap.img[j]);
            spec.internal.push_back({i, j, j, swap});
        }
    for (int f = 0; f < 4; ++f) spec.external.push_back({m.tet, f, f, Perm4()});
    std::vector<int> surv, fresh;
    Triangulation out = rebuild(tri, spec, surv, fresh);
    // The cone vertex sits at slot i of new tet i; its least incidence is
    // slot 0 of the reused index.
    return MoveResult{std::move(out), Move::four_one(fresh[0], 0), std::move(surv),
                      std::move(fresh)};
}

MoveResult apply_four_one(const Triangulation& tri, const Move& m,
                          const std::vector<Perm4>& labels) {
    const auto& inc = tri.vertex_incidences(tri.vertex_class(m.tet, m.vertex));
    RebuildSpec spec;
    for (const auto& v : inc) spec.removed.push_back(v.tet);
    std::sort(spec.removed.begin(), spec.removed.end());
    spec.new_count = 1;
    for (int i = 0; i < 4; ++i)
        spec.external.push_back({inc[i].tet, inc[i].vertex, 0, labels[i]});
    std::vector<int> surv, fresh;
    Triangulation out = rebuild(tri, spec, surv, fresh);
    return MoveResult{std::move(out), Move::one_four(fresh[0]), std::move(surv),
                      std::move(fresh)};
}

}  // namespace

std::string why_inapplicable(const Triangulation& tri, const Move& move) {
    switch (move.kind) {
        case MoveKind::TwoThree:
            return check_two_three(tri, move);
        case MoveKind::ThreeTwo:
            return check_three_two(tri, move, nullptr);
        case MoveKind::OneFour:
            return (move.tet < 0 || move.tet >= tri.size()) ? "tet reference out of range" : "";
        case MoveKind::FourOne:
            return check_four_one(tri, move, nullptr);
    }
    return "unknown move kind";
}

MoveResult apply_move(const Triangulation& tri, const Move& move_in) {
    Move move = move_in;
    if (std::string r = why_inapplicable(tri, move); !r.empty())
        throw Error(std::string("move ") + move_kind_name(move.kind) + " not applicable: " + r);
    move = normalize(tri, move);
    switch (move.kind) {
        case MoveKind::TwoThree:
            return apply_two_three(tri, move);
        case MoveKind::ThreeTwo: {
            std::vector<EdgeStep> steps;
            check_three_two(tri, move, &steps);
            return apply_three_two(tri, steps);
        }
        case MoveKind::OneFour:
            return apply_one_four(tri, move);
        case MoveKind::FourOne: {
            std::vector<Perm4> labels;
            check_four_one(tri, move, &labels);
            return apply_four_one(tri, move, labels);
        }
    }
    throw Error("unknown move kind");
}

Move invert_move(const Triangulation& before, const Move& move) {
    return apply_move(before, move).inverse;
}

std::vector<Move> applicable_moves(const Triangulation& tri) {
    std::vector<Move> out;
    for (int t = 0; t < tri.size(); ++t)
        for (int f = 0; f < 4; ++f) {
            const auto& g = tri.gluing(t, f);
            if (!g || std::pair(g->tet, int(g->perm[f])) < std::pair(t, f)) continue;
            Move m = Move::two_three(t, f);
            if (why_inapplicable(tri, m).empty()) out.push_back(m);
        }
    for (int e = 0; e < tri.edge_class_count(); ++e) {
        if (tri.edge_degree(e) != 3) continue;
        const auto& rep = tri.edge_incidences(e)[0];
        Move m = Move::three_two(rep.tet, rep.a, rep.b);
        if (why_inapplicable(tri, m).empty()) out.push_back(m);
    }
    for (int t = 0; t < tri.size(); ++t) out.push_back(Move::one_four(t));
    for (int v = 0; v < tri.vertex_class_count(); ++v) {
        if (tri.vertex_kind(v) != VertexKind::Material || tri.vertex_incidences(v).size() != 4)
            continue;
        const auto& rep = tri.vertex_incidences(v)[0];
        Move m = Move::four_one(rep.tet, rep.vertex);
        if (why_inapplicable(tri, m).empty()) out.push_back(m);
    }
    return out;
}

// ---------------------------------------------------------------------------
// Move sequences
// ---------------------------------------------------------------------------

std::string move_sequence_to_json(const MoveSequence& seq) {
    nlohmann::json j;
    j["moves"] = nlohmann::json::array();
    for (const auto& m : seq.moves) {
        nlohmann::json jm;
        jm["kind"] = move_kind_name(m.kind);
        switch (m.kind) {
            case MoveKind::TwoThree: jm["face"] = {m.tet, m.face}; break;
            case MoveKind::ThreeTwo: jm["edge"] = {m.tet, m.a, m.b}; break;
            case MoveKind::OneFour: jm["tet"] = m.tet; break;
            case MoveKind::FourOne: jm["vertex"] = {m.tet, m.vertex}; break;
        }
        j["moves"].push_back(jm);
    }
    j["start"] = seq.start_signature;
    j["end"] = seq.end_signature;
    return j.dump();
}

MoveSequence move_sequence_from_json(const std::string& text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const std::exception& e) {
        throw Error(std::string("bad move sequence JSON: ") + e.what());
    }
    MoveSequence seq;
    try {
        for (const auto& jm : j.at("moves")) {
            MoveKind kind = move_kind_from_name(jm.at("kind").get<std::string>());
            switch (kind) {
                case MoveKind::TwoThree:
                    seq.moves.push_back(Move::two_three(jm.at("face")[0], jm.at("face")[1]));
                    break;
                case MoveKind::ThreeTwo:
                    seq.moves.push_back(
                        Move::three_two(jm.at("edge")[0], jm.at("edge")[1], jm.at("edge")[2]));
                    break;
                case MoveKind::OneFour:
                    seq.moves.push_back(Move::one_four(jm.at("tet").get<int>()));
                    break;
                case MoveKind::FourOne:
                    seq.moves.push_back(Move::four_one(jm.at("vertex")[0], jm.at("vertex")[1]));
                    break;
            }
        }
        seq.start_signature = j.value("start", "");
        seq.end_signature = j.value("end", "");
    } catch (const Error&) {
        throw;
    } catch (const std::exception& e) {
        throw Error(std::string("bad move sequence JSON: ") + e.what());
    }
    return seq;
}

Triangulation replay(const Triangulation& start, const MoveSequence& seq) {
    if (!seq.start_signature.empty() && canonical_signature(start) != seq.start_signature)
        throw Error("replay: start triangulation does not match the sequence's start signature");
    Triangulation cur = start;
    for (const auto& m : seq.moves) cur = apply_move(cur, m).tri;
    if (!seq.end_signature.empty() && canonical_signature(cur) != seq.end_signature)
        throw Error("replay: end triangulation does not match the sequence's end signature");
    return cur;
}

// ---------------------------------------------------------------------------
// Shellings and starring
// ---------------------------------------------------------------------------

ShellingCheck verify_shelling(const Triangulation& ball, const std::vector<int>& ordering) {
    const int n = ball.size();
    if (int(ordering.size()) != n) throw Error("ordering must list every tetrahedron once");
    std::vector<char> seen(n, 0);
    for (int t : ordering) {
        if (t < 0 || t >= n || seen[t]) throw Error("ordering must list every tetrahedron once");
        seen[t] = 1;
    }

    // A tet glued to itself can never sit inside a simplicial ball.
    for (int j = 0; j < n; ++j)
        for (int f = 0; f < 4; ++f) {
            const auto& g = ball.gluing(ordering[j], f);
            if (g && g->tet == ordering[j])
                return {false, j, "tetrahedron is glued to itself"};
        }

    for (int j = 1; j < n; ++j) {
        const int d = ordering[j];
        std::set<int> prefix(ordering.begin(), ordering.begin() + j);
        std::vector<int> D;
        for (int f = 0; f < 4; ++f) {
            const auto& g = ball.gluing(d, f);
            if (g && prefix.count(g->tet)) D.push_back(f);
        }
        if (D.empty())
            return {false, j, "tetrahedron shares no face with its predecessors"};
        if (D.size() == 4)
            return {false, j, "tetrahedron is entirely surrounded by its predecessors"};

        // Build the prefix-plus-current subcomplex and make sure no vertex or
        // edge of the current tet off the shared disk touches the prefix.
        std::vector<int> local_of(n, -1);
        std::vector<int> members(ordering.begin(), ordering.begin() + j);
        members.push_back(d);
        for (size_t i = 0; i < members.size(); ++i) local_of[members[i]] = int(i);
        Triangulation::GluingTable table(members.size());
        for (size_t i = 0; i < members.size(); ++i)
            for (int f = 0; f < 4; ++f) {
                const auto& g = ball.gluing(members[i], f);
                if (g && local_of[g->tet] >= 0)
                    table[i][f] = Gluing{local_of[g->tet], g->perm};
            }
        Triangulation sub(std::move(table));
        const int dl = local_of[d];
        auto on_disk_vertex = [&](int v) {
            return std::any_of(D.begin(), D.end(), [&](int f) { return v != f; });
        };
        for (int v = 0; v < 4; ++v) {
            if (on_disk_vertex(v)) continue;
            for (const auto& iv : sub.vertex_incidences(sub.vertex_class(dl, v)))
                if (iv.tet != dl)
                    return {false, j, "a vertex outside the shared disk touches the predecessors"};
        }
        for (int s = 0; s < 6; ++s) {
            auto [a, b] = edge_slot_pair(s);
            bool on_disk =
                std::any_of(D.begin(), D.end(), [&](int f) { return a != f && b != f; });
            if (on_disk) continue;
            for (const auto& ie : sub.edge_incidences(sub.edge_class(dl, a, b)))
                if (ie.tet != dl)
                    return {false, j, "an edge outside the shared disk touches the predecessors"};
        }
    }
    return {true, -1, ""};
}

StarResult star_shellable_ball(const Triangulation& ball, const std::vector<int>& ordering) {
    ShellingCheck chk = verify_shelling(ball, ordering);
    if (!chk.ok)
        throw Error("ordering is not a shelling at index " + std::to_string(chk.fail_index) +
                    ": " + chk.reason);
    const int n = ball.size();

    MoveSequence seq;
    seq.start_signature = canonical_signature(ball);
    Triangulation cur = ball;
    std::vector<int> cur_idx(ordering);  // current index of the j-th original tet

    for (int j = 0; j < n; ++j) {
        Move mv;
        if (j == 0) {
            mv = Move::one_four(cur_idx[0]);
        } else {
            std::set<int> remaining(cur_idx.begin() + j, cur_idx.end());
            const int t = cur_idx[j];
            std::vector<int> D;
            for (int f = 0; f < 4; ++f) {
                const auto& g = cur.gluing(t, f);
                if (g && !remaining.count(g->tet)) D.push_back(f);
            }
            if (D.size() == 1) {
                mv = Move::two_three(t, D[0]);
            } else if (D.size() == 2) {
                int e[2], ei = 0;
                for (int v = 0; v < 4; ++v)
                    if (v != D[0] && v != D[1]) e[ei++] = v;
                mv = Move::three_two(t, e[0], e[1]);
            } else if (D.size() == 3) {
                int v = 0 + 1 + 2 + 3 - D[0] - D[1] - D[2];
                mv = Move::four_one(t, v);
            } else {
                throw Error("internal error: shelling step with no cone contact");
            }
        }
        MoveResult res = apply_move(cur, mv);
        seq.moves.push_back(mv);
        cur = std::move(res.tri);
        for (int k = j + 1; k < n; ++k) cur_idx[k] = res.survivor_map[cur_idx[k]];
    }
    seq.end_signature = canonical_signature(cur);
    return StarResult{std::move(seq), std::move(cur)};
}

Triangulation cone_over_boundary(const Triangulation& ball) {
    std::vector<std::pair<int, int>> bf;
    for (int t = 0; t < ball.size(); ++t)
        for (int f = 0; f < 4; ++f)
            if (!ball.gluing(t, f)) bf.push_back({t, f});
    if (bf.empty()) throw Error("complex has no boundary to cone over");
    std::map<std::pair<int, int>, int> cone_of;
    for (size_t i = 0; i < bf.size(); ++i) cone_of[bf[i]] = int(i);

    // Cone tet over boundary face (t,f): slot v (v != f) carries vertex v of
    // t, slot f carries the apex.  Vertical faces glue to the cone over the
    // boundary face adjacent across each edge of (t,f).
    Triangulation::GluingTable table(bf.size());
    for (size_t i = 0; i < bf.size(); ++i) {
        auto [t, f] = bf[i];
        for (int s = 0; s < 6; ++s) {
            auto [a, b] = edge_slot_pair(s);
            if (a == f || b == f) continue;
            // Walk around edge {a,b} through the ball to the far boundary face.
            int ct = t, ca = a, cb = b;
            int cross = 0 + 1 + 2 + 3 - a - b - f;
            int entry = f;
            while (ball.gluing(ct, cross)) {
                const Perm4& q = ball.gluing(ct, cross)->perm;
                int nt = ball.gluing(ct, cross)->tet;
                int na = q[ca], nb = q[cb];
                entry = q[cross];
                ct = nt;
                ca = na;
                cb = nb;
                cross = 0 + 1 + 2 + 3 - ca - cb - entry;
            }
            // Reached boundary face (ct, cross); its cone tet shares the
            // vertical face over this edge.
            const int g0 = 0 + 1 + 2 + 3 - a - b - f;
            Perm4 phi;
            phi.img[a] = std::uint8_t(ca);
            phi.img[b] = std::uint8_t(cb);
            phi.img[f] = std::uint8_t(cross);   // apex to apex
            phi.img[g0] = std::uint8_t(entry);  // off-face slot to off-face slot
            table[i][g0] = Gluing{cone_of.at({ct, cross}), phi};
        }
    }
    return Triangulation(std::move(table));
}

SimplexCounts derived_counts(const SimplexCounts& counts, int level) {
    if (level < 0 || level > 3) throw Error("derived subdivision level must be in 0..3");
    // c(i, r) = 1 for i <= r, else (i+1) * c(i-1, r); r=0 gives (i+1)!.
    std::uint64_t mult[4];
    for (int i = 0; i < 4; ++i) {
        if (i <= level)
            mult[i] = 1;
        else
            mult[i] = std::uint64_t(i + 1) * mult[i - 1];
    }
    return SimplexCounts{counts.s0 * mult[0], counts.s1 * mult[1], counts.s2 * mult[2],
                         counts.s3 * mult[3]};
}

}  // namespace cusped
