#include <doctest.h>

#include "cusped/canon.hpp"
#include "cusped/pachner.hpp"
#include "fixtures.hpp"

using namespace cusped;
using cusped_test::load_fixture;
using cusped_test::relabel;

namespace {

// Exhaustive isomorphism search over all tet bijections and vertex labelings.
bool brute_isomorphic(const Triangulation& a, const Triangulation& b) {
    if (a.size() != b.size()) return false;
    const int n = a.size();
    std::vector<int> tmap(n);
    for (int i = 0; i < n; ++i) tmap[i] = i;
    do {
        std::vector<int> ranks(n, 0);
        while (true) {
            std::vector<Perm4> vmap(n);
            for (int i = 0; i < n; ++i) vmap[i] = Perm4::from_rank(ranks[i]);
            bool ok = true;
            for (int t = 0; t < n && ok; ++t)
                for (int f = 0; f < 4 && ok; ++f) {
                    const auto& g = a.gluing(t, f);
                    const auto& h = b.gluing(tmap[t], vmap[t][f]);
                    if (!g != !h) {
                        ok = false;
                    } else if (g) {
                        if (h->tet != tmap[g->tet] ||
                            !(h->perm == vmap[g->tet] * g->perm * vmap[t].inverse()))
                            ok = false;
                    }
                }
            // Vertex kinds must correspond too.
            for (int t = 0; t < n && ok; ++t)
                for (int v = 0; v < 4 && ok; ++v)
                    if (a.vertex_kind(a.vertex_class(t, v)) !=
                        b.vertex_kind(b.vertex_class(tmap[t], vmap[t][v])))
                        ok = false;
            if (ok) return true;
            int i = 0;
            while (i < n && ++ranks[i] == 24) ranks[i++] = 0;
            if (i == n) break;
        }
    } while (std::next_permutation(tmap.begin(), tmap.end()));
    return false;
}

}  // namespace

TEST_CASE("signature invariant under 1000 random relabelings") {
    std::mt19937 rng(42);
    Triangulation fig8 = load_fixture("fig8.tri").tri;
    Triangulation expanded = apply_move(fig8, Move::two_three(0, 0)).tri;
    std::vector<Triangulation> cases{fig8, load_fixture("fig8_sibling.tri").tri,
                                     load_fixture("gieseking.tri").tri, expanded};
    for (const Triangulation& tri : cases) {
        std::string sig = canonical_signature(tri);
        for (int i = 0; i < 250; ++i)
            CHECK(canonical_signature(relabel(tri, rng)) == sig);
    }
}

TEST_CASE("distinct manifolds get distinct signatures") {
    Triangulation fig8 = load_fixture("fig8.tri").tri;
    Triangulation sib = load_fixture("fig8_sibling.tri").tri;
    CHECK(canonical_signature(fig8) != canonical_signature(sib));
    CHECK_FALSE(is_isomorphic(fig8, sib));
}

TEST_CASE("is_isomorphic returns a verified witness") {
    std::mt19937 rng(3);
    Triangulation fig8 = load_fixture("fig8.tri").tri;
    for (int i = 0; i < 20; ++i) {
        Triangulation r = relabel(fig8, rng);
        auto iso = is_isomorphic(fig8, r);
        REQUIRE(iso.has_value());
        // Spot-check the witness commutes with one gluing.
        const auto& g = fig8.gluing(0, 0);
        const auto& h = r.gluing(iso->tet_map[0], iso->vertex_maps[0][0]);
        REQUIRE(h.has_value());
        CHECK(h->tet == iso->tet_map[g->tet]);
        CHECK(h->perm == iso->vertex_maps[g->tet] * g->perm * iso->vertex_maps[0].inverse());
    }
}

TEST_CASE("is_isomorphic agrees with brute force on all small pairs") {
    std::mt19937 rng(9);
    Triangulation fig8 = load_fixture("fig8.tri").tri;
    Triangulation sib = load_fixture("fig8_sibling.tri").tri;
    Triangulation gies = load_fixture("gieseking.tri").tri;
    std::vector<Triangulation> pool{fig8,
                                    sib,
                                    gies,
                                    relabel(fig8, rng),
                                    relabel(sib, rng),
                                    apply_move(fig8, Move::two_three(0, 0)).tri,
                                    apply_move(fig8, Move::two_three(0, 2)).tri,
                                    apply_move(sib, Move::two_three(0, 0)).tri};
    pool.push_back(relabel(pool[5], rng));
    for (size_t i = 0; i < pool.size(); ++i)
        for (size_t j = 0; j < pool.size(); ++j) {
            bool fast = bool(is_isomorphic(pool[i], pool[j]));
            CHECK(fast == brute_isomorphic(pool[i], pool[j]));
            // Signature equality must characterize isomorphism.
            CHECK(fast ==
                  (canonical_signature(pool[i]) == canonical_signature(pool[j])));
        }
}

TEST_CASE("canonical form rejects disconnected input") {
    // Two disjoint copies of the one-tet fixture.
    Triangulation g = load_fixture("gieseking.tri").tri;
    Triangulation::GluingTable table(2);
    for (int t = 0; t < 2; ++t)
        for (int f = 0; f < 4; ++f) {
            const auto& gl = g.gluing(0, f);
            table[t][f] = Gluing{t, gl->perm};
        }
    Triangulation two(std::move(table));
    CHECK_FALSE(two.connected());
    CHECK_THROWS_AS(canonical_form(two), Error);
}

TEST_CASE("vertex kinds are part of the signature") {
    // The 1-4 move introduces a material vertex; its signature must survive a
    // round trip through the file format (kinds are recomputed from links).
    Triangulation fig8 = load_fixture("fig8.tri").tri;
    Triangulation expanded = apply_move(fig8, Move::one_four(0)).tri;
    std::string sig = canonical_signature(expanded);
    TriFile round = parse_tri_file(serialize_tri_file(TriFile{expanded, std::nullopt}));
    CHECK(canonical_signature(round.tri) == sig);
}
