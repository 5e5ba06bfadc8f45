#include <doctest.h>

#include "cusped/triangulation.hpp"
#include "fixtures.hpp"

using namespace cusped;
using cusped_test::load_fixture;

TEST_CASE("perm4 algebra") {
    for (int r = 0; r < 24; ++r) {
        Perm4 p = Perm4::from_rank(r);
        CHECK(p.rank() == r);
        CHECK((p * p.inverse()).is_identity());
        CHECK(Perm4::parse(p.str()) == p);
    }
    CHECK(Perm4(1, 0, 2, 3).sign() == -1);
    CHECK(Perm4(1, 2, 0, 3).sign() == 1);
    // (a*b)[i] = a[b[i]]
    Perm4 a(1, 0, 2, 3), b(0, 2, 1, 3);
    CHECK((a * b)[1] == a[b[1]]);
    CHECK_THROWS(Perm4::parse("0112"));
    CHECK_THROWS(Perm4::parse("012"));
}

TEST_CASE("edge slots") {
    int k = 0;
    for (int a = 0; a < 4; ++a)
        for (int b = a + 1; b < 4; ++b) {
            CHECK(edge_slot(a, b) == k);
            CHECK(edge_slot_pair(k) == std::pair<int, int>{a, b});
            ++k;
        }
}

TEST_CASE("figure-eight fixture invariants") {
    TriFile tf = load_fixture("fig8.tri");
    const Triangulation& tri = tf.tri;
    CHECK(tri.size() == 2);
    CHECK(tri.closed());
    CHECK(tri.connected());
    CHECK(tri.orientable());
    CHECK(tri.edge_class_count() == 2);
    CHECK(tri.vertex_class_count() == 1);
    CHECK(tri.cusp_count() == 1);
    CHECK(tri.link_euler(0) == 0);  // torus link
    CHECK(tri.vertex_kind(0) == VertexKind::Ideal);
    for (int c = 0; c < 2; ++c) CHECK(tri.edge_degree(c) == 6);
    REQUIRE(tf.shapes.has_value());
    CHECK(tf.shapes->size() == 2);
}

TEST_CASE("sibling fixture differs from figure-eight") {
    TriFile tf = load_fixture("fig8_sibling.tri");
    CHECK(tf.tri.size() == 2);
    CHECK(tf.tri.closed());
    CHECK(tf.tri.orientable());
    CHECK(tf.tri.cusp_count() == 1);
    CHECK(tf.tri.link_euler(0) == 0);
}

TEST_CASE("gieseking fixture is the non-orientable one-tet census manifold") {
    TriFile tf = load_fixture("gieseking.tri");
    CHECK(tf.tri.size() == 1);
    CHECK(tf.tri.closed());
    CHECK_FALSE(tf.tri.orientable());
    CHECK(tf.tri.vertex_class_count() == 1);
    CHECK(tf.tri.link_euler(0) == 0);  // Klein bottle link
    CHECK(tf.tri.edge_class_count() == 1);
    CHECK(tf.tri.edge_degree(0) == 6);
}

TEST_CASE("edge and vertex classes against a brute-force closure") {
    // Union-find closure computed independently: identify (t,f)-adjacent
    // edge/vertex slots until stable, then compare class partitions.
    TriFile tf = load_fixture("fig8.tri");
    const Triangulation& tri = tf.tri;
    const int n = tri.size();
    std::vector<int> vparent(n * 4), eparent(n * 6);
    for (size_t i = 0; i < vparent.size(); ++i) vparent[i] = int(i);
    for (size_t i = 0; i < eparent.size(); ++i) eparent[i] = int(i);
    auto find = [](std::vector<int>& p, int x) {
        while (p[x] != x) x = p[x] = p[p[x]];
        return x;
    };
    bool changed = true;
    while (changed) {
        changed = false;
        for (int t = 0; t < n; ++t)
            for (int f = 0; f < 4; ++f) {
                const auto& g = tri.gluing(t, f);
                if (!g) continue;
                for (int v = 0; v < 4; ++v) {
                    if (v == f) continue;
                    int a = find(vparent, t * 4 + v), b = find(vparent, g->tet * 4 + g->perm[v]);
                    if (a != b) vparent[a] = b, changed = true;
                }
                for (int a = 0; a < 4; ++a)
                    for (int b = a + 1; b < 4; ++b) {
                        if (a == f || b == f) continue;
                        int x = find(eparent, t * 6 + edge_slot(a, b));
                        int pa = g->perm[a], pb = g->perm[b];
                        if (pa > pb) std::swap(pa, pb);
                        int y = find(eparent, g->tet * 6 + edge_slot(pa, pb));
                        if (x != y) eparent[x] = y, changed = true;
                    }
            }
    }
    for (int t = 0; t < n; ++t)
        for (int v = 0; v < 4; ++v)
            for (int t2 = 0; t2 < n; ++t2)
                for (int v2 = 0; v2 < 4; ++v2)
                    CHECK((tri.vertex_class(t, v) == tri.vertex_class(t2, v2)) ==
                          (find(vparent, t * 4 + v) == find(vparent, t2 * 4 + v2)));
    for (int i = 0; i < n * 6; ++i)
        for (int j = 0; j < n * 6; ++j) {
            auto [a1, b1] = edge_slot_pair(i % 6);
            auto [a2, b2] = edge_slot_pair(j % 6);
            CHECK((tri.edge_class(i / 6, a1, b1) == tri.edge_class(j / 6, a2, b2)) ==
                  (find(eparent, i) == find(eparent, j)));
        }
}

TEST_CASE("orientability against exhaustive 2-coloring") {
    // Try every +-1 coloring; orientable iff some coloring makes each gluing
    // permutation odd between like colors.
    for (const char* name : {"fig8.tri", "fig8_sibling.tri", "gieseking.tri"}) {
        const Triangulation tri = load_fixture(name).tri;
        const int n = tri.size();
        bool any = false;
        for (int mask = 0; mask < (1 << n); ++mask) {
            bool ok = true;
            for (int t = 0; t < n && ok; ++t)
                for (int f = 0; f < 4 && ok; ++f) {
                    const auto& g = tri.gluing(t, f);
                    if (!g) continue;
                    int ct = (mask >> t) & 1 ? 1 : -1;
                    int cg = (mask >> g->tet) & 1 ? 1 : -1;
                    if (cg != -ct * g->perm.sign()) ok = false;
                }
            if (ok) any = true;
        }
        CHECK(any == tri.orientable());
    }
}

TEST_CASE("parser round trip") {
    for (const char* name : {"fig8.tri", "fig8_sibling.tri", "gieseking.tri"}) {
        TriFile tf = load_fixture(name);
        TriFile back = parse_tri_file(serialize_tri_file(tf));
        CHECK(back.tri == tf.tri);
        CHECK(back.shapes == tf.shapes);
    }
}

TEST_CASE("parser errors carry line numbers") {
    CHECK_THROWS_WITH_AS(parse_tri_file("tetrahedra 1\ngluing 0 5 -> 0 0123\n"),
                         doctest::Contains("line 2"), Error);
    CHECK_THROWS_AS(parse_tri_file("gluing 0 0 -> 0 1203\n"), Error);  // no header
    CHECK_THROWS_AS(parse_tri_file("tetrahedra 1\n"), Error);          // not closed
    // Mismatched explicit reverse gluing.
    CHECK_THROWS_AS(parse_tri_file("tetrahedra 2\n"
                                   "gluing 0 0 -> 1 0123\n"
                                   "gluing 1 0 -> 0 0132\n"
                                   "gluing 0 1 -> 1 1023\n"
                                   "gluing 0 2 -> 1 0213\n"
                                   "gluing 0 3 -> 1 0132\n"),
                    Error);
    // Shapes must cover every tet or none.
    CHECK_THROWS_AS(parse_tri_file("tetrahedra 2\n"
                                   "gluing 0 0 -> 1 0123\ngluing 0 1 -> 1 0123\n"
                                   "gluing 0 2 -> 1 0123\ngluing 0 3 -> 1 0123\n"
                                   "shape 0 0.5 0.8\n"),
                    Error);
    // Comments and blank lines are fine.
    TriFile tf = parse_tri_file("# a comment\n\ntetrahedra 1\n"
                                "gluing 0 0 -> 0 1203\ngluing 0 2 -> 0 0231\n");
    CHECK(tf.tri.size() == 1);
}

TEST_CASE("validate fills the report") {
    ValidationReport r = validate(load_fixture("fig8.tri").tri);
    CHECK(r.closed);
    CHECK(r.connected);
    CHECK(r.orientable);
    CHECK(r.tet_count == 2);
    CHECK(r.edge_class_count == 2);
    CHECK(r.cusp_count == 1);
    CHECK(r.edge_degrees == std::vector<int>{6, 6});
    CHECK(r.link_eulers == std::vector<int>{0});
    CHECK(r.vertex_kinds == std::vector<VertexKind>{VertexKind::Ideal});
}

TEST_CASE("relabeling preserves all invariants") {
    std::mt19937 rng(7);
    for (const char* name : {"fig8.tri", "gieseking.tri"}) {
        const Triangulation tri = load_fixture(name).tri;
        for (int i = 0; i < 50; ++i) {
            Triangulation r = cusped_test::relabel(tri, rng);
            CHECK(r.closed() == tri.closed());
            CHECK(r.orientable() == tri.orientable());
            CHECK(r.edge_class_count() == tri.edge_class_count());
            CHECK(r.vertex_class_count() == tri.vertex_class_count());
            CHECK(r.cusp_count() == tri.cusp_count());
        }
    }
}
