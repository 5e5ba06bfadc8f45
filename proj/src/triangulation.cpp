#include "cusped/triangulation.hpp"

#include <algorithm>
#include <charconv>
#include <cstdio>
#include <map>
#include <numeric>
#include <sstream>

namespace cusped {

namespace {

struct UnionFind {
    std::vector<int> parent;
    explicit UnionFind(int n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
    int find(int x) {
        while (parent[x] != x) {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        return x;
    }
    void unite(int a, int b) {
        a = find(a);
        b = find(b);
        if (a != b) parent[a] = b;
    }
};

// Maps union-find roots to dense class ids in order of first appearance.
std::vector<int> compress(UnionFind& uf, int n, int* count_out) {
    std::vector<int> cls(n, -1);
    std::map<int, int> ids;
    for (int i = 0; i < n; ++i) {
        int r = uf.find(i);
        cls[i] = ids.try_emplace(r, int(ids.size())).first->second;
    }
    *count_out = int(ids.size());
    return cls;
}

constexpr int kEdgeSlots[4][4] = {
    {-1, 0, 1, 2}, {0, -1, 3, 4}, {1, 3, -1, 5}, {2, 4, 5, -1}};

}  // namespace

int edge_slot(int a, int b) {
    if (a > b) std::swap(a, b);
    return kEdgeSlots[a][b];
}

std::pair<int, int> edge_slot_pair(int slot) {
    static constexpr std::pair<int, int> pairs[6] = {{0, 1}, {0, 2}, {0, 3},
                                                     {1, 2}, {1, 3}, {2, 3}};
    return pairs[slot];
}

Triangulation::Triangulation(GluingTable gluings) : gluings_(std::move(gluings)) {
    const int n = int(gluings_.size());
    if (n == 0) throw Error("triangulation must have at least one tetrahedron");

    // Structural checks: targets in range, mutual inverses, no identity
    // self-gluing of a face to itself.
    for (int t = 0; t < n; ++t) {
        for (int f = 0; f < 4; ++f) {
            const auto& g = gluings_[t][f];
            if (!g) {
                closed_ = false;
                continue;
            }
            if (g->tet < 0 || g->tet >= n)
                throw Error("gluing target out of range at tet " + std::to_string(t) +
                            " face " + std::to_string(f));
            int f2 = (*g).perm[f];
            const auto& back = gluings_[g->tet][f2];
            if (!back || back->tet != t || !(back->perm == g->perm.inverse()))
                throw Error("gluings are not mutually inverse at tet " + std::to_string(t) +
                            " face " + std::to_string(f));
            if (g->tet == t && f2 == f && g->perm.is_identity())
                throw Error("face glued to itself by the identity at tet " +
                            std::to_string(t) + " face " + std::to_string(f));
        }
    }

    // Connectivity over the face-pairing graph.
    {
        std::vector<char> seen(n, 0);
        std::vector<int> stack{0};
        seen[0] = 1;
        while (!stack.empty()) {
            int t = stack.back();
            stack.pop_back();
            for (int f = 0; f < 4; ++f)
                if (gluings_[t][f] && !seen[gluings_[t][f]->tet]) {
                    seen[gluings_[t][f]->tet] = 1;
                    stack.push_back(gluings_[t][f]->tet);
                }
        }
        connected_ = std::all_of(seen.begin(), seen.end(), [](char c) { return c != 0; });
    }

    // Edge classes.
    {
        UnionFind uf(n * 6);
        for (int t = 0; t < n; ++t)
            for (int f = 0; f < 4; ++f) {
                const auto& g = gluings_[t][f];
                if (!g) continue;
                for (int s = 0; s < 6; ++s) {
                    auto [a, b] = edge_slot_pair(s);
                    if (a == f || b == f) continue;
                    uf.unite(t * 6 + s, g->tet * 6 + edge_slot(g->perm[a], g->perm[b]));
                }
            }
        int count = 0;
        edge_class_ = compress(uf, n * 6, &count);
        edge_incidences_.resize(count);
        for (int t = 0; t < n; ++t)
            for (int s = 0; s < 6; ++s) {
                auto [a, b] = edge_slot_pair(s);
                edge_incidences_[edge_class_[t * 6 + s]].push_back({t, a, b});
            }
    }

    // Vertex classes.
    {
        UnionFind uf(n * 4);
        for (int t = 0; t < n; ++t)
            for (int f = 0; f < 4; ++f) {
                const auto& g = gluings_[t][f];
                if (!g) continue;
                for (int v = 0; v < 4; ++v)
                    if (v != f) uf.unite(t * 4 + v, g->tet * 4 + g->perm[v]);
            }
        int count = 0;
        vertex_class_ = compress(uf, n * 4, &count);
        vertex_incidences_.resize(count);
        for (int t = 0; t < n; ++t)
            for (int v = 0; v < 4; ++v)
                vertex_incidences_[vertex_class_[t * 4 + v]].push_back({t, v});
    }

    // Orientability: 2-color tetrahedra so that every gluing permutation is
    // odd between like colors (i.e. the pairing reverses orientation).
    {
        std::vector<int> color(n, 0);
        orientable_ = true;
        for (int start = 0; start < n && orientable_; ++start) {
            if (color[start] != 0) continue;
            color[start] = 1;
            std::vector<int> stack{start};
            while (!stack.empty() && orientable_) {
                int t = stack.back();
                stack.pop_back();
                for (int f = 0; f < 4; ++f) {
                    const auto& g = gluings_[t][f];
                    if (!g) continue;
                    int want = -color[t] * g->perm.sign();
                    if (color[g->tet] == 0) {
                        color[g->tet] = want;
                        stack.push_back(g->tet);
                    } else if (color[g->tet] != want) {
                        orientable_ = false;
                        break;
                    }
                }
            }
        }
    }

    // Euler characteristic of each vertex link.  The link of a class is tiled
    // by one triangle per (tet, vertex) incidence; triangle corners sit on the
    // tet's edges at that vertex and are identified around those edges.
    {
        const int items = n * 12;  // (t, v, w) with w != v; w packed 0..2
        auto pack = [n](int t, int v, int w) {
            int wi = w - (w > v ? 1 : 0);
            return (t * 4 + v) * 3 + wi;
        };
        UnionFind uf(items);
        for (int t = 0; t < n; ++t)
            for (int f = 0; f < 4; ++f) {
                const auto& g = gluings_[t][f];
                if (!g) continue;
                for (int v = 0; v < 4; ++v) {
                    if (v == f) continue;
                    for (int w = 0; w < 4; ++w) {
                        if (w == v || w == f) continue;
                        uf.unite(pack(t, v, w), pack(g->tet, g->perm[v], g->perm[w]));
                    }
                }
            }
        int corner_classes = 0;
        std::vector<int> corner_cls = compress(uf, items, &corner_classes);
        // Count link cells per vertex class.  Sides are the (triangle, face)
        // flags; glued sides pair up, boundary sides stay free.
        std::vector<int> faces(vertex_incidences_.size(), 0);
        std::vector<double> edges(vertex_incidences_.size(), 0.0);
        std::vector<char> corner_seen(corner_classes, 0);
        std::vector<int> verts(vertex_incidences_.size(), 0);
        for (int t = 0; t < n; ++t)
            for (int v = 0; v < 4; ++v) {
                int cls = vertex_class_[t * 4 + v];
                faces[cls] += 1;
                for (int f = 0; f < 4; ++f) {
                    if (f == v) continue;
                    edges[cls] += gluings_[t][f] ? 0.5 : 1.0;
                }
                for (int w = 0; w < 4; ++w) {
                    if (w == v) continue;
                    int cc = corner_cls[pack(t, v, w)];
                    if (!corner_seen[cc]) {
                        corner_seen[cc] = 1;
                        verts[cls] += 1;
                    }
                }
            }
        link_euler_.resize(vertex_incidences_.size());
        for (size_t c = 0; c < vertex_incidences_.size(); ++c)
            link_euler_[c] = verts[c] - int(edges[c] + 0.5) + faces[c];
    }
}

int Triangulation::cusp_count() const {
    int c = 0;
    for (size_t i = 0; i < vertex_incidences_.size(); ++i)
        if (vertex_kind(int(i)) == VertexKind::Ideal) ++c;
    return c;
}

ValidationReport validate(const Triangulation& tri) {
    ValidationReport r;
    r.closed = tri.closed();
    r.connected = tri.connected();
    r.orientable = tri.orientable();
    r.tet_count = tri.size();
    r.edge_class_count = tri.edge_class_count();
    r.vertex_class_count = tri.vertex_class_count();
    r.cusp_count = tri.cusp_count();
    for (int e = 0; e < tri.edge_class_count(); ++e) r.edge_degrees.push_back(tri.edge_degree(e));
    for (int v = 0; v < tri.vertex_class_count(); ++v) {
        r.link_eulers.push_back(tri.link_euler(v));
        r.vertex_kinds.push_back(tri.vertex_kind(v));
    }
    return r;
}

namespace {

[[noreturn]] void parse_fail(int line, const std::string& msg) {
    throw Error("parse error at line " + std::to_string(line) + ": " + msg);
}

}  // namespace

TriFile parse_tri_file(const std::string& text) {
    std::istringstream in(text);
    std::string raw;
    int lineno = 0;
    int tet_count = -1;
    Triangulation::GluingTable table;
    std::vector<std::optional<std::complex<double>>> shapes;
    bool any_shape = false;

    while (std::getline(in, raw)) {
        ++lineno;
        std::string line = raw;
        if (auto hash = line.find('#'); hash != std::string::npos) line.resize(hash);
        std::istringstream ls(line);
        std::string word;
        if (!(ls >> word)) continue;

        if (word == "tetrahedra") {
            if (tet_count >= 0) parse_fail(lineno, "duplicate tetrahedra statement");
            if (!(ls >> tet_count) || tet_count <= 0)
                parse_fail(lineno, "tetrahedra needs a positive count");
            table.resize(tet_count);
            shapes.resize(tet_count);
        } else if (word == "gluing") {
            if (tet_count < 0) parse_fail(lineno, "gluing before tetrahedra statement");
            int t, f, t2;
            std::string arrow, permstr;
            if (!(ls >> t >> f >> arrow >> t2 >> permstr) || arrow != "->")
                parse_fail(lineno, "expected: gluing <t> <f> -> <t'> <perm>");
            if (t < 0 || t >= tet_count || f < 0 || f > 3 || t2 < 0 || t2 >= tet_count)
                parse_fail(lineno, "gluing indices out of range");
            Perm4 p;
            try {
                p = Perm4::parse(permstr);
            } catch (const std::exception& e) {
                parse_fail(lineno, e.what());
            }
            Gluing g{t2, p};
            if (table[t][f]) {
                if (!(*table[t][f] == g)) parse_fail(lineno, "conflicting gluing for this face");
            } else {
                table[t][f] = g;
            }
            // Fill or check the reverse direction.
            int f2 = p[f];
            Gluing back{t, p.inverse()};
            if (table[t2][f2]) {
                if (!(*table[t2][f2] == back))
                    parse_fail(lineno, "gluing conflicts with the reverse direction");
            } else {
                table[t2][f2] = back;
            }
        } else if (word == "shape") {
            if (tet_count < 0) parse_fail(lineno, "shape before tetrahedra statement");
            int t;
            double re, im;
            if (!(ls >> t >> re >> im)) parse_fail(lineno, "expected: shape <t> <re> <im>");
            if (t < 0 || t >= tet_count) parse_fail(lineno, "shape tetrahedron out of range");
            if (shapes[t]) parse_fail(lineno, "duplicate shape for tetrahedron");
            shapes[t] = std::complex<double>(re, im);
            any_shape = true;
        } else {
            parse_fail(lineno, "unknown statement '" + word + "'");
        }
        std::string extra;
        if (ls >> extra) parse_fail(lineno, "trailing tokens");
    }

    if (tet_count < 0) throw Error("parse error: missing tetrahedra statement");
    for (int t = 0; t < tet_count; ++t)
        for (int f = 0; f < 4; ++f)
            if (!table[t][f])
                throw Error("parse error: unglued face at tet " + std::to_string(t) +
                            " face " + std::to_string(f));

    TriFile out{Triangulation(std::move(table)), std::nullopt};
    if (any_shape) {
        std::vector<std::complex<double>> sh;
        for (int t = 0; t < tet_count; ++t) {
            if (!shapes[t])
                throw Error("parse error: shapes given for some tetrahedra but not tet " +
                            std::to_string(t));
            sh.push_back(*shapes[t]);
        }
        out.shapes = std::move(sh);
    }
    return out;
}

std::string serialize_tri_file(const TriFile& file) {
    const Triangulation& tri = file.tri;
    std::string out = "tetrahedra " + std::to_string(tri.size()) + "\n";
    for (int t = 0; t < tri.size(); ++t)
        for (int f = 0; f < 4; ++f) {
            const auto& g = tri.gluing(t, f);
            if (!g) continue;
            int f2 = g->perm[f];
            // Emit each face pair once, from its lexicographically least side.
            if (std::pair(g->tet, f2) < std::pair(t, f)) continue;
            out += "gluing " + std::to_string(t) + " " + std::to_string(f) + " -> " +
                   std::to_string(g->tet) + " " + g->perm.str() + "\n";
        }
    if (file.shapes) {
        char buf[128];
        for (int t = 0; t < tri.size(); ++t) {
            std::snprintf(buf, sizeof buf, "shape %d %.17g %.17g\n", t,
                          (*file.shapes)[t].real(), (*file.shapes)[t].imag());
            out += buf;
        }
    }
    return out;
}

}  // namespace cusped
