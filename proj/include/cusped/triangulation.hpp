#pragma once

#include <array>
#include <complex>
#include <optional>
#include <string>
#include <vector>

#include "cusped/error.hpp"
#include "cusped/perm4.hpp"

namespace cusped {

// Face f of a tetrahedron is the one opposite vertex f.  A gluing attached to
// (t, f) sends t's vertex labels through `perm` into the target tetrahedron;
// perm[f] is the target's face index.
struct Gluing {
    int tet = -1;
    Perm4 perm;
    friend bool operator==(const Gluing&, const Gluing&) = default;
};

struct VertexRef {
    int tet = 0;
    int vertex = 0;
    friend auto operator<=>(const VertexRef&, const VertexRef&) = default;
};

// Edge {a,b} of a tetrahedron, always stored with a < b.
struct EdgeRef {
    int tet = 0;
    int a = 0;
    int b = 0;
    friend auto operator<=>(const EdgeRef&, const EdgeRef&) = default;
};

enum class VertexKind { Ideal, Material };

// Index of edge {a,b} (a<b) in the fixed order 01,02,03,12,13,23.
int edge_slot(int a, int b);
std::pair<int, int> edge_slot_pair(int slot);

// Immutable glued triangulation (faces may be left unglued, giving a complex
// with boundary).  Edge/vertex classes, orientability and vertex links are
// computed once at construction.
class Triangulation {
public:
    using GluingTable = std::vector<std::array<std::optional<Gluing>, 4>>;

    explicit Triangulation(GluingTable gluings);

    int size() const { return int(gluings_.size()); }
    const std::optional<Gluing>& gluing(int t, int f) const { return gluings_[t][f]; }
    bool closed() const { return closed_; }
    bool connected() const { return connected_; }
    bool orientable() const { return orientable_; }

    int edge_class(int t, int a, int b) const { return edge_class_[t * 6 + edge_slot(a, b)]; }
    int edge_class(const EdgeRef& e) const { return edge_class(e.tet, e.a, e.b); }
    int edge_class_count() const { return int(edge_incidences_.size()); }
    // Incidences of one edge class, sorted; degree is the incidence count.
    const std::vector<EdgeRef>& edge_incidences(int cls) const { return edge_incidences_[cls]; }
    int edge_degree(int cls) const { return int(edge_incidences_[cls].size()); }

    int vertex_class(int t, int v) const { return vertex_class_[t * 4 + v]; }
    int vertex_class(const VertexRef& v) const { return vertex_class(v.tet, v.vertex); }
    int vertex_class_count() const { return int(vertex_incidences_.size()); }
    const std::vector<VertexRef>& vertex_incidences(int cls) const {
        return vertex_incidences_[cls];
    }

    // Euler characteristic of the link surface of a vertex class.
    int link_euler(int cls) const { return link_euler_[cls]; }
    VertexKind vertex_kind(int cls) const {
        return link_euler_[cls] == 2 ? VertexKind::Material : VertexKind::Ideal;
    }
    int cusp_count() const;

    friend bool operator==(const Triangulation& a, const Triangulation& b) {
        return a.gluings_ == b.gluings_;
    }

private:
    GluingTable gluings_;
    bool closed_ = true;
    bool connected_ = true;
    bool orientable_ = true;
    std::vector<int> edge_class_;    // (t*6 + slot) -> class id
    std::vector<int> vertex_class_;  // (t*4 + v) -> class id
    std::vector<std::vector<EdgeRef>> edge_incidences_;
    std::vector<std::vector<VertexRef>> vertex_incidences_;
    std::vector<int> link_euler_;
};

struct ValidationReport {
    bool closed = false;
    bool connected = false;
    bool orientable = false;
    int tet_count = 0;
    int edge_class_count = 0;
    int vertex_class_count = 0;
    int cusp_count = 0;                // ideal vertex classes
    std::vector<int> edge_degrees;     // by edge class id
    std::vector<int> link_eulers;      // by vertex class id
    std::vector<VertexKind> vertex_kinds;
};

ValidationReport validate(const Triangulation& tri);

// A parsed triangulation file: gluing table plus optional per-tet shapes.
struct TriFile {
    Triangulation tri;
    std::optional<std::vector<std::complex<double>>> shapes;
};

// Parses the text format:
//   tetrahedra <m>
//   gluing <t> <f> -> <t'> <p0p1p2p3>
//   shape <t> <re> <im>
// '#' starts a comment.  Errors carry 1-based line numbers.  The table must
// be closed (every face glued); reverse gluings may be omitted and are filled
// in, but if present must be mutually inverse.
TriFile parse_tri_file(const std::string& text);

std::string serialize_tri_file(const TriFile& file);

}  // namespace cusped
