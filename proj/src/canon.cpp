#include "cusped/canon.hpp"

#include <algorithm>

namespace cusped {

namespace {

// Runs the BFS labeling from one (start tet, start labeling) seed and returns
// the encoding; order/labels are filled in for the caller.
std::vector<int> encode_from(const Triangulation& tri, int t0, const Perm4& sigma0,
                             std::vector<int>& order, std::vector<Perm4>& sigma,
                             std::vector<int>& pos) {
    const int n = tri.size();
    order.clear();
    order.push_back(t0);
    std::fill(pos.begin(), pos.end(), -1);
    pos[t0] = 0;
    sigma[t0] = sigma0;

    std::vector<int> enc;
    enc.reserve(1 + n * 8 + n * 4);
    enc.push_back(n);
    for (size_t qi = 0; qi < order.size(); ++qi) {
        int t = order[qi];
        const Perm4 st = sigma[t];
        const Perm4 sti = st.inverse();
        for (int fc = 0; fc < 4; ++fc) {
            int fo = sti[fc];
            const auto& g = tri.gluing(t, fo);
            if (!g) {
                enc.push_back(n);  // boundary sentinel
                enc.push_back(0);
                continue;
            }
            if (pos[g->tet] < 0) {
                pos[g->tet] = int(order.size());
                order.push_back(g->tet);
                sigma[g->tet] = st * g->perm.inverse();
            }
            enc.push_back(pos[g->tet]);
            enc.push_back((sigma[g->tet] * g->perm * sti).rank());
        }
    }
    // Vertex kinds in canonical order close the encoding.
    for (int i = 0; i < n; ++i) {
        int t = order[i];
        const Perm4 sti = sigma[t].inverse();
        for (int vc = 0; vc < 4; ++vc)
            enc.push_back(tri.vertex_kind(tri.vertex_class(t, sti[vc])) == VertexKind::Ideal ? 0
                                                                                            : 1);
    }
    return enc;
}

constexpr char kAlphabet[] =
    "abcdefghijklmnopqrstuvwxyzABCDEFGHIJKLMNOPQRSTUVWXYZ0123456789+$";

}  // namespace

CanonicalForm canonical_form(const Triangulation& tri) {
    if (!tri.connected()) throw Error("canonical form requires a connected triangulation");
    const int n = tri.size();

    CanonicalForm best;
    std::vector<int> order, pos(n, -1);
    std::vector<Perm4> sigma(n);
    for (int t0 = 0; t0 < n; ++t0)
        for (int r = 0; r < 24; ++r) {
            std::vector<int> enc = encode_from(tri, t0, Perm4::from_rank(r), order, sigma, pos);
            if (best.encoding.empty() || enc < best.encoding) {
                best.encoding = std::move(enc);
                best.new_index = pos;
                best.vertex_map = sigma;
            }
        }
    return best;
}

std::string canonical_signature(const Triangulation& tri) {
    CanonicalForm cf = canonical_form(tri);
    std::string s;
    for (int v : cf.encoding) {
        // Values below 63 take one character; larger ones get an escape
        // character followed by a fixed-width base-63 block.
        if (v < 63) {
            s.push_back(kAlphabet[v]);
        } else {
            s.push_back('_');
            for (int shift = 3; shift >= 0; --shift) s.push_back(kAlphabet[(v >> (6 * shift)) & 63]);
        }
    }
    return s;
}

std::optional<Isomorphism> is_isomorphic(const Triangulation& a, const Triangulation& b) {
    if (a.size() != b.size()) return std::nullopt;
    CanonicalForm ca = canonical_form(a);
    CanonicalForm cb = canonical_form(b);
    if (ca.encoding != cb.encoding) return std::nullopt;

    // Both relabelings land on the same canonical object; compose a's with
    // the inverse of b's.
    const int n = a.size();
    std::vector<int> b_of_pos(n);
    for (int t = 0; t < n; ++t) b_of_pos[cb.new_index[t]] = t;
    Isomorphism iso;
    iso.tet_map.resize(n);
    iso.vertex_maps.resize(n);
    for (int t = 0; t < n; ++t) {
        int tb = b_of_pos[ca.new_index[t]];
        iso.tet_map[t] = tb;
        iso.vertex_maps[t] = cb.vertex_map[tb].inverse() * ca.vertex_map[t];
    }

    // The witness must commute with every gluing; verify before returning.
    for (int t = 0; t < n; ++t)
        for (int f = 0; f < 4; ++f) {
            const auto& g = a.gluing(t, f);
            int tb = iso.tet_map[t];
            int fb = iso.vertex_maps[t][f];
            const auto& gb = b.gluing(tb, fb);
            if (!g != !gb) return std::nullopt;
            if (!g) continue;
            if (gb->tet != iso.tet_map[g->tet]) return std::nullopt;
            Perm4 expect = iso.vertex_maps[g->tet] * g->perm * iso.vertex_maps[t].inverse();
            if (!(gb->perm == expect)) return std::nullopt;
        }
    return iso;
}

}  // namespace cusped
