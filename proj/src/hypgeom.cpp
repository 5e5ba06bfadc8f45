#include "cusped/hypgeom.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numbers>

namespace cusped {

namespace {

constexpr double kPi = std::numbers::pi;

void require_upper_half(Complex z) {
    if (!(z.imag() > 0)) throw Error("shape parameter must have positive imaginary part");
}

}  // namespace

Angles angles_from_shape(Complex z) {
    require_upper_half(z);
    Angles a;
    a.alpha = std::arg(z);
    a.beta = std::arg(1.0 / (1.0 - z));
    a.gamma = std::arg((z - 1.0) / z);
    return a;
}

Complex edge_shape(Complex z, int a, int b) {
    if (a > b) std::swap(a, b);
    int slot = edge_slot(a, b);
    switch (slot) {
        case 0: case 5: return z;                  // {0,1}, {2,3}
        case 1: case 4: return 1.0 / (1.0 - z);    // {0,2}, {1,3}
        default: return (z - 1.0) / z;             // {0,3}, {1,2}
    }
}

double lobachevsky(double theta) {
    double t = std::fmod(theta, kPi);
    if (t < 0) t += kPi;
    double sign = 1.0;
    if (t > kPi / 2) {
        t = kPi - t;
        sign = -1.0;
    }
    if (t == 0.0) return 0.0;
    // Lambda(t) = t - t*log(2t) + sum_{n>=1} zeta(2n) t^{2n+1} / (n(2n+1) pi^{2n})
    const double q = (t / kPi) * (t / kPi);
    double sum = 0.0;
    double qn = 1.0;
    for (int n = 1; n < 400; ++n) {
        qn *= q;
        double term = std::riemann_zeta(2.0 * n) * qn / (n * (2.0 * n + 1.0));
        sum += term;
        if (term < 1e-18 * (1.0 + std::abs(sum))) break;
    }
    return sign * (t * (1.0 - std::log(2.0 * t)) + t * sum);
}

double tet_volume(Complex z) {
    Angles a = angles_from_shape(z);
    return lobachevsky(a.alpha) + lobachevsky(a.beta) + lobachevsky(a.gamma);
}

double regular_ideal_volume() {
    static const double v = 3.0 * lobachevsky(kPi / 3.0);
    return v;
}

ThicknessResult check_thickness(const std::vector<Complex>& shapes, double theta0) {
    if (!(theta0 > 0) || theta0 > kPi / 3 + 1e-9)
        throw Error("theta0 must lie in (0, pi/3]");
    if (shapes.empty()) throw Error("no shapes given");
    ThicknessResult res;
    res.min_angle = kPi;
    for (Complex z : shapes) {
        Angles a = angles_from_shape(z);
        res.min_angle = std::min({res.min_angle, a.alpha, a.beta, a.gamma});
    }
    res.is_thick = res.min_angle >= theta0 - 1e-9;
    return res;
}

double gluing_residual(const Triangulation& tri, const std::vector<Complex>& shapes) {
    if (int(shapes.size()) != tri.size()) throw Error("one shape per tetrahedron required");
    for (Complex z : shapes) require_upper_half(z);
    double worst = 0.0;
    for (int c = 0; c < tri.edge_class_count(); ++c) {
        Complex sum = 0.0;
        for (const EdgeRef& e : tri.edge_incidences(c))
            sum += std::log(edge_shape(shapes[e.tet], e.a, e.b));
        worst = std::max(worst, std::abs(sum - Complex(0.0, 2.0 * kPi)));
    }
    return worst;
}

double ball_volume(double r) {
    if (r < 0) throw Error("ball radius must be nonnegative");
    return kPi * (std::sinh(2.0 * r) - 2.0 * r);
}

double dist_to_vertical(double x, double y) {
    if (!(y > 0)) throw Error("height must be positive");
    if (x < 0) throw Error("horizontal distance must be nonnegative");
    return std::asinh(x / y);
}

namespace {

// Slots other than v, ordered so that the permutation (v, x0, x1, x2) has
// the given sign — the tet's orientation color, so every developed corner
// triangle is positively oriented in the plane.
std::array<int, 3> oriented_others(int v, int color) {
    std::array<int, 3> x{};
    int k = 0;
    for (int w = 0; w < 4; ++w)
        if (w != v) x[k++] = w;
    Perm4 p(v, x[0], x[1], x[2]);
    if (p.sign() != color) std::swap(x[1], x[2]);
    return x;
}

// Fills the one unknown slot of a corner triangle from the two known ones,
// using (pos[x2]-pos[x0])/(pos[x1]-pos[x0]) = shape of edge {v,x0} for every
// cyclic rotation of (x0,x1,x2).
void fill_third(std::array<Complex, 4>& pos, int v, int unknown, Complex z, int color) {
    std::array<int, 3> x = oriented_others(v, color);
    int i = 0;
    while (x[(i + 2) % 3] != unknown) ++i;
    int a = x[i], b = x[(i + 1) % 3], c = x[(i + 2) % 3];
    pos[c] = pos[a] + edge_shape(z, v, a) * (pos[b] - pos[a]);
}

}  // namespace

CuspCrossSection develop_cusp(const Triangulation& tri, const std::vector<Complex>& shapes,
                              int cusp_class, double residual_tol) {
    if (int(shapes.size()) != tri.size()) throw Error("one shape per tetrahedron required");
    for (Complex z : shapes) require_upper_half(z);
    if (cusp_class < 0 || cusp_class >= tri.vertex_class_count())
        throw Error("no such vertex class");
    if (tri.vertex_kind(cusp_class) != VertexKind::Ideal || tri.link_euler(cusp_class) != 0 ||
        !tri.orientable())
        throw Error("cusp link is not a torus");

    // Orientation colors: gluing permutations are odd between like colors.
    std::vector<int> color(tri.size(), 0);
    {
        std::vector<int> stack{0};
        color[0] = 1;
        while (!stack.empty()) {
            int t = stack.back();
            stack.pop_back();
            for (int f = 0; f < 4; ++f) {
                const auto& g = tri.gluing(t, f);
                if (!g) continue;
                if (color[g->tet] == 0) {
                    color[g->tet] = -color[t] * g->perm.sign();
                    stack.push_back(g->tet);
                }
            }
        }
    }

    CuspCrossSection cs;
    cs.cusp = cusp_class;
    const auto& corners = tri.vertex_incidences(cusp_class);
    std::map<std::pair<int, int>, int> idx;  // (tet, corner) -> triangle index
    for (const VertexRef& vr : corners) {
        idx[{vr.tet, vr.vertex}] = int(cs.triangles.size());
        cs.triangles.push_back({vr.tet, vr.vertex, {}});
    }

    std::vector<bool> placed(cs.triangles.size(), false);
    std::vector<Complex> translations;

    // Seed the first corner with its shape triangle and develop by BFS.
    {
        CuspTriangle& t0 = cs.triangles[0];
        std::array<int, 3> x = oriented_others(t0.corner, color[t0.tet]);
        t0.pos[x[0]] = 0.0;
        t0.pos[x[1]] = 1.0;
        t0.pos[x[2]] = edge_shape(shapes[t0.tet], t0.corner, x[0]);
        placed[0] = true;
    }
    std::vector<int> queue{0};
    for (size_t qi = 0; qi < queue.size(); ++qi) {
        const CuspTriangle cur = cs.triangles[queue[qi]];
        for (int f = 0; f < 4; ++f) {
            if (f == cur.corner) continue;
            const auto& g = tri.gluing(cur.tet, f);
            if (!g) throw Error("cusp development requires a closed triangulation");
            const Perm4& p = g->perm;
            int j = idx.at({g->tet, p[cur.corner]});
            CuspTriangle& nb = cs.triangles[j];
            std::array<int, 2> shared{};
            int k = 0;
            for (int w = 0; w < 4; ++w)
                if (w != cur.corner && w != f) shared[k++] = w;
            if (!placed[j]) {
                nb.pos[p[shared[0]]] = cur.pos[shared[0]];
                nb.pos[p[shared[1]]] = cur.pos[shared[1]];
                int unknown = p[f];
                fill_third(nb.pos, nb.corner, unknown, shapes[nb.tet], color[nb.tet]);
                placed[j] = true;
                queue.push_back(j);
            } else {
                // Both placements of the shared side determine a similarity
                // g(w) = lambda*w + mu; the holonomy must be translational.
                Complex e1 = nb.pos[p[shared[0]]], e2 = nb.pos[p[shared[1]]];
                Complex t1 = cur.pos[shared[0]], t2 = cur.pos[shared[1]];
                Complex lambda = (e2 - e1) / (t2 - t1);
                Complex mu = e1 - lambda * t1;
                if (std::abs(lambda - 1.0) > residual_tol)
                    throw Error("cusp holonomy has a nontrivial rotational part; "
                                "shapes do not satisfy the gluing equations");
                translations.push_back(mu);
            }
        }
    }

    double scale0 = 0.0;
    for (const CuspTriangle& t : cs.triangles)
        for (int w = 0; w < 4; ++w) scale0 = std::max(scale0, std::abs(t.pos[w]));

    // Extract two independent generators of the translation lattice.
    std::vector<Complex> gens;
    for (Complex mu : translations)
        if (std::abs(mu) > residual_tol * (1.0 + scale0)) gens.push_back(mu);
    if (gens.empty()) throw Error("no holonomy translations found");
    std::sort(gens.begin(), gens.end(), [](Complex a, Complex b) {
        return std::abs(a) < std::abs(b);
    });
    Complex u = gens[0];
    Complex v = 0.0;
    for (Complex w : gens)
        if (std::abs(std::imag(std::conj(u) * w)) > 1e-9 * std::abs(u) * std::abs(w)) {
            v = w;
            break;
        }
    if (v == 0.0) throw Error("holonomy translations do not span a lattice");

    // Lagrange-Gauss reduction: afterwards u is a shortest lattice vector.
    for (int it = 0; it < 100; ++it) {
        if (std::abs(u) > std::abs(v)) std::swap(u, v);
        double q = std::round(std::real(std::conj(u) * v) / std::norm(u));
        if (q == 0.0) break;
        v -= q * u;
    }
    if (std::abs(v) < std::abs(u)) std::swap(u, v);

    // Every observed translation must be an integer combination.
    double det = std::imag(std::conj(u) * v);
    for (Complex w : gens) {
        double beta = std::imag(std::conj(u) * w) / det;
        double alpha = -std::imag(std::conj(v) * w) / det;
        if (std::abs(alpha - std::round(alpha)) > 1e-6 || std::abs(beta - std::round(beta)) > 1e-6)
            throw Error("holonomy translations do not form a lattice");
    }

    // Normalize: send u to 1 and orient v into the upper half plane.
    Complex vn = v / u;
    if (vn.imag() < 0) vn = -vn;
    for (CuspTriangle& t : cs.triangles)
        for (int w = 0; w < 4; ++w) t.pos[w] /= u;
    cs.u = 1.0;
    cs.v = vn;
    cs.shortest = 1.0;
    cs.area = std::abs(vn.imag());

    // One length per link edge: each triangle side lies in a face and is
    // identified with one side of the neighboring corner triangle.
    std::map<std::array<int, 3>, double> seen;
    for (const CuspTriangle& t : cs.triangles)
        for (int f = 0; f < 4; ++f) {
            if (f == t.corner) continue;
            std::array<int, 2> side{};
            int k = 0;
            for (int w = 0; w < 4; ++w)
                if (w != t.corner && w != f) side[k++] = w;
            std::array<int, 3> key{t.tet, t.corner, f};
            const auto& g = tri.gluing(t.tet, f);
            std::array<int, 3> other{g->tet, g->perm[t.corner], g->perm[f]};
            if (other < key) key = other;
            double len = std::abs(t.pos[side[0]] - t.pos[side[1]]);
            auto [it, fresh] = seen.try_emplace(key, len);
            if (!fresh && std::abs(it->second - len) > 1e-6 * (1.0 + len))
                throw Error("inconsistent cusp edge lengths");
        }
    for (const auto& [key, len] : seen) cs.edge_lengths.push_back(len);
    std::sort(cs.edge_lengths.begin(), cs.edge_lengths.end());
    return cs;
}

}  // namespace cusped
