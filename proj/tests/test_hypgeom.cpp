#include <doctest.h>

#include <cmath>
#include <numbers>

#include "cusped/hypgeom.hpp"
#include "fixtures.hpp"

using namespace cusped;
using cusped_test::load_fixture;

namespace {

constexpr double kPi = std::numbers::pi;

double simpson(double (*f)(double), double a, double b) {
    double m = 0.5 * (a + b);
    return (b - a) / 6.0 * (f(a) + 4.0 * f(m) + f(b));
}

double adaptive(double (*f)(double), double a, double b, double whole, double tol, int depth) {
    double m = 0.5 * (a + b);
    double left = simpson(f, a, m), right = simpson(f, m, b);
    if (depth <= 0 || std::abs(left + right - whole) < 15.0 * tol)
        return left + right + (left + right - whole) / 15.0;
    return adaptive(f, a, m, left, tol / 2, depth - 1) +
           adaptive(f, m, b, right, tol / 2, depth - 1);
}

double neg_log_2sin(double t) { return -std::log(std::abs(2.0 * std::sin(t))); }

// Independent oracle: Lambda(theta) = -int_0^theta log|2 sin t| dt, with the
// log singularity at 0 handled analytically.
double lob_quadrature(double theta) {
    double sign = 1.0;
    if (theta < 0) {
        theta = -theta;
        sign = -1.0;
    }
    const double d = 1e-6;
    if (theta <= d) return sign * theta * (1.0 - std::log(2.0 * theta));
    double head = d * (1.0 - std::log(2.0 * d));
    double tail = adaptive(neg_log_2sin, d, theta, simpson(neg_log_2sin, d, theta), 1e-14, 40);
    return sign * (head + tail);
}

}  // namespace

TEST_CASE("lobachevsky matches the quadrature oracle") {
    for (double t : {0.05, 0.3, kPi / 6, kPi / 3, 1.2, kPi / 2, 2.0, 2.9})
        CHECK(lobachevsky(t) == doctest::Approx(lob_quadrature(t)).epsilon(1e-10));
    CHECK(lobachevsky(0.0) == 0.0);
    // Odd and pi-periodic.
    CHECK(lobachevsky(-0.7) == doctest::Approx(-lobachevsky(0.7)).epsilon(1e-12));
    CHECK(lobachevsky(0.4 + kPi) == doctest::Approx(lobachevsky(0.4)).epsilon(1e-10));
    CHECK(lobachevsky(kPi / 2) == doctest::Approx(lob_quadrature(kPi / 2)).epsilon(1e-10));
}

TEST_CASE("regular ideal volume window") {
    double v = regular_ideal_volume();
    CHECK(v > 1.0);
    CHECK(v < 1.015);
    CHECK(v == doctest::Approx(1.0149416).epsilon(1e-6));
    CHECK(v == doctest::Approx(tet_volume(std::polar(1.0, kPi / 3))).epsilon(1e-14));
    // Independent value: 3 * quadrature at pi/3.
    CHECK(v == doctest::Approx(3.0 * lob_quadrature(kPi / 3)).epsilon(1e-10));
}

TEST_CASE("angles from shape") {
    Angles a = angles_from_shape(Complex(0.0, 1.0));
    CHECK(a.alpha == doctest::Approx(kPi / 2));
    CHECK(a.beta == doctest::Approx(kPi / 4));
    CHECK(a.gamma == doctest::Approx(kPi / 4));
    // Angles of an ideal triangle sum to pi for any shape.
    for (Complex z : {Complex(0.3, 0.9), Complex(-1.2, 0.4), Complex(2.0, 2.0)}) {
        Angles w = angles_from_shape(z);
        CHECK(w.alpha + w.beta + w.gamma == doctest::Approx(kPi).epsilon(1e-12));
        CHECK(w.alpha > 0);
        CHECK(w.beta > 0);
        CHECK(w.gamma > 0);
    }
    CHECK_THROWS_AS(angles_from_shape(Complex(0.5, -0.1)), Error);
    CHECK_THROWS_AS(angles_from_shape(Complex(0.5, 0.0)), Error);
}

TEST_CASE("edge shapes pair up opposite edges") {
    Complex z(0.37, 0.82);
    CHECK(edge_shape(z, 0, 1) == edge_shape(z, 2, 3));
    CHECK(edge_shape(z, 0, 2) == edge_shape(z, 1, 3));
    CHECK(edge_shape(z, 0, 3) == edge_shape(z, 1, 2));
    CHECK(edge_shape(z, 0, 1) == z);
    CHECK(edge_shape(z, 2, 0) == 1.0 / (1.0 - z));
    // The three shapes multiply to -1.
    Complex prod = edge_shape(z, 0, 1) * edge_shape(z, 0, 2) * edge_shape(z, 0, 3);
    CHECK(std::abs(prod + 1.0) < 1e-14);
}

TEST_CASE("thickness check") {
    std::vector<Complex> reg{std::polar(1.0, kPi / 3), std::polar(1.0, kPi / 3)};
    ThicknessResult t = check_thickness(reg, kPi / 3);
    CHECK(t.is_thick);
    CHECK(t.min_angle == doctest::Approx(kPi / 3).epsilon(1e-12));
    std::vector<Complex> skew{Complex(0.2, 0.3)};
    CHECK_FALSE(check_thickness(skew, kPi / 3).is_thick);
    CHECK(check_thickness(skew, 0.3).is_thick);
    CHECK_THROWS_AS(check_thickness(reg, 0.0), Error);
    CHECK_THROWS_AS(check_thickness(reg, 1.2), Error);  // > pi/3
    CHECK_THROWS_AS(check_thickness({}, kPi / 3), Error);
}

TEST_CASE("gluing residual on the figure-eight") {
    TriFile tf = load_fixture("fig8.tri");
    CHECK(gluing_residual(tf.tri, *tf.shapes) < 1e-12);
    // Perturbed shapes violate the edge equations.
    std::vector<Complex> bad = *tf.shapes;
    bad[0] += Complex(0.05, 0.0);
    CHECK(gluing_residual(tf.tri, bad) > 1e-3);
    CHECK_THROWS_AS(gluing_residual(tf.tri, {bad[0]}), Error);  // wrong count
}

TEST_CASE("ball volume identity") {
    CHECK(ball_volume(0.0) == 0.0);
    for (int i = 1; i <= 100; ++i) {
        double r = 5.0 * i / 101.0;
        CHECK(std::abs(ball_volume(r / 2) - kPi * (std::sinh(r) - r)) < 1e-12 * (1 + ball_volume(r / 2)));
    }
    CHECK_THROWS_AS(ball_volume(-0.1), Error);
}

TEST_CASE("distance to a vertical geodesic") {
    CHECK(dist_to_vertical(0.0, 1.0) == 0.0);
    CHECK(dist_to_vertical(1.0, 1.0) == doctest::Approx(std::asinh(1.0)));
    // Scale invariance of the hyperbolic metric.
    CHECK(dist_to_vertical(3.0, 2.0) == doctest::Approx(dist_to_vertical(1.5, 1.0)));
    CHECK_THROWS_AS(dist_to_vertical(1.0, 0.0), Error);
    CHECK_THROWS_AS(dist_to_vertical(-1.0, 1.0), Error);
}

TEST_CASE("cusp development of the figure-eight") {
    TriFile tf = load_fixture("fig8.tri");
    CuspCrossSection cs = develop_cusp(tf.tri, *tf.shapes, 0);
    CHECK(cs.triangles.size() == 8);
    CHECK(cs.shortest == 1.0);
    CHECK(std::abs(cs.u - Complex(1.0, 0.0)) < 1e-12);
    CHECK(cs.v.imag() > 0);
    CHECK(cs.area == doctest::Approx(2.0 * std::sqrt(3.0)).epsilon(1e-9));
    CHECK(cs.edge_lengths.size() == 12);
    for (double l : cs.edge_lengths) CHECK(l == doctest::Approx(1.0).epsilon(1e-9));
    // Lattice vectors must be independent.
    CHECK(std::abs(std::imag(std::conj(cs.u) * cs.v)) == doctest::Approx(cs.area));
}

TEST_CASE("cusp development of the sibling") {
    TriFile tf = load_fixture("fig8_sibling.tri");
    CuspCrossSection cs = develop_cusp(tf.tri, *tf.shapes, 0);
    CHECK(cs.triangles.size() == 8);
    CHECK(cs.shortest == 1.0);
    CHECK(cs.area > 0);
}

TEST_CASE("cusp development error paths") {
    TriFile tf = load_fixture("fig8.tri");
    CHECK_THROWS_AS(develop_cusp(tf.tri, *tf.shapes, 5), Error);  // no such class
    // Non-orientable link (Klein bottle): rejected.
    TriFile gies = load_fixture("gieseking.tri");
    CHECK_THROWS_AS(develop_cusp(gies.tri, {std::polar(1.0, kPi / 3)}, 0), Error);
    // Shapes violating the gluing equations surface as rotational holonomy.
    std::vector<Complex> bad = *tf.shapes;
    bad[1] = Complex(0.4, 0.9);
    CHECK_THROWS_AS(develop_cusp(tf.tri, bad, 0), Error);
}
