#pragma once

#include <array>
#include <complex>
#include <vector>

#include "cusped/triangulation.hpp"

namespace cusped {

using Complex = std::complex<double>;

struct Angles {
    double alpha, beta, gamma;  // arg z, arg 1/(1-z), arg (z-1)/z
};

// Dihedral angles of the ideal tetrahedron with shape z (Im z > 0).
Angles angles_from_shape(Complex z);

// Shape parameter assigned to edge {a,b}: z on {0,1}/{2,3}, 1/(1-z) on
// {0,2}/{1,3}, (z-1)/z on {0,3}/{1,2}.
Complex edge_shape(Complex z, int a, int b);

// Lobachevsky function via its classical series, reduced by oddness and
// pi-periodicity.
double lobachevsky(double theta);

double tet_volume(Complex z);

// Volume of the regular ideal tetrahedron, computed once.
double regular_ideal_volume();

struct ThicknessResult {
    bool is_thick = false;
    double min_angle = 0.0;
};

// theta0 must lie in (0, pi/3].
ThicknessResult check_thickness(const std::vector<Complex>& shapes, double theta0);

// Max over edge classes of |sum of log shape parameters - 2*pi*i|.
double gluing_residual(const Triangulation& tri, const std::vector<Complex>& shapes);

// Volume of a hyperbolic ball: pi*(sinh(2r) - 2r).
double ball_volume(double r);

// Distance in H^2 from (x,y) to the vertical geodesic above 0: arcsinh(x/y).
double dist_to_vertical(double x, double y);

struct CuspTriangle {
    int tet = 0;
    int corner = 0;
    // Normalized vertex positions by tet vertex slot; the corner's own slot
    // is unused.
    std::array<Complex, 4> pos{};
};

struct CuspCrossSection {
    int cusp = 0;                       // vertex class id
    Complex u, v;                       // normalized lattice generators, |u| = 1
    double area = 0.0;                  // |Im(conj(u) * v)|
    double shortest = 1.0;              // exactly 1 after normalization
    std::vector<CuspTriangle> triangles;
    std::vector<double> edge_lengths;   // one per link edge, normalized
};

// Develops the Euclidean similarity structure of the cusp torus, computes the
// holonomy translation lattice, and rescales so the shortest lattice vector
// has length exactly 1.
CuspCrossSection develop_cusp(const Triangulation& tri, const std::vector<Complex>& shapes,
                              int cusp_class, double residual_tol = 1e-9);

}  // namespace cusped
