#pragma once

#include <string>

#include "cusped/logreal.hpp"
#include "cusped/pachner.hpp"

namespace cusped {

struct ThicknessParams {
    int m1 = 1, m2 = 1;
    double theta0 = 0.0;
    double epsilon = 0.29;
    double v_tet = 0.0;  // filled from regular_ideal_volume() by make()

    int m() const { return m1 + m2; }

    // Validates ranges; v_tet defaults to the regular ideal volume.
    static ThicknessParams make(int m1, int m2, double theta0, double epsilon = 0.29);
};

struct EdgeBounds {
    LogReal l0, L0;
};

// l0(n) = (sin t)^n (sqrt(n^2+8n)-n)/(4n), L0(A) = 2 sqrt(A cot t).
EdgeBounds torus_edge_bounds(double n, double A, double theta0);

double circumradius_bound(double L0, double theta0);

struct CuspConstants {
    LogReal l0;
    double z0 = 0.0, A0 = 0.0, h0_max = 0.0;
};

CuspConstants cusp_constants(const ThicknessParams& p);

struct ThicknessRadii {
    LogReal a0, r0, s0_exact;
    LogReal sinh_a0;      // sinh(a0)
    LogReal sinh_excess;  // sinh(a0)/a0 - 1, positive: witnesses a0 < sinh(a0)
};

ThicknessRadii thickness_radii(const ThicknessParams& p);

double r_of_t(double t, double theta0);       // arcsinh(sinh(t) sin theta0)
LogReal r_of_t_log(LogReal t, double theta0);

LogReal systole_bound_simplified(int m, double theta0);

struct IntersectionBounds {
    LogReal n_components, f;
};

IntersectionBounds intersection_bounds(const ThicknessParams& p);

// (lem35, pachnerlem) for given simplex counts of the common subdivision (s)
// and the ambient triangulation (p).
std::pair<double, double> move_accounting(const SimplexCounts& s, const SimplexCounts& p,
                                          double theta0);

struct PachnerBound {
    LogReal N_exact, N_simplified, s_cap;
    bool simplified_valid = false;  // the simplified form requires m >= 4
};

PachnerBound pachner_bound(const ThicknessParams& p);

struct BoundsReport {
    ThicknessParams params;
    LogReal l0, L0, circumradius_bound, z0, A0, h0_max;
    LogReal a0, r0, s0_exact, s0_simplified, sinh_a0;
    LogReal n_components, f;
    LogReal N_exact, N_simplified, lem35_bound, pachnerlem_bound, s_cap;
    bool n_simplified_valid = false;
};

BoundsReport bounds_report(int m1, int m2, double theta0, double epsilon = 0.29);

std::string bounds_report_json(const BoundsReport& r);
std::string bounds_report_human(const BoundsReport& r);

}  // namespace cusped
