#include "cusped/bounds.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

#include <json.hpp>

#include "cusped/hypgeom.hpp"

namespace cusped {

namespace {

constexpr double kPi = std::numbers::pi;

void check_theta(double theta0) {
    // Slack admits pi/3 given to ~10 decimal digits on the command line.
    if (!(theta0 > 0) || theta0 > kPi / 3 + 1e-9) throw Error("theta0 must lie in (0, pi/3]");
}

}  // namespace

ThicknessParams ThicknessParams::make(int m1, int m2, double theta0, double epsilon) {
    if (m1 < 1 || m2 < 1) throw Error("m1 and m2 must be positive");
    check_theta(theta0);
    if (!(epsilon >= 0.29) || !(epsilon < 1)) throw Error("epsilon must lie in [0.29, 1)");
    ThicknessParams p;
    p.m1 = m1;
    p.m2 = m2;
    p.theta0 = theta0;
    p.epsilon = epsilon;
    p.v_tet = regular_ideal_volume();
    return p;
}

EdgeBounds torus_edge_bounds(double n, double A, double theta0) {
    if (!(n >= 1)) throw Error("triangle count cap must be at least 1");
    if (!(A > 0)) throw Error("area cap must be positive");
    check_theta(theta0);
    EdgeBounds b;
    // sqrt(n^2+8n)-n computed as 8n/(sqrt(n^2+8n)+n) to dodge cancellation.
    double diff = 8.0 * n / (std::sqrt(n * n + 8.0 * n) + n);
    b.l0 = LogReal::from_ln(n * std::log(std::sin(theta0)) + std::log(diff / (4.0 * n)));
    b.L0 = LogReal::from(2.0 * std::sqrt(A / std::tan(theta0)));
    return b;
}

double circumradius_bound(double L0, double theta0) {
    if (!(L0 > 0)) throw Error("L0 must be positive");
    check_theta(theta0);
    return L0 / (2.0 * std::sin(theta0));
}

CuspConstants cusp_constants(const ThicknessParams& p) {
    CuspConstants c;
    const double s = std::sin(p.theta0);
    const int m = p.m();
    // l0 at n = 4m; sqrt(m^2+2m)-m as 2m/(sqrt(m^2+2m)+m).
    double diff = 2.0 * m / (std::sqrt(double(m) * m + 2.0 * m) + m);
    c.l0 = LogReal::from_ln(4.0 * m * std::log(s) + std::log(diff / (4.0 * m)));
    c.z0 = std::sqrt(2.0 * m * p.v_tet / std::tan(p.theta0)) / (p.epsilon * s);
    c.A0 = 2.0 * m * p.v_tet / (p.epsilon * p.epsilon);
    c.h0_max = 1.0 / p.epsilon;
    return c;
}

double r_of_t(double t, double theta0) {
    if (t < 0) throw Error("t must be nonnegative");
    check_theta(theta0);
    return std::asinh(std::sinh(t) * std::sin(theta0));
}

LogReal r_of_t_log(LogReal t, double theta0) {
    check_theta(theta0);
    return log_asinh(log_sinh(t) * std::sin(theta0));
}

ThicknessRadii thickness_radii(const ThicknessParams& p) {
    CuspConstants c = cusp_constants(p);
    const double s = std::sin(p.theta0);
    ThicknessRadii r;
    r.a0 = log_asinh(c.l0 * (s / c.z0));
    r.r0 = log_asinh(log_sinh(r.a0 * 0.5) * s);
    r.s0_exact = log_asinh(log_sinh(r.a0 * 0.25) * s);
    r.sinh_a0 = log_sinh(r.a0);
    r.sinh_excess = log_sinh_excess(r.a0);
    if (!(r.sinh_a0.value() < p.epsilon))
        throw Error("expected sinh(a0) < epsilon; parameters out of the lemma's range");
    return r;
}

LogReal systole_bound_simplified(int m, double theta0) {
    if (m < 1) throw Error("m must be positive");
    check_theta(theta0);
    return LogReal::from_ln(-9.0 * std::log(2.0) + (4.0 * m + 3.5) * std::log(std::sin(theta0)) -
                            1.5 * std::log(double(m)));
}

IntersectionBounds intersection_bounds(const ThicknessParams& p) {
    ThicknessRadii r = thickness_radii(p);
    LogReal smr = log_sinh_minus_x(r.r0);  // vol(B(r0/2)) = pi * (sinh r0 - r0)
    IntersectionBounds b;
    b.n_components = LogReal::from(2.0 * p.v_tet / p.theta0) / smr;
    b.f = LogReal::from(4.0 * kPi * p.v_tet / (p.theta0 * p.theta0)) / smr + LogReal::from(1.0);
    b.f = b.f * double(p.m());
    return b;
}

std::pair<double, double> move_accounting(const SimplexCounts& s, const SimplexCounts& p,
                                          double theta0) {
    check_theta(theta0);
    const double c = 4.0 * kPi / theta0;
    double lem35 = c * double(s.s1) + 2.0 * double(s.s2) + double(s.s3);
    double pach = 2.0 * c * double(s.s1) + 12.0 * double(s.s2) + 24.0 * double(s.s3) +
                  c * double(p.s1) + 2.0 * double(p.s2) + double(p.s3);
    return {lem35, pach};
}

PachnerBound pachner_bound(const ThicknessParams& p) {
    const int m = p.m();
    if (m < 2) throw Error("pachner bound requires m >= 2");
    IntersectionBounds ib = intersection_bounds(p);
    PachnerBound b;
    b.s_cap = ib.f * 112.0;
    b.N_exact = LogReal::from(10752.0 + 3584.0 * kPi / p.theta0) * ib.f +
                LogReal::from((5.0 + 8.0 * kPi / p.theta0) * m);
    b.N_simplified = LogReal::from_ln(std::log(2.797e12) + 5.5 * std::log(double(m)) -
                                      (12.0 * m + 13.5) * std::log(std::sin(p.theta0)));
    b.simplified_valid = m >= 4;
    return b;
}

BoundsReport bounds_report(int m1, int m2, double theta0, double epsilon) {
    ThicknessParams p = ThicknessParams::make(m1, m2, theta0, epsilon);
    BoundsReport r;
    r.params = p;
    CuspConstants c = cusp_constants(p);
    r.l0 = c.l0;
    r.z0 = LogReal::from(c.z0);
    r.A0 = LogReal::from(c.A0);
    r.h0_max = LogReal::from(c.h0_max);
    EdgeBounds eb = torus_edge_bounds(4.0 * p.m(), c.A0, theta0);
    r.L0 = eb.L0;
    r.circumradius_bound = LogReal::from(circumradius_bound(eb.L0.value(), theta0));
    ThicknessRadii tr = thickness_radii(p);
    r.a0 = tr.a0;
    r.r0 = tr.r0;
    r.s0_exact = tr.s0_exact;
    r.sinh_a0 = tr.sinh_a0;
    r.s0_simplified = systole_bound_simplified(p.m(), theta0);
    IntersectionBounds ib = intersection_bounds(p);
    r.n_components = ib.n_components;
    r.f = ib.f;
    PachnerBound pb = pachner_bound(p);
    r.N_exact = pb.N_exact;
    r.N_simplified = pb.N_simplified;
    r.s_cap = pb.s_cap;
    r.n_simplified_valid = pb.simplified_valid;
    // Worst-case move accounting at the caps: the common-subdivision counts
    // s1, s2, s3 are each at most s_cap, and a closed m-tet triangulation has
    // at most (6m, 2m, m) edges/faces/tets.
    const double cth = 4.0 * kPi / theta0;
    r.lem35_bound = r.s_cap * (cth + 3.0);
    r.pachnerlem_bound =
        r.s_cap * (2.0 * cth + 36.0) +
        LogReal::from(cth * 6.0 * p.m() + 2.0 * 2.0 * p.m() + double(p.m()));
    return r;
}

namespace {

nlohmann::json field_json(const LogReal& v, const char* desc) {
    nlohmann::json j;
    double val = v.value();
    if (std::isfinite(val))
        j["value"] = val;
    else
        j["value"] = nullptr;
    j["log10"] = v.log10();
    j["sci"] = v.sci();
    j["desc"] = desc;
    return j;
}

}  // namespace

std::string bounds_report_json(const BoundsReport& r) {
    nlohmann::json j;
    j["params"] = {{"m1", r.params.m1},         {"m2", r.params.m2},
                   {"m", r.params.m()},         {"theta0", r.params.theta0},
                   {"epsilon", r.params.epsilon}, {"v_tet", r.params.v_tet}};
    j["l0"] = field_json(r.l0, "lower bound for cusp triangulation edge lengths");
    j["L0"] = field_json(r.L0, "upper bound for cusp triangulation edge lengths");
    j["circumradius_bound"] = field_json(r.circumradius_bound,
                                         "upper bound for cusp triangle circumradii");
    j["z0"] = field_json(r.z0, "normalized height of the reference horosphere");
    j["A0"] = field_json(r.A0, "upper bound for the cusp cross-section area");
    j["h0_max"] = field_json(r.h0_max, "upper bound for the maximal cusp height");
    j["a0"] = field_json(r.a0, "embedded edge-ball radius");
    j["r0"] = field_json(r.r0, "embedded face-ball radius");
    j["s0_exact"] = field_json(r.s0_exact, "exact systole lower bound");
    j["s0_simplified"] = field_json(r.s0_simplified, "simplified systole lower bound");
    j["sinh_a0"] = field_json(r.sinh_a0, "sinh of the edge-ball radius (< epsilon)");
    j["n_components"] = field_json(r.n_components,
                                   "upper bound for intersection components per tetrahedron");
    j["f"] = field_json(r.f, "upper bound for faces of the intersection complex");
    j["N_exact"] = field_json(r.N_exact, "exact Pachner move bound");
    j["N_simplified"] = field_json(r.N_simplified, "simplified Pachner move bound");
    j["N_simplified_valid"] = r.n_simplified_valid;
    j["lem35_bound"] = field_json(r.lem35_bound,
                                  "move count for starring the common subdivision, at the caps");
    j["pachnerlem_bound"] = field_json(
        r.pachnerlem_bound, "move count for relating the two triangulations, at the caps");
    j["s_cap"] = field_json(r.s_cap, "upper bound for common-subdivision cells (112 f)");
    return j.dump(2);
}

std::string bounds_report_human(const BoundsReport& r) {
    std::ostringstream os;
    os << "m = " << r.params.m() << " (m1 = " << r.params.m1 << ", m2 = " << r.params.m2
       << "), theta0 = " << r.params.theta0 << ", epsilon = " << r.params.epsilon
       << ", v_tet = " << r.params.v_tet << "\n";
    auto line = [&os](const char* name, const LogReal& v) {
        os << "  " << name << " = " << v.sci() << "\n";
    };
    line("l0", r.l0);
    line("L0", r.L0);
    line("circumradius_bound", r.circumradius_bound);
    line("z0", r.z0);
    line("A0", r.A0);
    line("h0_max", r.h0_max);
    line("a0", r.a0);
    line("r0", r.r0);
    line("s0_exact", r.s0_exact);
    line("s0_simplified", r.s0_simplified);
    line("sinh_a0", r.sinh_a0);
    line("n_components", r.n_components);
    line("f", r.f);
    line("N_exact", r.N_exact);
    os << "  N_simplified = " << r.N_simplified.sci()
       << (r.n_simplified_valid ? "" : "  (not applicable: m < 4)") << "\n";
    line("lem35_bound", r.lem35_bound);
    line("pachnerlem_bound", r.pachnerlem_bound);
    line("s_cap", r.s_cap);
    return os.str();
}

}  // namespace cusped
