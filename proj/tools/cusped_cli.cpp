#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "cusped/bounds.hpp"
#include "cusped/canon.hpp"
#include "cusped/hypgeom.hpp"
#include "cusped/search.hpp"

using nlohmann::json;
using namespace cusped;

namespace {

// Exit codes: 0 success, 1 usage error, 2 negative domain result, 3 resource
// cap hit.
constexpr int kOk = 0, kUsage = 1, kNegative = 2, kCap = 3;

TriFile load(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error("cannot open " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_tri_file(ss.str());
}

std::vector<Complex> require_shapes(const TriFile& tf, const std::string& path) {
    if (!tf.shapes) throw Error(path + " carries no shape data");
    return *tf.shapes;
}

// --theta0 auto measures the minimum dihedral angle; an explicit value must
// not exceed it.
double resolve_theta0(const std::string& theta0_arg, const std::vector<Complex>& shapes) {
    ThicknessResult t = check_thickness(shapes, std::numbers::pi / 3);
    double measured = t.min_angle;
    if (theta0_arg == "auto") return measured;
    double v = std::stod(theta0_arg);
    if (v > measured + 1e-12)
        throw Error("theta0 exceeds the measured minimum dihedral angle " +
                    std::to_string(measured));
    return v;
}

json validation_json(const ValidationReport& r) {
    json j;
    j["closed"] = r.closed;
    j["connected"] = r.connected;
    j["orientable"] = r.orientable;
    j["tetrahedra"] = r.tet_count;
    j["edge_classes"] = r.edge_class_count;
    j["vertex_classes"] = r.vertex_class_count;
    j["cusps"] = r.cusp_count;
    j["edge_degrees"] = r.edge_degrees;
    j["link_eulers"] = r.link_eulers;
    json kinds = json::array();
    for (VertexKind k : r.vertex_kinds) kinds.push_back(k == VertexKind::Ideal ? "ideal" : "material");
    j["vertex_kinds"] = kinds;
    return j;
}

json move_json(const Move& m) {
    json jm;
    jm["kind"] = move_kind_name(m.kind);
    switch (m.kind) {
        case MoveKind::TwoThree: jm["face"] = {m.tet, m.face}; break;
        case MoveKind::ThreeTwo: jm["edge"] = {m.tet, m.a, m.b}; break;
        case MoveKind::OneFour: jm["tet"] = m.tet; break;
        case MoveKind::FourOne: jm["vertex"] = {m.tet, m.vertex}; break;
    }
    return jm;
}

int run(int argc, char** argv) {
    CLI::App app{"Pachner moves, canonical signatures and explicit bounds for "
                 "triangulated cusped 3-manifolds"};
    app.require_subcommand(1);
    bool json_out = false;
    app.add_flag("--json", json_out, "machine-readable JSON on stdout");

    std::string file_a, file_b, theta0_arg = "auto", move_json_text;
    double epsilon = 0.29;
    int m1 = 0, m2 = 0, m_flag = 0, cusp_index = -1, radius = 2;
    SearchBudget budget;

    auto* validate_cmd = app.add_subcommand("validate", "parse and validate a triangulation file");
    validate_cmd->add_option("file", file_a)->required();

    auto* canon_cmd = app.add_subcommand("canon", "canonical signature");
    canon_cmd->add_option("file", file_a)->required();

    auto* moves_cmd = app.add_subcommand("moves", "Pachner moves");
    auto* moves_list = moves_cmd->add_subcommand("list", "list applicable moves");
    moves_list->add_option("file", file_a)->required();
    auto* moves_apply = moves_cmd->add_subcommand("apply", "apply a move sequence");
    moves_apply->add_option("file", file_a)->required();
    moves_apply->add_option("--move", move_json_text, "move sequence JSON")->required();
    moves_cmd->require_subcommand(1);

    auto* search_cmd = app.add_subcommand("search", "move-graph search");
    auto* search_connect = search_cmd->add_subcommand("connect", "find a move path");
    search_connect->add_option("a", file_a)->required();
    search_connect->add_option("b", file_b)->required();
    auto* search_sphere = search_cmd->add_subcommand("sphere", "count signatures by distance");
    search_sphere->add_option("a", file_a)->required();
    search_sphere->add_option("--radius", radius);
    for (auto* sc : {search_connect, search_sphere}) {
        sc->add_option("--max-moves", budget.max_moves);
        sc->add_option("--max-tetrahedra", budget.max_tetrahedra);
        sc->add_option("--max-states", budget.max_states);
    }
    search_cmd->require_subcommand(1);

    auto* bounds_cmd = app.add_subcommand("bounds", "full bound report for (m1, m2, theta0)");
    bounds_cmd->add_option("--m1", m1)->required();
    bounds_cmd->add_option("--m2", m2)->required();
    bounds_cmd->add_option("--theta0", theta0_arg)->required();
    bounds_cmd->add_option("--epsilon", epsilon);

    auto* systole_cmd = app.add_subcommand("systole", "systole lower bounds");
    systole_cmd->add_option("--file", file_a);
    systole_cmd->add_option("--m", m_flag);
    systole_cmd->add_option("--theta0", theta0_arg);
    systole_cmd->add_option("--epsilon", epsilon);

    auto* cusp_cmd = app.add_subcommand("cusp", "develop the cusp cross-section");
    cusp_cmd->add_option("file", file_a)->required();
    cusp_cmd->add_option("--cusp", cusp_index);

    auto* thickness_cmd = app.add_subcommand("thickness", "check all dihedral angles >= theta0");
    thickness_cmd->add_option("file", file_a)->required();
    thickness_cmd->add_option("--theta0", theta0_arg)->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? kOk : kUsage;
    }

    if (validate_cmd->parsed()) {
        TriFile tf = load(file_a);
        ValidationReport r = validate(tf.tri);
        if (json_out) {
            std::cout << validation_json(r).dump(2) << "\n";
        } else {
            std::cout << "tetrahedra: " << r.tet_count << "\nclosed: " << (r.closed ? "yes" : "no")
                      << "\nconnected: " << (r.connected ? "yes" : "no")
                      << "\norientable: " << (r.orientable ? "yes" : "no")
                      << "\nedge classes: " << r.edge_class_count
                      << "\nvertex classes: " << r.vertex_class_count
                      << "\ncusps: " << r.cusp_count << "\n";
        }
        return kOk;
    }

    if (canon_cmd->parsed()) {
        TriFile tf = load(file_a);
        std::string sig = canonical_signature(tf.tri);
        if (json_out)
            std::cout << json{{"signature", sig}}.dump(2) << "\n";
        else
            std::cout << sig << "\n";
        return kOk;
    }

    if (moves_list->parsed()) {
        TriFile tf = load(file_a);
        std::vector<Move> moves = applicable_moves(tf.tri);
        if (json_out) {
            json j = json::array();
            for (const Move& m : moves) j.push_back(move_json(m));
            std::cout << j.dump(2) << "\n";
        } else {
            for (const Move& m : moves) std::cout << move_json(m).dump() << "\n";
        }
        return kOk;
    }

    if (moves_apply->parsed()) {
        TriFile tf = load(file_a);
        MoveSequence seq = move_sequence_from_json(move_json_text);
        Triangulation result = replay(tf.tri, seq);
        TriFile out{result, std::nullopt};
        if (json_out)
            std::cout << json{{"tetrahedra", result.size()},
                              {"signature", canonical_signature(result)},
                              {"file", serialize_tri_file(out)}}
                             .dump(2)
                      << "\n";
        else
            std::cout << serialize_tri_file(out);
        return kOk;
    }

    if (search_connect->parsed()) {
        TriFile ta = load(file_a), tb = load(file_b);
        ConnectResult r = connect(ta.tri, tb.tri, budget);
        if (json_out) {
            json j;
            j["status"] = search_status_name(r.status);
            j["states_explored"] = r.states_explored;
            if (r.status == SearchStatus::Found)
                j["sequence"] = json::parse(move_sequence_to_json(r.sequence));
            std::cout << j.dump(2) << "\n";
        } else if (r.status == SearchStatus::Found) {
            std::cout << move_sequence_to_json(r.sequence) << "\n";
        } else {
            std::cout << search_status_name(r.status) << "\n";
        }
        if (r.status == SearchStatus::Found) return kOk;
        return r.status == SearchStatus::StateCapHit ? kCap : kNegative;
    }

    if (search_sphere->parsed()) {
        TriFile tf = load(file_a);
        SphereResult r = sphere(tf.tri, radius, budget);
        if (json_out)
            std::cout << json{{"layer_counts", r.layer_counts}, {"state_cap_hit", r.state_cap_hit}}
                             .dump(2)
                      << "\n";
        else
            for (size_t d = 0; d < r.layer_counts.size(); ++d)
                std::cout << d << ": " << r.layer_counts[d] << "\n";
        return r.state_cap_hit ? kCap : kOk;
    }

    if (bounds_cmd->parsed()) {
        if (theta0_arg == "auto") throw Error("bounds requires an explicit --theta0");
        BoundsReport r = bounds_report(m1, m2, std::stod(theta0_arg), epsilon);
        std::cout << (json_out ? bounds_report_json(r) + "\n" : bounds_report_human(r));
        return kOk;
    }

    if (systole_cmd->parsed()) {
        int m = m_flag;
        double theta0;
        if (!file_a.empty()) {
            TriFile tf = load(file_a);
            auto shapes = require_shapes(tf, file_a);
            m = tf.tri.size();
            theta0 = resolve_theta0(theta0_arg, shapes);
        } else {
            if (m < 1) throw Error("give --file or --m");
            if (theta0_arg == "auto") throw Error("--theta0 auto requires --file with shapes");
            theta0 = std::stod(theta0_arg);
        }
        // Split m as evenly as possible; the bounds depend only on m = m1+m2.
        BoundsReport r = bounds_report(std::max(1, m / 2), std::max(1, m - m / 2), theta0, epsilon);
        if (json_out)
            std::cout << json{{"m", m},
                              {"theta0", theta0},
                              {"s0_exact", {{"value", r.s0_exact.value()},
                                            {"log10", r.s0_exact.log10()},
                                            {"sci", r.s0_exact.sci()}}},
                              {"s0_simplified", {{"value", r.s0_simplified.value()},
                                                 {"log10", r.s0_simplified.log10()},
                                                 {"sci", r.s0_simplified.sci()}}}}
                             .dump(2)
                      << "\n";
        else
            std::cout << "m = " << m << ", theta0 = " << theta0
                      << "\ns0_exact      = " << r.s0_exact.sci()
                      << "\ns0_simplified = " << r.s0_simplified.sci() << "\n";
        return kOk;
    }

    if (cusp_cmd->parsed()) {
        TriFile tf = load(file_a);
        auto shapes = require_shapes(tf, file_a);
        json cusps = json::array();
        std::vector<int> targets;
        if (cusp_index >= 0) {
            targets.push_back(cusp_index);
        } else {
            for (int c = 0; c < tf.tri.vertex_class_count(); ++c)
                if (tf.tri.vertex_kind(c) == VertexKind::Ideal) targets.push_back(c);
        }
        for (int c : targets) {
            CuspCrossSection cs = develop_cusp(tf.tri, shapes, c);
            json jc;
            jc["cusp"] = cs.cusp;
            jc["triangles"] = cs.triangles.size();
            jc["u"] = {cs.u.real(), cs.u.imag()};
            jc["v"] = {cs.v.real(), cs.v.imag()};
            jc["area"] = cs.area;
            jc["shortest"] = cs.shortest;
            jc["edge_lengths"] = cs.edge_lengths;
            cusps.push_back(jc);
        }
        if (json_out) {
            std::cout << cusps.dump(2) << "\n";
        } else {
            for (const auto& jc : cusps)
                std::cout << "cusp " << jc["cusp"] << ": " << jc["triangles"]
                          << " triangles, area " << double(jc["area"]) << ", v = ("
                          << double(jc["v"][0]) << ", " << double(jc["v"][1]) << ")\n";
        }
        return kOk;
    }

    if (thickness_cmd->parsed()) {
        TriFile tf = load(file_a);
        auto shapes = require_shapes(tf, file_a);
        ThicknessResult t = check_thickness(shapes, std::numbers::pi / 3);
        double theta0 = t.min_angle;
        bool thick = true;
        if (theta0_arg != "auto") {
            theta0 = std::stod(theta0_arg);
            thick = check_thickness(shapes, theta0).is_thick;
        }
        if (json_out)
            std::cout << json{{"thick", thick}, {"min_angle", t.min_angle}, {"theta0", theta0}}
                             .dump(2)
                      << "\n";
        else
            std::cout << (thick ? "thick" : "not thick") << " (min angle " << t.min_angle
                      << ", theta0 " << theta0 << ")\n";
        return thick ? kOk : kNegative;
    }

    return kUsage;
}

}  // namespace

int main(int argc, char** argv) {
    try {
        return run(argc, argv);
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kUsage;
    }
}
