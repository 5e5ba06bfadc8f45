#pragma once

#include <algorithm>
#include <fstream>
#include <random>
#include <sstream>
#include <string>

#include "cusped/triangulation.hpp"

namespace cusped_test {

inline cusped::TriFile load_fixture(const std::string& name) {
    std::ifstream in(std::string(FIXTURE_DIR) + "/" + name);
    if (!in) throw cusped::Error("missing fixture " + name);
    std::stringstream ss;
    ss << in.rdbuf();
    return cusped::parse_tri_file(ss.str());
}

// Applies a random relabeling (tet order + vertex labels) to a triangulation.
inline cusped::Triangulation relabel(const cusped::Triangulation& tri, std::mt19937& rng) {
    using namespace cusped;
    const int n = tri.size();
    std::vector<int> tmap(n);
    for (int i = 0; i < n; ++i) tmap[i] = i;
    std::shuffle(tmap.begin(), tmap.end(), rng);
    std::vector<Perm4> vmap(n);
    std::uniform_int_distribution<int> d24(0, 23);
    for (int i = 0; i < n; ++i) vmap[i] = Perm4::from_rank(d24(rng));

    Triangulation::GluingTable table(n);
    for (int t = 0; t < n; ++t)
        for (int f = 0; f < 4; ++f) {
            const auto& g = tri.gluing(t, f);
            if (!g) continue;
            table[tmap[t]][vmap[t][f]] =
                Gluing{tmap[g->tet], vmap[g->tet] * g->perm * vmap[t].inverse()};
        }
    return Triangulation(std::move(table));
}

}  // namespace cusped_test
