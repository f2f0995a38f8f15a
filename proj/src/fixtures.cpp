#include "jtarch/fixtures.hpp"

namespace jtarch {

BayesNet three_variable_net() {
    BayesNet net;
    const char* names[] = {"D", "S1", "S2"};
    for (int i = 0; i < 3; ++i) net.vars.push_back(Variable{i, names[i], 5, {"s0", "s1", "s2", "s3", "s4"}});
    net.parents = {{}, {0}, {0}};
    net.cpts.push_back(make_potential({0}, {5}, {0.1, 0.2, 0.3, 0.25, 0.15}));
    for (int child = 1; child <= 2; ++child) {
        std::vector<double> vals;
        for (int d = 0; d < 5; ++d)
            for (int s = 0; s < 5; ++s) vals.push_back(s == d ? 0.6 : 0.1);
        net.cpts.push_back(make_potential({0, child}, {5, 5}, vals));
    }
    return net;
}

Evidence three_variable_evidence() {
    Evidence ev;
    ev.items[1] = {0, 0, 1, 0, 0};
    ev.items[2] = {0, 1, 0, 0, 0};
    return ev;
}

JoinTree chest_clinic_reference_bjt() {
    enum { A, S, T, L, B, E, X, D };
    JoinTree t;
    t.card = std::vector<int>(8, 2);
    t.binary = true;
    const Domain nodes[] = {
        {A}, {S}, {T}, {L}, {B}, {E}, {X}, {D},
        {A, T}, {T, L, E}, {S, L, B}, {L, E, B}, {E, B, D}, {E, X}, {S, L}, {S, B},
        {E, B, D}, {T, L}, {E, D}, {L, B},
    };
    for (const auto& d : nodes) t.add_node(d);
    const std::pair<int, int> edges[] = {
        {0, 8},   {1, 14},  {2, 8},   {2, 17},  {3, 17},  {4, 19},  {5, 18},  {5, 13},  {6, 13},  {7, 18},
        {9, 17},  {9, 11},  {10, 19}, {10, 14}, {10, 15}, {11, 19}, {11, 12}, {12, 16}, {12, 18},
    };
    for (auto [a, b] : edges) t.add_edge(a, b);
    return t;
}

} // namespace jtarch
