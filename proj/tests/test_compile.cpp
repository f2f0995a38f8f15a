#include <doctest.h>

#include <algorithm>

#include "jtarch/compile.hpp"
#include "jtarch/fixtures.hpp"
#include "jtarch/netgen.hpp"

using namespace jtarch;

namespace {

std::vector<int> ids(const BayesNet& net, const std::string& names) {
    std::vector<int> out;
    for (char c : names) out.push_back(net.find(std::string(1, c)));
    return out;
}

Domain dom(const BayesNet& net, const std::string& names) {
    Domain d = ids(net, names);
    std::sort(d.begin(), d.end());
    return d;
}

// Every clique of a chordal graph is contained in some maximal elimination clique.
bool covers(const std::vector<Domain>& cliques, const Domain& d) {
    for (const auto& c : cliques)
        if (std::includes(c.begin(), c.end(), d.begin(), d.end())) return true;
    return false;
}

} // namespace

TEST_CASE("moral graph marries parents") {
    BayesNet net = chest_clinic();
    UGraph g = moral_graph(net);
    CHECK(g.has_edge(net.find("T"), net.find("L")));
    CHECK(g.has_edge(net.find("E"), net.find("B")));
    CHECK_FALSE(g.has_edge(net.find("A"), net.find("S")));
    CHECK(g.edge_count() == 8 + 2);
}

TEST_CASE("min-fill elimination on the chest clinic") {
    BayesNet net = chest_clinic();
    UGraph g = moral_graph(net);
    auto order = elimination_order(g, net.cards());
    CHECK(order == ids(net, "AXTDSLBE"));
    Triangulation t = triangulate(g, order);
    CHECK(t.fill.size() == 1);
    std::vector<Domain> want{dom(net, "AT"), dom(net, "EX"), dom(net, "TLE"), dom(net, "EBD"), dom(net, "SLB"),
                             dom(net, "LBE")};
    CHECK(t.cliques == want);
}

TEST_CASE("min-fill picks zero-fill simplicial nodes first") {
    // a 4-cycle 0-1-2-3 plus a pendant 4 on 0
    UGraph g(5);
    g.add_edge(0, 1);
    g.add_edge(1, 2);
    g.add_edge(2, 3);
    g.add_edge(3, 0);
    g.add_edge(0, 4);
    auto order = elimination_order(g, {2, 2, 2, 2, 2});
    CHECK(order.front() == 4);
    Triangulation t = triangulate(g, order);
    CHECK(t.fill.size() == 1);
}

TEST_CASE("junction tree of the chest clinic") {
    BayesNet net = chest_clinic();
    InputSet in = input_potentials(net, chest_clinic_evidence());
    Compiled c = compile(net, in);
    const JoinTree& jt = c.junction;
    CHECK(jt.size() == 6);
    CHECK(verify_join_tree(jt).empty());
    std::size_t sep = 0;
    std::vector<Domain> seps;
    for (auto [a, b] : jt.edges) {
        sep += jt.space_of(jt.separator(a, b));
        seps.push_back(jt.separator(a, b));
    }
    CHECK(sep == 16);
    std::sort(seps.begin(), seps.end());
    std::vector<Domain> want{dom(net, "T"), dom(net, "E"), dom(net, "LE"), dom(net, "BE"), dom(net, "LB")};
    std::sort(want.begin(), want.end());
    CHECK(seps == want);
    // each input sits in the smallest containing clique
    for (std::size_t n = 0; n < jt.size(); ++n)
        for (int p : jt.assigned[n]) {
            const Domain& d = in.potentials[std::size_t(p)].domain();
            Domain s = d;
            std::sort(s.begin(), s.end());
            CHECK(std::includes(jt.nodes[n].begin(), jt.nodes[n].end(), s.begin(), s.end()));
        }
}

TEST_CASE("binary join tree of the chest clinic") {
    BayesNet net = chest_clinic();
    InputSet in = input_potentials(net, chest_clinic_evidence());
    Compiled c = compile(net, in);
    const JoinTree& b = c.binary;
    CHECK(b.size() == 20);
    CHECK(b.binary);
    CHECK(verify_join_tree(b, true).empty());
    auto maxi = maximal_subsets(b);
    auto cl = c.cliques;
    std::sort(maxi.begin(), maxi.end());
    std::sort(cl.begin(), cl.end());
    CHECK(maxi == cl);
    for (std::size_t v = 0; v < net.size(); ++v) CHECK(std::count(b.nodes.begin(), b.nodes.end(), Domain{int(v)}) == 1);
}

TEST_CASE("reference binary join tree fixture") {
    BayesNet net = chest_clinic();
    JoinTree f = chest_clinic_reference_bjt();
    CHECK(f.size() == 20);
    CHECK(verify_join_tree(f, true).empty());
}

TEST_CASE("condense merges duplicates while respecting degree") {
    JoinTree t;
    t.card = {2, 2, 2};
    int a = t.add_node({0, 1});
    int b = t.add_node({0, 1});
    int c = t.add_node({1, 2});
    int d = t.add_node({0});
    t.add_edge(a, b);
    t.add_edge(b, c);
    t.add_edge(a, d);
    t.binary = true;
    JoinTree r = condense(t);
    CHECK(r.size() == 3);
    CHECK(verify_join_tree(r, true).empty());

    // a merge that would produce four neighbors is refused
    JoinTree s;
    s.card = {2, 2, 2, 2, 2, 2};
    int x = s.add_node({0, 1});
    int y = s.add_node({0, 1});
    s.add_edge(x, y);
    for (int v : {2, 3}) s.add_edge(x, s.add_node({0, v}));
    for (int v : {4, 5}) s.add_edge(y, s.add_node({1, v}));
    s.binary = true;
    CHECK(condense(s).size() == s.size());
}

TEST_CASE("attach_singletons adds missing target nodes") {
    JoinTree t;
    t.card = {2, 2, 2};
    int a = t.add_node({0, 1});
    int b = t.add_node({1, 2});
    t.add_edge(a, b);
    t.binary = true;
    JoinTree r = attach_singletons(t, {0, 1, 2});
    CHECK(r.size() == 5);
    CHECK(verify_join_tree(r, true).empty());
    for (int v = 0; v < 3; ++v) CHECK(std::count(r.nodes.begin(), r.nodes.end(), Domain{v}) == 1);
    CHECK(attach_singletons(r, {0, 1, 2}).size() == 5);

    // hosts that already have three neighbors are split
    JoinTree h;
    h.card = {2, 2, 2, 2};
    int c = h.add_node({0, 1, 2, 3});
    for (int v : {1, 2, 3}) h.add_edge(c, h.add_node({v}));
    h.binary = true;
    JoinTree hs = attach_singletons(h, {0});
    CHECK(verify_join_tree(hs, true).empty());
    CHECK(std::count(hs.nodes.begin(), hs.nodes.end(), Domain{0}) == 1);
}

TEST_CASE("verify_join_tree reports violations") {
    JoinTree t;
    t.card = {2, 2, 2};
    int a = t.add_node({0, 1});
    int b = t.add_node({2});
    int c = t.add_node({0, 2});
    t.add_edge(a, b);
    t.add_edge(b, c);
    auto r = verify_join_tree(t);
    REQUIRE(r.size() == 1);
    CHECK(r[0].find("running intersection") != std::string::npos);

    JoinTree cyc;
    cyc.card = {2};
    for (int i = 0; i < 3; ++i) cyc.add_node({0});
    cyc.add_edge(0, 1);
    cyc.add_edge(1, 2);
    cyc.add_edge(0, 2);
    CHECK(verify_join_tree(cyc).front().find("not a tree") != std::string::npos);

    JoinTree star;
    star.card = {2};
    star.add_node({0});
    for (int i = 0; i < 4; ++i) star.add_edge(0, star.add_node({0}));
    CHECK(verify_join_tree(star).empty());
    CHECK_FALSE(verify_join_tree(star, true).empty());
}

TEST_CASE("random networks compile to valid structures") {
    for (int i = 0; i < 500; ++i) {
        GenParams g;
        g.n = 4 + i % 12;
        g.c2 = 2 + i % 4;
        g.m = 2 + i % 3;
        g.seed = trial_seed(99, std::uint64_t(i));
        BayesNet net = random_net(g);
        InputSet in = input_potentials(net, {});
        Compiled c = compile(net, in);
        INFO("trial " << i);
        REQUIRE(verify_join_tree(c.junction).empty());
        REQUIRE(verify_join_tree(c.binary, true).empty());
        CHECK(c.order.size() == net.size());
        auto maxi = maximal_subsets(c.binary);
        auto cl = c.cliques;
        std::sort(maxi.begin(), maxi.end());
        std::sort(cl.begin(), cl.end());
        CHECK(maxi == cl);
        for (const auto& d : in.hypergraph) CHECK(covers(c.junction.nodes, d));
        for (std::size_t v = 0; v < net.size(); ++v)
            CHECK(std::count(c.binary.nodes.begin(), c.binary.nodes.end(), Domain{int(v)}) >= 1);
        std::size_t placed = 0;
        for (const auto& a : c.junction.assigned) placed += a.size();
        CHECK(placed == in.potentials.size());
    }
}

TEST_CASE("dump format") {
    BayesNet net = chest_clinic();
    InputSet in = input_potentials(net, {});
    Compiled c = compile(net, in);
    std::string s = dump_tree(c.junction, net, &in);
    CHECK(s.rfind("tree nodes=6 edges=5 binary=no\n", 0) == 0);
    CHECK(s.find("sep={T} size=2") != std::string::npos);
}
