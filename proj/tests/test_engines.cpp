#include <doctest.h>

#include <algorithm>

#include "jtarch/engines.hpp"
#include "jtarch/fixtures.hpp"
#include "jtarch/netgen.hpp"

using namespace jtarch;

namespace {

bool same(const OpCounter& c, std::size_t a, std::size_t m, std::size_t d) {
    return c.adds == a && c.mults == m && c.divs == d;
}

} // namespace

TEST_CASE("chest clinic operation counts") {
    BayesNet net = chest_clinic();
    AllResults all = run_all(net, chest_clinic_evidence());
    auto t = all_variables(net);
    CHECK(same(all.ls.counter, 72, 96, 32));
    CHECK(same(all.hugin.counter, 60, 96, 16));
    CHECK(same(all.ss.counter, 56, 124, 0));
    CHECK(same(ss_run(all.compiled.junction, all.inputs.potentials, t).counter, 60, 140, 0));

    JoinTree f = chest_clinic_reference_bjt();
    assign_potentials(f, all.inputs.potentials);
    CHECK(same(hugin_run(f, all.inputs.potentials, t).counter, 60, 116, 46));
    CHECK(same(ss_run(f, all.inputs.potentials, t).counter, 56, 124, 0));
}

TEST_CASE("LS divides each non-root clique once") {
    for (int i = 0; i < 50; ++i) {
        GenParams g;
        g.n = 6 + i % 6;
        g.c2 = 2 + i % 3;
        g.seed = trial_seed(5, std::uint64_t(i));
        BayesNet net = random_net(g);
        AllResults all = run_all(net, {});
        const JoinTree& jt = all.compiled.junction;
        std::size_t want = 0;
        int root = select_root(jt);
        for (std::size_t n = 0; n < jt.size(); ++n)
            if (int(n) != root) want += jt.space(int(n));
        CHECK(all.ls.counter.divs == want);
        CHECK(all.ls.counter.mults == all.hugin.counter.mults);
        CHECK(all.hugin.counter.adds <= all.ls.counter.adds);
        CHECK(all.hugin.counter.divs <= all.ls.counter.divs);
        CHECK(all.ss.counter.divs == 0);
    }
}

TEST_CASE("engines agree with the oracle") {
    BayesNet net = chest_clinic();
    for (const Evidence& ev : {Evidence{}, chest_clinic_evidence()}) {
        auto o = oracle_marginals(net, ev);
        AllResults all = run_all(net, ev);
        CHECK(max_marginal_error(all.ls, o) < 1e-12);
        CHECK(max_marginal_error(all.hugin, o) < 1e-12);
        CHECK(max_marginal_error(all.ss, o) < 1e-12);
    }
    for (int i = 0; i < 60; ++i) {
        GenParams g;
        g.n = 5 + i % 6;
        g.c2 = 2 + i % 4;
        g.m = 2 + i % 3;
        g.seed = trial_seed(17, std::uint64_t(i));
        BayesNet net = random_net(g);
        Rng rng(g.seed);
        Evidence ev = random_evidence(net, g, rng);
        auto o = oracle_marginals(net, ev);
        AllResults all = run_all(net, ev);
        INFO("trial " << i);
        CHECK(max_marginal_error(all.ls, o) < 1e-9);
        CHECK(max_marginal_error(all.hugin, o) < 1e-9);
        CHECK(max_marginal_error(all.ss, o) < 1e-9);
    }
}

TEST_CASE("every architecture runs on every tree") {
    BayesNet net = chest_clinic();
    AllResults all = run_all(net, chest_clinic_evidence());
    auto o = oracle_marginals(net, chest_clinic_evidence());
    auto t = all_variables(net);
    for (const JoinTree* tree : {&all.compiled.junction, &all.compiled.binary}) {
        CHECK(max_marginal_error(ls_run(*tree, all.inputs.potentials, t), o) < 1e-12);
        CHECK(max_marginal_error(hugin_run(*tree, all.inputs.potentials, t), o) < 1e-12);
        CHECK(max_marginal_error(ss_run(*tree, all.inputs.potentials, t), o) < 1e-12);
    }
}

TEST_CASE("SS without targets does nothing") {
    BayesNet net = chest_clinic();
    AllResults all = run_all(net, {});
    EngineResult r = ss_run(all.compiled.binary, all.inputs.potentials, {});
    CHECK(r.counter.total() == 0);
    CHECK(r.registers.empty());
    CHECK(r.singleton_marginals.empty());
}

TEST_CASE("SS on a single target only pays for what it needs") {
    BayesNet net = chest_clinic();
    AllResults all = run_all(net, {});
    EngineResult one = ss_run(all.compiled.binary, all.inputs.potentials, {0});
    CHECK(one.counter.total() < all.ss.counter.total());
    CHECK(one.registers.size() < all.ss.registers.size());
    auto o = oracle_marginals(net, {});
    CHECK(max_abs_diff(one.singleton_marginals.at(0), o[0]) < 1e-12);
}

TEST_CASE("Hugin node and separator marginals are consistent") {
    BayesNet net = chest_clinic();
    AllResults all = run_all(net, chest_clinic_evidence());
    const JoinTree& jt = all.compiled.junction;
    for (auto [a, b] : jt.edges) {
        OpCounter scratch;
        Domain s = jt.separator(a, b);
        const Potential& sep = all.hugin.separator_marginals.at({a, b});
        CHECK(max_abs_diff(marginalize(all.hugin.node_marginals.at(a), s, scratch), sep) < 1e-12);
        CHECK(max_abs_diff(marginalize(all.hugin.node_marginals.at(b), s, scratch), sep) < 1e-12);
        CHECK(max_abs_diff(marginalize(all.ls.node_marginals.at(a), s, scratch), sep) < 1e-12);
    }
}

TEST_CASE("runs are deterministic") {
    GenParams g;
    g.n = 12;
    g.c2 = 3;
    g.seed = 1234;
    BayesNet net = random_net(g);
    AllResults a = run_all(net, {});
    AllResults b = run_all(net, {});
    CHECK(a.ls.counter == b.ls.counter);
    CHECK(a.hugin.counter == b.hugin.counter);
    CHECK(a.ss.counter == b.ss.counter);
    for (auto& [v, p] : a.ss.singleton_marginals) CHECK(p.values() == b.ss.singleton_marginals.at(v).values());
}

TEST_CASE("inconsistent evidence is reported") {
    BayesNet net = chest_clinic();
    Evidence ev;
    // E is a deterministic OR of T and L
    ev.items[net.find("E")] = {0, 1};
    ev.items[net.find("T")] = {1, 0};
    CHECK_THROWS(run_all(net, ev));
}

TEST_CASE("malformed trees are rejected") {
    BayesNet net = chest_clinic();
    AllResults all = run_all(net, {});
    JoinTree t = all.compiled.junction;
    t.assigned[0].clear();
    CHECK_THROWS_AS(ls_run(t, all.inputs.potentials, {0}), std::invalid_argument);
}

TEST_CASE("corruption factor perturbs marginals") {
    BayesNet net = chest_clinic();
    EngineOptions opt;
    opt.corrupt_factor = 1.01;
    AllResults all = run_all(net, {}, opt);
    CHECK(max_marginal_error(all.hugin, oracle_marginals(net, {})) > 1e-4);
}
