#include "jtarch/network.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <sstream>

namespace jtarch {

std::vector<int> BayesNet::cards() const {
    std::vector<int> c;
    for (const auto& v : vars) c.push_back(v.card);
    return c;
}

int BayesNet::find(const std::string& name) const {
    for (const auto& v : vars)
        if (v.name == name) return v.id;
    return -1;
}

std::vector<std::string> validate(const BayesNet& net) {
    std::vector<std::string> out;
    const std::size_t n = net.vars.size();
    if (n == 0) {
        out.push_back("network has no variables");
        return out;
    }
    if (net.parents.size() != n || net.cpts.size() != n) {
        out.push_back("parents/cpts tables do not match the variable count");
        return out;
    }
    for (std::size_t i = 0; i < n; ++i) {
        if (net.vars[i].id != int(i)) out.push_back("variable ids must be dense and ordered");
        if (net.vars[i].card < 2) out.push_back("variable " + net.vars[i].name + " has cardinality below 2");
    }
    for (std::size_t v = 0; v < n; ++v)
        for (int p : net.parents[v])
            if (p < 0 || std::size_t(p) >= n || std::size_t(p) == v) {
                out.push_back("variable " + net.vars[v].name + " has an invalid parent id");
                return out;
            }

    // acyclicity
    std::vector<int> color(n, 0);
    std::vector<std::vector<int>> children(n);
    for (std::size_t v = 0; v < n; ++v)
        for (int p : net.parents[v]) children[std::size_t(p)].push_back(int(v));
    bool cyclic = false;
    std::function<void(int)> dfs = [&](int u) {
        color[std::size_t(u)] = 1;
        for (int w : children[std::size_t(u)]) {
            if (color[std::size_t(w)] == 1) cyclic = true;
            else if (color[std::size_t(w)] == 0) dfs(w);
        }
        color[std::size_t(u)] = 2;
    };
    for (std::size_t v = 0; v < n; ++v)
        if (color[v] == 0) dfs(int(v));
    if (cyclic) out.push_back("acyclicity violated: the parent relation contains a directed cycle");

    // connectivity of the underlying undirected graph
    std::vector<std::vector<int>> und(n);
    for (std::size_t v = 0; v < n; ++v)
        for (int p : net.parents[v]) {
            und[v].push_back(p);
            und[std::size_t(p)].push_back(int(v));
        }
    std::vector<char> seen(n, 0);
    std::vector<int> stack{0};
    seen[0] = 1;
    while (!stack.empty()) {
        int u = stack.back();
        stack.pop_back();
        for (int w : und[std::size_t(u)])
            if (!seen[std::size_t(w)]) {
                seen[std::size_t(w)] = 1;
                stack.push_back(w);
            }
    }
    if (std::count(seen.begin(), seen.end(), 0) > 0) out.push_back("connectivity violated: the digraph is not connected");

    for (std::size_t v = 0; v < n; ++v) {
        const auto& cpt = net.cpts[v];
        Domain want = net.parents[v];
        want.push_back(int(v));
        Domain have = cpt.domain();
        std::sort(want.begin(), want.end());
        std::sort(have.begin(), have.end());
        if (want != have) {
            out.push_back("cpt domain of " + net.vars[v].name + " is not {V} and its parents");
            continue;
        }
        bool cards_ok = true;
        for (std::size_t k = 0; k < cpt.domain().size(); ++k)
            if (cpt.cards()[k] != net.vars[std::size_t(cpt.domain()[k])].card) cards_ok = false;
        if (!cards_ok) {
            out.push_back("cpt of " + net.vars[v].name + " disagrees with variable cardinalities");
            continue;
        }
        OpCounter scratch;
        Potential rows = marginalize(cpt, net.parents[v], scratch);
        std::vector<int> assign(n, 0);
        for (std::size_t r = 0; r < rows.size(); ++r) {
            if (std::fabs(rows.values()[r] - 1.0) > 1e-9) {
                std::ostringstream os;
                os << "normalization violated for " << net.vars[v].name << " at parent configuration (";
                std::size_t rem = r;
                std::vector<int> idx(rows.domain().size());
                for (std::size_t k = rows.domain().size(); k-- > 0;) {
                    idx[k] = int(rem % std::size_t(rows.cards()[k]));
                    rem /= std::size_t(rows.cards()[k]);
                }
                for (std::size_t k = 0; k < idx.size(); ++k) {
                    const auto& pv = net.vars[std::size_t(rows.domain()[k])];
                    os << (k ? ", " : "") << pv.name << "=" << idx[k];
                }
                os << "): row sums to " << rows.values()[r];
                out.push_back(os.str());
            }
        }
    }
    return out;
}

void validate_evidence(const BayesNet& net, const Evidence& ev) {
    for (const auto& [id, vec] : ev.items) {
        if (id < 0 || std::size_t(id) >= net.size())
            throw std::invalid_argument("evidence refers to unknown variable id " + std::to_string(id));
        const auto& var = net.vars[std::size_t(id)];
        if (vec.size() != std::size_t(var.card))
            throw std::invalid_argument("evidence vector for " + var.name + " has the wrong length");
        bool positive = false;
        for (double x : vec) {
            if (!(x >= 0.0)) throw std::invalid_argument("evidence for " + var.name + " has a negative entry");
            if (x > 0.0) positive = true;
        }
        if (!positive) throw std::invalid_argument("evidence for " + var.name + " is all zero");
    }
}

BayesNet chest_clinic() {
    BayesNet net;
    const char* names[] = {"A", "S", "T", "L", "B", "E", "X", "D"};
    for (int i = 0; i < 8; ++i) net.vars.push_back(Variable{i, names[i], 2, {"yes", "no"}});
    enum { A, S, T, L, B, E, X, D };
    net.parents = {{}, {}, {A}, {S}, {S}, {T, L}, {E}, {E, B}};
    auto cpt = [&](int v, std::vector<double> vals) {
        Domain dom = net.parents[std::size_t(v)];
        dom.push_back(v);
        return make_potential(dom, std::vector<int>(dom.size(), 2), std::move(vals));
    };
    net.cpts = {
        cpt(A, {0.01, 0.99}),
        cpt(S, {0.5, 0.5}),
        cpt(T, {0.05, 0.95, 0.01, 0.99}),
        cpt(L, {0.1, 0.9, 0.01, 0.99}),
        cpt(B, {0.6, 0.4, 0.3, 0.7}),
        cpt(E, {1.0, 0.0, 1.0, 0.0, 1.0, 0.0, 0.0, 1.0}),
        cpt(X, {0.98, 0.02, 0.05, 0.95}),
        cpt(D, {0.9, 0.1, 0.7, 0.3, 0.8, 0.2, 0.1, 0.9}),
    };
    return net;
}

Evidence chest_clinic_evidence() {
    Evidence ev;
    ev.items[0] = {1.0, 0.0};  // visited Asia: yes
    ev.items[7] = {1.0, 0.0};  // dyspnoea: yes
    return ev;
}

InputSet input_potentials(const BayesNet& net, const Evidence& ev) {
    validate_evidence(net, ev);
    InputSet in;
    auto add = [&](Potential p, std::string label) {
        Domain d = p.domain();
        std::sort(d.begin(), d.end());
        if (std::find(in.hypergraph.begin(), in.hypergraph.end(), d) == in.hypergraph.end()) in.hypergraph.push_back(d);
        in.potentials.push_back(std::move(p));
        in.labels.push_back(std::move(label));
    };
    for (std::size_t v = 0; v < net.size(); ++v) {
        std::string label = "P(" + net.vars[v].name;
        for (std::size_t k = 0; k < net.parents[v].size(); ++k)
            label += (k ? "," : "|") + net.vars[std::size_t(net.parents[v][k])].name;
        add(net.cpts[v], label + ")");
    }
    in.cpt_count = net.size();
    for (const auto& [id, vec] : ev.items)
        add(make_potential({id}, {net.vars[std::size_t(id)].card}, vec), "ev(" + net.vars[std::size_t(id)].name + ")");
    return in;
}

std::size_t joint_size(const BayesNet& net) {
    std::size_t n = 1;
    for (const auto& v : net.vars) {
        if (n > (std::size_t(1) << 40)) return n;
        n *= std::size_t(v.card);
    }
    return n;
}

Potential joint_oracle(const BayesNet& net, const Evidence& ev, std::size_t cap) {
    std::size_t total = joint_size(net);
    if (total > cap)
        throw OracleCapExceeded("joint has " + std::to_string(total) + " configurations, above the oracle cap of " +
                                std::to_string(cap));
    InputSet in = input_potentials(net, ev);
    Domain all;
    for (std::size_t v = 0; v < net.size(); ++v) all.push_back(int(v));
    Potential joint = identity_potential(all, net.cards());
    OpCounter scratch;
    for (const auto& p : in.potentials) joint = multiply(joint, p, scratch);
    return joint;
}

std::vector<Potential> oracle_marginals(const BayesNet& net, const Evidence& ev, std::size_t cap) {
    Potential joint = joint_oracle(net, ev, cap);
    std::vector<Potential> out;
    OpCounter scratch;
    for (std::size_t v = 0; v < net.size(); ++v) out.push_back(normalize(marginalize(joint, {int(v)}, scratch)));
    return out;
}

} // namespace jtarch
