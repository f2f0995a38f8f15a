#include "jtarch/engines.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <optional>
#include <stdexcept>

namespace jtarch {

std::string arch_name(Arch a) {
    switch (a) {
    case Arch::LS: return "ls";
    case Arch::Hugin: return "hugin";
    case Arch::SS: return "ss";
    }
    return "?";
}

namespace {

void check_tree(const JoinTree& tree, const std::vector<Potential>& inputs) {
    auto problems = verify_join_tree(tree);
    if (!problems.empty()) throw std::invalid_argument("invalid join tree: " + problems.front());
    std::size_t placed = 0;
    for (const auto& a : tree.assigned) placed += a.size();
    if (placed != inputs.size()) throw std::invalid_argument("some input potentials are unassigned");
}

// Product of a node's assigned potentials, grown from the identity so the
// first factor costs nothing.
Potential initial_potential(const JoinTree& tree, int node, const std::vector<Potential>& inputs, OpCounter& c) {
    const auto& d = tree.nodes[std::size_t(node)];
    Potential p = identity_potential(d, tree.cards_of(d));
    for (int i : tree.assigned[std::size_t(node)]) p = absorb(p, inputs[std::size_t(i)], c);
    return p;
}

Potential finish_marginal(const Potential& p, double corrupt) {
    Potential m = normalize(p);
    if (corrupt == 1.0) return m;
    std::vector<double> v = m.values();
    for (double& x : v) x *= corrupt;
    return Potential(m.domain(), m.cards(), v);
}

int smallest_node_with(const JoinTree& tree, int var) {
    int best = -1;
    for (std::size_t n = 0; n < tree.size(); ++n) {
        const auto& d = tree.nodes[n];
        if (!std::binary_search(d.begin(), d.end(), var)) continue;
        if (best < 0 || tree.space(int(n)) < tree.space(best)) best = int(n);
    }
    if (best < 0) throw std::invalid_argument("variable " + std::to_string(var) + " is not in the tree");
    return best;
}

// Index into tree.edges of the smallest separator containing var, or -1.
int smallest_separator_with(const JoinTree& tree, int var) {
    int best = -1;
    std::size_t best_space = 0;
    std::pair<int, int> best_edge;
    for (std::size_t e = 0; e < tree.edges.size(); ++e) {
        auto [a, b] = tree.edges[e];
        Domain s = tree.separator(a, b);
        if (!std::binary_search(s.begin(), s.end(), var)) continue;
        std::size_t sp = tree.space_of(s);
        if (best < 0 || sp < best_space || (sp == best_space && tree.edges[e] < best_edge)) {
            best = int(e);
            best_space = sp;
            best_edge = tree.edges[e];
        }
    }
    return best;
}

struct Walk {
    std::vector<std::vector<int>> adj;
    // (child, parent) in the order messages travel inward
    std::vector<std::pair<int, int>> inward;
};

Walk plan(const JoinTree& tree, int root) {
    Walk w;
    w.adj = tree.adjacency();
    std::function<void(int, int)> rec = [&](int r, int parent) {
        for (int u : w.adj[std::size_t(r)])
            if (u != parent) rec(u, r);
        if (parent >= 0) w.inward.emplace_back(r, parent);
    };
    rec(root, -1);
    return w;
}

// Outward order: pre-order from the root, children ascending.
std::vector<std::pair<int, int>> outward_order(const Walk& w, int root) {
    std::vector<std::pair<int, int>> out;
    std::function<void(int, int)> rec = [&](int r, int parent) {
        for (int u : w.adj[std::size_t(r)])
            if (u != parent) {
                out.emplace_back(r, u);
                rec(u, r);
            }
    };
    rec(root, -1);
    return out;
}

} // namespace

int select_root(const JoinTree& tree) {
    int best = 0;
    for (std::size_t n = 1; n < tree.size(); ++n)
        if (tree.space(int(n)) > tree.space(best)) best = int(n);
    return best;
}

EngineResult ls_run(const JoinTree& tree, const std::vector<Potential>& inputs, const std::vector<int>& targets,
                    const EngineOptions& opt) {
    check_tree(tree, inputs);
    EngineResult r;
    OpCounter& c = r.counter;
    std::vector<Potential> pot;
    for (std::size_t n = 0; n < tree.size(); ++n) pot.push_back(initial_potential(tree, int(n), inputs, c));
    int root = select_root(tree);
    Walk w = plan(tree, root);
    for (auto [from, to] : w.inward) {
        Potential m = project(pot[std::size_t(from)], tree.separator(from, to), c);
        pot[std::size_t(from)] = divide(pot[std::size_t(from)], m, c);
        pot[std::size_t(to)] = absorb(pot[std::size_t(to)], m, c);
    }
    for (auto [from, to] : outward_order(w, root)) {
        Potential m = project(pot[std::size_t(from)], tree.separator(from, to), c);
        pot[std::size_t(to)] = absorb(pot[std::size_t(to)], m, c);
    }
    for (int v : targets) {
        int n = smallest_node_with(tree, v);
        r.singleton_marginals[v] = finish_marginal(project(pot[std::size_t(n)], {v}, c), opt.corrupt_factor);
    }
    for (std::size_t n = 0; n < tree.size(); ++n) r.node_marginals[int(n)] = pot[n];
    return r;
}

EngineResult hugin_run(const JoinTree& tree, const std::vector<Potential>& inputs, const std::vector<int>& targets,
                       const EngineOptions& opt) {
    check_tree(tree, inputs);
    EngineResult r;
    OpCounter& c = r.counter;
    std::vector<Potential> pot;
    for (std::size_t n = 0; n < tree.size(); ++n) pot.push_back(initial_potential(tree, int(n), inputs, c));
    std::vector<Potential> sep;
    std::map<std::pair<int, int>, std::size_t> edge_index;
    for (std::size_t e = 0; e < tree.edges.size(); ++e) {
        auto [a, b] = tree.edges[e];
        Domain s = tree.separator(a, b);
        sep.push_back(identity_potential(s, tree.cards_of(s)));
        edge_index[{a, b}] = e;
    }
    if (opt.hugin_step) opt.hugin_step(pot, sep);
    auto send = [&](int from, int to) {
        std::size_t e = edge_index.at({std::min(from, to), std::max(from, to)});
        Potential fresh = project(pot[std::size_t(from)], sep[e].domain(), c);
        Potential quotient = divide(fresh, sep[e], c);
        sep[e] = fresh;
        pot[std::size_t(to)] = absorb(pot[std::size_t(to)], quotient, c);
        if (opt.hugin_step) opt.hugin_step(pot, sep);
    };
    int root = select_root(tree);
    Walk w = plan(tree, root);
    for (auto [from, to] : w.inward) send(from, to);
    for (auto [from, to] : outward_order(w, root)) send(from, to);
    for (int v : targets) {
        int e = smallest_separator_with(tree, v);
        const Potential& src = e >= 0 ? sep[std::size_t(e)] : pot[std::size_t(smallest_node_with(tree, v))];
        r.singleton_marginals[v] = finish_marginal(project(src, {v}, c), opt.corrupt_factor);
    }
    for (std::size_t n = 0; n < tree.size(); ++n) r.node_marginals[int(n)] = pot[n];
    for (std::size_t e = 0; e < tree.edges.size(); ++e) r.separator_marginals[tree.edges[e]] = sep[e];
    return r;
}

namespace {

// Demand-driven message passing with memoized messages. A missing message
// (std::nullopt) means the sending subtree holds no potentials.
class ShenoyShafer {
public:
    ShenoyShafer(const JoinTree& t, const std::vector<Potential>& in, OpCounter& c)
        : tree_(t), inputs_(in), c_(c), adj_(t.adjacency()), own_(t.size()), own_done_(t.size(), 0) {}

    std::optional<Potential> message(int from, int to) {
        auto key = std::make_pair(from, to);
        auto it = memo_.find(key);
        if (it != memo_.end()) return it->second;
        std::optional<Potential> p = combine(factors(from, to));
        if (p) {
            Domain keep;
            for (int v : p->domain())
                if (std::binary_search(tree_.nodes[std::size_t(to)].begin(), tree_.nodes[std::size_t(to)].end(), v))
                    keep.push_back(v);
            p = project(*p, keep, c_);
        }
        memo_.emplace(key, p);
        return p;
    }

    // Combination of everything a node sees.
    std::optional<Potential> node_total(int node) {
        auto it = totals_.find(node);
        if (it != totals_.end()) return it->second;
        auto p = combine(factors(node, -1));
        totals_.emplace(node, p);
        return p;
    }

    std::optional<Potential> separator_total(int a, int b) {
        auto key = std::make_pair(a, b);
        auto it = sep_totals_.find(key);
        if (it != sep_totals_.end()) return it->second;
        std::vector<Potential> fs;
        if (auto m = message(a, b)) fs.push_back(*m);
        if (auto m = message(b, a)) fs.push_back(*m);
        auto p = combine(fs);
        sep_totals_.emplace(key, p);
        return p;
    }

    std::vector<MessageRegister> registers() const {
        std::vector<MessageRegister> out;
        for (const auto& [k, v] : memo_)
            if (v) out.push_back({k.first, k.second, v->size()});
        return out;
    }

private:
    std::optional<Potential> own(int node) {
        if (!own_done_[std::size_t(node)]) {
            own_done_[std::size_t(node)] = 1;
            if (!tree_.assigned[std::size_t(node)].empty())
                own_[std::size_t(node)] = initial_potential(tree_, node, inputs_, c_);
        }
        return own_[std::size_t(node)];
    }

    // Own potential first, then incoming messages by ascending neighbor id.
    std::vector<Potential> factors(int node, int exclude) {
        std::vector<Potential> fs;
        if (auto o = own(node)) fs.push_back(*o);
        for (int u : adj_[std::size_t(node)]) {
            if (u == exclude) continue;
            if (auto m = message(u, node)) fs.push_back(*m);
        }
        return fs;
    }

    std::optional<Potential> combine(const std::vector<Potential>& fs) {
        if (fs.empty()) return std::nullopt;
        Potential p = fs[0];
        for (std::size_t i = 1; i < fs.size(); ++i) p = absorb(p, fs[i], c_);
        return p;
    }

    const JoinTree& tree_;
    const std::vector<Potential>& inputs_;
    OpCounter& c_;
    std::vector<std::vector<int>> adj_;
    std::vector<std::optional<Potential>> own_;
    std::vector<char> own_done_;
    std::map<std::pair<int, int>, std::optional<Potential>> memo_;
    std::map<int, std::optional<Potential>> totals_;
    std::map<std::pair<int, int>, std::optional<Potential>> sep_totals_;
};

} // namespace

EngineResult ss_run(const JoinTree& tree, const std::vector<Potential>& inputs, const std::vector<int>& targets,
                    const EngineOptions& opt) {
    check_tree(tree, inputs);
    EngineResult r;
    ShenoyShafer ss(tree, inputs, r.counter);
    for (int v : targets) {
        int single = -1;
        for (std::size_t n = 0; n < tree.size() && single < 0; ++n)
            if (tree.nodes[n] == Domain{v}) single = int(n);
        std::optional<Potential> p;
        if (single >= 0) {
            p = ss.node_total(single);
        } else if (int e = smallest_separator_with(tree, v); e >= 0) {
            p = ss.separator_total(tree.edges[std::size_t(e)].first, tree.edges[std::size_t(e)].second);
        } else {
            p = ss.node_total(smallest_node_with(tree, v));
        }
        Potential base = p ? *p : identity_potential({v}, {tree.card[std::size_t(v)]});
        if (!base.contains(v)) base = extend(base, {v}, {tree.card[std::size_t(v)]});
        r.singleton_marginals[v] = finish_marginal(project(base, {v}, r.counter), opt.corrupt_factor);
        if (single >= 0 && p) r.node_marginals[single] = *p;
    }
    r.registers = ss.registers();
    return r;
}

std::vector<int> all_variables(const BayesNet& net) {
    std::vector<int> v(net.size());
    std::iota(v.begin(), v.end(), 0);
    return v;
}

AllResults run_all(const BayesNet& net, const Evidence& ev, const EngineOptions& opt) {
    AllResults out;
    out.inputs = input_potentials(net, ev);
    auto targets = all_variables(net);
    out.compiled = compile(net, out.inputs, targets);
    out.ls = ls_run(out.compiled.junction, out.inputs.potentials, targets, opt);
    out.hugin = hugin_run(out.compiled.junction, out.inputs.potentials, targets, opt);
    out.ss = ss_run(out.compiled.binary, out.inputs.potentials, targets, opt);
    return out;
}

double max_marginal_error(const EngineResult& r, const std::vector<Potential>& oracle) {
    double m = 0;
    for (std::size_t v = 0; v < oracle.size(); ++v) {
        auto it = r.singleton_marginals.find(int(v));
        if (it == r.singleton_marginals.end()) return INFINITY;
        m = std::max(m, max_abs_diff(oracle[v], it->second));
    }
    return m;
}

} // namespace jtarch
