#include "jtarch/compile.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <sstream>
#include <stdexcept>
#include <tuple>

namespace jtarch {

void UGraph::add_edge(int a, int b) {
    if (a == b) return;
    adj[std::size_t(a)].insert(b);
    adj[std::size_t(b)].insert(a);
}

bool UGraph::has_edge(int a, int b) const { return adj[std::size_t(a)].count(b) > 0; }

std::size_t UGraph::edge_count() const {
    std::size_t n = 0;
    for (const auto& s : adj) n += s.size();
    return n / 2;
}

int JoinTree::add_node(Domain d, NodeKind k) {
    std::sort(d.begin(), d.end());
    nodes.push_back(std::move(d));
    kind.push_back(k);
    assigned.emplace_back();
    return int(nodes.size()) - 1;
}

void JoinTree::add_edge(int a, int b) { edges.emplace_back(std::min(a, b), std::max(a, b)); }

void JoinTree::remove_edge(int a, int b) {
    std::pair<int, int> e(std::min(a, b), std::max(a, b));
    edges.erase(std::remove(edges.begin(), edges.end(), e), edges.end());
}

std::vector<std::vector<int>> JoinTree::adjacency() const {
    std::vector<std::vector<int>> adj(nodes.size());
    for (auto [a, b] : edges) {
        adj[std::size_t(a)].push_back(b);
        adj[std::size_t(b)].push_back(a);
    }
    for (auto& l : adj) std::sort(l.begin(), l.end());
    return adj;
}

std::size_t JoinTree::space_of(const Domain& d) const {
    std::size_t n = 1;
    for (int v : d) n *= std::size_t(card[std::size_t(v)]);
    return n;
}

std::size_t JoinTree::space(int node) const { return space_of(nodes[std::size_t(node)]); }

std::vector<int> JoinTree::cards_of(const Domain& d) const {
    std::vector<int> c;
    for (int v : d) c.push_back(card[std::size_t(v)]);
    return c;
}

Domain JoinTree::separator(int a, int b) const {
    Domain out;
    const auto& x = nodes[std::size_t(a)];
    const auto& y = nodes[std::size_t(b)];
    std::set_intersection(x.begin(), x.end(), y.begin(), y.end(), std::back_inserter(out));
    return out;
}

UGraph moral_graph(const BayesNet& net) {
    UGraph g(net.size());
    for (std::size_t v = 0; v < net.size(); ++v) {
        const auto& pa = net.parents[v];
        for (int p : pa) g.add_edge(p, int(v));
        for (std::size_t i = 0; i < pa.size(); ++i)
            for (std::size_t j = i + 1; j < pa.size(); ++j) g.add_edge(pa[i], pa[j]);
    }
    return g;
}

std::vector<int> elimination_order(const UGraph& g, const std::vector<int>& card, Heuristic) {
    UGraph w = g;
    std::vector<char> gone(g.size(), 0);
    std::vector<int> order;
    for (std::size_t step = 0; step < g.size(); ++step) {
        std::tuple<std::size_t, std::size_t, int> best{~std::size_t(0), ~std::size_t(0), -1};
        for (std::size_t v = 0; v < g.size(); ++v) {
            if (gone[v]) continue;
            std::vector<int> nb(w.adj[v].begin(), w.adj[v].end());
            std::size_t fill = 0;
            for (std::size_t i = 0; i < nb.size(); ++i)
                for (std::size_t j = i + 1; j < nb.size(); ++j)
                    if (!w.has_edge(nb[i], nb[j])) ++fill;
            std::size_t space = std::size_t(card[v]);
            for (int u : nb) space *= std::size_t(card[std::size_t(u)]);
            std::tuple<std::size_t, std::size_t, int> key{fill, space, int(v)};
            if (key < best) best = key;
        }
        int v = std::get<2>(best);
        std::vector<int> nb(w.adj[std::size_t(v)].begin(), w.adj[std::size_t(v)].end());
        for (std::size_t i = 0; i < nb.size(); ++i)
            for (std::size_t j = i + 1; j < nb.size(); ++j) w.add_edge(nb[i], nb[j]);
        for (int u : nb) w.adj[std::size_t(u)].erase(v);
        w.adj[std::size_t(v)].clear();
        gone[std::size_t(v)] = 1;
        order.push_back(v);
    }
    return order;
}

Triangulation triangulate(const UGraph& g, const std::vector<int>& order) {
    std::vector<int> check(order);
    std::sort(check.begin(), check.end());
    for (std::size_t i = 0; i < check.size(); ++i)
        if (check.size() != g.size() || check[i] != int(i))
            throw std::invalid_argument("elimination order is not a permutation of the vertices");
    Triangulation t;
    t.chordal = g;
    UGraph w = g;
    std::vector<Domain> candidates;
    for (int v : order) {
        std::vector<int> nb(w.adj[std::size_t(v)].begin(), w.adj[std::size_t(v)].end());
        for (std::size_t i = 0; i < nb.size(); ++i)
            for (std::size_t j = i + 1; j < nb.size(); ++j)
                if (!w.has_edge(nb[i], nb[j])) {
                    w.add_edge(nb[i], nb[j]);
                    t.chordal.add_edge(nb[i], nb[j]);
                    t.fill.emplace_back(std::min(nb[i], nb[j]), std::max(nb[i], nb[j]));
                }
        Domain c = nb;
        c.push_back(v);
        std::sort(c.begin(), c.end());
        candidates.push_back(c);
        for (int u : nb) w.adj[std::size_t(u)].erase(v);
        w.adj[std::size_t(v)].clear();
    }
    for (std::size_t i = 0; i < candidates.size(); ++i) {
        bool maximal = true;
        for (std::size_t j = 0; j < candidates.size() && maximal; ++j) {
            if (i == j || candidates[j].size() <= candidates[i].size()) continue;
            if (std::includes(candidates[j].begin(), candidates[j].end(), candidates[i].begin(), candidates[i].end()))
                maximal = false;
        }
        if (maximal) t.cliques.push_back(candidates[i]);
    }
    return t;
}

namespace {

struct DisjointSets {
    std::vector<int> parent;
    explicit DisjointSets(std::size_t n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
    int find(int x) {
        while (parent[std::size_t(x)] != x) x = parent[std::size_t(x)] = parent[std::size_t(parent[std::size_t(x)])];
        return x;
    }
    bool unite(int a, int b) {
        a = find(a);
        b = find(b);
        if (a == b) return false;
        parent[std::size_t(b)] = a;
        return true;
    }
};

std::vector<std::vector<int>> components(const JoinTree& t) {
    auto adj = t.adjacency();
    std::vector<int> comp(t.size(), -1);
    std::vector<std::vector<int>> out;
    for (std::size_t s = 0; s < t.size(); ++s) {
        if (comp[s] >= 0) continue;
        out.emplace_back();
        std::vector<int> st{int(s)};
        comp[s] = int(out.size()) - 1;
        while (!st.empty()) {
            int u = st.back();
            st.pop_back();
            out.back().push_back(u);
            for (int w : adj[std::size_t(u)])
                if (comp[std::size_t(w)] < 0) {
                    comp[std::size_t(w)] = comp[s];
                    st.push_back(w);
                }
        }
        std::sort(out.back().begin(), out.back().end());
    }
    return out;
}

} // namespace

JoinTree junction_tree(const std::vector<Domain>& cliques, const std::vector<int>& card) {
    JoinTree t;
    t.card = card;
    for (const auto& c : cliques) t.add_node(c, NodeKind::Clique);
    struct Cand {
        std::size_t inter, space;
        int a, b;
    };
    std::vector<Cand> cands;
    for (std::size_t i = 0; i < t.size(); ++i)
        for (std::size_t j = i + 1; j < t.size(); ++j) {
            Domain s = t.separator(int(i), int(j));
            cands.push_back({s.size(), t.space_of(s), int(i), int(j)});
        }
    std::stable_sort(cands.begin(), cands.end(), [](const Cand& x, const Cand& y) {
        if (x.inter != y.inter) return x.inter > y.inter;
        if (x.space != y.space) return x.space > y.space;
        return std::tie(x.a, x.b) < std::tie(y.a, y.b);
    });
    DisjointSets ds(t.size());
    for (const auto& c : cands)
        if (ds.unite(c.a, c.b)) t.add_edge(c.a, c.b);
    if (!verify_join_tree(t).empty()) throw std::logic_error("cliques admit no join tree");
    return t;
}

void assign_potentials(JoinTree& tree, const std::vector<Potential>& potentials) {
    for (auto& a : tree.assigned) a.clear();
    for (std::size_t i = 0; i < potentials.size(); ++i) {
        Domain d = potentials[i].domain();
        std::sort(d.begin(), d.end());
        int best = -1;
        for (std::size_t n = 0; n < tree.size(); ++n) {
            const auto& nd = tree.nodes[n];
            if (!std::includes(nd.begin(), nd.end(), d.begin(), d.end())) continue;
            if (best < 0 || tree.space(int(n)) < tree.space(best)) best = int(n);
        }
        if (best < 0) throw std::logic_error("potential " + std::to_string(i) + " is not covered by any node");
        tree.assigned[std::size_t(best)].push_back(int(i));
    }
}

JoinTree binary_join_tree(const std::vector<Domain>& hypergraph, const std::vector<int>& order,
                          const std::vector<int>& card) {
    JoinTree t;
    t.card = card;
    t.binary = true;
    std::vector<int> active;
    for (const auto& h : hypergraph) {
        if (h.empty()) throw std::invalid_argument("hypergraph subsets must be non-empty");
        active.push_back(t.add_node(h));
    }
    for (std::size_t i = 0; i < order.size(); ++i) {
        int x = order[i];
        std::vector<int> with, rest;
        for (int g : active) {
            const auto& d = t.nodes[std::size_t(g)];
            (std::binary_search(d.begin(), d.end(), x) ? with : rest).push_back(g);
        }
        while (with.size() > 1) {
            std::sort(with.begin(), with.end(), [&](int a, int b) {
                return std::make_pair(t.space(a), a) < std::make_pair(t.space(b), b);
            });
            int a = with[0], b = with[1];
            Domain u;
            std::set_union(t.nodes[std::size_t(a)].begin(), t.nodes[std::size_t(a)].end(),
                           t.nodes[std::size_t(b)].begin(), t.nodes[std::size_t(b)].end(), std::back_inserter(u));
            int un = t.add_node(u);
            t.add_edge(a, un);
            t.add_edge(b, un);
            with.erase(with.begin(), with.begin() + 2);
            with.push_back(un);
        }
        if (!with.empty() && i + 1 < order.size()) {
            int h = with[0];
            Domain rem;
            for (int v : t.nodes[std::size_t(h)])
                if (v != x) rem.push_back(v);
            if (!rem.empty()) {
                int m = t.add_node(rem);
                t.add_edge(h, m);
                rest.push_back(m);
            }
        }
        active = rest;
    }
    // a disconnected hypergraph yields a forest; join the pieces
    auto comps = components(t);
    for (std::size_t c = 1; c < comps.size(); ++c) t.add_edge(comps[0].front(), comps[c].front());
    return t;
}

namespace {

JoinTree compact(const JoinTree& t, const std::vector<char>& alive) {
    JoinTree out;
    out.card = t.card;
    out.binary = t.binary;
    std::vector<int> remap(t.size(), -1);
    for (std::size_t i = 0; i < t.size(); ++i)
        if (alive[i]) {
            remap[i] = out.add_node(t.nodes[i], t.kind[i]);
            out.assigned.back() = t.assigned[i];
        }
    for (auto [a, b] : t.edges) out.add_edge(remap[std::size_t(a)], remap[std::size_t(b)]);
    std::sort(out.edges.begin(), out.edges.end());
    return out;
}

} // namespace

JoinTree condense(const JoinTree& bjt) {
    JoinTree t = bjt;
    std::vector<char> alive(t.size(), 1);
    bool changed = true;
    while (changed) {
        changed = false;
        auto adj = t.adjacency();
        std::vector<std::pair<int, int>> es = t.edges;
        std::sort(es.begin(), es.end());
        for (auto [a, b] : es) {
            if (t.nodes[std::size_t(a)] != t.nodes[std::size_t(b)]) continue;
            if (adj[std::size_t(a)].size() + adj[std::size_t(b)].size() - 2 > 3) continue;
            t.remove_edge(a, b);
            for (auto& e : t.edges) {
                if (e.first == b) e.first = a;
                if (e.second == b) e.second = a;
                e = {std::min(e.first, e.second), std::max(e.first, e.second)};
            }
            auto& dst = t.assigned[std::size_t(a)];
            dst.insert(dst.end(), t.assigned[std::size_t(b)].begin(), t.assigned[std::size_t(b)].end());
            t.assigned[std::size_t(b)].clear();
            alive[std::size_t(b)] = 0;
            changed = true;
            break;
        }
    }
    return compact(t, alive);
}

JoinTree attach_singletons(const JoinTree& bjt, const std::vector<int>& targets) {
    JoinTree t = bjt;
    for (int v : targets) {
        bool present = false;
        for (const auto& d : t.nodes)
            if (d.size() == 1 && d[0] == v) present = true;
        if (present) continue;
        auto adj = t.adjacency();
        int host = -1;
        std::tuple<std::size_t, std::size_t, std::size_t, int> best{};
        for (std::size_t n = 0; n < t.size(); ++n) {
            const auto& d = t.nodes[n];
            if (!std::binary_search(d.begin(), d.end(), v)) continue;
            std::size_t sp = t.space(int(n));
            std::tuple<std::size_t, std::size_t, std::size_t, int> key{
                sp, sp - std::size_t(t.card[std::size_t(v)]), adj[n].size(), int(n)};
            if (host < 0 || key < best) {
                best = key;
                host = int(n);
            }
        }
        if (host < 0) throw std::invalid_argument("variable " + std::to_string(v) + " is absent from every node");
        int s = t.add_node({v});
        t.add_edge(host, s);
        auto nb = t.adjacency()[std::size_t(host)];
        if (nb.size() > 3) {
            nb.erase(std::remove(nb.begin(), nb.end(), s), nb.end());
            int moved = nb.back();
            int copy = t.add_node(t.nodes[std::size_t(host)], t.kind[std::size_t(host)]);
            t.remove_edge(host, s);
            t.remove_edge(host, moved);
            t.add_edge(copy, s);
            t.add_edge(copy, moved);
            t.add_edge(host, copy);
        }
    }
    return t;
}

std::vector<std::string> verify_join_tree(const JoinTree& tree, bool check_binary) {
    std::vector<std::string> out;
    const std::size_t n = tree.size();
    if (n == 0) {
        out.push_back("tree has no nodes");
        return out;
    }
    std::set<std::pair<int, int>> seen;
    for (auto [a, b] : tree.edges) {
        if (a < 0 || b < 0 || std::size_t(a) >= n || std::size_t(b) >= n) {
            out.push_back("edge refers to a missing node");
            return out;
        }
        if (a == b) out.push_back("self-loop at node " + std::to_string(a));
        if (!seen.insert({std::min(a, b), std::max(a, b)}).second)
            out.push_back("duplicate edge " + std::to_string(a) + "-" + std::to_string(b));
    }
    if (tree.edges.size() != n - 1)
        out.push_back("not a tree: " + std::to_string(n) + " nodes but " + std::to_string(tree.edges.size()) + " edges");
    if (components(tree).size() != 1) out.push_back("not a tree: graph is disconnected");
    if (!out.empty()) return out;

    auto adj = tree.adjacency();
    std::set<int> vars;
    for (const auto& d : tree.nodes) vars.insert(d.begin(), d.end());
    for (int v : vars) {
        std::vector<int> holders;
        for (std::size_t i = 0; i < n; ++i)
            if (std::binary_search(tree.nodes[i].begin(), tree.nodes[i].end(), v)) holders.push_back(int(i));
        std::vector<char> reach(n, 0);
        std::vector<int> st{holders[0]};
        reach[std::size_t(holders[0])] = 1;
        std::size_t count = 1;
        while (!st.empty()) {
            int u = st.back();
            st.pop_back();
            for (int w : adj[std::size_t(u)]) {
                const auto& d = tree.nodes[std::size_t(w)];
                if (!reach[std::size_t(w)] && std::binary_search(d.begin(), d.end(), v)) {
                    reach[std::size_t(w)] = 1;
                    ++count;
                    st.push_back(w);
                }
            }
        }
        if (count != holders.size())
            out.push_back("running intersection violated for variable " + std::to_string(v));
    }
    if (check_binary)
        for (std::size_t i = 0; i < n; ++i)
            if (adj[i].size() > 3)
                out.push_back("node " + std::to_string(i) + " has " + std::to_string(adj[i].size()) + " neighbors");
    return out;
}

std::vector<Domain> maximal_subsets(const JoinTree& tree) {
    std::vector<Domain> out;
    for (const auto& d : tree.nodes) {
        bool maximal = true;
        for (const auto& e : tree.nodes)
            if (e.size() > d.size() && std::includes(e.begin(), e.end(), d.begin(), d.end())) maximal = false;
        if (maximal && std::find(out.begin(), out.end(), d) == out.end()) out.push_back(d);
    }
    std::sort(out.begin(), out.end());
    return out;
}

Compiled compile(const BayesNet& net, const InputSet& inputs, const std::vector<int>& targets, Heuristic h) {
    Compiled c;
    auto card = net.cards();
    UGraph g = moral_graph(net);
    c.order = elimination_order(g, card, h);
    Triangulation tri = triangulate(g, c.order);
    c.cliques = tri.cliques;
    c.junction = junction_tree(tri.cliques, card);
    assign_potentials(c.junction, inputs.potentials);

    std::vector<Domain> hyper = inputs.hypergraph;
    for (int v : targets)
        if (std::find(hyper.begin(), hyper.end(), Domain{v}) == hyper.end()) hyper.push_back({v});
    c.binary = attach_singletons(condense(binary_join_tree(hyper, c.order, card)), targets);
    assign_potentials(c.binary, inputs.potentials);
    return c;
}

Compiled compile(const BayesNet& net, const InputSet& inputs, Heuristic h) {
    std::vector<int> all(net.size());
    std::iota(all.begin(), all.end(), 0);
    return compile(net, inputs, all, h);
}

std::string dump_tree(const JoinTree& tree, const BayesNet& net, const InputSet* inputs) {
    auto names = [&](const Domain& d) {
        std::string s = "{";
        for (std::size_t k = 0; k < d.size(); ++k) s += (k ? "," : "") + net.vars[std::size_t(d[k])].name;
        return s + "}";
    };
    std::ostringstream os;
    os << "tree nodes=" << tree.size() << " edges=" << tree.edges.size() << " binary=" << (tree.binary ? "yes" : "no")
       << "\n";
    for (std::size_t i = 0; i < tree.size(); ++i) {
        os << "node " << i << " " << (tree.kind[i] == NodeKind::Clique ? "clique" : "join") << " "
           << names(tree.nodes[i]) << " size=" << tree.space(int(i)) << " assigned=";
        const auto& a = tree.assigned[i];
        if (a.empty()) os << "-";
        for (std::size_t k = 0; k < a.size(); ++k) {
            os << (k ? "," : "");
            if (inputs) os << inputs->labels[std::size_t(a[k])];
            else os << "#" << a[k];
        }
        os << "\n";
    }
    auto es = tree.edges;
    std::sort(es.begin(), es.end());
    for (auto [a, b] : es) {
        Domain s = tree.separator(a, b);
        os << "edge " << a << " " << b << " sep=" << names(s) << " size=" << tree.space_of(s) << "\n";
    }
    return os.str();
}

} // namespace jtarch
