#ifndef JTARCH_COMPILE_HPP
#define JTARCH_COMPILE_HPP

#include <cstddef>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "jtarch/network.hpp"

namespace jtarch {

struct UGraph {
    std::vector<std::set<int>> adj;

    explicit UGraph(std::size_t n = 0) : adj(n) {}
    std::size_t size() const { return adj.size(); }
    void add_edge(int a, int b);
    bool has_edge(int a, int b) const;
    std::size_t edge_count() const;
};

enum class Heuristic { MinFill };
enum class NodeKind { Clique, JoinNode };

// Tree of variable subsets. Node domains hold sorted variable ids; edges are
// stored with the smaller id first. `assigned` lists input-potential indices.
struct JoinTree {
    std::vector<int> card;
    std::vector<Domain> nodes;
    std::vector<NodeKind> kind;
    std::vector<std::pair<int, int>> edges;
    std::vector<std::vector<int>> assigned;
    bool binary = false;

    std::size_t size() const { return nodes.size(); }
    int add_node(Domain d, NodeKind k = NodeKind::JoinNode);
    void add_edge(int a, int b);
    void remove_edge(int a, int b);
    std::vector<std::vector<int>> adjacency() const;  // neighbor lists, ascending
    std::size_t space(int node) const;
    std::size_t space_of(const Domain& d) const;
    std::vector<int> cards_of(const Domain& d) const;
    Domain separator(int a, int b) const;
};

struct Triangulation {
    UGraph chordal;
    std::vector<std::pair<int, int>> fill;
    std::vector<Domain> cliques;  // maximal elimination cliques, creation order
};

struct Compiled {
    std::vector<int> order;
    std::vector<Domain> cliques;
    JoinTree junction;
    JoinTree binary;
};

UGraph moral_graph(const BayesNet& net);
std::vector<int> elimination_order(const UGraph& g, const std::vector<int>& card, Heuristic h = Heuristic::MinFill);
Triangulation triangulate(const UGraph& g, const std::vector<int>& order);
JoinTree junction_tree(const std::vector<Domain>& cliques, const std::vector<int>& card);
void assign_potentials(JoinTree& tree, const std::vector<Potential>& potentials);
JoinTree binary_join_tree(const std::vector<Domain>& hypergraph, const std::vector<int>& order,
                          const std::vector<int>& card);
JoinTree condense(const JoinTree& bjt);
JoinTree attach_singletons(const JoinTree& bjt, const std::vector<int>& targets);
std::vector<std::string> verify_join_tree(const JoinTree& tree, bool check_binary = false);

// Nodes whose domain is not a proper subset of another node's domain.
std::vector<Domain> maximal_subsets(const JoinTree& tree);

// Full pipeline: one elimination order feeds both structures. The binary join
// tree hypergraph is seeded with a singleton for every target variable.
Compiled compile(const BayesNet& net, const InputSet& inputs, const std::vector<int>& targets,
                 Heuristic h = Heuristic::MinFill);
Compiled compile(const BayesNet& net, const InputSet& inputs, Heuristic h = Heuristic::MinFill);

std::string dump_tree(const JoinTree& tree, const BayesNet& net, const InputSet* inputs = nullptr);

} // namespace jtarch

#endif
