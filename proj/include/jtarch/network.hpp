#ifndef JTARCH_NETWORK_HPP
#define JTARCH_NETWORK_HPP

#include <cstddef>
#include <map>
#include <string>
#include <vector>

#include "jtarch/potential.hpp"

namespace jtarch {

// Variables are indexed by id (dense from 0). The CPT of V has domain
// parents(V) followed by V, so the child varies fastest.
struct BayesNet {
    std::vector<Variable> vars;
    std::vector<std::vector<int>> parents;
    std::vector<Potential> cpts;

    std::size_t size() const { return vars.size(); }
    std::vector<int> cards() const;
    int find(const std::string& name) const;
};

// Likelihood vectors keyed by variable id.
struct Evidence {
    std::map<int, std::vector<double>> items;
};

struct InputSet {
    std::vector<Potential> potentials;
    std::vector<std::string> labels;
    std::vector<Domain> hypergraph;  // distinct domains, sorted ids, first-seen order
    std::size_t cpt_count = 0;
};

std::vector<std::string> validate(const BayesNet& net);
void validate_evidence(const BayesNet& net, const Evidence& ev);

BayesNet chest_clinic();
Evidence chest_clinic_evidence();

InputSet input_potentials(const BayesNet& net, const Evidence& ev);

constexpr std::size_t kDefaultOracleCap = std::size_t(1) << 22;

class OracleCapExceeded : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

std::size_t joint_size(const BayesNet& net);
Potential joint_oracle(const BayesNet& net, const Evidence& ev, std::size_t cap = kDefaultOracleCap);

// Normalized single-variable marginals of the oracle joint, indexed by id.
std::vector<Potential> oracle_marginals(const BayesNet& net, const Evidence& ev, std::size_t cap = kDefaultOracleCap);

} // namespace jtarch

#endif
