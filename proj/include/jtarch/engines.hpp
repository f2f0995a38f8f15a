#ifndef JTARCH_ENGINES_HPP
#define JTARCH_ENGINES_HPP

#include <functional>
#include <map>
#include <string>
#include <vector>

#include "jtarch/compile.hpp"

namespace jtarch {

enum class Arch { LS, Hugin, SS };

std::string arch_name(Arch a);

struct MessageRegister {
    int from = 0;
    int to = 0;
    std::size_t fpn = 0;
};

struct EngineResult {
    std::map<int, Potential> singleton_marginals;  // normalized
    std::map<int, Potential> node_marginals;       // unnormalized
    std::map<std::pair<int, int>, Potential> separator_marginals;  // Hugin only
    std::vector<MessageRegister> registers;                        // SS only: stored messages
    OpCounter counter;
};

// Called after each Hugin message step with current node and separator
// potentials (separators indexed like tree.edges).
using HuginStepHook = std::function<void(const std::vector<Potential>& nodes, const std::vector<Potential>& seps)>;

struct EngineOptions {
    // Scales every reported marginal entry; used to exercise verification failure.
    double corrupt_factor = 1.0;
    HuginStepHook hugin_step;
};

int select_root(const JoinTree& tree);

EngineResult ls_run(const JoinTree& tree, const std::vector<Potential>& inputs, const std::vector<int>& targets,
                    const EngineOptions& opt = {});
EngineResult hugin_run(const JoinTree& tree, const std::vector<Potential>& inputs, const std::vector<int>& targets,
                       const EngineOptions& opt = {});
EngineResult ss_run(const JoinTree& tree, const std::vector<Potential>& inputs, const std::vector<int>& targets,
                    const EngineOptions& opt = {});

struct AllResults {
    Compiled compiled;
    InputSet inputs;
    EngineResult ls;
    EngineResult hugin;
    EngineResult ss;
};

std::vector<int> all_variables(const BayesNet& net);

AllResults run_all(const BayesNet& net, const Evidence& ev, const EngineOptions& opt = {});

// Largest deviation between an engine's singleton marginals and the oracle's.
double max_marginal_error(const EngineResult& r, const std::vector<Potential>& oracle);

} // namespace jtarch

#endif
