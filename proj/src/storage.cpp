#include "jtarch/storage.hpp"

#include <algorithm>

namespace jtarch {

namespace {

StorageReport common(const JoinTree& tree, const InputSet& inputs, const std::vector<int>& targets) {
    StorageReport s;
    for (std::size_t i = 0; i < inputs.potentials.size(); ++i)
        (i < inputs.cpt_count ? s.input_fpn : s.evidence_fpn) += inputs.potentials[i].size();
    for (int v : targets) s.output_fpn += std::size_t(tree.card[std::size_t(v)]);
    return s;
}

} // namespace

StorageReport storage_report(Arch arch, const JoinTree& tree, const InputSet& inputs, const std::vector<int>& targets,
                             const EngineResult& ss_result) {
    StorageReport s = common(tree, inputs, targets);
    switch (arch) {
    case Arch::LS:
        for (std::size_t n = 0; n < tree.size(); ++n) s.clique_fpn += tree.space(int(n));
        break;
    case Arch::Hugin:
        for (std::size_t n = 0; n < tree.size(); ++n) s.clique_fpn += tree.space(int(n));
        for (auto [a, b] : tree.edges) s.separator_fpn += tree.space_of(tree.separator(a, b));
        break;
    case Arch::SS:
        for (const auto& reg : ss_result.registers) s.separator_fpn += reg.fpn;
        break;
    }
    return s;
}

StorageReport storage_report(Arch arch, const JoinTree& tree, const InputSet& inputs, const std::vector<int>& targets) {
    EngineResult none;
    if (arch == Arch::SS) none = ss_run(tree, inputs.potentials, targets);
    return storage_report(arch, tree, inputs, targets, none);
}

std::size_t peak_working_memory(Arch, const JoinTree& tree) {
    std::size_t m = 0;
    for (std::size_t n = 0; n < tree.size(); ++n) m = std::max(m, tree.space(int(n)));
    return m;
}

} // namespace jtarch
