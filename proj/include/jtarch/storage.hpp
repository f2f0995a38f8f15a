#ifndef JTARCH_STORAGE_HPP
#define JTARCH_STORAGE_HPP

#include <cstddef>
#include <vector>

#include "jtarch/engines.hpp"

namespace jtarch {

// Floating-point-number counts by storage class.
struct StorageReport {
    std::size_t input_fpn = 0;
    std::size_t evidence_fpn = 0;
    std::size_t clique_fpn = 0;
    std::size_t separator_fpn = 0;
    std::size_t output_fpn = 0;

    std::size_t total_fpn() const { return input_fpn + evidence_fpn + clique_fpn + separator_fpn + output_fpn; }
    bool operator==(const StorageReport&) const = default;
};

// For SS the separator registers are the messages the demand actually
// produced, so an SS run is performed on the given tree.
StorageReport storage_report(Arch arch, const JoinTree& tree, const InputSet& inputs, const std::vector<int>& targets);

// Same, reusing the registers of an SS run that already happened.
StorageReport storage_report(Arch arch, const JoinTree& tree, const InputSet& inputs, const std::vector<int>& targets,
                             const EngineResult& ss_result);

std::size_t peak_working_memory(Arch arch, const JoinTree& tree);

} // namespace jtarch

#endif
