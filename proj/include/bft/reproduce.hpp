#pragma once

// The acceptance criteria as executable checks. Shared by the acceptance test binary and
// the `examples` CLI command.

#include <cstdint>
#include <string>
#include <vector>

namespace bft {

struct CriterionResult {
    int id = 0;
    std::string name;
    bool passed = false;
    std::string detail;
};

struct ReproduceOptions {
    std::uint64_t seed = 20240517;
    int equivalence_instances = 240;  ///< random 2-agent instances for criterion 7
    int refinement_objectives = 20;   ///< random objectives for criterion 12
};

std::vector<CriterionResult> run_acceptance(const ReproduceOptions& options = {});

}  // namespace bft
