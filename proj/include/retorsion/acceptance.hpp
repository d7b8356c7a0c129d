#pragma once

#include <string>
#include <vector>

namespace retorsion {

struct CriterionResult {
    std::string name;
    bool passed = false;
    double seconds = 0.0;
    std::string detail;
};

// Full verification battery on the model geometries. Each criterion is
// independent; all must pass for the suite to count as green.
std::vector<CriterionResult> run_acceptance();

}  // namespace retorsion
