#pragma once

#include <string>
#include <vector>

#include "roc2/tmf13.hpp"

namespace roc2 {

/* Exit codes: 0 all checks pass, 1 a verification failed, 2 usage or
 * configuration error. */
int run_cli(const std::vector<std::string>& args);

/* Engine soundness shared by the CLI and the test suite: squares of
 * differentials vanish on sampled monomials, Smith transforms multiply out.
 * The independent page-homology oracle lives in the acceptance tests. */
struct SoundnessOptions {
    unsigned long long seed = 1;
    int dd_samples = 10000;
    int snf_samples = 1000;
};
Report engine_soundness(const SoundnessOptions& opt);

}  // namespace roc2
