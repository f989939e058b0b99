#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "ksmooth/io.hpp"

namespace ksmooth {

struct VerificationFailure {
    std::uint64_t seed = 0;
    std::string detail;
    Json payload;  // operator file; pair suites add the second operator under "other"
};

struct VerificationReport {
    std::string theorem_id;
    std::size_t seeds_run = 0;
    std::size_t passes = 0;
    std::vector<VerificationFailure> failures;
    double wall_time = 0;
    std::map<std::string, std::size_t> histogram;
    std::size_t rejections = 0;  // candidates discarded because a hypothesis failed
};

const std::vector<std::string>& theorem_ids();

// Seeds seed0, seed0+1, ... each yield one hypothesis-satisfying instance
// whose conclusion is then checked.
VerificationReport verify_theorem(const std::string& theorem_id, std::size_t seeds, std::uint64_t seed0);

Json verification_json(const VerificationReport& report);

}  // namespace ksmooth
