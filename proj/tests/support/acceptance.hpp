#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace graycat::acceptance {

struct Outcome {
    int number = 0;
    std::string title;
    bool pass = false;
    std::string detail;
};

int criterion_count();
Outcome run_criterion(int number, std::uint64_t seed = 20240611);
std::vector<Outcome> run_all(std::uint64_t seed = 20240611);
std::string format_outcome(const Outcome& o);

}  // namespace graycat::acceptance
