#pragma once

#include <cstddef>
#include <string>
#include <vector>

namespace superw {

/// One failed identity instance. Both sides are rendered in the library's
/// canonical text forms so reports are byte-stable.
struct Violation {
    std::string relation;
    std::vector<std::string> indices;
    std::string lhs;
    std::string rhs;
};

struct CheckReport {
    std::size_t checked = 0;
    std::vector<Violation> violations;
    std::vector<std::string> notes;

    bool pass() const noexcept { return violations.empty(); }
};

}  // namespace superw
