#pragma once

#include <cstdint>
#include <string_view>

#include "ovalkit_cli/report.hpp"
#include "ovalkit_cli/tolerances.hpp"

namespace ovalkit::cli {

enum class Suite { Identities, Inequalities, Ode, All };

// "identities", "inequalities", "ode" or "all".
Suite suite_from_name(std::string_view name);

// Each row aggregates a randomized sample (worst case over the draws).
Report run_suite(Suite suite, const Tolerances& tol, std::uint64_t seed);

}  // namespace ovalkit::cli
