#pragma once

#include <cstddef>
#include <cstdint>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

namespace ovalkit::cli {

enum class SweepFamily { PhiLambda, PsiTau, GammaEnergy };

SweepFamily sweep_family_from_name(std::string_view name);

struct SweepOptions {
    SweepFamily family = SweepFamily::PhiLambda;
    double from = 1.0;
    double to = 3.0;
    std::size_t steps = 21;
    std::size_t grid = 256;
    unsigned threads = 1;
    std::uint64_t seed = 1;
    std::size_t trials = 8;  // gamma_energy only
};

struct SweepTable {
    std::vector<std::string> columns;
    std::vector<std::vector<double>> rows;
};

// Parameter values from, ..., to (inclusive, evenly spaced). Throws
// std::invalid_argument for an empty or non-finite range.
std::vector<double> sweep_parameters(double from, double to, std::size_t steps);

// Rows are computed in parallel and returned in parameter order.
SweepTable run_sweep(const SweepOptions& options);

void write_csv(std::ostream& out, const SweepTable& table);

}  // namespace ovalkit::cli
