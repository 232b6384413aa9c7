#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <ostream>
#include <string>

#include "ovalkit_cli/sweep.hpp"
#include "ovalkit_cli/tolerances.hpp"

namespace ovalkit::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitFailure = 1;  // failing checks, non-convergence, runtime errors
inline constexpr int kExitUsage = 2;    // bad flags or invalid input

struct Context {
    bool json = false;
    Tolerances tol;
    unsigned threads = 1;
    std::uint64_t seed = 1;
    std::ostream* out;
    std::ostream* err;
};

// Reads a file, or standard input for "-".
std::string read_text(const std::string& path);

int cmd_eval(const Context& ctx, const std::string& spec_path, const std::optional<std::string>& f_path);

int cmd_verify(const Context& ctx, const std::string& suite);

int cmd_sweep(const Context& ctx, SweepOptions options, const std::optional<std::string>& output);

int cmd_export(const Context& ctx, const std::string& spec_path, const std::string& format,
               const std::string& output);

struct MinimizeCliOptions {
    std::optional<double> gamma;
    bool symmetric = false;
    std::size_t grid = 256;
    std::size_t steps = 50000;
    double tol = 1e-8;
    double step = 0.1;
    std::string metric = "sobolev";
    std::optional<std::string> trace;
};
int cmd_minimize(const Context& ctx, const MinimizeCliOptions& options);

int cmd_spectrum(const Context& ctx, const std::string& spec_path, std::size_t k, std::size_t grid);

int cmd_counterexample(const Context& ctx, double tau, double lambda, double eps, std::size_t grid);

}  // namespace ovalkit::cli
