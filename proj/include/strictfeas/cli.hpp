#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "strictfeas/facial.hpp"
#include "strictfeas/solver.hpp"

namespace strictfeas::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitError = 1;
inline constexpr int kExitTrouble = 2;

/// Raw problems count as reproduced when any of these holds.
inline constexpr double kTroubleMagnitude = 1e6;
inline constexpr double kTroubleObjectiveGap = 1e-6;
/// Simplified problems must stay this small and this close.
inline constexpr double kCleanMagnitude = 1e3;
inline constexpr double kCleanObjectiveGap = 1e-6;
inline constexpr double kToyObjectiveGap = 1e-8;

struct CliOptions {
    SolverOptions solver;
    std::int64_t max_den = 1'000'000;
    double eig_threshold = 1e-6;
    std::string out;
    bool json = false;
    /// From STRICTFEAS_SEED; only the `random` built-in uses it.
    std::optional<std::uint64_t> seed;

    facial::FacialOptions facial() const;
    nlohmann::json to_json() const;
};

/// Reads STRICTFEAS_SEED; throws std::invalid_argument when it is not an unsigned integer.
std::optional<std::uint64_t> seed_from_environment();

struct RunReport {
    std::string command;
    nlohmann::json inputs = nlohmann::json::object();
    nlohmann::json options = nlohmann::json::object();
    nlohmann::json solves = nlohmann::json::array();
    nlohmann::json reduction;
    nlohmann::json verdicts = nlohmann::json::array();
    nlohmann::json timings = nlohmann::json::object();
    std::vector<std::string> errors;
    int exit_code = kExitOk;
    /// Human-readable output.
    std::string text;

    nlohmann::json to_json() const;
};

/// `builtin:<name>` selects an embedded problem, anything else is a file path.
SdpProblem load_input(const std::string& input, const CliOptions& opts);
const std::vector<std::string>& builtin_names();
SdpProblem builtin_problem(const std::string& name, const CliOptions& opts = {});

/// Exit 0 = Optimal, 2 = any other solver status, 1 = error.
RunReport cmd_solve(const std::string& input, const CliOptions& opts);
RunReport cmd_diagnose(const std::string& input, const CliOptions& opts);
/// Writes the reduced problem to opts.out, or into the text output when opts.out is empty.
RunReport cmd_reduce(const std::string& input, const CliOptions& opts);
/// target in {problem1, problem2, chsh-toy, all}; exit 0 iff every claim passes.
RunReport cmd_reproduce(const std::string& target, const CliOptions& opts);
/// Writes a built-in problem to opts.out, or into the text output.
RunReport cmd_export(const std::string& name, const CliOptions& opts);

nlohmann::json solve_to_json(const SolveResult& res);

}  // namespace strictfeas::cli
