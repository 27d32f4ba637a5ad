#pragma once

#include <string>
#include <vector>

#include <Eigen/Dense>

#include "strictfeas/model.hpp"

namespace strictfeas {

struct SolverOptions {
    double gap_tol = 1e-9;
    double feas_tol = 1e-9;
    int max_iter = 200;
    /// Iterate-magnitude alarm.
    double var_bound = 1e8;
    /// Step lengths below this for `stagnation_iters` consecutive iterations count as stagnation.
    double min_step = 1e-3;
    int stagnation_iters = 5;
    /// Newton-system condition estimate beyond which the solve is abandoned.
    double condition_limit = 1e14;
    /// Assemble the Schur complement with the OpenMP kernel.
    bool parallel_schur = true;
};

enum class StatusTag { Optimal, NumericalTrouble, PrimalInfeasible, DualUnboundedSuspected, IterationLimit };

std::string to_string(StatusTag tag);

struct SolveStatus {
    StatusTag tag = StatusTag::NumericalTrouble;
    std::string message;
};

struct SolveDiagnostics {
    int iterations = 0;
    double final_gap = 0.0;
    double primal_residual = 0.0;
    double dual_residual = 0.0;
    /// Largest |y_i| or |X_ij| over all iterates.
    double max_abs_variable = 0.0;
    double min_slack_eigenvalue_estimate = 0.0;
    double condition_estimate = 0.0;
};

/// One row per iteration, recorded before the step is taken.
struct IterationRecord {
    int iteration = 0;
    double objective_primal = 0.0;
    double objective_dual = 0.0;
    double primal_residual = 0.0;
    double dual_residual = 0.0;
    double mu = 0.0;
    double step_primal = 0.0;
    double step_dual = 0.0;
};

struct SolveResult {
    SolveStatus status;
    std::vector<std::string> names;
    Eigen::VectorXd y;
    Eigen::MatrixXd X;
    double objective_primal = 0.0;
    double objective_dual = 0.0;
    SolveDiagnostics diagnostics;
    std::vector<IterationRecord> history;

    NumericAssignment assignment() const;
    bool optimal() const { return status.tag == StatusTag::Optimal; }
};

class InvalidProblemError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Primal-dual path following on the pair
///   max <b, y> s.t. F0 + sum y_i F_i >= 0   /   min <F0, X> s.t. <F_i, X> = -b_i, X >= 0.
/// The problem's stored data is solved regardless of its form tag.
/// Throws InvalidProblemError when validate() reports violations.
SolveResult solve_sdp(const SdpProblem& prob, const SolverOptions& opts = {});

inline constexpr double kStrictFeasibilityWarningThreshold = 1e6;

/// Plain-text summary with a strict-feasibility warning when iterates grew
/// beyond 1e6 or the solve did not reach Optimal.
std::string diagnostics_report(const SolveResult& res);

bool strict_feasibility_warning(const SolveResult& res);

}  // namespace strictfeas
