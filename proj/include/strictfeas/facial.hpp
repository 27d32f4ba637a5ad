#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "strictfeas/exact_matrix.hpp"
#include "strictfeas/model.hpp"
#include "strictfeas/solver.hpp"

namespace strictfeas::facial {

class RoundingFailedError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};
class SolverFailedError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};
class InconsistentError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};
class UnknownVariableError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// constant + sum coef * var, terms kept in the problem's variable order.
struct AffineExpr {
    QuadExt constant;
    std::vector<std::pair<std::string, QuadExt>> terms;

    QuadExt coefficient(const std::string& var) const;
    std::string str() const;
    friend bool operator==(const AffineExpr&, const AffineExpr&) = default;
};

/// sum coef * var = rhs.
struct LinearEquation {
    std::vector<std::pair<std::string, QuadExt>> coefficients;
    QuadExt rhs;
    std::string str() const;
};

struct Elimination {
    std::string variable;
    AffineExpr value;
};

struct ImplicitConstraintSet {
    /// Reduced row-echelon system.
    std::vector<LinearEquation> equations;
    /// Triangular substitution: each value only mentions variables that are not eliminated.
    std::vector<Elimination> eliminated;
    /// Equations that only involve protected variables (never eliminated).
    std::vector<LinearEquation> residual;

    bool empty() const { return equations.empty(); }
    const Elimination* find(const std::string& var) const;
};

/// Nonzero X >= 0 orthogonal to F0 and every F_i; range_vectors span range(X).
struct ReducingCertificate {
    ExactMatrix x;
    std::vector<ExactVector> range_vectors;
};

struct FacialOptions {
    SolverOptions solver;
    /// Eigenvalues of the numerical X below threshold * lambda_max are read as zero.
    double eig_threshold = 1e-6;
    /// Rounding denominators are tried in the order 1e2, 1e4, 1e6, capped by this.
    std::int64_t max_den = 1'000'000;
    /// Variable that is never eliminated; empty selects the sole objective variable, if any.
    std::string protected_variable;
};

constexpr const char* kConstantTerm = "#C";
constexpr const char* kTraceTerm = "#trace";

/// Feasibility problem over X: X >= 0, <F0, X> = 0, <F_i, X> = 0, trace X = 1.
/// Returned in PrimalForm with zero objective; its data reads
///   terms (#C: F0, F_1..F_m, #trace: I), b = (0, ..., 0, -1), constant 0.
SdpProblem build_alternative_problem(const SdpProblem& prob);

/// Every violated certificate invariant; empty means valid.
std::vector<std::string> certificate_violations(const SdpProblem& prob, const ReducingCertificate& cert);

struct Diagnosis {
    bool strictly_feasible = false;
    std::optional<ReducingCertificate> certificate;
    SolveResult alternative_solve;
    /// How X was rationalized, or why the verdict is StrictlyFeasible.
    std::string log;
    /// Numerical tolerance behind a StrictlyFeasible verdict (it is not a proof).
    double tolerance = 0.0;
    /// Strictly feasible point found on the way, when available.
    std::optional<NumericAssignment> interior_point;
};

/// Solves the alternative problem numerically and turns its solution into an exactly
/// verified ReducingCertificate, or reports StrictlyFeasible.
/// Throws RoundingFailedError and SolverFailedError.
Diagnosis find_reducing_certificate(const SdpProblem& prob, const FacialOptions& opts = {});

/// Integer-scaled primitive basis of range(X), in row-echelon order.
std::vector<ExactVector> certificate_null_vectors(const ReducingCertificate& cert);

/// The variable protected from elimination under `opts`.
std::string protected_variable(const SdpProblem& prob, const FacialOptions& opts = {});

/// (F0 v)_j + sum_i y_i (F_i v)_j = 0 for all v, j, row reduced.
/// Pivots prefer the largest variable index; the protected variable is never a pivot.
/// Throws InconsistentError when the system has no solution.
ImplicitConstraintSet derive_implicit_constraints(const SdpProblem& prob, const std::vector<ExactVector>& vectors,
                                                  const std::string& protected_var = "");

/// Substitutes eliminated variables into the pencil and objective.
/// Throws UnknownVariableError.
SdpProblem apply_constraints(const SdpProblem& prob, const ImplicitConstraintSet& cons);

struct ReductionRound {
    Diagnosis diagnosis;
    std::vector<ExactVector> null_vectors;
    ImplicitConstraintSet constraints;
};

struct ReductionLog {
    SdpProblem reduced;
    std::vector<ReductionRound> rounds;
    std::vector<Elimination> eliminated() const;
};

/// Repeats diagnose -> derive -> substitute until no new variable is eliminated or the
/// problem is reported strictly feasible, at most n rounds.
ReductionLog reduce(const SdpProblem& prob, const FacialOptions& opts = {});

}  // namespace strictfeas::facial
