#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "strictfeas/exact_matrix.hpp"
#include "strictfeas/model.hpp"

namespace strictfeas::certify {

class WrongShapeError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

struct PrimalVerdict {
    bool feasible = false;
    ExactMatrix value;
    /// Set when the evaluated pencil is not PSD.
    std::optional<PsdVerdict> witness;
};

/// Evaluates the pencil exactly at `assignment` and checks PSD exactly.
/// Throws MissingVariableError.
PrimalVerdict verify_primal_point(const SdpProblem& prob, const ExactAssignment& assignment);

struct BoundCertificate {
    ExactMatrix x;
    std::string objective_var;
    /// <F_var, X>, negative.
    QuadExt normalization;
    /// var <= certified_bound for every feasible point.
    QuadExt certified_bound;
};

struct BoundCheck {
    std::optional<BoundCertificate> certificate;
    std::vector<std::string> violations;
    bool valid() const { return certificate.has_value(); }
};

/// Weak duality: 0 <= <X, F0 + sum y_i F_i> = <F0, X> + y_var <F_var, X> when X >= 0 and
/// <F_i, X> = 0 for the other variables.
BoundCheck verify_bound_certificate(const SdpProblem& prob, const ExactMatrix& x, const std::string& objective_var);

/// The dual solution of the simplified first problem with the 1/2 prefactor applied.
ExactMatrix problem1_dual_certificate();

/// 5*sqrt5 - 11.
QuadExt mu2_star();

struct PencilSample {
    QuadExt mu;
    bool expected_psd = false;
    bool psd = false;
    /// Direction v with v^T M(mu) v < 0 when not PSD.
    ExactVector witness;
};

struct Mu2BoundVerdict {
    bool confirmed = false;
    std::vector<PencilSample> samples;
    std::string detail;
};

/// PSD at mu*, not PSD at mu* + 1/1000, 1/100, 1/10, PSD at 0 and mu*/2.
/// Throws WrongShapeError unless the pencil has exactly one variable.
Mu2BoundVerdict verify_mu2_bound(const SdpProblem& prob);

struct FormulaSample {
    QuadExt mu;
    /// The closed-form eigenvalue (A - sqrt(B)) / 76, the smaller root of q(., mu).
    double formula_value = 0.0;
    double nearest_eigenvalue = 0.0;
    bool matched = false;
};

struct FormulaVerdict {
    bool confirmed = false;
    std::vector<FormulaSample> samples;
};

inline constexpr double kFormulaTolerance = 1e-10;

/// q(l, mu) = 5776 l^2 - 152 A l + A^2 - B with
///   A = (4 sqrt5 - 17) mu - 4 sqrt5 + 36,
///   B = (160 sqrt5 + 1201) mu^2 - 16 (sqrt5 - 85) mu - 144 sqrt5 + 688;
/// at mu in {0, 1/10, 5 sqrt5 - 11, 1/4} the smaller root must be an eigenvalue of M(mu).
/// Throws WrongShapeError unless the pencil has exactly one variable.
FormulaVerdict check_eigenvalue_formula(const SdpProblem& prob, double tol = kFormulaTolerance);

/// Closed-form eigenvalue at mu, as a double.
double formula_eigenvalue(double mu);

struct Verdict {
    std::string claim;
    bool pass = false;
    std::string verdict;
    std::optional<std::string> witness;
    std::optional<std::string> certified_bound;
};

nlohmann::json to_json(const Verdict& v);

Verdict primal_verdict(const std::string& claim, const PrimalVerdict& v);
Verdict bound_verdict(const std::string& claim, const BoundCheck& v);
Verdict mu2_verdict(const std::string& claim, const Mu2BoundVerdict& v);
Verdict formula_verdict(const std::string& claim, const FormulaVerdict& v);

}  // namespace strictfeas::certify
