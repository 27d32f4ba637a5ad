#pragma once

#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "strictfeas/exact_matrix.hpp"

namespace strictfeas {

enum class ScalarKind { Double, Exact };
enum class ProblemForm { DualForm, PrimalForm };

class MissingVariableError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

struct PencilTerm {
    std::string name;
    ExactMatrix matrix;
};

/// Affine symmetric-matrix map y -> F0 + sum_i y_i F_i over named variables.
class MatrixPencil {
public:
    MatrixPencil() = default;
    explicit MatrixPencil(std::size_t n) : constant_(n) {}
    MatrixPencil(ExactMatrix constant, std::vector<PencilTerm> terms)
        : constant_(std::move(constant)), terms_(std::move(terms)) {}

    std::size_t dim() const { return constant_.rows(); }
    std::size_t num_terms() const { return terms_.size(); }
    const ExactMatrix& constant() const { return constant_; }
    ExactMatrix& constant() { return constant_; }
    const std::vector<PencilTerm>& terms() const { return terms_; }
    std::vector<PencilTerm>& terms() { return terms_; }

    /// Index of a variable, or npos.
    std::size_t index_of(const std::string& name) const;
    const ExactMatrix& term(const std::string& name) const;
    std::vector<std::string> names() const;

    /// Sets (i, j) and (j, i) of the constant or of a term.
    void set_constant(std::size_t i, std::size_t j, const QuadExt& v);
    void set_term(const std::string& name, std::size_t i, std::size_t j, const QuadExt& v);
    PencilTerm& add_term(std::string name);

    static constexpr std::size_t npos = static_cast<std::size_t>(-1);

    friend bool operator==(const MatrixPencil&, const MatrixPencil&);

private:
    ExactMatrix constant_;
    std::vector<PencilTerm> terms_;
};

bool operator==(const PencilTerm& a, const PencilTerm& b);

using ExactAssignment = std::map<std::string, QuadExt>;
using NumericAssignment = std::map<std::string, double>;

ExactMatrix pencil_eval(const MatrixPencil& p, const ExactAssignment& y);
Eigen::MatrixXd pencil_eval(const MatrixPencil& p, const NumericAssignment& y);

/// DualForm:   maximize <b, y>  s.t. F0 + sum_i y_i F_i >= 0.
/// PrimalForm: minimize <F0, X> s.t. <F_i, X> = -b_i, X >= 0.
/// Both forms share the same stored data; the tag says which side is "the" problem.
struct SdpProblem {
    std::string name;
    std::string provenance;
    ScalarKind scalar = ScalarKind::Exact;
    ProblemForm form = ProblemForm::DualForm;
    MatrixPencil pencil;
    std::vector<QuadExt> objective;
    /// Constant added to the objective (appears after substituting variables away).
    QuadExt objective_offset;

    std::size_t num_vars() const { return pencil.num_terms(); }
    const QuadExt& objective_of(const std::string& var) const;
};

bool same_data(const SdpProblem& a, const SdpProblem& b);

/// Swaps the form tag; the primal of a dual-form problem and vice versa.
SdpProblem dualize(const SdpProblem& prob);

/// Primal-side quantities for a candidate X: residuals r_i = <F_i, X> + b_i and <F0, X>.
struct PrimalCheck {
    std::vector<QuadExt> residuals;
    QuadExt objective;
    bool linear_constraints_hold() const;
};
PrimalCheck check_primal_point(const SdpProblem& prob, const ExactMatrix& x);

enum class ViolationKind { EmptyDimension, DimensionMismatch, NotSymmetric, DuplicateVariable, ObjectiveLength, EmptyName };

struct Violation {
    ViolationKind kind;
    std::string detail;
};

std::string to_string(ViolationKind k);

/// Structural checks; an empty list means the problem is well formed.
std::vector<Violation> validate(const SdpProblem& prob);

/// Lossy downcast used by the numerical solver.
struct NumericProblem {
    Eigen::MatrixXd constant;
    std::vector<Eigen::MatrixXd> terms;
    Eigen::VectorXd objective;
};
NumericProblem to_numeric(const SdpProblem& prob);

}  // namespace strictfeas
