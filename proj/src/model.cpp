#include "strictfeas/model.hpp"

#include <set>

namespace strictfeas {

std::size_t MatrixPencil::index_of(const std::string& name) const {
    for (std::size_t i = 0; i < terms_.size(); ++i)
        if (terms_[i].name == name) return i;
    return npos;
}

const ExactMatrix& MatrixPencil::term(const std::string& name) const {
    const std::size_t k = index_of(name);
    if (k == npos) throw MissingVariableError("unknown variable '" + name + "'");
    return terms_[k].matrix;
}

std::vector<std::string> MatrixPencil::names() const {
    std::vector<std::string> out;
    out.reserve(terms_.size());
    for (const auto& t : terms_) out.push_back(t.name);
    return out;
}

void MatrixPencil::set_constant(std::size_t i, std::size_t j, const QuadExt& v) {
    constant_(i, j) = v;
    constant_(j, i) = v;
}

void MatrixPencil::set_term(const std::string& name, std::size_t i, std::size_t j, const QuadExt& v) {
    const std::size_t k = index_of(name);
    if (k == npos) throw MissingVariableError("unknown variable '" + name + "'");
    terms_[k].matrix(i, j) = v;
    terms_[k].matrix(j, i) = v;
}

PencilTerm& MatrixPencil::add_term(std::string name) {
    terms_.push_back({std::move(name), ExactMatrix(dim())});
    return terms_.back();
}

bool operator==(const PencilTerm& a, const PencilTerm& b) { return a.name == b.name && a.matrix == b.matrix; }

bool operator==(const MatrixPencil& a, const MatrixPencil& b) {
    return a.constant_ == b.constant_ && a.terms_ == b.terms_;
}

ExactMatrix pencil_eval(const MatrixPencil& p, const ExactAssignment& y) {
    ExactMatrix m = p.constant();
    for (const auto& t : p.terms()) {
        auto it = y.find(t.name);
        if (it == y.end()) throw MissingVariableError("no value for variable '" + t.name + "'");
        if (it->second.is_zero()) continue;
        m += t.matrix * it->second;
    }
    return m;
}

namespace {

Eigen::MatrixXd to_eigen(const ExactMatrix& m) {
    Eigen::MatrixXd out(m.rows(), m.cols());
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j) out(i, j) = m(i, j).to_double();
    return out;
}

}  // namespace

Eigen::MatrixXd pencil_eval(const MatrixPencil& p, const NumericAssignment& y) {
    Eigen::MatrixXd m = to_eigen(p.constant());
    for (const auto& t : p.terms()) {
        auto it = y.find(t.name);
        if (it == y.end()) throw MissingVariableError("no value for variable '" + t.name + "'");
        m += it->second * to_eigen(t.matrix);
    }
    return m;
}

const QuadExt& SdpProblem::objective_of(const std::string& var) const {
    const std::size_t k = pencil.index_of(var);
    if (k == MatrixPencil::npos || k >= objective.size())
        throw MissingVariableError("unknown variable '" + var + "'");
    return objective[k];
}

bool same_data(const SdpProblem& a, const SdpProblem& b) {
    return a.form == b.form && a.pencil == b.pencil && a.objective == b.objective &&
           a.objective_offset == b.objective_offset;
}

SdpProblem dualize(const SdpProblem& prob) {
    SdpProblem out = prob;
    out.form = prob.form == ProblemForm::DualForm ? ProblemForm::PrimalForm : ProblemForm::DualForm;
    return out;
}

bool PrimalCheck::linear_constraints_hold() const {
    for (const auto& r : residuals)
        if (!r.is_zero()) return false;
    return true;
}

PrimalCheck check_primal_point(const SdpProblem& prob, const ExactMatrix& x) {
    PrimalCheck out;
    out.objective = inner(prob.pencil.constant(), x);
    for (std::size_t i = 0; i < prob.num_vars(); ++i)
        out.residuals.push_back(inner(prob.pencil.terms()[i].matrix, x) + prob.objective[i]);
    return out;
}

std::string to_string(ViolationKind k) {
    switch (k) {
        case ViolationKind::EmptyDimension: return "EmptyDimension";
        case ViolationKind::DimensionMismatch: return "DimensionMismatch";
        case ViolationKind::NotSymmetric: return "NotSymmetric";
        case ViolationKind::DuplicateVariable: return "DuplicateVariable";
        case ViolationKind::ObjectiveLength: return "ObjectiveLength";
        case ViolationKind::EmptyName: return "EmptyName";
    }
    return "Unknown";
}

std::vector<Violation> validate(const SdpProblem& prob) {
    std::vector<Violation> out;
    const ExactMatrix& f0 = prob.pencil.constant();
    const std::size_t n = f0.rows();
    if (n == 0) out.push_back({ViolationKind::EmptyDimension, "constant matrix has dimension 0"});
    if (!f0.is_square())
        out.push_back({ViolationKind::DimensionMismatch, "constant matrix is not square"});
    else if (auto bad = f0.asymmetry())
        out.push_back({ViolationKind::NotSymmetric, "constant matrix differs at (" + std::to_string(bad->first + 1) +
                                                         ", " + std::to_string(bad->second + 1) + ")"});
    std::set<std::string> seen;
    for (const auto& t : prob.pencil.terms()) {
        if (t.name.empty()) out.push_back({ViolationKind::EmptyName, "variable with empty name"});
        if (!seen.insert(t.name).second)
            out.push_back({ViolationKind::DuplicateVariable, "variable '" + t.name + "' declared twice"});
        if (t.matrix.rows() != n || t.matrix.cols() != n) {
            out.push_back({ViolationKind::DimensionMismatch,
                           "term '" + t.name + "' is " + std::to_string(t.matrix.rows()) + "x" +
                               std::to_string(t.matrix.cols()) + ", constant is " + std::to_string(n) + "x" +
                               std::to_string(n)});
            continue;
        }
        if (auto bad = t.matrix.asymmetry())
            out.push_back({ViolationKind::NotSymmetric, "term '" + t.name + "' differs at (" +
                                                            std::to_string(bad->first + 1) + ", " +
                                                            std::to_string(bad->second + 1) + ")"});
    }
    if (prob.objective.size() != prob.pencil.num_terms())
        out.push_back({ViolationKind::ObjectiveLength, "objective has " + std::to_string(prob.objective.size()) +
                                                           " entries for " +
                                                           std::to_string(prob.pencil.num_terms()) + " variables"});
    return out;
}

NumericProblem to_numeric(const SdpProblem& prob) {
    NumericProblem out;
    out.constant = to_eigen(prob.pencil.constant());
    for (const auto& t : prob.pencil.terms()) out.terms.push_back(to_eigen(t.matrix));
    out.objective.resize(static_cast<Eigen::Index>(prob.objective.size()));
    for (std::size_t i = 0; i < prob.objective.size(); ++i)
        out.objective(static_cast<Eigen::Index>(i)) = prob.objective[i].to_double();
    return out;
}

}  // namespace strictfeas
