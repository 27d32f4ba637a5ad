#include "strictfeas/certify.hpp"

#include <cmath>
#include <sstream>

#include <Eigen/Eigenvalues>

namespace strictfeas::certify {

PrimalVerdict verify_primal_point(const SdpProblem& prob, const ExactAssignment& assignment) {
    PrimalVerdict out;
    out.value = pencil_eval(prob.pencil, assignment);
    PsdVerdict psd = psd_check_exact(out.value);
    out.feasible = psd.psd;
    if (!psd.psd) out.witness = std::move(psd);
    return out;
}

BoundCheck verify_bound_certificate(const SdpProblem& prob, const ExactMatrix& x, const std::string& objective_var) {
    BoundCheck out;
    const std::size_t n = prob.pencil.dim();
    const std::size_t k = prob.pencil.index_of(objective_var);
    if (k == MatrixPencil::npos) {
        out.violations.push_back("unknown objective variable '" + objective_var + "'");
        return out;
    }
    if (x.rows() != n || x.cols() != n) {
        out.violations.push_back("X is " + std::to_string(x.rows()) + "x" + std::to_string(x.cols()) +
                                 ", the pencil is " + std::to_string(n) + "x" + std::to_string(n));
        return out;
    }
    if (!x.is_symmetric()) out.violations.push_back("X is not symmetric");
    const PsdVerdict psd = psd_check_exact(x);
    if (!psd) out.violations.push_back("X is not PSD, witness " + to_string(psd.witness));
    for (const auto& t : prob.pencil.terms()) {
        if (t.name == objective_var) continue;
        const QuadExt v = inner(t.matrix, x);
        if (!v.is_zero()) out.violations.push_back("<F_" + t.name + ", X> = " + v.str() + ", expected 0");
    }
    const QuadExt norm = inner(prob.pencil.terms()[k].matrix, x);
    if (norm.sign() >= 0) out.violations.push_back("<F_" + objective_var + ", X> = " + norm.str() + ", expected < 0");
    if (!out.violations.empty()) return out;
    out.certificate = BoundCertificate{x, objective_var, norm, -inner(prob.pencil.constant(), x) / norm};
    return out;
}

ExactMatrix problem1_dual_certificate() {
    const long upper[9][9] = {
        {1, -1, -1, 0, -1, 1, 1, 0, 0},  {0, 4, 1, 0, 1, -4, -4, 0, 3},  {0, 0, 1, 0, 1, -1, -1, 0, 0},
        {0, 0, 0, 0, 0, 0, 0, 0, 0},     {0, 0, 0, 0, 1, -1, -1, 0, 0},  {0, 0, 0, 0, 0, 4, 4, 0, -3},
        {0, 0, 0, 0, 0, 0, 4, 0, -3},    {0, 0, 0, 0, 0, 0, 0, 0, 0},    {0, 0, 0, 0, 0, 0, 0, 0, 3},
    };
    ExactMatrix x(9);
    for (std::size_t i = 0; i < 9; ++i)
        for (std::size_t j = i; j < 9; ++j) {
            x(i, j) = QuadExt(Rational(upper[i][j], 2));
            x(j, i) = x(i, j);
        }
    return x;
}

QuadExt mu2_star() { return QuadExt(Rational(-11), Rational(5)); }

namespace {

const std::string& only_variable(const SdpProblem& prob) {
    if (prob.num_vars() != 1)
        throw WrongShapeError("expected a one-variable pencil, got " + std::to_string(prob.num_vars()) +
                              " variables");
    return prob.pencil.terms().front().name;
}

}  // namespace

Mu2BoundVerdict verify_mu2_bound(const SdpProblem& prob) {
    const std::string& var = only_variable(prob);
    const QuadExt star = mu2_star();
    std::vector<std::pair<QuadExt, bool>> plan = {
        {star, true},
        {star + QuadExt(Rational(1, 1000)), false},
        {star + QuadExt(Rational(1, 100)), false},
        {star + QuadExt(Rational(1, 10)), false},
        {QuadExt(0), true},
        {star * QuadExt(Rational(1, 2)), true},
    };
    Mu2BoundVerdict out;
    out.confirmed = true;
    std::ostringstream detail;
    for (const auto& [mu, expect] : plan) {
        PencilSample s{mu, expect, false, {}};
        const PsdVerdict psd = psd_check_exact(pencil_eval(prob.pencil, {{var, mu}}));
        s.psd = psd.psd;
        s.witness = psd.witness;
        if (s.psd != expect) {
            out.confirmed = false;
            detail << var << " = " << mu.str() << ": expected " << (expect ? "PSD" : "not PSD") << ", got "
                   << (s.psd ? "PSD" : "not PSD") << "; ";
        }
        out.samples.push_back(std::move(s));
    }
    out.detail = out.confirmed ? "PSD at " + star.str() + " and below, not PSD above" : detail.str();
    return out;
}

double formula_eigenvalue(double mu) {
    const double s5 = std::sqrt(5.0);
    const double a = (4 * s5 - 17) * mu - 4 * s5 + 36;
    const double b = (160 * s5 + 1201) * mu * mu - 16 * (s5 - 85) * mu - 144 * s5 + 688;
    return (a - std::sqrt(b)) / 76;
}

FormulaVerdict check_eigenvalue_formula(const SdpProblem& prob, double tol) {
    const std::string& var = only_variable(prob);
    FormulaVerdict out;
    out.confirmed = true;
    for (const QuadExt& mu : {QuadExt(0), QuadExt(Rational(1, 10)), mu2_star(), QuadExt(Rational(1, 4))}) {
        FormulaSample s;
        s.mu = mu;
        s.formula_value = formula_eigenvalue(mu.to_double());
        const Eigen::MatrixXd m = pencil_eval(prob.pencil, NumericAssignment{{var, mu.to_double()}});
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(m, Eigen::EigenvaluesOnly);
        const Eigen::VectorXd& ev = es.eigenvalues();
        Eigen::Index best = 0;
        (ev.array() - s.formula_value).abs().minCoeff(&best);
        s.nearest_eigenvalue = ev(best);
        s.matched = std::fabs(s.nearest_eigenvalue - s.formula_value) <= tol;
        out.confirmed = out.confirmed && s.matched;
        out.samples.push_back(s);
    }
    return out;
}

nlohmann::json to_json(const Verdict& v) {
    nlohmann::json j = {{"claim", v.claim}, {"verdict", v.verdict}, {"pass", v.pass}};
    if (v.witness) j["witness"] = *v.witness;
    if (v.certified_bound) j["certified_bound"] = *v.certified_bound;
    return j;
}

Verdict primal_verdict(const std::string& claim, const PrimalVerdict& v) {
    Verdict out{claim, v.feasible, v.feasible ? "Feasible" : "Infeasible", std::nullopt, std::nullopt};
    if (v.witness) out.witness = to_string(v.witness->witness);
    return out;
}

Verdict bound_verdict(const std::string& claim, const BoundCheck& v) {
    Verdict out{claim, v.valid(), v.valid() ? "BoundCertificate" : "Invalid", std::nullopt, std::nullopt};
    if (v.valid()) {
        out.certified_bound = v.certificate->certified_bound.str();
    } else {
        std::string all;
        for (const auto& s : v.violations) all += (all.empty() ? "" : "; ") + s;
        out.witness = all;
    }
    return out;
}

Verdict mu2_verdict(const std::string& claim, const Mu2BoundVerdict& v) {
    Verdict out{claim, v.confirmed, v.confirmed ? "BoundConfirmed" : "Failed", std::nullopt, std::nullopt};
    if (v.confirmed)
        out.certified_bound = mu2_star().str();
    else
        out.witness = v.detail;
    return out;
}

Verdict formula_verdict(const std::string& claim, const FormulaVerdict& v) {
    Verdict out{claim, v.confirmed, v.confirmed ? "Confirmed" : "Failed", std::nullopt, std::nullopt};
    std::ostringstream os;
    os.precision(12);
    for (const auto& s : v.samples)
        os << (os.tellp() > 0 ? "; " : "") << "mu=" << s.mu.str() << ": formula " << s.formula_value
           << ", eigenvalue " << s.nearest_eigenvalue;
    out.witness = os.str();
    return out;
}

}  // namespace strictfeas::certify
