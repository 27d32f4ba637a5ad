#include "strictfeas/solver.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <limits>
#include <optional>
#include <sstream>

#include "strictfeas/schur.hpp"

namespace strictfeas {

std::string to_string(StatusTag tag) {
    switch (tag) {
        case StatusTag::Optimal: return "Optimal";
        case StatusTag::NumericalTrouble: return "NumericalTrouble";
        case StatusTag::PrimalInfeasible: return "PrimalInfeasible";
        case StatusTag::DualUnboundedSuspected: return "DualUnboundedSuspected";
        case StatusTag::IterationLimit: return "IterationLimit";
    }
    return "Unknown";
}

NumericAssignment SolveResult::assignment() const {
    NumericAssignment out;
    for (std::size_t i = 0; i < names.size(); ++i) out[names[i]] = y(static_cast<Eigen::Index>(i));
    return out;
}

namespace {

using Eigen::Index;
using Eigen::MatrixXd;
using Eigen::VectorXd;

constexpr double kStepFraction = 0.98;

constexpr double kCommonNullThreshold = 1e-12;

double frob(const MatrixXd& a, const MatrixXd& b) { return (a.array() * b.array()).sum(); }

MatrixXd symmetrize(const MatrixXd& a) { return 0.5 * (a + a.transpose()); }

double min_eigenvalue(const MatrixXd& a) {
    if (a.rows() == 0) return 0.0;
    Eigen::SelfAdjointEigenSolver<MatrixXd> es(symmetrize(a), Eigen::EigenvaluesOnly);
    return es.eigenvalues()(0);
}

// Largest step in [0, inf) keeping diag(lam) + alpha * d positive semidefinite.
double max_step(const VectorXd& lam, const MatrixXd& d) {
    const VectorXd inv_sqrt = lam.array().rsqrt();
    const MatrixXd s = inv_sqrt.asDiagonal() * d * inv_sqrt.asDiagonal();
    const double lmin = min_eigenvalue(s);
    return lmin >= 0 ? std::numeric_limits<double>::infinity() : -1.0 / lmin;
}

class Iteration {
public:
    Iteration(const NumericProblem& data, const SolverOptions& opts) : d_(data), opts_(opts) {
        n_ = d_.constant.rows();
        m_ = static_cast<Index>(d_.terms.size());
        b_norm_ = d_.objective.norm();
        c_norm_ = d_.constant.norm();
    }

    SolveResult run();

private:
    struct Direction {
        MatrixXd dx;
        VectorXd dy;
        MatrixXd dz;
    };

    MatrixXd pencil(const VectorXd& y) const {
        MatrixXd s = d_.constant;
        for (Index i = 0; i < m_; ++i) s += y(i) * d_.terms[static_cast<std::size_t>(i)];
        return s;
    }

    MatrixXd combine(const VectorXd& y) const {
        MatrixXd s = MatrixXd::Zero(n_, n_);
        for (Index i = 0; i < m_; ++i) s += y(i) * d_.terms[static_cast<std::size_t>(i)];
        return s;
    }

    Direction direction(const MatrixXd& rs, const Eigen::LLT<MatrixXd>& schur) const {
        // schur factors the Jacobi-equilibrated matrix D M D with D = jacobi_.
        const MatrixXd grg = g_ * rs * g_.transpose();
        const MatrixXd wrw = w_ * rd_ * w_;
        const VectorXd rhs = rp_ + inner_products(d_.terms, grg) - inner_products(d_.terms, wrw);
        Direction out;
        out.dy = m_ > 0 ? VectorXd(jacobi_.cwiseProduct(schur.solve(jacobi_.cwiseProduct(rhs)))) : VectorXd();
        out.dz = symmetrize(rd_ + combine(out.dy));
        out.dx = symmetrize(grg - w_ * out.dz * w_);
        return out;
    }

    void fail(SolveResult& res, StatusTag tag, std::string message) const {
        res.status = {tag, std::move(message)};
    }

    bool detect_unbounded(SolveResult& res) const;

    const NumericProblem& d_;
    const SolverOptions& opts_;
    Index n_ = 0;
    Index m_ = 0;
    double b_norm_ = 0;
    VectorXd jacobi_;
    double c_norm_ = 0;

    MatrixXd x_, z_;
    VectorXd y_;
    VectorXd rp_;
    MatrixXd rd_;
    MatrixXd g_, g_inv_, w_;
    VectorXd lam_;
};

// Recession direction d with <b, d> > 0 and sum d_i F_i >= 0 proves the primal
// side infeasible (the dual objective is unbounded).
bool Iteration::detect_unbounded(SolveResult& res) const {
    const double ynorm = y_.norm();
    if (m_ == 0 || ynorm < 1e4) return false;
    const VectorXd dir = y_ / ynorm;
    const double gain = d_.objective.dot(dir);
    if (gain <= 0) return false;
    const double lmin = min_eigenvalue(combine(dir));
    if (lmin < -opts_.feas_tol) return false;
    std::ostringstream os;
    os << "dual iterates diverge along a recession direction (|y| = " << std::scientific << std::setprecision(3)
       << ynorm << ", <b,d> = " << gain << ", lambda_min(sum d_i F_i) = " << lmin << ")";
    res.status = {lmin > 0 ? StatusTag::PrimalInfeasible : StatusTag::DualUnboundedSuspected, os.str()};
    return true;
}

SolveResult Iteration::run() {
    SolveResult res;
    const double root_n = std::sqrt(static_cast<double>(n_));
    double xi = std::max(10.0, root_n);
    double eta = std::max({10.0, root_n, 1.0 + c_norm_});
    for (Index i = 0; i < m_; ++i) {
        const double fn = d_.terms[static_cast<std::size_t>(i)].norm();
        xi = std::max(xi, static_cast<double>(n_) * (1.0 + std::fabs(d_.objective(i))) / (1.0 + fn));
        eta = std::max(eta, 1.0 + fn);
    }
    x_ = xi * MatrixXd::Identity(n_, n_);
    z_ = eta * MatrixXd::Identity(n_, n_);
    y_ = VectorXd::Zero(m_);

    int stalled = 0;
    double max_abs = 0.0;
    double cond = 0.0;
    for (int iter = 0;; ++iter) {
        const double pobj = frob(d_.constant, x_);
        const double dobj = m_ > 0 ? d_.objective.dot(y_) : 0.0;
        rp_ = d_.objective + inner_products(d_.terms, x_);
        rd_ = pencil(y_) - z_;
        const double pinf = rp_.norm() / (1.0 + b_norm_);
        const double dinf = rd_.norm() / (1.0 + c_norm_);
        const double xz = frob(x_, z_);
        const double mu = xz / static_cast<double>(n_);
        max_abs = std::max({max_abs, x_.cwiseAbs().maxCoeff(), m_ > 0 ? y_.cwiseAbs().maxCoeff() : 0.0});

        res.objective_primal = pobj;
        res.objective_dual = dobj;
        res.diagnostics.iterations = iter;
        res.diagnostics.final_gap = std::fabs(pobj - dobj);
        res.diagnostics.primal_residual = pinf;
        res.diagnostics.dual_residual = dinf;
        res.diagnostics.max_abs_variable = max_abs;
        res.diagnostics.condition_estimate = cond;

        IterationRecord rec{iter, pobj, dobj, pinf, dinf, mu, 0.0, 0.0};

        const double scale = 1.0 + std::fabs(pobj);
        if (pinf <= opts_.feas_tol && dinf <= opts_.feas_tol && std::fabs(pobj - dobj) <= opts_.gap_tol * scale &&
            xz <= opts_.gap_tol * scale) {
            res.history.push_back(rec);
            res.status = {StatusTag::Optimal, "gap and residual tolerances met"};
            break;
        }
        if (detect_unbounded(res)) {
            res.history.push_back(rec);
            break;
        }
        if (max_abs > opts_.var_bound) {
            res.history.push_back(rec);
            std::ostringstream os;
            os << "iterate magnitude " << std::scientific << std::setprecision(3) << max_abs
               << " exceeds the alarm threshold " << opts_.var_bound;
            fail(res, StatusTag::NumericalTrouble, os.str());
            break;
        }
        if (iter >= opts_.max_iter) {
            res.history.push_back(rec);
            fail(res, StatusTag::IterationLimit, "iteration limit " + std::to_string(opts_.max_iter) + " reached");
            break;
        }

        // Nesterov-Todd scaling: X = G Λ G^T, Z = G^{-T} Λ G^{-1}, W = G G^T.
        Eigen::LLT<MatrixXd> chol_x(x_);
        if (chol_x.info() != Eigen::Success) {
            res.history.push_back(rec);
            fail(res, StatusTag::NumericalTrouble, "primal iterate lost positive definiteness");
            break;
        }
        const MatrixXd l = chol_x.matrixL();
        Eigen::SelfAdjointEigenSolver<MatrixXd> es(symmetrize(l.transpose() * z_ * l));
        if (es.info() != Eigen::Success || es.eigenvalues()(0) <= 0) {
            res.history.push_back(rec);
            fail(res, StatusTag::NumericalTrouble, "dual slack lost positive definiteness");
            break;
        }
        const VectorXd dvals = es.eigenvalues();
        lam_ = dvals.array().sqrt();
        g_ = l * es.eigenvectors() * dvals.array().pow(-0.25).matrix().asDiagonal();
        g_inv_ = g_.inverse();
        w_ = symmetrize(g_ * g_.transpose());

        MatrixXd schur_m =
            opts_.parallel_schur ? schur_complement_parallel(d_.terms, w_) : schur_complement_serial(d_.terms, w_);
        Eigen::LLT<MatrixXd> schur;
        if (m_ > 0) {
            // Diagonal equilibration leaves the Newton direction unchanged, so the condition
            // estimate is taken after it.
            jacobi_ = schur_m.diagonal().cwiseMax(std::numeric_limits<double>::min()).cwiseSqrt().cwiseInverse();
            schur_m = jacobi_.asDiagonal() * schur_m * jacobi_.asDiagonal();
            Eigen::SelfAdjointEigenSolver<MatrixXd> ms(schur_m, Eigen::EigenvaluesOnly);
            const double lo = ms.eigenvalues()(0);
            const double hi = ms.eigenvalues()(m_ - 1);
            cond = lo > 0 ? hi / lo : std::numeric_limits<double>::infinity();
            res.diagnostics.condition_estimate = cond;
            if (!(cond <= opts_.condition_limit)) {
                res.history.push_back(rec);
                std::ostringstream os;
                os << "Newton system condition estimate " << std::scientific << std::setprecision(3) << cond
                   << " exceeds " << opts_.condition_limit;
                fail(res, StatusTag::NumericalTrouble, os.str());
                break;
            }
            schur.compute(schur_m);
            if (schur.info() != Eigen::Success) {
                res.history.push_back(rec);
                fail(res, StatusTag::NumericalTrouble, "Schur complement factorization failed");
                break;
            }
        }

        auto scaled_x = [&](const MatrixXd& dx) { return MatrixXd(symmetrize(g_inv_ * dx * g_inv_.transpose())); };
        auto scaled_z = [&](const MatrixXd& dz) { return MatrixXd(symmetrize(g_.transpose() * dz * g_)); };
        auto lyapunov = [&](const MatrixXd& r) {
            MatrixXd rs(n_, n_);
            for (Index i = 0; i < n_; ++i)
                for (Index j = 0; j < n_; ++j) rs(i, j) = 2.0 * r(i, j) / (lam_(i) + lam_(j));
            return rs;
        };

        // Predictor.
        const MatrixXd lam_sq = MatrixXd(lam_.array().square().matrix().asDiagonal());
        const Direction aff = direction(lyapunov(-lam_sq), schur);
        const MatrixXd dxs_aff = scaled_x(aff.dx);
        const MatrixXd dzs_aff = scaled_z(aff.dz);
        const double ap_aff = std::min(1.0, max_step(lam_, dxs_aff));
        const double ad_aff = std::min(1.0, max_step(lam_, dzs_aff));
        const double mu_aff = frob(x_ + ap_aff * aff.dx, z_ + ad_aff * aff.dz) / static_cast<double>(n_);
        const double sigma = std::clamp(std::pow(std::max(mu_aff, 0.0) / mu, 3.0), 0.0, 1.0);

        // Corrector.
        const MatrixXd cross = 0.5 * (dxs_aff * dzs_aff + dzs_aff * dxs_aff);
        const MatrixXd r = sigma * mu * MatrixXd::Identity(n_, n_) - lam_sq - cross;
        const Direction dir = direction(lyapunov(r), schur);
        const double ap = std::min(1.0, kStepFraction * max_step(lam_, scaled_x(dir.dx)));
        const double ad = std::min(1.0, kStepFraction * max_step(lam_, scaled_z(dir.dz)));
        rec.step_primal = ap;
        rec.step_dual = ad;
        res.history.push_back(rec);

        x_ = symmetrize(x_ + ap * dir.dx);
        y_ += ad * dir.dy;
        z_ = symmetrize(z_ + ad * dir.dz);

        stalled = std::min(ap, ad) < opts_.min_step ? stalled + 1 : 0;
        if (stalled >= opts_.stagnation_iters) {
            std::ostringstream os;
            os << "step length below " << opts_.min_step << " for " << stalled << " consecutive iterations";
            fail(res, StatusTag::NumericalTrouble, os.str());
            res.diagnostics.iterations = iter + 1;
            break;
        }
    }

    res.X = x_;
    res.y = y_;
    res.diagnostics.max_abs_variable =
        std::max({max_abs, x_.cwiseAbs().maxCoeff(), m_ > 0 ? y_.cwiseAbs().maxCoeff() : 0.0});
    res.diagnostics.min_slack_eigenvalue_estimate = min_eigenvalue(pencil(y_));
    return res;
}

// Orthonormal basis of the complement of the common null space of all data matrices.
// Vectors in that null space are invisible to every constraint, so they are projected out
// before iterating; otherwise the slack could never become positive definite.
std::optional<MatrixXd> common_range_basis(const NumericProblem& data) {
    MatrixXd gram = data.constant * data.constant;
    for (const auto& f : data.terms) gram.noalias() += f * f;
    Eigen::SelfAdjointEigenSolver<MatrixXd> es(symmetrize(gram));
    const VectorXd& vals = es.eigenvalues();
    const double top = vals(vals.size() - 1);
    if (top <= 0) return std::nullopt;
    Eigen::Index zero = 0;
    while (zero < vals.size() && vals(zero) <= kCommonNullThreshold * top) ++zero;
    if (zero == 0) return std::nullopt;
    return es.eigenvectors().rightCols(vals.size() - zero);
}

}  // namespace

SolveResult solve_sdp(const SdpProblem& prob, const SolverOptions& opts) {
    if (!(opts.gap_tol > 0 && opts.feas_tol > 0 && opts.var_bound > 0 && opts.min_step > 0 && opts.max_iter >= 0))
        throw std::invalid_argument("solver tolerances must be positive");
    const auto violations = validate(prob);
    if (!violations.empty()) {
        std::string msg = "invalid problem:";
        for (const auto& v : violations) msg += " [" + to_string(v.kind) + ": " + v.detail + "]";
        throw InvalidProblemError(msg);
    }
    NumericProblem data = to_numeric(prob);
    const auto basis = common_range_basis(data);
    if (basis) {
        data.constant = basis->transpose() * data.constant * *basis;
        for (auto& f : data.terms) f = basis->transpose() * f * *basis;
    }
    SolveResult res = Iteration(data, opts).run();
    if (basis) res.X = *basis * res.X * basis->transpose();
    res.names = prob.pencil.names();
    const double offset = prob.objective_offset.to_double();
    res.objective_primal += offset;
    res.objective_dual += offset;
    for (auto& rec : res.history) {
        rec.objective_primal += offset;
        rec.objective_dual += offset;
    }
    return res;
}

bool strict_feasibility_warning(const SolveResult& res) {
    return res.status.tag != StatusTag::Optimal ||
           res.diagnostics.max_abs_variable > kStrictFeasibilityWarningThreshold;
}

std::string diagnostics_report(const SolveResult& res) {
    std::ostringstream os;
    os << std::setprecision(10);
    os << "status:              " << to_string(res.status.tag);
    if (!res.status.message.empty()) os << " (" << res.status.message << ")";
    os << "\n";
    os << "objective (primal):  " << res.objective_primal << "\n";
    os << "objective (dual):    " << res.objective_dual << "\n";
    os << std::scientific << std::setprecision(3);
    os << "duality gap:         " << res.diagnostics.final_gap << "\n";
    os << "residuals (p / d):   " << res.diagnostics.primal_residual << " / " << res.diagnostics.dual_residual
       << "\n";
    os << "iterations:          " << res.diagnostics.iterations << "\n";
    os << "max |variable|:      " << res.diagnostics.max_abs_variable << "\n";
    os << "min slack eigenvalue:" << ' ' << res.diagnostics.min_slack_eigenvalue_estimate << "\n";
    os << "Newton condition:    " << res.diagnostics.condition_estimate << "\n";
    if (strict_feasibility_warning(res)) {
        os << "WARNING: strict feasibility likely fails for this problem";
        if (res.diagnostics.max_abs_variable > kStrictFeasibilityWarningThreshold)
            os << " (iterates grew beyond 1e6)";
        os << ".\n  The reported optimum is unreliable. Run `strictfeas diagnose` / `strictfeas reduce`\n"
              "  to find implicit equality constraints and solve the reduced problem.\n";
    } else {
        os << "no strict-feasibility warning\n";
    }
    return os.str();
}

}  // namespace strictfeas
