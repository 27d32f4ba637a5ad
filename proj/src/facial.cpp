#include "strictfeas/facial.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "strictfeas/reconstruct.hpp"

namespace strictfeas::facial {

namespace {

constexpr double kAlternativeConditionLimit = 1e30;
// Range-space entries of an interior-point X are only accurate to about sqrt(gap).
constexpr double kStructuredTolerances[] = {1e-6, 1e-5, 1e-4, 1e-3};

std::string term_str(const QuadExt& coef, const std::string& var, bool first) {
    std::string out;
    const bool negative = coef.sign() < 0;
    const QuadExt mag = negative ? -coef : coef;
    if (first)
        out += negative ? "-" : "";
    else
        out += negative ? " - " : " + ";
    if (mag == QuadExt(1)) return out + var;
    const std::string m = mag.str();
    const bool wrap = !mag.is_rational() && !mag.rational_part().is_zero();
    return out + (wrap ? "(" + m + ")" : m) + "*" + var;
}

std::string constant_str(const QuadExt& c, bool first) {
    if (first) return c.str();
    if (c.sign() < 0) {
        const QuadExt mag = -c;
        return " - " + (mag.is_rational() || mag.rational_part().is_zero() ? mag.str() : "(" + mag.str() + ")");
    }
    return " + " + (c.is_rational() || c.rational_part().is_zero() ? c.str() : "(" + c.str() + ")");
}

}  // namespace

QuadExt AffineExpr::coefficient(const std::string& var) const {
    for (const auto& [name, c] : terms)
        if (name == var) return c;
    return QuadExt();
}

std::string AffineExpr::str() const {
    std::string out;
    bool first = true;
    for (const auto& [name, c] : terms) {
        if (c.is_zero()) continue;
        out += term_str(c, name, first);
        first = false;
    }
    if (!constant.is_zero() || first) out += constant_str(constant, first);
    return out;
}

std::string LinearEquation::str() const {
    AffineExpr lhs{QuadExt(), coefficients};
    return lhs.str() + " = " + rhs.str();
}

const Elimination* ImplicitConstraintSet::find(const std::string& var) const {
    for (const auto& e : eliminated)
        if (e.variable == var) return &e;
    return nullptr;
}

SdpProblem build_alternative_problem(const SdpProblem& prob) {
    if (prob.form != ProblemForm::DualForm) throw InvalidProblemError("alternative problem needs a dual-form SDP");
    const auto violations = validate(prob);
    if (!violations.empty()) throw InvalidProblemError("invalid problem: " + violations.front().detail);
    const std::size_t n = prob.pencil.dim();
    SdpProblem alt;
    alt.name = prob.name + "-alternative";
    alt.provenance = "nonzero X >= 0 orthogonal to the constant and every term of '" + prob.name + "'";
    alt.scalar = prob.scalar;
    alt.form = ProblemForm::PrimalForm;
    alt.pencil = MatrixPencil(n);
    alt.pencil.add_term(kConstantTerm).matrix = prob.pencil.constant();
    alt.objective.push_back(QuadExt());
    for (const auto& t : prob.pencil.terms()) {
        alt.pencil.add_term(t.name).matrix = t.matrix;
        alt.objective.push_back(QuadExt());
    }
    alt.pencil.add_term(kTraceTerm).matrix = ExactMatrix::identity(n);
    alt.objective.push_back(QuadExt(-1));
    return alt;
}

namespace {

bool in_column_space(const ExactMatrix& x, std::size_t rank_x, const ExactVector& v) {
    ExactMatrix aug(x.rows(), x.cols() + 1);
    for (std::size_t i = 0; i < x.rows(); ++i) {
        for (std::size_t j = 0; j < x.cols(); ++j) aug(i, j) = x(i, j);
        aug(i, x.cols()) = v[i];
    }
    return rank(aug) == rank_x;
}

std::vector<ExactVector> row_space_basis(const ExactMatrix& x) {
    ExactMatrix r = x;
    const auto pivots = rref(r);
    std::vector<ExactVector> out;
    for (std::size_t k = 0; k < pivots.size(); ++k) {
        ExactVector v(r.cols());
        for (std::size_t j = 0; j < r.cols(); ++j) v[j] = r(k, j);
        out.push_back(make_primitive(std::move(v)));
    }
    return out;
}

}  // namespace

std::vector<std::string> certificate_violations(const SdpProblem& prob, const ReducingCertificate& cert) {
    std::vector<std::string> out;
    const std::size_t n = prob.pencil.dim();
    if (cert.x.rows() != n || cert.x.cols() != n) {
        out.push_back("X has the wrong dimension");
        return out;
    }
    if (!cert.x.is_symmetric()) {
        out.push_back("X is not symmetric");
        return out;
    }
    if (cert.x.is_zero()) out.push_back("X is zero");
    const PsdVerdict psd = psd_check_exact(cert.x);
    if (!psd) out.push_back("X is not PSD (elimination step " + std::to_string(psd.witness_index) + ")");
    const QuadExt c = inner(prob.pencil.constant(), cert.x);
    if (!c.is_zero()) out.push_back("<C, X> = " + c.str());
    for (const auto& t : prob.pencil.terms()) {
        const QuadExt v = inner(t.matrix, cert.x);
        if (!v.is_zero()) out.push_back("<F_" + t.name + ", X> = " + v.str());
    }
    const std::size_t rank_x = rank(cert.x);
    for (std::size_t k = 0; k < cert.range_vectors.size(); ++k) {
        if (cert.range_vectors[k].size() != n) {
            out.push_back("range vector " + std::to_string(k + 1) + " has the wrong length");
            continue;
        }
        if (!in_column_space(cert.x, rank_x, cert.range_vectors[k]))
            out.push_back("range vector " + std::to_string(k + 1) + " is not in range(X)");
    }
    ExactMatrix span(cert.range_vectors.size(), n);
    for (std::size_t k = 0; k < cert.range_vectors.size(); ++k)
        for (std::size_t j = 0; j < n && j < cert.range_vectors[k].size(); ++j) span(k, j) = cert.range_vectors[k][j];
    if (rank(span) != rank_x) out.push_back("range vectors do not span range(X)");
    return out;
}

std::vector<ExactVector> certificate_null_vectors(const ReducingCertificate& cert) { return row_space_basis(cert.x); }

namespace {

std::optional<QuadExt> round_entry(double v, std::int64_t den, bool allow_quadext) {
    if (auto r = reconstruct_rational(v, den)) return QuadExt(*r);
    if (allow_quadext)
        if (auto q = reconstruct_quadext(v, den)) return *q;
    return std::nullopt;
}

std::optional<ExactMatrix> round_symmetric(const Eigen::MatrixXd& x, std::int64_t den, bool allow_quadext) {
    const auto n = static_cast<std::size_t>(x.rows());
    ExactMatrix out(n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i; j < n; ++j) {
            const double v = 0.5 * (x(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) +
                                    x(static_cast<Eigen::Index>(j), static_cast<Eigen::Index>(i)));
            auto e = round_entry(v, den, allow_quadext);
            if (!e) return std::nullopt;
            out(i, j) = *e;
            out(j, i) = *e;
        }
    return out;
}

Eigen::MatrixXd to_eigen(const ExactMatrix& m) {
    Eigen::MatrixXd out(m.rows(), m.cols());
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j) out(i, j) = m(i, j).to_double();
    return out;
}

std::optional<ReducingCertificate> accept(const SdpProblem& prob, ExactMatrix x) {
    ReducingCertificate cert{std::move(x), {}};
    cert.range_vectors = row_space_basis(cert.x);
    if (!certificate_violations(prob, cert).empty()) return std::nullopt;
    return cert;
}

// Numerical row-echelon basis of the dominant eigenspace of x, rounded to exact rows.
std::optional<ExactMatrix> exact_range_basis(const Eigen::MatrixXd& x, double threshold, double tol) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(0.5 * (x + x.transpose()));
    const Eigen::VectorXd& vals = es.eigenvalues();
    const double top = vals(vals.size() - 1);
    if (top <= 0) return std::nullopt;
    std::vector<Eigen::Index> keep;
    for (Eigen::Index k = 0; k < vals.size(); ++k)
        if (vals(k) > threshold * top) keep.push_back(k);
    Eigen::MatrixXd rows(static_cast<Eigen::Index>(keep.size()), x.rows());
    for (std::size_t k = 0; k < keep.size(); ++k)
        rows.row(static_cast<Eigen::Index>(k)) = es.eigenvectors().col(keep[k]).transpose();

    // Gauss-Jordan with partial pivoting.
    const Eigen::Index r = rows.rows();
    Eigen::Index row = 0;
    for (Eigen::Index col = 0; col < rows.cols() && row < r; ++col) {
        Eigen::Index best = row;
        for (Eigen::Index i = row + 1; i < r; ++i)
            if (std::fabs(rows(i, col)) > std::fabs(rows(best, col))) best = i;
        if (std::fabs(rows(best, col)) < 1e-4 * rows.block(row, 0, r - row, rows.cols()).cwiseAbs().maxCoeff()) continue;
        rows.row(row).swap(rows.row(best));
        rows.row(row) /= rows(row, col);
        for (Eigen::Index i = 0; i < r; ++i)
            if (i != row) rows.row(i) -= rows(i, col) * rows.row(row);
        ++row;
    }
    ExactMatrix out(static_cast<std::size_t>(row), static_cast<std::size_t>(rows.cols()));
    for (Eigen::Index i = 0; i < row; ++i)
        for (Eigen::Index j = 0; j < rows.cols(); ++j) {
            out(static_cast<std::size_t>(i), static_cast<std::size_t>(j)) =
                QuadExt(simplest_rational_within(rows(i, j), tol));
        }
    return out;
}

// Orthogonal projection (Frobenius) of s onto the symmetric matrices orthogonal to every k in ks.
ExactMatrix project_orthogonal(const ExactMatrix& s, const std::vector<ExactMatrix>& ks) {
    const std::size_t k = s.rows();
    const std::size_t dim = k * k;
    ExactMatrix stacked(ks.size(), dim);
    for (std::size_t r = 0; r < ks.size(); ++r)
        for (std::size_t i = 0; i < k; ++i)
            for (std::size_t j = 0; j < k; ++j) stacked(r, i * k + j) = ks[r](i, j);
    const auto pivots = rref(stacked);
    const std::size_t p = pivots.size();
    if (p == 0) return s;
    // Solve (R R^T) c = R s, then s' = s - R^T c.
    ExactMatrix sys(p, p + 1);
    for (std::size_t a = 0; a < p; ++a) {
        for (std::size_t b = 0; b < p; ++b) {
            QuadExt acc;
            for (std::size_t t = 0; t < dim; ++t)
                if (!stacked(a, t).is_zero() && !stacked(b, t).is_zero()) acc += stacked(a, t) * stacked(b, t);
            sys(a, b) = acc;
        }
        QuadExt rhs;
        for (std::size_t t = 0; t < dim; ++t)
            if (!stacked(a, t).is_zero()) rhs += stacked(a, t) * s(t / k, t % k);
        sys(a, p) = rhs;
    }
    rref(sys);
    ExactMatrix out = s;
    for (std::size_t a = 0; a < p; ++a) {
        const QuadExt c = sys(a, p);
        if (c.is_zero()) continue;
        for (std::size_t t = 0; t < dim; ++t)
            if (!stacked(a, t).is_zero()) out(t / k, t % k) -= c * stacked(a, t);
    }
    return out;
}

std::optional<ReducingCertificate> structured_round(const SdpProblem& prob, const Eigen::MatrixXd& x,
                                                    double threshold, double tol) {
    auto basis = exact_range_basis(x, threshold, tol);
    if (!basis || basis->rows() == 0) return std::nullopt;
    const ExactMatrix& v = *basis;  // k x n
    const ExactMatrix vt = v.transpose();
    const Eigen::MatrixXd vn = to_eigen(v);
    const Eigen::MatrixXd gram_inv = (vn * vn.transpose()).inverse();
    const Eigen::MatrixXd s_num = gram_inv * vn * x * vn.transpose() * gram_inv;
    const double scale = s_num.cwiseAbs().maxCoeff();
    ExactMatrix s(v.rows());
    for (std::size_t i = 0; i < v.rows(); ++i)
        for (std::size_t j = i; j < v.rows(); ++j) {
            const auto a = static_cast<Eigen::Index>(i), b = static_cast<Eigen::Index>(j);
            s(i, j) = QuadExt(simplest_rational_within(0.5 * (s_num(a, b) + s_num(b, a)), tol * scale));
            s(j, i) = s(i, j);
        }
    std::vector<ExactMatrix> ks;
    ks.push_back(v * prob.pencil.constant() * vt);
    for (const auto& t : prob.pencil.terms()) ks.push_back(v * t.matrix * vt);
    const ExactMatrix s_proj = project_orthogonal(s, ks);
    return accept(prob, vt * s_proj * v);
}

std::size_t numerical_rank(const Eigen::MatrixXd& x, double threshold) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(0.5 * (x + x.transpose()), Eigen::EigenvaluesOnly);
    const Eigen::VectorXd& vals = es.eigenvalues();
    const double top = vals(vals.size() - 1);
    std::size_t out = 0;
    for (Eigen::Index k = 0; k < vals.size(); ++k)
        if (vals(k) > threshold * top) ++out;
    return out;
}

std::vector<std::int64_t> denominator_ladder(std::int64_t max_den) {
    std::vector<std::int64_t> out;
    for (std::int64_t d : {100LL, 10'000LL, 1'000'000LL}) {
        if (d > max_den) break;
        out.push_back(d);
    }
    if (out.empty() || out.back() < max_den) out.push_back(max_den);
    return out;
}

std::optional<NumericAssignment> interior_point_from(const SdpProblem& prob, const Eigen::VectorXd& w) {
    // w = (w_C, w_1..w_m, w_trace); y = w / w_C when w_C > 0.
    const auto m = static_cast<Eigen::Index>(prob.num_vars());
    if (w.size() != m + 2 || !(w(0) > 0)) return std::nullopt;
    NumericAssignment y;
    for (Eigen::Index i = 0; i < m; ++i) y[prob.pencil.terms()[static_cast<std::size_t>(i)].name] = w(i + 1) / w(0);
    const Eigen::MatrixXd s = pencil_eval(prob.pencil, y);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(s, Eigen::EigenvaluesOnly);
    if (!(es.eigenvalues()(0) > 0)) return std::nullopt;
    return y;
}

// Indices of a linearly independent subset of the alternative problem's constraint
// matrices, scanned in term order so #C is kept whenever possible and #trace last.
std::vector<std::size_t> independent_constraints(const SdpProblem& alt) {
    const std::size_t n = alt.pencil.dim();
    const std::size_t k = alt.num_vars();
    std::vector<std::vector<QuadExt>> rows;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i; j < n; ++j) {
            std::vector<QuadExt> row(k);
            for (std::size_t t = 0; t < k; ++t) row[t] = alt.pencil.terms()[t].matrix(i, j);
            rows.push_back(std::move(row));
        }
    ExactMatrix sys = ExactMatrix::from_rows(rows);
    return rref(sys);
}

SdpProblem restrict_terms(const SdpProblem& alt, const std::vector<std::size_t>& keep) {
    SdpProblem out = alt;
    out.pencil = MatrixPencil(alt.pencil.dim());
    out.objective.clear();
    for (std::size_t t : keep) {
        out.pencil.add_term(alt.pencil.terms()[t].name).matrix = alt.pencil.terms()[t].matrix;
        out.objective.push_back(alt.objective[t]);
    }
    return out;
}

}  // namespace

Diagnosis find_reducing_certificate(const SdpProblem& prob, const FacialOptions& opts) {
    const SdpProblem alt = build_alternative_problem(prob);
    Diagnosis out;
    std::ostringstream log;
    const std::vector<std::size_t> keep = independent_constraints(alt);
    if (keep.empty() || keep.back() != alt.num_vars() - 1) {
        // trace X lies in the span of the other constraints, so only X = 0 is orthogonal to all of them.
        out.strictly_feasible = true;
        out.log = "the identity lies in the span of the constant and the terms; no nonzero X >= 0 is orthogonal to all";
        return out;
    }
    // The alternative problem is expected to lose strict feasibility itself (X ends up low rank),
    // so an ill-conditioned Newton system is not a reason to stop early here.
    SolverOptions solver = opts.solver;
    solver.condition_limit = std::max(solver.condition_limit, kAlternativeConditionLimit);
    out.alternative_solve = solve_sdp(dualize(restrict_terms(alt, keep)), solver);
    SolveResult& res = out.alternative_solve;
    {
        // Report the multipliers against the full alternative problem; dropped constraints get 0.
        Eigen::VectorXd w = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(alt.num_vars()));
        for (std::size_t r = 0; r < keep.size() && r < static_cast<std::size_t>(res.y.size()); ++r)
            w(static_cast<Eigen::Index>(keep[r])) = res.y(static_cast<Eigen::Index>(r));
        res.y = std::move(w);
        res.names = alt.pencil.names();
    }
    if (keep.size() < alt.num_vars())
        log << alt.num_vars() - keep.size() << " linearly dependent constraint(s) dropped before solving; ";

    if (!res.optimal()) {
        if (auto y = interior_point_from(prob, res.y)) {
            out.strictly_feasible = true;
            out.interior_point = std::move(y);
            out.tolerance = opts.solver.feas_tol;
            log << "alternative problem infeasible (" << to_string(res.status.tag) << ": " << res.status.message
                << "); a numerically strictly feasible point was recovered";
            out.log = log.str();
            return out;
        }
        if (res.status.tag == StatusTag::PrimalInfeasible || res.status.tag == StatusTag::DualUnboundedSuspected) {
            out.strictly_feasible = true;
            out.tolerance = opts.solver.feas_tol;
            out.log = "alternative problem infeasible (" + to_string(res.status.tag) + ": " + res.status.message + ")";
            return out;
        }
        if (res.diagnostics.primal_residual > 1e-6)
            throw SolverFailedError("alternative problem: " + to_string(res.status.tag) + ": " + res.status.message);
        log << "alternative solve ended with " << to_string(res.status.tag) << " but X is feasible to "
            << res.diagnostics.primal_residual << "; ";
    }

    // Every candidate is verified exactly; among verified ones the largest rank wins, and the
    // search stops as soon as the rank matches the numerical rank of X.
    const std::size_t target = numerical_rank(res.X, opts.eig_threshold);
    std::optional<ReducingCertificate> best;
    std::size_t best_rank = 0;
    std::string best_how;
    auto offer = [&](std::optional<ReducingCertificate> cert, const std::string& how) {
        if (!cert) return false;
        const std::size_t r = cert->range_vectors.size();
        if (r > best_rank) {
            best = std::move(cert);
            best_rank = r;
            best_how = how;
        }
        return best_rank >= target;
    };
    bool done = false;
    const auto ladder = denominator_ladder(opts.max_den);
    for (std::int64_t den : ladder) {
        for (bool quad : {false, true}) {
            auto x = round_symmetric(res.X, den, quad);
            if (!x) continue;
            std::ostringstream how;
            how << "entrywise rounding with max_den " << den << (quad ? " over Q(sqrt5)" : " over Q");
            if ((done = offer(accept(prob, std::move(*x)), how.str()))) break;
        }
        if (done) break;
    }
    for (double tol : kStructuredTolerances) {
        if (done) break;
        std::ostringstream how;
        how << "range basis and compressed X rounded to the simplest rationals within " << tol
            << ", then projected onto the linear constraints";
        done = offer(structured_round(prob, res.X, opts.eig_threshold, tol), how.str());
    }
    if (best) {
        log << best_how << "; certificate rank " << best_rank << " (numerical rank " << target << ")";
        out.certificate = std::move(best);
        out.log = log.str();
        return out;
    }
    throw RoundingFailedError("numerical solution of the alternative problem for '" + prob.name +
                              "' could not be turned into an exactly verified certificate (max_den " +
                              std::to_string(opts.max_den) + ")");
}

std::string protected_variable(const SdpProblem& prob, const FacialOptions& opts) {
    if (!opts.protected_variable.empty()) {
        if (prob.pencil.index_of(opts.protected_variable) == MatrixPencil::npos)
            throw UnknownVariableError("unknown protected variable '" + opts.protected_variable + "'");
        return opts.protected_variable;
    }
    std::string found;
    for (std::size_t i = 0; i < prob.objective.size(); ++i) {
        if (prob.objective[i].is_zero()) continue;
        if (!found.empty()) return "";
        found = prob.pencil.terms()[i].name;
    }
    return found;
}

ImplicitConstraintSet derive_implicit_constraints(const SdpProblem& prob, const std::vector<ExactVector>& vectors,
                                                  const std::string& protected_var) {
    const std::size_t n = prob.pencil.dim();
    const std::size_t m = prob.num_vars();
    const auto& terms = prob.pencil.terms();
    const std::size_t keep = protected_var.empty() ? MatrixPencil::npos : prob.pencil.index_of(protected_var);
    if (!protected_var.empty() && keep == MatrixPencil::npos)
        throw UnknownVariableError("unknown protected variable '" + protected_var + "'");

    // Rows: sum_i (F_i v)_j y_i = -(F0 v)_j.
    std::vector<std::vector<QuadExt>> rows;
    for (const auto& v : vectors) {
        if (v.size() != n) throw std::invalid_argument("null vector has the wrong length");
        const ExactVector c = prob.pencil.constant() * v;
        std::vector<ExactVector> fv;
        for (const auto& t : terms) fv.push_back(t.matrix * v);
        for (std::size_t j = 0; j < n; ++j) {
            std::vector<QuadExt> row(m + 1);
            bool nonzero = false;
            for (std::size_t i = 0; i < m; ++i) {
                row[i] = fv[i][j];
                nonzero = nonzero || !row[i].is_zero();
            }
            row[m] = -c[j];
            if (!nonzero && row[m].is_zero()) continue;
            rows.push_back(std::move(row));
        }
    }
    ImplicitConstraintSet out;
    if (rows.empty()) return out;
    ExactMatrix sys = ExactMatrix::from_rows(rows);

    std::vector<std::size_t> order;
    for (std::size_t i = m; i-- > 0;)
        if (i != keep) order.push_back(i);
    const auto pivots = rref(sys, order);
    // Remaining rows only involve the protected variable and the constant.
    ExactMatrix rest(sys.rows() - pivots.size(), m + 1);
    for (std::size_t r = pivots.size(); r < sys.rows(); ++r)
        for (std::size_t c = 0; c <= m; ++c) rest(r - pivots.size(), c) = sys(r, c);
    std::vector<std::size_t> rest_order;
    if (keep != MatrixPencil::npos) rest_order.push_back(keep);
    rest_order.push_back(m);
    const auto rest_pivots = rref(rest, rest_order);
    for (std::size_t r = 0; r < rest_pivots.size(); ++r) {
        if (rest_pivots[r] == m)
            throw InconsistentError("implicit constraints are inconsistent (0 = 1): '" + prob.name +
                                    "' has no feasible point");
        out.residual.push_back({{{terms[keep].name, rest(r, keep)}}, rest(r, m)});
    }

    for (std::size_t r = 0; r < pivots.size(); ++r) {
        LinearEquation eq;
        AffineExpr value;
        value.constant = sys(r, m);
        for (std::size_t i = 0; i < m; ++i) {
            if (sys(r, i).is_zero()) continue;
            eq.coefficients.emplace_back(terms[i].name, sys(r, i));
            if (i != pivots[r]) value.terms.emplace_back(terms[i].name, -sys(r, i));
        }
        eq.rhs = sys(r, m);
        out.equations.push_back(std::move(eq));
        out.eliminated.push_back({terms[pivots[r]].name, std::move(value)});
    }
    for (const auto& eq : out.residual) out.equations.push_back(eq);
    std::sort(out.eliminated.begin(), out.eliminated.end(), [&](const Elimination& a, const Elimination& b) {
        return prob.pencil.index_of(a.variable) < prob.pencil.index_of(b.variable);
    });
    return out;
}

SdpProblem apply_constraints(const SdpProblem& prob, const ImplicitConstraintSet& cons) {
    for (const auto& e : cons.eliminated) {
        if (prob.pencil.index_of(e.variable) == MatrixPencil::npos)
            throw UnknownVariableError("cannot eliminate unknown variable '" + e.variable + "'");
        for (const auto& [name, c] : e.value.terms) {
            if (prob.pencil.index_of(name) == MatrixPencil::npos)
                throw UnknownVariableError("substitution for '" + e.variable + "' mentions unknown variable '" +
                                           name + "'");
            if (cons.find(name))
                throw UnknownVariableError("substitution for '" + e.variable + "' mentions eliminated variable '" +
                                           name + "'");
        }
    }
    if (cons.eliminated.empty()) return prob;

    SdpProblem out = prob;
    out.pencil = MatrixPencil(prob.pencil.dim());
    out.pencil.constant() = prob.pencil.constant();
    out.objective.clear();
    std::vector<std::size_t> kept;
    for (std::size_t i = 0; i < prob.num_vars(); ++i) {
        const auto& t = prob.pencil.terms()[i];
        if (cons.find(t.name)) continue;
        out.pencil.add_term(t.name).matrix = t.matrix;
        out.objective.push_back(prob.objective[i]);
        kept.push_back(i);
    }
    for (const auto& e : cons.eliminated) {
        const ExactMatrix& f = prob.pencil.term(e.variable);
        const QuadExt& b = prob.objective_of(e.variable);
        if (!e.value.constant.is_zero()) {
            out.pencil.constant() += f * e.value.constant;
            out.objective_offset += b * e.value.constant;
        }
        for (const auto& [name, c] : e.value.terms) {
            const std::size_t k = out.pencil.index_of(name);
            out.pencil.terms()[k].matrix += f * c;
            out.objective[k] += b * c;
        }
    }
    if (out.name.find("-reduced") == std::string::npos) out.name += "-reduced";
    return out;
}

std::vector<Elimination> ReductionLog::eliminated() const {
    std::vector<Elimination> out;
    for (const auto& r : rounds)
        for (const auto& e : r.constraints.eliminated) out.push_back(e);
    return out;
}

ReductionLog reduce(const SdpProblem& prob, const FacialOptions& opts) {
    ReductionLog log{prob, {}};
    const std::string keep = protected_variable(prob, opts);
    for (std::size_t round = 0; round < prob.pencil.dim(); ++round) {
        ReductionRound r;
        r.diagnosis = find_reducing_certificate(log.reduced, opts);
        if (r.diagnosis.strictly_feasible) {
            log.rounds.push_back(std::move(r));
            break;
        }
        r.null_vectors = certificate_null_vectors(*r.diagnosis.certificate);
        r.constraints = derive_implicit_constraints(log.reduced, r.null_vectors, keep);
        const bool progress = !r.constraints.eliminated.empty();
        if (progress) log.reduced = apply_constraints(log.reduced, r.constraints);
        log.rounds.push_back(std::move(r));
        if (!progress) break;
    }
    return log;
}

}  // namespace strictfeas::facial
