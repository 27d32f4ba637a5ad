#include "strictfeas/cli.hpp"

#include <chrono>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <iomanip>
#include <map>
#include <sstream>

#include "strictfeas/bell.hpp"
#include "strictfeas/certify.hpp"
#include "strictfeas/problem_io.hpp"
#include "strictfeas/random_sdp.hpp"

namespace strictfeas::cli {

using nlohmann::json;

facial::FacialOptions CliOptions::facial() const {
    facial::FacialOptions f;
    f.solver = solver;
    f.max_den = max_den;
    f.eig_threshold = eig_threshold;
    return f;
}

nlohmann::json CliOptions::to_json() const {
    nlohmann::json j = {{"gap_tol", solver.gap_tol},
              {"feas_tol", solver.feas_tol},
              {"max_iter", solver.max_iter},
              {"var_bound", solver.var_bound},
              {"min_step", solver.min_step},
              {"stagnation_iters", solver.stagnation_iters},
              {"condition_limit", solver.condition_limit},
              {"max_den", max_den},
              {"eig_threshold", eig_threshold},
              {"out", out},
              {"json", json}};
    j["seed"] = seed ? nlohmann::json(*seed) : nlohmann::json(nullptr);
    return j;
}

std::optional<std::uint64_t> seed_from_environment() {
    const char* raw = std::getenv("STRICTFEAS_SEED");
    if (raw == nullptr || *raw == '\0') return std::nullopt;
    std::size_t used = 0;
    unsigned long long v = 0;
    try {
        v = std::stoull(raw, &used);
    } catch (const std::exception&) {
        used = 0;
    }
    if (used != std::string(raw).size() || raw[0] == '-')
        throw std::invalid_argument(std::string("STRICTFEAS_SEED must be an unsigned integer, got '") + raw + "'");
    return v;
}

json RunReport::to_json() const {
    json j = {{"command", command}, {"inputs", inputs},     {"options", options},   {"solves", solves},
              {"reduction", reduction}, {"verdicts", verdicts}, {"timings", timings}, {"errors", errors},
              {"exit_code", exit_code}};
    return j;
}

namespace {

class Stopwatch {
public:
    Stopwatch() : start_(std::chrono::steady_clock::now()) {}
    double seconds() const {
        return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
    }

private:
    std::chrono::steady_clock::time_point start_;
};

template <class F>
auto timed(RunReport& report, const std::string& stage, F&& f) {
    Stopwatch sw;
    if constexpr (std::is_void_v<decltype(f())>) {
        f();
        report.timings[stage] = sw.seconds();
    } else {
        auto out = f();
        report.timings[stage] = sw.seconds();
        return out;
    }
}

json matrix_json(const ExactMatrix& m) {
    json rows = json::array();
    for (std::size_t i = 0; i < m.rows(); ++i) {
        json row = json::array();
        for (std::size_t j = 0; j < m.cols(); ++j) row.push_back(m(i, j).str());
        rows.push_back(row);
    }
    return rows;
}

json vector_json(const ExactVector& v) {
    json out = json::array();
    for (const auto& x : v) out.push_back(x.str());
    return out;
}

std::string matrix_text(const ExactMatrix& m, const std::string& indent) {
    std::vector<std::vector<std::string>> cells(m.rows(), std::vector<std::string>(m.cols()));
    std::size_t width = 1;
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j) {
            cells[i][j] = m(i, j).str();
            width = std::max(width, cells[i][j].size());
        }
    std::ostringstream os;
    for (const auto& row : cells) {
        os << indent;
        for (std::size_t j = 0; j < row.size(); ++j) os << (j ? " " : "") << std::setw(static_cast<int>(width)) << row[j];
        os << "\n";
    }
    return os.str();
}

json constraints_json(const facial::ImplicitConstraintSet& cons) {
    json eqs = json::array();
    for (const auto& e : cons.equations) eqs.push_back(e.str());
    json elim = json::array();
    for (const auto& e : cons.eliminated) elim.push_back({{"variable", e.variable}, {"value", e.value.str()}});
    json residual = json::array();
    for (const auto& e : cons.residual) residual.push_back(e.str());
    return {{"equations", eqs}, {"eliminated", elim}, {"residual", residual}};
}

json diagnosis_json(const facial::Diagnosis& d) {
    json j = {{"strictly_feasible", d.strictly_feasible}, {"log", d.log}};
    j["alternative_status"] = to_string(d.alternative_solve.status.tag);
    if (d.strictly_feasible) {
        j["tolerance"] = d.tolerance;
        if (d.interior_point) j["interior_point"] = *d.interior_point;
    }
    if (d.certificate) {
        j["certificate"] = {{"x", matrix_json(d.certificate->x)}};
        json vs = json::array();
        for (const auto& v : facial::certificate_null_vectors(*d.certificate)) vs.push_back(vector_json(v));
        j["null_vectors"] = vs;
    }
    return j;
}

json reduction_json(const facial::ReductionLog& log) {
    json rounds = json::array();
    for (const auto& r : log.rounds) {
        json jr = diagnosis_json(r.diagnosis);
        jr["constraints"] = constraints_json(r.constraints);
        rounds.push_back(jr);
    }
    json elim = json::array();
    for (const auto& e : log.eliminated()) elim.push_back({{"variable", e.variable}, {"value", e.value.str()}});
    return {{"rounds", rounds}, {"eliminated", elim}, {"reduced_problem", problem_to_json(log.reduced)}};
}

std::string elimination_table(const std::vector<facial::Elimination>& elim) {
    if (elim.empty()) return "no variables eliminated\n";
    std::size_t width = 8;
    for (const auto& e : elim) width = std::max(width, e.variable.size());
    std::ostringstream os;
    os << std::left << std::setw(static_cast<int>(width)) << "variable" << " | value\n";
    os << std::string(width, '-') << "-+-" << std::string(20, '-') << "\n";
    for (const auto& e : elim) os << std::setw(static_cast<int>(width)) << e.variable << " | " << e.value.str() << "\n";
    return os.str();
}

int solve_exit_code(const SolveResult& res) { return res.optimal() ? kExitOk : kExitTrouble; }

SdpProblem strictly_feasible_sample() {
    SdpProblem p;
    p.name = "strictly-feasible-sample";
    p.provenance = "diag(2, 1, 1) plus an off-diagonal pencil; strictly feasible at y = 0, optimum y1 = sqrt2";
    p.pencil = MatrixPencil(3);
    p.pencil.constant() = ExactMatrix::identity(3);
    p.pencil.constant()(0, 0) = QuadExt(2);
    auto& t1 = p.pencil.add_term("y1").matrix;
    t1(0, 1) = t1(1, 0) = QuadExt(1);
    auto& t2 = p.pencil.add_term("y2").matrix;
    t2(1, 2) = t2(2, 1) = QuadExt(1);
    p.objective = {QuadExt(1), QuadExt(0)};
    return p;
}

SdpProblem simplified(const SdpProblem& raw, const std::string& name) {
    SdpProblem out = facial::reduce(raw).reduced;
    out.name = name;
    out.provenance = "implicit equality constraints of '" + raw.name + "' substituted";
    return out;
}

void record_error(RunReport& report, const std::string& message) {
    report.errors.push_back(message);
    report.text += "error: " + message + "\n";
    report.exit_code = kExitError;
}

template <class F>
RunReport guarded(const std::string& command, const CliOptions& opts, json inputs, F&& body) {
    RunReport report;
    report.command = command;
    report.options = opts.to_json();
    report.inputs = std::move(inputs);
    Stopwatch total;
    try {
        body(report);
    } catch (const std::exception& e) {
        record_error(report, e.what());
    }
    report.timings["total"] = total.seconds();
    return report;
}

void write_text_file(const std::string& path, const std::string& text) {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw std::runtime_error("cannot open '" + path + "' for writing");
    f << text;
    if (!f) throw std::runtime_error("failed writing '" + path + "'");
}

}  // namespace

const std::vector<std::string>& builtin_names() {
    static const std::vector<std::string> names = {
        "problem1-raw",   "problem1-simplified", "problem2-raw", "problem2-simplified", "chsh-toy-raw",
        "chsh-toy-simplified", "strictly-feasible-sample", "random"};
    return names;
}

SdpProblem builtin_problem(const std::string& name, const CliOptions& opts) {
    if (name == "problem1-raw") return bell::almost_quantum_pencil(bell::line_one());
    if (name == "problem2-raw") return bell::almost_quantum_pencil(bell::line_two());
    if (name == "chsh-toy-raw") return bell::chsh_toy_pencil();
    if (name == "problem1-simplified")
        return simplified(bell::almost_quantum_pencil(bell::line_one()), "almost-quantum-l1-simplified");
    if (name == "problem2-simplified")
        return simplified(bell::almost_quantum_pencil(bell::line_two()), "almost-quantum-l2-simplified");
    if (name == "chsh-toy-simplified") return simplified(bell::chsh_toy_pencil(), "chsh-toy-simplified");
    if (name == "strictly-feasible-sample") return strictly_feasible_sample();
    if (name == "random") {
        if (!opts.seed) throw std::invalid_argument("the 'random' built-in needs STRICTFEAS_SEED");
        return random_strictly_feasible_sdp(*opts.seed).problem;
    }
    std::string known;
    for (const auto& n : builtin_names()) known += (known.empty() ? "" : ", ") + n;
    throw std::invalid_argument("unknown built-in problem '" + name + "' (known: " + known + ")");
}

SdpProblem load_input(const std::string& input, const CliOptions& opts) {
    const std::string prefix = "builtin:";
    if (input.rfind(prefix, 0) == 0) return builtin_problem(input.substr(prefix.size()), opts);
    return load_problem(input);
}

json solve_to_json(const SolveResult& res) {
    json y = json::object();
    for (std::size_t i = 0; i < res.names.size() && i < static_cast<std::size_t>(res.y.size()); ++i)
        y[res.names[i]] = res.y(static_cast<Eigen::Index>(i));
    json x = json::array();
    for (Eigen::Index i = 0; i < res.X.rows(); ++i) {
        json row = json::array();
        for (Eigen::Index j = 0; j < res.X.cols(); ++j) row.push_back(res.X(i, j));
        x.push_back(row);
    }
    const auto& d = res.diagnostics;
    return {{"status", to_string(res.status.tag)},
            {"message", res.status.message},
            {"objective_primal", res.objective_primal},
            {"objective_dual", res.objective_dual},
            {"y", y},
            {"X", x},
            {"strict_feasibility_warning", strict_feasibility_warning(res)},
            {"diagnostics",
             {{"iterations", d.iterations},
              {"final_gap", d.final_gap},
              {"primal_residual", d.primal_residual},
              {"dual_residual", d.dual_residual},
              {"max_abs_variable", d.max_abs_variable},
              {"min_slack_eigenvalue_estimate", d.min_slack_eigenvalue_estimate},
              {"condition_estimate", d.condition_estimate}}}};
}

RunReport cmd_solve(const std::string& input, const CliOptions& opts) {
    return guarded("solve", opts, {{"problem", input}}, [&](RunReport& report) {
        const SdpProblem prob = timed(report, "load", [&] { return load_input(input, opts); });
        const SolveResult res = timed(report, "solve", [&] { return solve_sdp(prob, opts.solver); });
        json j = solve_to_json(res);
        j["problem"] = prob.name;
        report.solves.push_back(j);
        std::ostringstream os;
        os << "problem: " << prob.name << "\n" << diagnostics_report(res);
        os << std::setprecision(10);
        for (std::size_t i = 0; i < res.names.size(); ++i)
            os << "  " << res.names[i] << " = " << res.y(static_cast<Eigen::Index>(i)) << "\n";
        report.text += os.str();
        report.exit_code = solve_exit_code(res);
    });
}

RunReport cmd_diagnose(const std::string& input, const CliOptions& opts) {
    return guarded("diagnose", opts, {{"problem", input}}, [&](RunReport& report) {
        const SdpProblem prob = timed(report, "load", [&] { return load_input(input, opts); });
        const facial::Diagnosis d =
            timed(report, "diagnose", [&] { return facial::find_reducing_certificate(prob, opts.facial()); });
        report.reduction = diagnosis_json(d);
        std::ostringstream os;
        os << "problem: " << prob.name << "\n";
        if (d.strictly_feasible && d.tolerance == 0) {
            os << "StrictlyFeasible (exact: " << d.log << ")\n";
        } else if (d.strictly_feasible) {
            os << "StrictlyFeasible (numerical verdict at tolerance " << d.tolerance
               << ", not an exact proof)\n  " << d.log << "\n";
        } else {
            const auto vectors = facial::certificate_null_vectors(*d.certificate);
            os << "strict feasibility fails; exact reducing certificate X (PSD, orthogonal to every data matrix):\n"
               << matrix_text(d.certificate->x, "  ") << "  " << d.log << "\n";
            os << vectors.size() << " null vector(s) shared by every feasible matrix:\n";
            for (const auto& v : vectors) os << "  " << to_string(v) << "\n";
        }
        report.text += os.str();
    });
}

RunReport cmd_reduce(const std::string& input, const CliOptions& opts) {
    return guarded("reduce", opts, {{"problem", input}}, [&](RunReport& report) {
        const SdpProblem prob = timed(report, "load", [&] { return load_input(input, opts); });
        const facial::ReductionLog log = timed(report, "reduce", [&] { return facial::reduce(prob, opts.facial()); });
        report.reduction = reduction_json(log);
        std::ostringstream os;
        os << "problem: " << prob.name << "\n";
        for (std::size_t r = 0; r < log.rounds.size(); ++r) {
            const auto& round = log.rounds[r];
            os << "round " << r + 1 << ": ";
            if (round.diagnosis.strictly_feasible)
                os << "strictly feasible\n";
            else
                os << round.null_vectors.size() << " null vector(s), " << round.constraints.eliminated.size()
                   << " elimination(s)\n";
            for (const auto& eq : round.constraints.residual) os << "  kept as a constraint: " << eq.str() << "\n";
        }
        os << elimination_table(log.eliminated());
        const std::string body = serialize_problem(log.reduced);
        if (opts.out.empty()) {
            os << body;
        } else {
            write_text_file(opts.out, body);
            os << "reduced problem written to " << opts.out << "\n";
        }
        report.text += os.str();
    });
}

RunReport cmd_export(const std::string& name, const CliOptions& opts) {
    return guarded("export", opts, {{"problem", name}}, [&](RunReport& report) {
        const SdpProblem prob = builtin_problem(name, opts);
        const std::string body = serialize_problem(prob);
        if (opts.out.empty()) {
            report.text += body;
        } else {
            write_text_file(opts.out, body);
            report.text += "wrote " + prob.name + " to " + opts.out + "\n";
        }
    });
}

namespace {

struct Claim {
    RunReport& report;
    std::ostringstream& text;
    bool all = true;

    void add(certify::Verdict v) {
        all = all && v.pass;
        text << "  [" << (v.pass ? "PASS" : "FAIL") << "] " << v.claim << ": " << v.verdict;
        if (v.certified_bound) text << " (bound " << *v.certified_bound << ")";
        if (!v.pass && v.witness) text << " - " << *v.witness;
        text << "\n";
        report.verdicts.push_back(certify::to_json(v));
    }
    void check(const std::string& claim, bool ok, const std::string& detail) {
        add({claim, ok, ok ? "Confirmed" : "Failed", detail.empty() ? std::nullopt : std::optional(detail), std::nullopt});
    }
};

std::string fmt(double v) {
    std::ostringstream os;
    os << std::setprecision(10) << v;
    return os.str();
}

bool same_span(const std::vector<ExactVector>& a, const std::vector<ExactVector>& b, std::size_t n) {
    auto stack = [n](const std::vector<ExactVector>& vs) {
        ExactMatrix m(vs.size(), n);
        for (std::size_t i = 0; i < vs.size(); ++i)
            for (std::size_t j = 0; j < n; ++j) m(i, j) = vs[i][j];
        return m;
    };
    std::vector<ExactVector> both = a;
    both.insert(both.end(), b.begin(), b.end());
    const std::size_t ra = rank(stack(a));
    return ra == rank(stack(b)) && ra == rank(stack(both));
}

ExactVector ints(std::initializer_list<long> xs) {
    ExactVector v;
    for (long x : xs) v.push_back(QuadExt(x));
    return v;
}

struct Target {
    std::string name;
    SdpProblem raw;
    QuadExt certified;
    std::vector<ExactVector> expected_null_vectors;
    double clean_gap;
};

void raw_and_reduced(const Target& t, const CliOptions& opts, RunReport& report, Claim& claims,
                     facial::ReductionLog& log, SolveResult& clean) {
    const double certified = t.certified.to_double();
    const SolveResult raw = timed(report, t.name + ".raw_solve", [&] { return solve_sdp(t.raw, opts.solver); });
    json jr = solve_to_json(raw);
    jr["problem"] = t.raw.name;
    report.solves.push_back(jr);
    const double raw_gap = std::fabs(raw.objective_dual - certified);
    const bool trouble = !raw.optimal() || raw.diagnostics.max_abs_variable > kTroubleMagnitude ||
                         raw_gap > kTroubleObjectiveGap;
    claims.check(t.name + ": raw solve shows the strict-feasibility trouble signature", trouble,
                 "status " + to_string(raw.status.tag) + ", max|var| " + fmt(raw.diagnostics.max_abs_variable) +
                     ", objective " + fmt(raw.objective_dual));

    log = timed(report, t.name + ".reduce", [&] { return facial::reduce(t.raw, opts.facial()); });
    report.reduction[t.name] = reduction_json(log);
    const bool have_cert = !log.rounds.empty() && log.rounds.front().diagnosis.certificate.has_value();
    std::string vec_text;
    if (have_cert)
        for (const auto& v : log.rounds.front().null_vectors) vec_text += (vec_text.empty() ? "" : " ") + to_string(v);
    claims.check(t.name + ": exact reducing certificate spans the expected null vectors",
                 have_cert && same_span(log.rounds.front().null_vectors, t.expected_null_vectors, t.raw.pencil.dim()),
                 vec_text);

    clean = timed(report, t.name + ".simplified_solve", [&] { return solve_sdp(log.reduced, opts.solver); });
    json jc = solve_to_json(clean);
    jc["problem"] = log.reduced.name;
    report.solves.push_back(jc);
    const bool ok = clean.optimal() && clean.diagnostics.max_abs_variable < kCleanMagnitude &&
                    std::fabs(clean.objective_dual - certified) <= t.clean_gap;
    claims.check(t.name + ": simplified problem solves cleanly to " + t.certified.str(), ok,
                 "status " + to_string(clean.status.tag) + ", max|var| " + fmt(clean.diagnostics.max_abs_variable) +
                     ", objective " + fmt(clean.objective_dual));
}

void reproduce_problem1(const CliOptions& opts, RunReport& report, Claim& claims) {
    Target t{"problem1", bell::almost_quantum_pencil(bell::line_one()), QuadExt(0),
             {ints({1, 0, -1, 0, -1, 0, 0, 0, 1}), ints({0, 0, 0, 1, 0, 0, 0, -1, 0})}, kCleanObjectiveGap};
    facial::ReductionLog log;
    SolveResult clean;
    raw_and_reduced(t, opts, report, claims, log, clean);
    timed(report, "problem1.certify", [&] {
        const ExactAssignment point = {{"mu", QuadExt(0)},
                                       {"a01", QuadExt(Rational(1, 3))},
                                       {"b01", QuadExt(Rational(1, 6))},
                                       {"c0_01", QuadExt(Rational(1, 6))}};
        const auto primal = certify::verify_primal_point(log.reduced, point);
        claims.add(certify::primal_verdict("problem1: (mu, a01, b01, c0_01) = (0, 1/3, 1/6, 1/6) is feasible", primal));
        const auto bound = certify::verify_bound_certificate(log.reduced, certify::problem1_dual_certificate(),
                                                             bell::kObjectiveVariable);
        claims.add(certify::bound_verdict("problem1: dual certificate X* bounds mu", bound));
        const bool exact = primal.feasible && bound.valid() && bound.certificate->certified_bound == QuadExt(0);
        certify::Verdict v{"problem1: optimum is exactly 0", exact, exact ? "Certified" : "Failed", std::nullopt,
                           std::nullopt};
        if (exact) v.certified_bound = "0";
        claims.add(v);
    });
}

void reproduce_problem2(const CliOptions& opts, RunReport& report, Claim& claims) {
    Target t{"problem2", bell::almost_quantum_pencil(bell::line_two()), certify::mu2_star(),
             {ints({0, 0, 0, 0, 0, 0, 0, 0, 1}), ints({0, 0, 0, 1, 0, 0, 0, -1, 0}), ints({0, 1, 0, 0, 0, 0, -1, 0, 0})},
             kCleanObjectiveGap};
    facial::ReductionLog log;
    SolveResult clean;
    raw_and_reduced(t, opts, report, claims, log, clean);
    timed(report, "problem2.certify", [&] {
        claims.check("problem2: only mu remains after reduction",
                     log.reduced.num_vars() == 1 && log.reduced.pencil.names().front() == bell::kObjectiveVariable,
                     std::to_string(log.reduced.num_vars()) + " variable(s)");
        if (log.reduced.num_vars() != 1) return;
        claims.add(certify::primal_verdict("problem2: mu = 5*sqrt5 - 11 is feasible",
                                           certify::verify_primal_point(
                                               log.reduced, {{bell::kObjectiveVariable, certify::mu2_star()}})));
        claims.add(certify::mu2_verdict("problem2: feasible mu end exactly at 5*sqrt5 - 11",
                                        certify::verify_mu2_bound(log.reduced)));
        claims.add(certify::formula_verdict("problem2: closed-form eigenvalue matches the pencil",
                                            certify::check_eigenvalue_formula(log.reduced)));
    });
}

void reproduce_toy(const CliOptions& opts, RunReport& report, Claim& claims) {
    Target t{"chsh-toy", bell::chsh_toy_pencil(), QuadExt(0), {ints({0, 0, 0, 1, 0}), ints({0, 0, 0, 0, 1})},
             kToyObjectiveGap};
    facial::ReductionLog log;
    SolveResult clean;
    raw_and_reduced(t, opts, report, claims, log, clean);
}

}  // namespace

RunReport cmd_reproduce(const std::string& target, const CliOptions& opts) {
    return guarded("reproduce", opts, {{"target", target}}, [&](RunReport& report) {
        const std::map<std::string, std::function<void(const CliOptions&, RunReport&, Claim&)>> targets = {
            {"problem1", reproduce_problem1}, {"problem2", reproduce_problem2}, {"chsh-toy", reproduce_toy}};
        std::vector<std::string> run;
        if (target == "all")
            run = {"chsh-toy", "problem1", "problem2"};
        else if (targets.count(target))
            run = {target};
        else
            throw std::invalid_argument("unknown reproduce target '" + target +
                                        "' (known: problem1, problem2, chsh-toy, all)");
        report.reduction = json::object();
        std::ostringstream text;
        Claim claims{report, text};
        for (const auto& name : run) {
            text << name << ":\n";
            targets.at(name)(opts, report, claims);
        }
        text << (claims.all ? "all claims reproduced\n" : "some claims FAILED\n");
        report.text += text.str();
        report.exit_code = claims.all ? kExitOk : kExitError;
    });
}

}  // namespace strictfeas::cli
