#include "checks.hpp"

#include <chrono>
#include <cmath>
#include <random>
#include <sstream>

#include "golden.hpp"
#include "mpfr_oracle.hpp"
#include "strictfeas/certify.hpp"
#include "strictfeas/cli.hpp"
#include "strictfeas/random_sdp.hpp"
#include "strictfeas/reconstruct.hpp"

namespace checks {

using namespace strictfeas;

namespace {

ExactVector ints(std::initializer_list<long> xs) {
    ExactVector v;
    for (long x : xs) v.push_back(QuadExt(x));
    return v;
}

template <class F>
Outcome timed(F&& f) {
    const auto start = std::chrono::steady_clock::now();
    Outcome out;
    try {
        out = f();
    } catch (const std::exception& e) {
        out = {false, std::string("exception: ") + e.what(), 0.0};
    }
    out.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return out;
}

std::string num(double v) {
    std::ostringstream os;
    os.precision(10);
    os << v;
    return os.str();
}

const QuadExt kMu2 = QuadExt(Rational(-11), Rational(5));

}  // namespace

ExactMatrix x_star() {
    const long printed[9][9] = {
        {1, -1, -1, 0, -1, 1, 1, 0, 0},  {-1, 4, 1, 0, 1, -4, -4, 0, 3}, {-1, 1, 1, 0, 1, -1, -1, 0, 0},
        {0, 0, 0, 0, 0, 0, 0, 0, 0},     {-1, 1, 1, 0, 1, -1, -1, 0, 0}, {1, -4, -1, 0, -1, 4, 4, 0, -3},
        {1, -4, -1, 0, -1, 4, 4, 0, -3}, {0, 0, 0, 0, 0, 0, 0, 0, 0},    {0, 3, 0, 0, 0, -3, -3, 0, 3},
    };
    ExactMatrix x(9);
    for (std::size_t i = 0; i < 9; ++i)
        for (std::size_t j = 0; j < 9; ++j) x(i, j) = QuadExt(Rational(printed[i][j], 2));
    return x;
}

std::vector<ExactVector> problem1_vectors() {
    return {ints({1, 0, -1, 0, -1, 0, 0, 0, 1}), ints({0, 0, 0, 1, 0, 0, 0, -1, 0})};
}
std::vector<ExactVector> problem2_vectors() {
    return {ints({0, 0, 0, 0, 0, 0, 0, 0, 1}), ints({0, 0, 0, 1, 0, 0, 0, -1, 0}), ints({0, 1, 0, 0, 0, 0, -1, 0, 0})};
}
std::vector<ExactVector> toy_vectors() { return {ints({0, 0, 0, 1, 0}), ints({0, 0, 0, 0, 1})}; }

std::vector<std::string> problem1_relations() {
    return {"c1_01 = b01", "c01_01 = c0_01", "c01_10 = c0_01", "c01_0 = (mu + 2)/6", "c01_1 = a01 - (1-mu)/6"};
}
std::vector<std::string> problem2_relations() {
    return {"a01 = 0",       "b01 = 0",       "c01_1 = 0",      "c1_01 = 0",
            "c01_01 = 0",    "c01_0 = mu/2",  "c0_01 = mu/2",   "c01_10 = mu/2"};
}
std::vector<std::string> toy_relations() { return {"p00 = 0", "p01 = 0", "p10 = 0", "p11 = 0", "b01 = 0"}; }

bool same_span(const std::vector<ExactVector>& a, const std::vector<ExactVector>& b) {
    if (a.empty() || b.empty()) return a.empty() && b.empty();
    const std::size_t n = a.front().size();
    auto stack = [n](const std::vector<ExactVector>& vs) {
        ExactMatrix m(vs.size(), n);
        for (std::size_t i = 0; i < vs.size(); ++i)
            for (std::size_t j = 0; j < n; ++j) m(i, j) = vs[i].at(j);
        return m;
    };
    std::vector<ExactVector> both = a;
    both.insert(both.end(), b.begin(), b.end());
    const std::size_t r = rank(stack(a));
    return r == rank(stack(b)) && r == rank(stack(both));
}

std::string relation_difference(const std::vector<facial::Elimination>& got, const std::vector<std::string>& expected) {
    if (got.size() != expected.size())
        return std::to_string(got.size()) + " eliminations, expected " + std::to_string(expected.size());
    for (const auto& line : expected) {
        const auto eq = line.find('=');
        std::string var = line.substr(0, eq);
        var.erase(var.find_last_not_of(' ') + 1);
        const golden::Affine want = golden::parse_affine(line.substr(eq + 1));
        const facial::Elimination* e = nullptr;
        for (const auto& g : got)
            if (g.variable == var) e = &g;
        if (e == nullptr) return "no elimination of " + var;
        if (!(e->value.constant == want.constant)) return var + ": constant " + e->value.constant.str();
        std::map<std::string, QuadExt> have;
        for (const auto& [name, c] : e->value.terms)
            if (!c.is_zero()) have[name] = c;
        std::map<std::string, QuadExt> need;
        for (const auto& [name, c] : want.coef)
            if (!c.is_zero()) need[name] = c;
        if (have != need) return var + " = " + e->value.str() + ", expected" + line.substr(eq + 1);
    }
    return "";
}

Outcome criterion1() {
    return timed([] {
        const cli::RunReport report = cli::cmd_reproduce("problem1", {});
        bool feasible = false, bound_zero = false;
        for (const auto& v : report.verdicts) {
            if (v["verdict"] == "Feasible") feasible = true;
            if (v["verdict"] == "BoundCertificate" && v.value("certified_bound", "") == "0") bound_zero = true;
        }
        const auto simple = golden::sdp1simple();
        const auto primal = certify::verify_primal_point(
            simple, {{"mu", 0}, {"a01", Rational(1, 3)}, {"b01", Rational(1, 6)}, {"c0_01", Rational(1, 6)}});
        const auto bound = certify::verify_bound_certificate(simple, x_star(), "mu");
        const bool direct = primal.feasible && bound.valid() && bound.certificate->certified_bound == QuadExt(0);
        const bool pass = report.exit_code == 0 && feasible && bound_zero && direct;
        return Outcome{pass,
                       "reproduce exit " + std::to_string(report.exit_code) + ", primal Feasible " +
                           (feasible ? "yes" : "no") + ", bound 0 " + (bound_zero ? "yes" : "no") +
                           ", hand-entered check " + (direct ? "yes" : "no"),
                       0};
    });
}

Outcome criterion2() {
    return timed([] {
        const auto simple = golden::sdp2simple();
        const bool at = psd_check_exact(pencil_eval(simple.pencil, {{"mu", kMu2}})).psd;
        const bool above = psd_check_exact(pencil_eval(simple.pencil, {{"mu", kMu2 + QuadExt(Rational(1, 1000))}})).psd;
        const SolveResult res = solve_sdp(simple);
        const double err = std::fabs(res.objective_dual - 0.1803398875);
        const bool pass = at && !above && res.optimal() && err <= 1e-6;
        return Outcome{pass,
                       std::string("PSD at mu* ") + (at ? "yes" : "no") + ", PSD at mu*+1/1000 " + (above ? "yes" : "no") +
                           ", numeric " + num(res.objective_dual) + " (" + to_string(res.status.tag) + ")",
                       0};
    });
}

Outcome criterion3() {
    return timed([] {
        std::string detail;
        bool pass = true;
        for (const auto& [prob, want] :
             {std::pair{golden::sdp1raw(), problem1_vectors()}, std::pair{golden::sdp2raw(), problem2_vectors()}}) {
            const auto start = std::chrono::steady_clock::now();
            const auto d = facial::find_reducing_certificate(prob);
            const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
            const bool ok = d.certificate && facial::certificate_violations(prob, *d.certificate).empty() &&
                            same_span(facial::certificate_null_vectors(*d.certificate), want) && secs < 5.0;
            pass = pass && ok;
            detail += prob.name + (ok ? " span matches" : " MISMATCH") + " (" + num(secs) + " s); ";
        }
        return Outcome{pass, detail, 0};
    });
}

Outcome criterion4() {
    return timed([] {
        std::string detail;
        bool pass = true;
        const std::vector<std::tuple<SdpProblem, std::vector<ExactVector>, std::vector<std::string>, std::string>> cases = {
            {golden::sdp1raw(), problem1_vectors(), problem1_relations(), "mu"},
            {golden::sdp2raw(), problem2_vectors(), problem2_relations(), "mu"},
            {golden::toy_raw(), toy_vectors(), toy_relations(), ""},
        };
        for (const auto& [prob, vectors, relations, keep] : cases) {
            const auto d = facial::find_reducing_certificate(prob);
            if (!d.certificate) return Outcome{false, prob.name + ": no certificate", 0};
            const auto cons = facial::derive_implicit_constraints(
                prob, facial::certificate_null_vectors(*d.certificate), keep);
            const std::string diff = relation_difference(cons.eliminated, relations);
            pass = pass && diff.empty() && cons.residual.empty();
            detail += prob.name + ": " + (diff.empty() ? std::to_string(relations.size()) + " relations match" : diff) + "; ";
        }
        return Outcome{pass, detail, 0};
    });
}

Outcome criterion5() {
    return timed([] {
        std::string detail;
        bool pass = true;
        const std::vector<std::tuple<SdpProblem, std::vector<ExactVector>, SdpProblem, std::string>> cases = {
            {golden::sdp1raw(), problem1_vectors(), golden::sdp1simple(), "mu"},
            {golden::sdp2raw(), problem2_vectors(), golden::sdp2simple(), "mu"},
            {golden::toy_raw(), toy_vectors(), golden::toy_simple(), ""},
        };
        for (const auto& [raw, vectors, simple, keep] : cases) {
            const auto cons = facial::derive_implicit_constraints(raw, vectors, keep);
            const std::string diff = golden::pencil_difference(facial::apply_constraints(raw, cons), simple);
            pass = pass && diff.empty();
            detail += simple.name + ": " + (diff.empty() ? "identical" : diff) + "; ";
        }
        return Outcome{pass, detail, 0};
    });
}

Outcome criterion6() {
    return timed([] {
        std::string detail;
        bool pass = true;
        const std::vector<std::tuple<SdpProblem, SdpProblem, double>> cases = {
            {golden::sdp1raw(), golden::sdp1simple(), 0.0},
            {golden::sdp2raw(), golden::sdp2simple(), kMu2.to_double()},
            {golden::toy_raw(), golden::toy_simple(), 0.0},
        };
        for (const auto& [raw, simple, certified] : cases) {
            const SolveResult r = solve_sdp(raw);
            const bool trouble = !r.optimal() || r.diagnostics.max_abs_variable > 1e6 ||
                                 std::fabs(r.objective_dual - certified) > 1e-6;
            const SolveResult s = solve_sdp(simple);
            const bool clean = s.optimal() && std::fabs(s.objective_dual - certified) <= 1e-6 &&
                               s.diagnostics.max_abs_variable < 1e3;
            pass = pass && trouble && clean;
            detail += raw.name + " " + to_string(r.status.tag) + " max|var| " + num(r.diagnostics.max_abs_variable) +
                      (trouble ? "" : " NO TROUBLE") + ", " + simple.name + " " + to_string(s.status.tag) + " " +
                      num(s.objective_dual) + (clean ? "" : " NOT CLEAN") + "; ";
        }
        return Outcome{pass, detail, 0};
    });
}

Outcome criterion7() {
    return timed([] {
        int good = 0;
        std::string failures;
        for (std::uint64_t seed = 1; seed <= 20; ++seed) {
            const RandomSdp r = random_strictly_feasible_sdp(seed, 6, 6);
            const SdpProblem& p = r.problem;
            // The construction's promises, checked exactly.
            const ExactMatrix z = pencil_eval(p.pencil, r.y_star);
            bool certified = psd_check_exact(r.x_star).psd && psd_check_exact(z).psd && inner(r.x_star, z).is_zero();
            for (std::size_t i = 0; i < p.num_vars(); ++i)
                certified = certified && inner(p.pencil.terms()[i].matrix, r.x_star) == -p.objective[i];
            QuadExt by;
            for (std::size_t i = 0; i < p.num_vars(); ++i) by += p.objective[i] * r.y_star.at(p.pencil.terms()[i].name);
            certified = certified && by == inner(p.pencil.constant(), r.x_star) && by == r.optimum;
            const ExactMatrix interior = pencil_eval(p.pencil, r.interior_point);
            certified = certified && psd_check_exact(interior).psd && rank(interior) == p.pencil.dim();

            const SolveResult res = solve_sdp(p);
            const bool ok = certified && res.optimal() && std::fabs(res.objective_dual - r.optimum.to_double()) <= 1e-6 &&
                            std::fabs(res.objective_primal - r.optimum.to_double()) <= 1e-6;
            if (ok)
                ++good;
            else
                failures += " seed " + std::to_string(seed) + (certified ? "" : " (construction)") + " " +
                            to_string(res.status.tag);
        }
        return Outcome{good == 20, std::to_string(good) + "/20 optimal within 1e-6" + failures, 0};
    });
}

Outcome criterion8() {
    return timed([] {
        std::mt19937_64 rng(8);
        std::uniform_int_distribution<long> small(-50, 50);
        std::uniform_int_distribution<long> pos(1, 30);
        auto rq = [&] { return Rational(small(rng), pos(rng)); };
        auto rx = [&] { return QuadExt(rq(), rq()); };

        int axioms = 0;
        for (int k = 0; k < 300; ++k) {
            const QuadExt a = rx(), b = rx(), c = rx();
            bool ok = (a + b) + c == a + (b + c) && (a * b) * c == a * (b * c) && a * (b + c) == a * b + a * c &&
                      a + b == b + a && a * b == b * a && a + QuadExt() == a && a * QuadExt(1) == a &&
                      a + (-a) == QuadExt();
            if (!a.is_zero()) ok = ok && a * a.inverse() == QuadExt(1);
            axioms += ok;
        }

        int signs = 0;
        std::uniform_int_distribution<long> big(-2'000'000, 2'000'000);
        for (int k = 0; k < 1000; ++k) {
            QuadExt x(Rational(big(rng), pos(rng)), Rational(big(rng), pos(rng)));
            if (k % 3 == 0) {
                const long b = big(rng);
                x = QuadExt(Rational(static_cast<long>(std::lround(-b * std::sqrt(5.0))) + k % 2), Rational(b));
            }
            signs += qsign(x) == oracle::sign_mpfr(x);
        }

        int psd = 0;
        std::uniform_int_distribution<int> dim(1, 6);
        std::uniform_int_distribution<long> entry(-3, 3);
        for (int k = 0; k < 500; ++k) {
            const std::size_t n = static_cast<std::size_t>(dim(rng));
            ExactMatrix b(n);
            for (std::size_t i = 0; i < n; ++i)
                for (std::size_t j = 0; j < n; ++j)
                    b(i, j) = k % 2 ? QuadExt(Rational(entry(rng)), Rational(entry(rng), 2)) : QuadExt(entry(rng));
            ExactMatrix gram = b.transpose() * b;
            if (k % 2 == 0) {
                psd += psd_check_exact(gram).psd;
            } else {
                // push one diagonal entry below zero: indefinite (or negative) by construction
                const std::size_t i = static_cast<std::size_t>(k) % n;
                gram(i, i) -= gram(i, i) + QuadExt(Rational(1, 7));
                const PsdVerdict v = psd_check_exact(gram);
                psd += !v.psd && dot(v.witness, gram * v.witness).sign() < 0;
            }
        }

        int recon = 0;
        std::uniform_int_distribution<long> den(1, 999);
        for (int k = 0; k < 500; ++k) {
            const Rational q(small(rng) * 20 + k % 7, den(rng));
            const auto back = reconstruct_rational(q.to_double());
            recon += back && *back == q;
        }
        for (const QuadExt& x : {kMu2, QuadExt(Rational(9, 38), Rational(-1, 38)), QuadExt(Rational(1, 6), Rational(1, 3))}) {
            const auto back = reconstruct_quadext(x.to_double());
            recon += back && *back == x;
        }

        const bool pass = axioms == 300 && signs == 1000 && psd == 500 && recon == 503;
        return Outcome{pass,
                       "field axioms " + std::to_string(axioms) + "/300, qsign " + std::to_string(signs) +
                           "/1000, psd " + std::to_string(psd) + "/500, reconstruction " + std::to_string(recon) + "/503",
                       0};
    });
}

Outcome criterion9() {
    return timed([] {
        const auto v = certify::check_eigenvalue_formula(golden::sdp2simple(), 1e-10);
        double worst = 0;
        for (const auto& s : v.samples) worst = std::max(worst, std::fabs(s.formula_value - s.nearest_eigenvalue));
        return Outcome{v.confirmed && v.samples.size() == 4,
                       std::to_string(v.samples.size()) + " samples, worst mismatch " + num(worst), 0};
    });
}

}  // namespace checks
