#include <doctest.h>

#include <cmath>

#include "checks.hpp"
#include "golden.hpp"
#include "strictfeas/certify.hpp"

using namespace strictfeas;
using namespace strictfeas::certify;

TEST_CASE("the embedded dual certificate is the printed one") {
    CHECK(problem1_dual_certificate() == checks::x_star());
    CHECK(psd_check_exact(checks::x_star()).psd);
}

TEST_CASE("problem 1: primal point and bound certificate") {
    const SdpProblem simple = golden::sdp1simple();
    const ExactAssignment point{{"mu", 0}, {"a01", Rational(1, 3)}, {"b01", Rational(1, 6)}, {"c0_01", Rational(1, 6)}};
    const PrimalVerdict v = verify_primal_point(simple, point);
    CHECK(v.feasible);
    CHECK_FALSE(v.witness);

    ExactAssignment beyond = point;
    beyond["mu"] = Rational(1, 100);
    const PrimalVerdict w = verify_primal_point(simple, beyond);
    CHECK_FALSE(w.feasible);

    const BoundCheck b = verify_bound_certificate(simple, checks::x_star(), "mu");
    REQUIRE(b.valid());
    CHECK(b.certificate->certified_bound == QuadExt(0));

    ExactMatrix tampered = checks::x_star();
    tampered(0, 1) += QuadExt(1);
    tampered(1, 0) += QuadExt(1);
    CHECK_FALSE(verify_bound_certificate(simple, tampered, "mu").valid());
    CHECK_FALSE(verify_bound_certificate(simple, ExactMatrix(3), "mu").valid());
    CHECK_THROWS(verify_primal_point(simple, {{"mu", 0}}));
}

TEST_CASE("problem 2: exact PSD boundary at 5*sqrt5 - 11") {
    CHECK(mu2_star() == QuadExt(Rational(-11), Rational(5)));
    const Mu2BoundVerdict v = verify_mu2_bound(golden::sdp2simple());
    CHECK(v.confirmed);
    for (const auto& s : v.samples) {
        CAPTURE(s.mu.str());
        CHECK(s.psd == s.expected_psd);
        if (!s.psd) {
            const ExactMatrix m = pencil_eval(golden::sdp2simple().pencil, {{"mu", s.mu}});
            CHECK(dot(s.witness, m * s.witness).sign() < 0);
        }
    }
}

TEST_CASE("closed-form eigenvalue") {
    const FormulaVerdict v = check_eigenvalue_formula(golden::sdp2simple());
    CHECK(v.confirmed);
    CHECK(v.samples.size() == 4);
    CHECK(std::fabs(formula_eigenvalue(mu2_star().to_double())) <= 1e-12);
    CHECK(formula_eigenvalue(0.1) > 0);
    CHECK(formula_eigenvalue(0.2) < 0);
}

TEST_CASE("verdicts serialize") {
    const Verdict v = bound_verdict("bound", verify_bound_certificate(golden::sdp1simple(), checks::x_star(), "mu"));
    const auto j = to_json(v);
    CHECK(j["pass"] == true);
    CHECK(j["certified_bound"] == "0");
    CHECK(j["claim"] == "bound");
}
