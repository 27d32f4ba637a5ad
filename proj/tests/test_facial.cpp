#include <doctest.h>

#include "checks.hpp"
#include "golden.hpp"
#include "strictfeas/bell.hpp"
#include "strictfeas/facial.hpp"

using namespace strictfeas;
using namespace strictfeas::facial;

TEST_CASE("alternative problem layout") {
    const SdpProblem raw = golden::toy_raw();
    const SdpProblem alt = build_alternative_problem(raw);
    CHECK(alt.form == ProblemForm::PrimalForm);
    REQUIRE(alt.num_vars() == raw.num_vars() + 2);
    CHECK(alt.pencil.terms().front().name == kConstantTerm);
    CHECK(alt.pencil.terms().front().matrix == raw.pencil.constant());
    CHECK(alt.pencil.terms().back().name == kTraceTerm);
    CHECK(alt.pencil.terms().back().matrix == ExactMatrix::identity(raw.pencil.dim()));
    CHECK(alt.objective.back() == QuadExt(-1));
    CHECK(alt.pencil.constant().is_zero());

    SdpProblem primal = dualize(raw);
    CHECK_THROWS_AS(build_alternative_problem(primal), InvalidProblemError);
}

TEST_CASE("certificates are found and verified for the raw problems") {
    const std::vector<std::pair<SdpProblem, std::vector<ExactVector>>> cases = {
        {golden::sdp1raw(), checks::problem1_vectors()},
        {golden::sdp2raw(), checks::problem2_vectors()},
        {golden::toy_raw(), checks::toy_vectors()},
    };
    for (const auto& [prob, vectors] : cases) {
        CAPTURE(prob.name);
        const Diagnosis d = find_reducing_certificate(prob);
        CHECK_FALSE(d.strictly_feasible);
        REQUIRE(d.certificate);
        CHECK(certificate_violations(prob, *d.certificate).empty());
        CHECK(checks::same_span(certificate_null_vectors(*d.certificate), vectors));
    }
}

TEST_CASE("tampered certificates are rejected") {
    const SdpProblem prob = golden::sdp1raw();
    const Diagnosis d = find_reducing_certificate(prob);
    REQUIRE(d.certificate);

    ReducingCertificate bad = *d.certificate;
    bad.x(0, 0) += QuadExt(1);
    CHECK_FALSE(certificate_violations(prob, bad).empty());

    bad = *d.certificate;
    bad.x = bad.x * QuadExt(-1);
    CHECK_FALSE(certificate_violations(prob, bad).empty());

    bad = *d.certificate;
    bad.x = ExactMatrix(prob.pencil.dim());
    CHECK_FALSE(certificate_violations(prob, bad).empty());

    bad = *d.certificate;
    bad.range_vectors.pop_back();
    CHECK_FALSE(certificate_violations(prob, bad).empty());

    bad = *d.certificate;
    bad.x = ExactMatrix(3);
    CHECK_FALSE(certificate_violations(prob, bad).empty());
}

TEST_CASE("strictly feasible problems get that verdict") {
    SdpProblem p;
    p.pencil = MatrixPencil(2);
    p.pencil.set_constant(0, 0, 2);
    p.pencil.set_constant(1, 1, 1);
    p.pencil.add_term("y");
    p.pencil.set_term("y", 0, 1, 1);
    p.objective = {QuadExt(1)};
    const Diagnosis d = find_reducing_certificate(p);
    CHECK(d.strictly_feasible);
    CHECK_FALSE(d.certificate);

    const ReductionLog log = reduce(p);
    CHECK(log.eliminated().empty());
    CHECK(same_data(log.reduced, p));
}

TEST_CASE("implicit constraints match the printed relations") {
    const auto one = derive_implicit_constraints(golden::sdp1raw(), checks::problem1_vectors(), "mu");
    CHECK(checks::relation_difference(one.eliminated, checks::problem1_relations()) == "");
    CHECK(one.residual.empty());
    const auto two = derive_implicit_constraints(golden::sdp2raw(), checks::problem2_vectors(), "mu");
    CHECK(checks::relation_difference(two.eliminated, checks::problem2_relations()) == "");
    const auto toy = derive_implicit_constraints(golden::toy_raw(), checks::toy_vectors());
    CHECK(checks::relation_difference(toy.eliminated, checks::toy_relations()) == "");

    const Elimination* e = one.find("c01_1");
    REQUIRE(e != nullptr);
    CHECK(e->value.str() == "1/6*mu + a01 - 1/6");
    CHECK(one.find("mu") == nullptr);
}

TEST_CASE("constraint derivation corner cases") {
    const SdpProblem raw = golden::sdp1raw();
    CHECK(derive_implicit_constraints(raw, {}, "mu").empty());
    // e0 is not in the kernel of F0 at any mu: F0 e0 has a constant entry no variable can cancel
    ExactVector e0(9, QuadExt(0));
    e0[0] = 1;
    CHECK_THROWS_AS(derive_implicit_constraints(raw, {e0}, "mu"), InconsistentError);

    // F0 v = 1 with no variables touching v cannot hold
    SdpProblem p;
    p.pencil = MatrixPencil(2);
    p.pencil.set_constant(0, 0, 1);
    p.pencil.add_term("y");
    p.pencil.set_term("y", 1, 1, 1);
    p.objective = {QuadExt(1)};
    ExactVector v{QuadExt(1), QuadExt(0)};
    CHECK_THROWS_AS(derive_implicit_constraints(p, {v}), InconsistentError);
}

TEST_CASE("substitution reproduces the simplified matrices") {
    const auto one = derive_implicit_constraints(golden::sdp1raw(), checks::problem1_vectors(), "mu");
    const SdpProblem s1 = apply_constraints(golden::sdp1raw(), one);
    CHECK(golden::pencil_difference(s1, golden::sdp1simple()) == "");
    CHECK(s1.name == "sdp1raw-reduced");
    CHECK(apply_constraints(s1, ImplicitConstraintSet{}).name == "sdp1raw-reduced");

    const auto two = derive_implicit_constraints(golden::sdp2raw(), checks::problem2_vectors(), "mu");
    CHECK(golden::pencil_difference(apply_constraints(golden::sdp2raw(), two), golden::sdp2simple()) == "");

    ImplicitConstraintSet unknown;
    unknown.eliminated.push_back({"nope", {}});
    CHECK_THROWS_AS(apply_constraints(golden::sdp1raw(), unknown), UnknownVariableError);
}

TEST_CASE("the reduction loop ends at the simplified problems and is idempotent") {
    const std::vector<std::pair<SdpProblem, SdpProblem>> cases = {
        {bell::almost_quantum_pencil(bell::line_one()), golden::sdp1simple()},
        {bell::almost_quantum_pencil(bell::line_two()), golden::sdp2simple()},
        {bell::chsh_toy_pencil(), golden::toy_simple()},
    };
    for (const auto& [raw, simple] : cases) {
        CAPTURE(raw.name);
        const ReductionLog log = reduce(raw);
        CHECK(golden::pencil_difference(log.reduced, simple) == "");
        CHECK_FALSE(log.rounds.empty());
        const ReductionLog again = reduce(log.reduced);
        CHECK(again.eliminated().empty());
        CHECK(same_data(again.reduced, log.reduced));
    }
}

TEST_CASE("affine expressions print readably") {
    AffineExpr e;
    CHECK(e.str() == "0");
    e.constant = QuadExt(Rational(1, 2));
    e.terms = {{"mu", QuadExt(Rational(-1, 3))}, {"a", QuadExt(1)}};
    CHECK(e.str() == "-1/3*mu + a + 1/2");
    CHECK(e.coefficient("a") == QuadExt(1));
    CHECK(e.coefficient("zz").is_zero());
}
