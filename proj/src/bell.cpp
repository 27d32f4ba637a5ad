#include "strictfeas/bell.hpp"

#include <algorithm>
#include <map>

namespace strictfeas::bell {

namespace {

QuadExt q(long num, long den = 1) { return QuadExt(Rational(num, den)); }

std::string reduce_projectors(const std::string& word) {
    std::string out;
    for (char c : word)
        if (out.empty() || out.back() != c) out.push_back(c);
    return out;
}

std::string reversed(std::string s) {
    std::reverse(s.begin(), s.end());
    return s;
}

}  // namespace

QuadExt CollinsGisinTable::full(int a, int b, int x, int y) const {
    // P(0,0|x,y) = p(x,y); the rest follows from the marginals.
    const QuadExt& joint = p(x, y);
    if (a == 0 && b == 0) return joint;
    if (a == 0 && b == 1) return p_a(x) - joint;
    if (a == 1 && b == 0) return p_b(y) - joint;
    return QuadExt(1) - p_a(x) - p_b(y) + joint;
}

BuiltinPoints builtin_points() {
    const QuadExt alpha(Rational(9, 38), Rational(-1, 38));
    BuiltinPoints pts;
    pts.alpha = alpha;
    pts.pr_box = CollinsGisinTable::from_rows({{{q(1), q(1, 2), q(1, 2)},  //
                                                 {q(1, 2), q(1, 2), q(1, 2)},
                                                 {q(1, 2), q(1, 2), q(0)}}});
    pts.void_point = CollinsGisinTable::from_rows({{{q(1), q(1, 2), q(1, 2)},  //
                                                     {q(1, 2), q(1, 3), q(1, 3)},
                                                     {q(2, 3), q(1, 2), q(1, 6)}}});
    pts.hardy_point = CollinsGisinTable::from_rows({{{q(1), alpha, alpha * 2},  //
                                                      {alpha, q(0), alpha},
                                                      {alpha * 2, alpha, q(0)}}});
    return pts;
}

BehaviorLine line_one() {
    const auto pts = builtin_points();
    return {pts.pr_box, pts.void_point, "l1"};
}

BehaviorLine line_two() {
    const auto pts = builtin_points();
    return {pts.pr_box, pts.hardy_point, "l2"};
}

CollinsGisinTable line_behavior(const BehaviorLine& line, const QuadExt& mu) {
    if (mu.sign() < 0 || (mu - QuadExt(1)).sign() > 0)
        throw ParameterOutOfRangeError("line parameter " + mu.str() + " outside [0, 1]");
    CollinsGisinTable out;
    const QuadExt rest = QuadExt(1) - mu;
    for (std::size_t i = 0; i < 3; ++i)
        for (std::size_t j = 0; j < 3; ++j)
            out.entries[i][j] = mu * line.endpoint_p.entries[i][j] + rest * line.endpoint_q.entries[i][j];
    return out;
}

std::string MomentLabel::variable_name() const {
    if (bob.empty()) return "a" + alice;
    if (alice.empty()) return "b" + bob;
    return "c" + alice + "_" + bob;
}

std::string MomentLabel::str() const {
    if (alice.empty() && bob.empty()) return "1";
    std::string out;
    for (char c : alice) out += std::string("A") + c;
    for (char c : bob) out += std::string("B") + c;
    return out;
}

const std::vector<MomentLabel>& almost_quantum_basis() {
    static const std::vector<MomentLabel> basis = {
        {"", ""},  {"0", ""},  {"1", ""},  {"", "0"},  {"", "1"},
        {"0", "0"}, {"0", "1"}, {"1", "0"}, {"1", "1"},
    };
    return basis;
}

const std::vector<MomentLabel>& level_one_basis() {
    static const std::vector<MomentLabel> basis = {{"", ""}, {"0", ""}, {"1", ""}, {"", "0"}, {"", "1"}};
    return basis;
}

MomentLabel moment_of(const MomentLabel& u, const MomentLabel& v) {
    MomentLabel w{reduce_projectors(reversed(u.alice) + v.alice), reduce_projectors(reversed(u.bob) + v.bob)};
    MomentLabel adjoint{reversed(w.alice), reversed(w.bob)};
    return std::min(w, adjoint);
}

const std::vector<std::string>& free_moment_order() {
    static const std::vector<std::string> order = {"a01",   "b01",   "c0_01",  "c1_01",
                                                   "c01_0", "c01_1", "c01_01", "c01_10"};
    return order;
}

namespace {

// Value of a probability-type moment in a Collins-Gisin table.
QuadExt probability(const CollinsGisinTable& t, const MomentLabel& w) {
    if (w.alice.empty() && w.bob.empty()) return t.entries[0][0];
    if (w.bob.empty()) return t.p_a(w.alice[0] - '0');
    if (w.alice.empty()) return t.p_b(w.bob[0] - '0');
    return t.p(w.alice[0] - '0', w.bob[0] - '0');
}

std::size_t order_rank(const std::string& name) {
    const auto& order = free_moment_order();
    const auto it = std::find(order.begin(), order.end(), name);
    return it == order.end() ? order.size() : static_cast<std::size_t>(it - order.begin());
}

}  // namespace

SdpProblem almost_quantum_pencil(const BehaviorLine& line) {
    const auto& basis = almost_quantum_basis();
    const std::size_t n = basis.size();

    std::map<std::string, MomentLabel> free;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i; j < n; ++j) {
            const MomentLabel w = moment_of(basis[i], basis[j]);
            if (!w.is_probability()) free.emplace(w.variable_name(), w);
        }
    std::vector<std::string> names;
    for (const auto& [name, label] : free) names.push_back(name);
    std::stable_sort(names.begin(), names.end(), [](const std::string& a, const std::string& b) {
        const auto ra = order_rank(a), rb = order_rank(b);
        return ra != rb ? ra < rb : a < b;
    });

    SdpProblem prob;
    prob.name = "almost-quantum-" + line.name;
    prob.provenance = "maximize mu such that " + line.name + "(mu) has a PSD 9x9 Almost Quantum moment matrix";
    prob.scalar = ScalarKind::Exact;
    prob.pencil = MatrixPencil(n);
    prob.pencil.add_term(kObjectiveVariable);
    prob.objective.push_back(QuadExt(1));
    for (const auto& name : names) {
        prob.pencil.add_term(name);
        prob.objective.push_back(QuadExt());
    }

    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i; j < n; ++j) {
            const MomentLabel w = moment_of(basis[i], basis[j]);
            if (w.is_probability()) {
                const QuadExt at_q = probability(line.endpoint_q, w);
                const QuadExt slope = probability(line.endpoint_p, w) - at_q;
                prob.pencil.set_constant(i, j, at_q);
                if (!slope.is_zero()) prob.pencil.set_term(kObjectiveVariable, i, j, slope);
            } else {
                prob.pencil.set_term(w.variable_name(), i, j, QuadExt(1));
            }
        }
    return prob;
}

SdpProblem chsh_toy_pencil() {
    const auto& basis = level_one_basis();
    const std::size_t n = basis.size();
    SdpProblem prob;
    prob.name = "chsh-toy";
    prob.provenance = "CHSH over NPA level 1 with p_B(0) = p_B(1) = 0";
    prob.scalar = ScalarKind::Exact;
    prob.pencil = MatrixPencil(n);
    const std::vector<std::pair<std::string, long>> vars = {{"pA0", -1}, {"pA1", 0}, {"a01", 0}, {"b01", 0},
                                                            {"p00", 1},  {"p01", 1}, {"p10", 1}, {"p11", -1}};
    for (const auto& [name, coef] : vars) {
        prob.pencil.add_term(name);
        prob.objective.push_back(QuadExt(coef));
    }
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i; j < n; ++j) {
            const MomentLabel w = moment_of(basis[i], basis[j]);
            if (w.alice.empty() && w.bob.empty()) {
                prob.pencil.set_constant(i, j, QuadExt(1));
            } else if (w.alice.empty() && w.bob.size() == 1) {
                // p_B(y) = 0 is imposed.
            } else if (w.bob.empty() && w.alice.size() == 1) {
                prob.pencil.set_term("pA" + w.alice, i, j, QuadExt(1));
            } else if (w.is_probability()) {
                prob.pencil.set_term("p" + w.alice + w.bob, i, j, QuadExt(1));
            } else {
                prob.pencil.set_term(w.variable_name(), i, j, QuadExt(1));
            }
        }
    return prob;
}

}  // namespace strictfeas::bell
