#include "golden.hpp"

#include <cctype>
#include <stdexcept>

namespace golden {

using strictfeas::ExactMatrix;
using strictfeas::Rational;

namespace {

const QuadExt& alpha() {
    static const QuadExt a = QuadExt(Rational(9, 38), Rational(-1, 38));
    return a;
}

bool is_constant(const Affine& a) {
    for (const auto& [k, v] : a.coef)
        if (!v.is_zero()) return false;
    return true;
}

Affine scaled(Affine a, const QuadExt& s) {
    a.constant *= s;
    for (auto& [k, v] : a.coef) v *= s;
    return a;
}

Affine sum(Affine a, const Affine& b, int sign) {
    a.constant += sign > 0 ? b.constant : -b.constant;
    for (const auto& [k, v] : b.coef) a.coef[k] += sign > 0 ? v : -v;
    return a;
}

class Parser {
public:
    explicit Parser(const std::string& s) : s_(s) {}

    Affine parse() {
        Affine out = expr();
        skip();
        if (pos_ != s_.size()) fail("trailing input");
        return out;
    }

private:
    void skip() {
        while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    }
    bool eat(char c) {
        skip();
        if (pos_ < s_.size() && s_[pos_] == c) {
            ++pos_;
            return true;
        }
        return false;
    }
    [[noreturn]] void fail(const std::string& why) const {
        throw std::invalid_argument("golden parse error in '" + s_ + "' at " + std::to_string(pos_) + ": " + why);
    }

    Affine expr() {
        Affine out;
        if (eat('-'))
            out = scaled(term(), QuadExt(-1));
        else {
            eat('+');
            out = term();
        }
        for (;;) {
            if (eat('+'))
                out = sum(out, term(), 1);
            else if (eat('-'))
                out = sum(out, term(), -1);
            else
                return out;
        }
    }

    Affine term() {
        Affine out = factor();
        for (;;) {
            if (eat('*')) {
                Affine rhs = factor();
                if (is_constant(rhs))
                    out = scaled(out, rhs.constant);
                else if (is_constant(out))
                    out = scaled(rhs, out.constant);
                else
                    fail("product of two non-constant terms");
            } else if (eat('/')) {
                Affine rhs = factor();
                if (!is_constant(rhs) || rhs.constant.is_zero()) fail("division by a non-constant or zero");
                out = scaled(out, rhs.constant.inverse());
            } else {
                return out;
            }
        }
    }

    Affine factor() {
        skip();
        if (eat('(')) {
            Affine inner = expr();
            if (!eat(')')) fail("missing ')'");
            return inner;
        }
        if (eat('-')) return scaled(factor(), QuadExt(-1));
        if (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) {
            long v = 0;
            while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) v = v * 10 + (s_[pos_++] - '0');
            Affine a;
            a.constant = QuadExt(v);
            return a;
        }
        std::string id;
        while (pos_ < s_.size() && (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_'))
            id += s_[pos_++];
        if (id.empty()) fail("expected a number, name or '('");
        Affine a;
        if (id == "alpha")
            a.constant = alpha();
        else if (id == "sqrt5")
            a.constant = QuadExt::sqrt5();
        else
            a.coef[id] = QuadExt(1);
        return a;
    }

    const std::string& s_;
    std::size_t pos_ = 0;
};

}  // namespace

Affine parse_affine(const std::string& text) { return Parser(text).parse(); }

strictfeas::SdpProblem pencil_from_upper(const std::string& name, const std::vector<std::vector<std::string>>& upper,
                                         const std::vector<std::string>& vars,
                                         const std::map<std::string, QuadExt>& objective, const QuadExt& offset) {
    const std::size_t n = upper.size();
    strictfeas::SdpProblem p;
    p.name = name;
    p.pencil = strictfeas::MatrixPencil(n);
    for (const auto& v : vars) {
        p.pencil.add_term(v);
        auto it = objective.find(v);
        p.objective.push_back(it == objective.end() ? QuadExt() : it->second);
    }
    p.objective_offset = offset;
    for (std::size_t i = 0; i < n; ++i) {
        if (upper[i].size() != n - i) throw std::invalid_argument("row " + std::to_string(i + 1) + " has the wrong length");
        for (std::size_t k = 0; k < upper[i].size(); ++k) {
            const std::size_t j = i + k;
            const Affine a = parse_affine(upper[i][k]);
            p.pencil.constant()(i, j) = a.constant;
            p.pencil.constant()(j, i) = a.constant;
            for (const auto& [var, c] : a.coef) {
                if (c.is_zero()) continue;
                const std::size_t t = p.pencil.index_of(var);
                if (t == strictfeas::MatrixPencil::npos) throw std::invalid_argument("unexpected name '" + var + "'");
                p.pencil.terms()[t].matrix(i, j) = c;
                p.pencil.terms()[t].matrix(j, i) = c;
            }
        }
    }
    return p;
}

std::string pencil_difference(const strictfeas::SdpProblem& a, const strictfeas::SdpProblem& b) {
    if (a.pencil.dim() != b.pencil.dim()) return "dimensions differ";
    if (!(a.pencil.constant() == b.pencil.constant())) return "constant matrices differ";
    if (a.num_vars() != b.num_vars())
        return "variable counts differ: " + std::to_string(a.num_vars()) + " vs " + std::to_string(b.num_vars());
    for (const auto& t : a.pencil.terms()) {
        const std::size_t k = b.pencil.index_of(t.name);
        if (k == strictfeas::MatrixPencil::npos) return "variable '" + t.name + "' missing";
        if (!(t.matrix == b.pencil.terms()[k].matrix)) return "matrix of '" + t.name + "' differs";
        if (!(a.objective_of(t.name) == b.objective_of(t.name))) return "objective of '" + t.name + "' differs";
    }
    if (!(a.objective_offset == b.objective_offset)) return "objective offsets differ";
    return "";
}

namespace {

const std::vector<std::string> kAqVars = {"mu", "a01", "b01", "c0_01", "c1_01", "c01_0", "c01_1", "c01_01", "c01_10"};
const std::vector<std::string> kToyVars = {"pA0", "pA1", "a01", "b01", "p00", "p01", "p10", "p11"};

}  // namespace

strictfeas::SdpProblem sdp1raw() {
    return pencil_from_upper(
        "sdp1raw",
        {
            {"1", "1/2", "(4-mu)/6", "1/2", "1/2", "(mu+2)/6", "(mu+2)/6", "1/2", "(1-mu)/6"},
            {"1/2", "a01", "(mu+2)/6", "(mu+2)/6", "(mu+2)/6", "(mu+2)/6", "c01_0", "c01_1"},
            {"(4-mu)/6", "1/2", "(1-mu)/6", "c01_0", "c01_1", "1/2", "(1-mu)/6"},
            {"1/2", "b01", "(mu+2)/6", "c0_01", "1/2", "c1_01"},
            {"1/2", "c0_01", "(mu+2)/6", "c1_01", "(1-mu)/6"},
            {"(mu+2)/6", "c0_01", "c01_0", "c01_01"},
            {"(mu+2)/6", "c01_10", "c01_1"},
            {"1/2", "c1_01"},
            {"(1-mu)/6"},
        },
        kAqVars, {{"mu", QuadExt(1)}});
}

strictfeas::SdpProblem sdp1simple() {
    return pencil_from_upper(
        "sdp1simple",
        {
            {"1", "1/2", "(4-mu)/6", "1/2", "1/2", "(mu+2)/6", "(mu+2)/6", "1/2", "(1-mu)/6"},
            {"1/2", "a01", "(mu+2)/6", "(mu+2)/6", "(mu+2)/6", "(mu+2)/6", "(mu+2)/6", "a01 - (1-mu)/6"},
            {"(4-mu)/6", "1/2", "(1-mu)/6", "(mu+2)/6", "a01 - (1-mu)/6", "1/2", "(1-mu)/6"},
            {"1/2", "b01", "(mu+2)/6", "c0_01", "1/2", "b01"},
            {"1/2", "c0_01", "(mu+2)/6", "b01", "(1-mu)/6"},
            {"(mu+2)/6", "c0_01", "(mu+2)/6", "c0_01"},
            {"(mu+2)/6", "c0_01", "a01 - (1-mu)/6"},
            {"1/2", "b01"},
            {"(1-mu)/6"},
        },
        {"mu", "a01", "b01", "c0_01"}, {{"mu", QuadExt(1)}});
}

strictfeas::SdpProblem sdp2raw() {
    const std::string q = "mu/2 + alpha*(1-mu)";
    const std::string r = "mu/2 + 2*alpha*(1-mu)";
    const std::string h = "mu/2";
    return pencil_from_upper("sdp2raw",
                             {
                                 {"1", q, r, q, r, h, q, q, "0"},
                                 {q, "a01", h, q, h, q, "c01_0", "c01_1"},
                                 {r, q, "0", "c01_0", "c01_1", q, "0"},
                                 {q, "b01", h, "c0_01", q, "c1_01"},
                                 {r, "c0_01", q, "c1_01", "0"},
                                 {h, "c0_01", "c01_0", "c01_01"},
                                 {q, "c01_10", "c01_1"},
                                 {q, "c1_01"},
                                 {"0"},
                             },
                             kAqVars, {{"mu", QuadExt(1)}});
}

strictfeas::SdpProblem sdp2simple() {
    const std::string q = "mu/2 + alpha*(1-mu)";
    const std::string r = "mu/2 + 2*alpha*(1-mu)";
    const std::string h = "mu/2";
    return pencil_from_upper("sdp2simple",
                             {
                                 {"1", q, r, q, r, h, q, q, "0"},
                                 {q, "0", h, q, h, q, h, "0"},
                                 {r, q, "0", h, "0", q, "0"},
                                 {q, "0", h, h, q, "0"},
                                 {r, h, q, "0", "0"},
                                 {h, h, h, "0"},
                                 {q, h, "0"},
                                 {q, "0"},
                                 {"0"},
                             },
                             {"mu"}, {{"mu", QuadExt(1)}});
}

strictfeas::SdpProblem toy_raw() {
    return pencil_from_upper("toy_raw",
                             {
                                 {"1", "pA0", "pA1", "0", "0"},
                                 {"pA0", "a01", "p00", "p01"},
                                 {"pA1", "p10", "p11"},
                                 {"0", "b01"},
                                 {"0"},
                             },
                             kToyVars,
                             {{"pA0", QuadExt(-1)}, {"p00", QuadExt(1)}, {"p01", QuadExt(1)}, {"p10", QuadExt(1)},
                              {"p11", QuadExt(-1)}});
}

strictfeas::SdpProblem toy_simple() {
    return pencil_from_upper("toy_simple",
                             {
                                 {"1", "pA0", "pA1", "0", "0"},
                                 {"pA0", "a01", "0", "0"},
                                 {"pA1", "0", "0"},
                                 {"0", "0"},
                                 {"0"},
                             },
                             {"pA0", "pA1", "a01"}, {{"pA0", QuadExt(-1)}});
}

}  // namespace golden
