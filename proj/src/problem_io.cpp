#include "strictfeas/problem_io.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

namespace strictfeas {

using nlohmann::json;

ProblemParseError::ProblemParseError(const std::string& what, std::size_t line, std::size_t column,
                                     std::string where)
    : std::runtime_error(what), line_(line), column_(column), where_(std::move(where)) {}

namespace {

[[noreturn]] void schema_error(const std::string& where, const std::string& what) {
    throw ProblemParseError(where + ": " + what, 0, 0, where);
}

std::pair<std::size_t, std::size_t> line_column(const std::string& text, std::size_t byte) {
    std::size_t line = 1, column = 1;
    for (std::size_t i = 0; i < byte && i < text.size(); ++i) {
        if (text[i] == '\n') {
            ++line;
            column = 1;
        } else {
            ++column;
        }
    }
    return {line, column};
}

json entries_to_json(const ExactMatrix& m, ScalarKind kind) {
    json out = json::array();
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = i; j < m.cols(); ++j)
            if (!m(i, j).is_zero()) out.push_back(json::array({i + 1, j + 1, format_value(m(i, j), kind)}));
    return out;
}

QuadExt value_from_json(const json& v, ScalarKind kind, const std::string& where) {
    try {
        if (v.is_string()) return parse_value(v.get<std::string>(), kind);
        if (v.is_number_integer()) return QuadExt(Rational(v.get<long>()));
        if (v.is_number() && kind == ScalarKind::Double) return QuadExt(Rational::from_double(v.get<double>()));
    } catch (const std::exception& e) {
        schema_error(where, e.what());
    }
    schema_error(where, "expected a value string");
}

void entries_from_json(const json& arr, ExactMatrix& m, ScalarKind kind, const std::string& where) {
    if (!arr.is_array()) schema_error(where, "expected an array of [i, j, value] triples");
    const std::size_t n = m.rows();
    for (std::size_t k = 0; k < arr.size(); ++k) {
        const std::string at = where + "/" + std::to_string(k);
        const json& e = arr[k];
        if (!e.is_array() || e.size() != 3 || !e[0].is_number_integer() || !e[1].is_number_integer())
            schema_error(at, "expected [i, j, value]");
        const long i = e[0].get<long>();
        const long j = e[1].get<long>();
        if (i < 1 || j < 1 || static_cast<std::size_t>(i) > n || static_cast<std::size_t>(j) > n)
            schema_error(at, "index out of range 1.." + std::to_string(n));
        if (i > j) schema_error(at, "entries must be in the upper triangle (i <= j)");
        const QuadExt v = value_from_json(e[2], kind, at + "/2");
        m(i - 1, j - 1) = v;
        m(j - 1, i - 1) = v;
    }
}

}  // namespace

std::string format_value(const QuadExt& v, ScalarKind kind) {
    if (kind == ScalarKind::Exact) return v.str();
    const double d = v.to_double();
    char buf[64];
    auto res = std::to_chars(buf, buf + sizeof buf, d);
    return std::string(buf, res.ptr);
}

QuadExt parse_value(const std::string& text, ScalarKind kind) {
    if (kind == ScalarKind::Exact) return QuadExt::parse(text);
    double d = 0;
    auto res = std::from_chars(text.data(), text.data() + text.size(), d);
    if (res.ec != std::errc() || res.ptr != text.data() + text.size())
        throw std::invalid_argument("malformed decimal value '" + text + "'");
    if (!std::isfinite(d)) throw std::invalid_argument("non-finite value '" + text + "'");
    return QuadExt(Rational::from_double(d));
}

json problem_to_json(const SdpProblem& prob) {
    json j;
    j["name"] = prob.name;
    if (!prob.provenance.empty()) j["provenance"] = prob.provenance;
    if (prob.form == ProblemForm::PrimalForm) j["form"] = "primal";
    j["n"] = prob.pencil.dim();
    j["scalar"] = prob.scalar == ScalarKind::Exact ? "exact" : "double";
    j["F0"] = entries_to_json(prob.pencil.constant(), prob.scalar);
    json vars = json::array();
    for (std::size_t i = 0; i < prob.num_vars(); ++i) {
        const auto& t = prob.pencil.terms()[i];
        vars.push_back({{"name", t.name},
                        {"b", format_value(prob.objective[i], prob.scalar)},
                        {"F", entries_to_json(t.matrix, prob.scalar)}});
    }
    j["vars"] = std::move(vars);
    if (!prob.objective_offset.is_zero()) j["offset"] = format_value(prob.objective_offset, prob.scalar);
    return j;
}

SdpProblem problem_from_json(const json& j) {
    if (!j.is_object()) schema_error("", "top level must be an object");
    SdpProblem prob;
    if (j.contains("name")) {
        if (!j["name"].is_string()) schema_error("/name", "expected a string");
        prob.name = j["name"].get<std::string>();
    }
    if (j.contains("provenance") && j["provenance"].is_string()) prob.provenance = j["provenance"].get<std::string>();
    if (j.contains("form")) {
        const json& f = j["form"];
        if (f == "dual")
            prob.form = ProblemForm::DualForm;
        else if (f == "primal")
            prob.form = ProblemForm::PrimalForm;
        else
            schema_error("/form", "expected \"dual\" or \"primal\"");
    }
    if (!j.contains("n") || !j["n"].is_number_integer() || j["n"].get<long>() < 1)
        schema_error("/n", "expected a positive integer");
    const auto n = static_cast<std::size_t>(j["n"].get<long>());
    if (!j.contains("scalar")) schema_error("/scalar", "missing");
    if (j["scalar"] == "exact")
        prob.scalar = ScalarKind::Exact;
    else if (j["scalar"] == "double")
        prob.scalar = ScalarKind::Double;
    else
        schema_error("/scalar", "expected \"double\" or \"exact\"");

    prob.pencil = MatrixPencil(n);
    if (!j.contains("F0")) schema_error("/F0", "missing");
    entries_from_json(j["F0"], prob.pencil.constant(), prob.scalar, "/F0");
    if (!j.contains("vars") || !j["vars"].is_array()) schema_error("/vars", "expected an array");
    std::set<std::string> seen;
    for (std::size_t k = 0; k < j["vars"].size(); ++k) {
        const std::string at = "/vars/" + std::to_string(k);
        const json& v = j["vars"][k];
        if (!v.is_object() || !v.contains("name") || !v["name"].is_string())
            schema_error(at + "/name", "expected a string");
        const std::string name = v["name"].get<std::string>();
        if (name.empty()) schema_error(at + "/name", "empty variable name");
        if (!seen.insert(name).second) schema_error(at + "/name", "duplicate variable '" + name + "'");
        QuadExt b;
        if (v.contains("b")) b = value_from_json(v["b"], prob.scalar, at + "/b");
        auto& term = prob.pencil.add_term(name);
        if (v.contains("F")) entries_from_json(v["F"], term.matrix, prob.scalar, at + "/F");
        prob.objective.push_back(b);
    }
    if (j.contains("offset")) prob.objective_offset = value_from_json(j["offset"], prob.scalar, "/offset");
    return prob;
}

SdpProblem parse_problem(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::parse_error& e) {
        const auto [line, column] = line_column(text, e.byte == 0 ? 0 : e.byte - 1);
        // Drop the library's own "[json.exception...] parse error at ...: " prefix.
        std::string detail = e.what();
        if (const auto at = detail.find(", column "); at != std::string::npos)
            if (const auto colon = detail.find(": ", at); colon != std::string::npos) detail = detail.substr(colon + 2);
        throw ProblemParseError("syntax error at line " + std::to_string(line) + ", column " +
                                    std::to_string(column) + ": " + detail,
                                line, column, "");
    }
    return problem_from_json(j);
}

std::string serialize_problem(const SdpProblem& prob) { return problem_to_json(prob).dump(2) + "\n"; }

SdpProblem load_problem(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open '" + path.string() + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_problem(ss.str());
}

void store_problem(const SdpProblem& prob, const std::filesystem::path& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write '" + path.string() + "'");
    out << serialize_problem(prob);
    if (!out) throw std::runtime_error("write failed for '" + path.string() + "'");
}

}  // namespace strictfeas
