#pragma once

#include <filesystem>
#include <stdexcept>
#include <string>

#include <nlohmann/json.hpp>

#include "strictfeas/model.hpp"

namespace strictfeas {

/// Syntax or schema error in a problem file. line/column are 1-based and 0 when
/// the error is semantic (then `where` holds a JSON pointer to the bad value).
class ProblemParseError : public std::runtime_error {
public:
    ProblemParseError(const std::string& what, std::size_t line, std::size_t column, std::string where);
    std::size_t line() const { return line_; }
    std::size_t column() const { return column_; }
    const std::string& where() const { return where_; }

private:
    std::size_t line_;
    std::size_t column_;
    std::string where_;
};

nlohmann::json problem_to_json(const SdpProblem& prob);
SdpProblem problem_from_json(const nlohmann::json& j);

SdpProblem parse_problem(const std::string& text);
std::string serialize_problem(const SdpProblem& prob);

SdpProblem load_problem(const std::filesystem::path& path);
void store_problem(const SdpProblem& prob, const std::filesystem::path& path);

/// Value strings: exact grammar for ScalarKind::Exact, shortest round-trip decimal for Double.
std::string format_value(const QuadExt& v, ScalarKind kind);
QuadExt parse_value(const std::string& text, ScalarKind kind);

}  // namespace strictfeas
