#pragma once

// JSON pencil/implicit schema and the single-block SDPA subset.

#include "conicscope/model.hpp"

#include <json.hpp>

#include <optional>
#include <stdexcept>
#include <string>
#include <variant>

namespace conicscope {

class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& msg, std::size_t line = 0, std::size_t column = 0)
      : std::runtime_error(line ? "line " + std::to_string(line) + ", column " + std::to_string(column) + ": " + msg
                                : msg),
        line_(line),
        column_(column) {}
  std::size_t line() const { return line_; }
  std::size_t column() const { return column_; }

 private:
  std::size_t line_, column_;
};

enum class InputFormat { Json, Sdpa };

using ParsedProblem = std::variant<Pencild, Pencilq, ImplicitSdp<double>, ImplicitSdp<Rational>>;

/// Parses text in the given format. Rational JSON and SDPA input parse exactly.
ParsedProblem parse_problem(const std::string& text, InputFormat format);

/// Exact value of "p/q", an integer, or a decimal literal such as "-1.25e-3".
Rational parse_rational(const std::string& s);
std::string format_rational(const Rational& q);

/// A problem in parametric form, ready for classification.
struct LoadedProblem {
  Pencild pencil;
  std::optional<Pencilq> exact;  // rational-valued input
  bool homogeneous = false;
  std::string source;
};

/// Implicit forms are converted with implicit_to_parametric.
LoadedProblem to_parametric(const ParsedProblem& p, bool homogeneous = false);

/// "corpus:NAME", "corpus:longest_chain:D", or a file path (".dat-s" and
/// ".sdpa" are read as SDPA, anything else as JSON).
LoadedProblem load_input(const std::string& address);

nlohmann::json matrix_to_json(const SymMatd& m);
nlohmann::json matrix_to_json(const SymMatq& m);
SymMatd matrix_from_json(const nlohmann::json& j, Index d);
SymMatq matrix_from_json_exact(const nlohmann::json& j, Index d);

nlohmann::json pencil_to_json(const Pencild& p, bool homogeneous = false);
nlohmann::json pencil_to_json(const Pencilq& p, bool homogeneous = false);
nlohmann::json implicit_to_json(const ImplicitSdp<Rational>& p);

}  // namespace conicscope
