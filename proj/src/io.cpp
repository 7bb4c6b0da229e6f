#include "conicscope/io.hpp"

#include "conicscope/corpus.hpp"

#include <fstream>
#include <regex>
#include <sstream>

namespace conicscope {

using nlohmann::json;

namespace {

std::pair<std::size_t, std::size_t> line_col(const std::string& text, std::size_t byte) {
  std::size_t line = 1, col = 1;
  for (std::size_t i = 0; i < std::min(byte, text.size()); ++i) {
    if (text[i] == '\n') {
      ++line;
      col = 1;
    } else {
      ++col;
    }
  }
  return {line, col};
}

bool all_of_value(const json& j, auto&& pred) {
  if (j.is_array()) {
    for (const auto& x : j)
      if (!all_of_value(x, pred)) return false;
    return true;
  }
  return pred(j);
}

Rational scalar_exact(const json& v) {
  if (v.is_number_integer()) return v.is_number_unsigned() ? Rational(v.get<std::uint64_t>()) : Rational(v.get<std::int64_t>());
  if (v.is_string()) return parse_rational(v.get<std::string>());
  if (v.is_number_float())
    throw ParseError("rational input needs integers or \"p/q\" strings, got " + v.dump());
  throw ParseError("matrix entry must be a number or a \"p/q\" string, got " + v.dump());
}

double scalar_float(const json& v) {
  if (v.is_number()) return v.get<double>();
  if (v.is_string()) return parse_rational(v.get<std::string>()).convert_to<double>();
  throw ParseError("matrix entry must be a number or a \"p/q\" string, got " + v.dump());
}

template <typename Scalar>
SymMat<Scalar> read_matrix(const json& j, Index d, auto&& scalar) {
  if (!j.is_array() || static_cast<Index>(j.size()) != d) throw ParseError("matrix must have " + std::to_string(d) + " rows");
  Matrix<Scalar> m(d, d);
  for (Index i = 0; i < d; ++i) {
    const auto& row = j[static_cast<std::size_t>(i)];
    if (!row.is_array() || static_cast<Index>(row.size()) != d)
      throw ParseError("matrix row " + std::to_string(i + 1) + " must have " + std::to_string(d) + " entries");
    for (Index k = 0; k < d; ++k) m(i, k) = scalar(row[static_cast<std::size_t>(k)]);
  }
  for (Index i = 0; i < d; ++i)
    for (Index k = i + 1; k < d; ++k)
      if (m(i, k) != m(k, i)) throw ParseError("matrix is not symmetric");
  return SymMat<Scalar>::fromUpper(m);
}

template <typename Scalar>
ParsedProblem read_json_problem(const json& j, Index d, auto&& scalar) {
  if (j.contains("constraints")) {
    std::vector<LinearConstraint<Scalar>> cons;
    for (const auto& c : j.at("constraints")) {
      if (!c.contains("M") || !c.contains("b")) throw ParseError("constraint needs \"M\" and \"b\"");
      cons.push_back({read_matrix<Scalar>(c.at("M"), d, scalar), Scalar(scalar(c.at("b")))});
    }
    std::optional<SymMat<Scalar>> obj;
    if (j.contains("C")) obj = read_matrix<Scalar>(j.at("C"), d, scalar);
    return ImplicitSdp<Scalar>(d, std::move(cons), std::move(obj));
  }
  if (!j.contains("A0")) throw ParseError("missing \"A0\"");
  std::vector<SymMat<Scalar>> gens;
  if (j.contains("A")) {
    if (!j.at("A").is_array()) throw ParseError("\"A\" must be a list of matrices");
    for (const auto& m : j.at("A")) gens.push_back(read_matrix<Scalar>(m, d, scalar));
  }
  return Pencil<Scalar>(read_matrix<Scalar>(j.at("A0"), d, scalar), std::move(gens));
}

ParsedProblem parse_json(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    const auto [line, col] = line_col(text, e.byte == 0 ? 0 : e.byte - 1);
    std::string msg = e.what();
    if (const auto p = msg.find("syntax error"); p != std::string::npos) msg = msg.substr(p);
    throw ParseError(msg, line, col);
  }
  if (!j.is_object()) throw ParseError("top level must be an object");
  if (!j.contains("d") || !j.at("d").is_number_integer()) throw ParseError("missing integer \"d\"");
  const Index d = j.at("d").get<Index>();
  if (d < 1) throw ParseError("\"d\" must be positive");
  std::string arith = "f64";
  if (j.contains("arith")) arith = j.at("arith").get<std::string>();
  if (!j.contains("arith")) {
    // Integer or "p/q" data without a tag is read exactly.
    const bool exact = all_of_value(j.contains("A0") ? j.at("A0") : json::array(), [](const json& v) {
      return v.is_number_integer() || v.is_string();
    });
    if (exact && j.contains("A0")) {
      bool gens_exact = true;
      if (j.contains("A"))
        gens_exact = all_of_value(j.at("A"), [](const json& v) { return v.is_number_integer() || v.is_string(); });
      if (gens_exact) arith = "rational";
    }
  }
  if (arith == "rational") return read_json_problem<Rational>(j, d, scalar_exact);
  if (arith == "f64") return read_json_problem<double>(j, d, scalar_float);
  throw ParseError("\"arith\" must be \"f64\" or \"rational\"");
}

ParsedProblem parse_sdpa(const std::string& text) {
  struct Token {
    std::string s;
    std::size_t line, col;
  };
  std::vector<Token> toks;
  std::istringstream in(text);
  std::string line;
  std::size_t ln = 0;
  bool header = true;
  while (std::getline(in, line)) {
    ++ln;
    if (header && (line.starts_with("\"") || line.starts_with("*"))) continue;
    header = false;
    std::size_t i = 0;
    while (i < line.size()) {
      const char c = line[i];
      if (std::isspace(static_cast<unsigned char>(c)) || c == ',' || c == '{' || c == '}' || c == '(' || c == ')') {
        ++i;
        continue;
      }
      const std::size_t start = i;
      while (i < line.size() && !std::isspace(static_cast<unsigned char>(line[i])) && line[i] != ',' &&
             line[i] != '{' && line[i] != '}' && line[i] != '(' && line[i] != ')')
        ++i;
      toks.push_back({line.substr(start, i - start), ln, start + 1});
    }
  }
  std::size_t pos = 0;
  auto next = [&](const char* what) -> const Token& {
    if (pos >= toks.size()) throw ParseError(std::string("unexpected end of input, expected ") + what, ln, 1);
    return toks[pos++];
  };
  auto integer = [&](const char* what) {
    const Token& t = next(what);
    try {
      std::size_t used = 0;
      const long long v = std::stoll(t.s, &used);
      if (used != t.s.size()) throw std::invalid_argument(t.s);
      return v;
    } catch (const std::exception&) {
      throw ParseError(std::string("expected integer ") + what + ", got '" + t.s + "'", t.line, t.col);
    }
  };
  auto value = [&](const char* what) {
    const Token& t = next(what);
    try {
      return parse_rational(t.s);
    } catch (const std::exception&) {
      throw ParseError(std::string("expected number ") + what + ", got '" + t.s + "'", t.line, t.col);
    }
  };
  const long long m = integer("(number of constraints)");
  const long long nblocks = integer("(number of blocks)");
  if (nblocks != 1) throw ParseError("only single-block SDPA files are supported (got " + std::to_string(nblocks) + ")",
                                     toks[pos - 1].line, toks[pos - 1].col);
  long long d = integer("(block size)");
  if (d == 0) throw ParseError("block size must be nonzero", toks[pos - 1].line, toks[pos - 1].col);
  if (d < 0) throw ParseError("diagonal (LP) blocks are not supported", toks[pos - 1].line, toks[pos - 1].col);
  VectorXq c(m);
  for (long long k = 0; k < m; ++k) c(k) = value("(right-hand side)");
  std::vector<MatrixXq> mats(static_cast<std::size_t>(m + 1), MatrixXq::Zero(d, d));
  while (pos < toks.size()) {
    const Token& first = toks[pos];
    const long long k = integer("(matrix index)");
    const long long b = integer("(block index)");
    const long long i = integer("(row)");
    const long long jj = integer("(column)");
    const Rational v = value("(entry)");
    if (k < 0 || k > m) throw ParseError("matrix index out of range", first.line, first.col);
    if (b != 1) throw ParseError("block index must be 1", first.line, first.col);
    if (i < 1 || jj < 1 || i > d || jj > d) throw ParseError("entry index out of range", first.line, first.col);
    auto& mm = mats[static_cast<std::size_t>(k)];
    mm(i - 1, jj - 1) = mm(jj - 1, i - 1) = v;
  }
  std::vector<LinearConstraint<Rational>> cons;
  for (long long k = 1; k <= m; ++k) cons.push_back({SymMatq::fromUpper(mats[static_cast<std::size_t>(k)]), c(k - 1)});
  return ImplicitSdp<Rational>(d, std::move(cons), SymMatq::fromUpper(mats[0]));
}

std::string slurp(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw ParseError("cannot open " + path);
  std::stringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

}  // namespace

Rational parse_rational(const std::string& s) {
  static const std::regex frac(R"(\s*([+-]?\d+)\s*/\s*(\d+)\s*)");
  static const std::regex dec(R"(\s*([+-]?)(\d*)(?:\.(\d*))?(?:[eE]([+-]?\d+))?\s*)");
  std::smatch mt;
  if (std::regex_match(s, mt, frac)) {
    const boost::multiprecision::mpz_int p(mt[1].str()), q(mt[2].str());
    if (q == 0) throw std::invalid_argument("zero denominator in '" + s + "'");
    return Rational(p, q);
  }
  if (std::regex_match(s, mt, dec) && (mt[2].length() + mt[3].length()) > 0) {
    const std::string digits = mt[2].str() + mt[3].str();
    boost::multiprecision::mpz_int num(digits.empty() ? "0" : digits);
    long long exp = mt[4].matched ? std::stoll(mt[4].str()) : 0;
    exp -= static_cast<long long>(mt[3].length());
    Rational r(num);
    const Rational ten(10);
    if (std::llabs(exp) > 4000) throw std::invalid_argument("exponent out of range in '" + s + "'");
    for (long long e = 0; e < std::llabs(exp); ++e) r = exp > 0 ? Rational(r * ten) : Rational(r / ten);
    return mt[1].str() == "-" ? Rational(-r) : r;
  }
  throw std::invalid_argument("not a number: '" + s + "'");
}

std::string format_rational(const Rational& q) { return q.str(); }

ParsedProblem parse_problem(const std::string& text, InputFormat format) {
  return format == InputFormat::Sdpa ? parse_sdpa(text) : parse_json(text);
}

LoadedProblem to_parametric(const ParsedProblem& p, bool homogeneous) {
  LoadedProblem out;
  out.homogeneous = homogeneous;
  std::visit(
      [&](const auto& v) {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, Pencild>) {
          out.pencil = v;
        } else if constexpr (std::is_same_v<T, Pencilq>) {
          out.exact = v;
          out.pencil = v.template cast<double>();
        } else if constexpr (std::is_same_v<T, ImplicitSdp<double>>) {
          out.pencil = implicit_to_parametric(v);
        } else {
          out.exact = implicit_to_parametric(v);
          out.pencil = out.exact->template cast<double>();
        }
      },
      p);
  return out;
}

LoadedProblem load_input(const std::string& address) {
  if (address.starts_with("corpus:")) {
    std::string name = address.substr(7);
    Index d = 0;
    if (const auto colon = name.find(':'); colon != std::string::npos) {
      try {
        d = std::stol(name.substr(colon + 1));
      } catch (const std::exception&) {
        throw ParseError("bad corpus parameter in '" + address + "'");
      }
      name = name.substr(0, colon);
    }
    CorpusEntry e = corpus_get(name, d);
    LoadedProblem out;
    out.exact = e.pencil;
    out.pencil = e.pencil.cast<double>();
    out.source = address;
    return out;
  }
  const std::string text = slurp(address);
  const bool sdpa = address.ends_with(".dat-s") || address.ends_with(".sdpa");
  LoadedProblem out;
  if (sdpa) {
    out = to_parametric(parse_problem(text, InputFormat::Sdpa));
  } else {
    const ParsedProblem p = parse_problem(text, InputFormat::Json);
    bool hom = false;
    try {
      const json j = json::parse(text);
      hom = j.value("homogeneous", false);
    } catch (const std::exception&) {
    }
    out = to_parametric(p, hom);
  }
  out.source = address;
  return out;
}

json matrix_to_json(const SymMatd& m) {
  json rows = json::array();
  for (Index i = 0; i < m.dim(); ++i) {
    json r = json::array();
    for (Index j = 0; j < m.dim(); ++j) r.push_back(m(i, j));
    rows.push_back(r);
  }
  return rows;
}

json matrix_to_json(const SymMatq& m) {
  json rows = json::array();
  for (Index i = 0; i < m.dim(); ++i) {
    json r = json::array();
    for (Index j = 0; j < m.dim(); ++j) r.push_back(format_rational(m(i, j)));
    rows.push_back(r);
  }
  return rows;
}

SymMatd matrix_from_json(const json& j, Index d) { return read_matrix<double>(j, d, scalar_float); }
SymMatq matrix_from_json_exact(const json& j, Index d) { return read_matrix<Rational>(j, d, scalar_exact); }

namespace {

template <typename Scalar>
json pencil_json(const Pencil<Scalar>& p, bool homogeneous, const char* arith) {
  json j;
  j["d"] = p.dim();
  j["arith"] = arith;
  j["A0"] = matrix_to_json(p.constant());
  j["A"] = json::array();
  for (const auto& g : p.generators()) j["A"].push_back(matrix_to_json(g));
  if (homogeneous) j["homogeneous"] = true;
  return j;
}

}  // namespace

json pencil_to_json(const Pencild& p, bool homogeneous) { return pencil_json(p, homogeneous, "f64"); }
json pencil_to_json(const Pencilq& p, bool homogeneous) { return pencil_json(p, homogeneous, "rational"); }

json implicit_to_json(const ImplicitSdp<Rational>& p) {
  json j;
  j["d"] = p.dim();
  j["arith"] = "rational";
  j["constraints"] = json::array();
  for (const auto& c : p.constraints()) j["constraints"].push_back({{"M", matrix_to_json(c.m)}, {"b", format_rational(c.b)}});
  return j;
}

}  // namespace conicscope
