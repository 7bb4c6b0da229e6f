#include "conicscope/report.hpp"

#include <sstream>

namespace conicscope {

using nlohmann::json;

json chain_to_json(const CertificateChain& c) {
  json j;
  j["kind"] = "chain";
  j["length"] = c.length();
  j["provenance"] = "facial reduction on the product embedding Sym^d x R; elements are cumulative functionals (C_i, c_i)";
  j["links"] = json::array();
  for (const auto& l : c.links) j["links"].push_back({{"C", matrix_to_json(l.c_mat)}, {"c", l.c}});
  return j;
}

CertificateChain chain_from_json(const json& j, Index d) {
  CertificateChain c;
  const json& links = j.contains("links") ? j.at("links") : j;
  if (!links.is_array()) throw ParseError("chain must be a list of {\"C\", \"c\"} links");
  for (const auto& l : links) {
    if (!l.contains("C") || !l.contains("c")) throw ParseError("chain link needs \"C\" and \"c\"");
    c.links.push_back({matrix_from_json(l.at("C"), d), l.at("c").is_string()
                                                          ? parse_rational(l.at("c").get<std::string>()).convert_to<double>()
                                                          : l.at("c").get<double>()});
  }
  return c;
}

json affine_to_json(const AffineCertificated& c) {
  return {{"kind", "affine"},
          {"arith", "f64"},
          {"C", matrix_to_json(c.c)},
          {"value", c.value},
          {"margin", c.margin},
          {"provenance", "strong separation SDP: C >= 0, <C, A_i> = 0, <C, A0> = -1, trace bounded by rho"}};
}

json affine_to_json(const AffineCertificateq& c) {
  return {{"kind", "affine"},
          {"arith", "rational"},
          {"C", matrix_to_json(c.c)},
          {"value", format_rational(c.value)},
          {"margin", format_rational(c.margin)},
          {"provenance", "continued-fraction rounding in the exact null space of the generators"}};
}

AffineCertificated affine_from_json(const json& j, Index d) {
  if (!j.contains("C")) throw ParseError("affine certificate needs \"C\"");
  AffineCertificated c;
  c.c = matrix_from_json(j.at("C"), d);
  return c;
}

AffineCertificateq affine_from_json_exact(const json& j, Index d) {
  if (!j.contains("C")) throw ParseError("affine certificate needs \"C\"");
  AffineCertificateq c;
  c.c = matrix_from_json_exact(j.at("C"), d);
  return c;
}

json diagnostics_to_json(const Diagnostics& d) {
  json j;
  j["tol"] = d.tol;
  j["rho"] = d.rho;
  j["iterations"] = d.iterations;
  j["marker"] = d.marker;
  j["witness_min_eig"] = d.witness_min_eig;
  j["separation_value"] = d.separation_value;
  j["separation_trouble"] = d.separation_trouble;
  j["lift_agrees"] = d.lift_agrees ? json(*d.lift_agrees) : json(nullptr);
  j["steps"] = json::array();
  for (const auto& s : d.steps)
    j["steps"].push_back({{"outcome", to_string(s.kind)},
                          {"w_dim", s.w_dim},
                          {"face_rank", s.face_rank},
                          {"lambda", s.lambda},
                          {"residual", s.residual},
                          {"iterations", s.iterations}});
  j["notes"] = d.notes;
  return j;
}

json report_to_json(const FeasibilityReport& r) {
  json j;
  j["version"] = kReportVersion;
  j["type"] = to_string(r.type);
  j["stable"] = r.stable;
  if (r.witness) {
    j["witness"] = std::vector<double>(r.witness->data(), r.witness->data() + r.witness->size());
    j["witness_provenance"] = "relative-interior point of the minimal face of the homogenized cone, rescaled to marker 1";
  } else {
    j["witness"] = nullptr;
  }
  j["chain"] = r.chain ? chain_to_json(*r.chain) : json(nullptr);
  j["affine_certificate"] = r.affine_cert ? affine_to_json(*r.affine_cert) : json(nullptr);
  j["diagnostics"] = diagnostics_to_json(r.diagnostics);
  return j;
}

json verification_to_json(const VerificationResult& v) {
  return {{"version", kReportVersion},
          {"valid", v.valid},
          {"failed_check", to_string(v.failed_check)},
          {"index", v.index},
          {"message", v.message},
          {"residuals", v.residuals}};
}

std::string report_to_text(const FeasibilityReport& r) {
  std::ostringstream os;
  os << "type: " << to_string(r.type) << (r.stable ? " (stable)" : "") << "\n";
  if (r.witness) {
    os << "witness:";
    for (Index i = 0; i < r.witness->size(); ++i) os << " " << (*r.witness)(i);
    os << "\n";
  }
  if (r.chain) os << "certificate chain length: " << r.chain->length() << "\n";
  if (r.affine_cert) os << "affine certificate: <C, A0> = " << r.affine_cert->value << "\n";
  for (const auto& n : r.diagnostics.notes) os << "note: " << n << "\n";
  return os.str();
}

}  // namespace conicscope
