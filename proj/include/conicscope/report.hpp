#pragma once

// JSON and text renderings of reports, certificates and verification results.

#include "conicscope/certify.hpp"
#include "conicscope/facial.hpp"
#include "conicscope/io.hpp"

#include <json.hpp>

#include <string>

namespace conicscope {

inline constexpr const char* kReportVersion = "conicscope.report/1";

nlohmann::json chain_to_json(const CertificateChain& c);
CertificateChain chain_from_json(const nlohmann::json& j, Index d);

nlohmann::json affine_to_json(const AffineCertificated& c);
nlohmann::json affine_to_json(const AffineCertificateq& c);
AffineCertificated affine_from_json(const nlohmann::json& j, Index d);
AffineCertificateq affine_from_json_exact(const nlohmann::json& j, Index d);

nlohmann::json diagnostics_to_json(const Diagnostics& d);
nlohmann::json report_to_json(const FeasibilityReport& r);
nlohmann::json verification_to_json(const VerificationResult& v);

std::string report_to_text(const FeasibilityReport& r);

}  // namespace conicscope
