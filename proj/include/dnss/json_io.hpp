#pragma once

// JSON forms of certificates, verdicts, bound reports and descent chains.
// Every number is a decimal string; log2 estimates are the only floats and
// sit under keys ending in "_approx".

#include <optional>
#include <string>
#include <string_view>

#include "dnss/bounds.hpp"
#include "dnss/decide.hpp"
#include "dnss/descent.hpp"

namespace dnss {

std::string certificate_to_json(const Certificate& cert, int indent = 2);
/// Throws CertificateError on schema problems and ParseError on bad
/// polynomial text.
Certificate certificate_from_json(std::string_view text);

std::string tower_to_json(const TowerInt& t);
std::string bound_report_to_json(const BoundReport& rep, int indent = 2);
std::string verdict_to_json(const Verdict& v, int indent = 2);
std::string chain_to_json(const DescentChain& chain, const std::optional<LReconstruction>& rec, int indent = 2);

}  // namespace dnss
