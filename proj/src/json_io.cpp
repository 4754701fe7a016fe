#include "dnss/json_io.hpp"

#include <charconv>
#include <cmath>

#include "dnss/text.hpp"
#include "json_util.hpp"

namespace dnss {

namespace json {

namespace {

// Values longer than this are reported only through the rendering.
constexpr std::size_t kMaxDecimalDigits = 4096;

std::uint64_t unsigned_field(const Json& obj, const char* key) {
  if (!obj.contains(key)) throw CertificateError(std::string("certificate: missing \"") + key + "\"");
  const Json& v = obj.at(key);
  if (v.is_number_unsigned()) return v.get<std::uint64_t>();
  if (!v.is_string()) throw CertificateError(std::string("certificate: \"") + key + "\" must be a decimal string");
  const auto s = v.get<std::string>();
  std::uint64_t out = 0;
  const auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
  if (s.empty() || ec != std::errc() || p != s.data() + s.size())
    throw CertificateError(std::string("certificate: \"") + key + "\" is not a decimal integer: " + s);
  return out;
}

std::string string_field(const Json& obj, const char* key) {
  if (!obj.contains(key) || !obj.at(key).is_string())
    throw CertificateError(std::string("certificate: \"") + key + "\" must be a string");
  return obj.at(key).get<std::string>();
}

}  // namespace

Json tower(const TowerInt& t) {
  Json j;
  j["rendered"] = t.render();
  j["exact"] = t.is_exact();
  if (t.is_exact() && mpz_sizeinbase(t.value().get_mpz_t(), 10) <= kMaxDecimalDigits) j["value"] = t.value().get_str();
  const double lg = t.log2();
  if (std::isfinite(lg)) {
    j["log2_approx"] = lg;
  } else if (std::isfinite(t.log2log2())) {
    j["log2log2_approx"] = t.log2log2();
  }
  return j;
}

Json config(const BoundsConfig& cfg) {
  Json j;
  j["c"] = num(cfg.c);
  j["c_note"] = "not a certified constant";
  j["tower_cap_bits"] = num(cfg.cap_bits);
  return j;
}

Json profile(const SystemProfile& p) {
  Json j;
  j["n"] = num(p.n);
  j["m"] = num(p.m);
  j["e"] = num(p.e);
  j["eps"] = num(p.eps());
  j["d"] = num(p.d);
  if (p.r) j["r"] = num(*p.r);
  j["nu"] = num(p.nu());
  j["D"] = num(p.degree_surrogate());
  j["D_source"] = p.D ? "given" : "bezout d^(n+m)";
  return j;
}

Json certificate(const Certificate& c) {
  Json j;
  j["L"] = num(c.L);
  if (c.M) j["M"] = num(*c.M);
  j["target"] = to_string(c.target);
  Json entries = Json::array();
  for (const auto& e : c.entries) {
    Json x;
    x["gen"] = num(e.gen);
    x["j"] = num(e.j);
    x["cofactor"] = to_string(e.cofactor);
    entries.push_back(std::move(x));
  }
  j["entries"] = std::move(entries);
  return j;
}

Certificate certificate_from(const Json& j) {
  if (!j.is_object()) throw CertificateError("certificate: expected a JSON object");
  Certificate c;
  const auto L = unsigned_field(j, "L");
  if (L > std::numeric_limits<std::uint32_t>::max()) throw CertificateError("certificate: L out of range");
  c.L = std::uint32_t(L);
  if (j.contains("M")) c.M = unsigned_field(j, "M");
  c.target = parse_poly(string_field(j, "target"));
  if (!j.contains("entries") || !j.at("entries").is_array())
    throw CertificateError("certificate: \"entries\" must be an array");
  for (const auto& e : j.at("entries")) {
    if (!e.is_object()) throw CertificateError("certificate: entries must be objects");
    CertificateEntry ce;
    ce.gen = unsigned_field(e, "gen");
    const auto order = unsigned_field(e, "j");
    if (order > std::numeric_limits<std::uint32_t>::max()) throw CertificateError("certificate: j out of range");
    ce.j = std::uint32_t(order);
    ce.cofactor = parse_poly(string_field(e, "cofactor"));
    c.entries.push_back(std::move(ce));
  }
  return c;
}

Json bound_report(const BoundReport& rep) {
  Json j;
  j["profile"] = profile(rep.profile);
  j["config"] = config(rep.config);
  Json b;
  for (const auto& [name, v] : rep.entries) b[name] = tower(v);
  j["bounds"] = std::move(b);
  return j;
}

Json verdict(const Verdict& v) {
  Json j;
  j["status"] = to_string(v.status);
  if (v.status == Verdict::Status::Inconsistent) {
    j["L_min"] = num(v.L);
  } else {
    j["L_cap"] = num(v.L);
  }
  j["threshold"] = tower(v.threshold);
  if (v.certificate) j["certificate"] = certificate(*v.certificate);
  return j;
}

Json chain(const DescentChain& ch, const std::optional<LReconstruction>& rec) {
  Json j;
  Json stages = Json::array();
  for (std::size_t i = 0; i < ch.stages.size(); ++i) {
    const auto& s = ch.stages[i];
    Json x;
    x["index"] = num(i);
    x["dim"] = std::to_string(s.dim);
    x["radical"] = to_string(s.radical);
    Json gens = Json::array();
    for (const auto& g : s.generators) gens.push_back(to_string(g));
    x["generators"] = std::move(gens);
    x["eps"] = s.eps ? Json(num(*s.eps)) : Json(nullptr);
    x["k"] = s.k ? Json(num(*s.k)) : Json(nullptr);
    stages.push_back(std::move(x));
  }
  j["stages"] = std::move(stages);
  j["rho"] = ch.rho ? Json(num(*ch.rho)) : Json(nullptr);
  if (rec) {
    Json r;
    r["L"] = rec->L.get_str();
    r["mu"] = rec->mu ? Json(num(*rec->mu)) : Json(nullptr);
    r["k0_bound"] = rec->k0_bound.get_str();
    r["L_verified"] = rec->L_verified;
    r["checks"] = rec->checks;
    j["reconstruction"] = std::move(r);
  }
  return j;
}

}  // namespace json

std::string certificate_to_json(const Certificate& cert, int indent) { return json::certificate(cert).dump(indent); }

Certificate certificate_from_json(std::string_view text) {
  json::Json j;
  try {
    j = json::Json::parse(text.begin(), text.end());
  } catch (const nlohmann::json::parse_error& e) {
    throw CertificateError(std::string("certificate: invalid JSON: ") + e.what());
  }
  return json::certificate_from(j);
}

std::string tower_to_json(const TowerInt& t) { return json::tower(t).dump(); }

std::string bound_report_to_json(const BoundReport& rep, int indent) { return json::bound_report(rep).dump(indent); }

std::string verdict_to_json(const Verdict& v, int indent) { return json::verdict(v).dump(indent); }

std::string chain_to_json(const DescentChain& chain, const std::optional<LReconstruction>& rec, int indent) {
  return json::chain(chain, rec).dump(indent);
}

}  // namespace dnss
