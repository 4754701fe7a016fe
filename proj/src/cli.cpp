#include "dnss/cli.hpp"

#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "dnss/decide.hpp"
#include "dnss/descent.hpp"
#include "dnss/groebner.hpp"
#include "dnss/reduce.hpp"
#include "dnss/text.hpp"
#include "json_util.hpp"

namespace dnss {

namespace {

using json::Json;
using json::num;

// The Macaulay cross-check is skipped above this many unknowns.
constexpr std::size_t kOracleUnknownLimit = 200'000;

struct Failure {
  int code;
  Json body;
};

[[noreturn]] void fail(int code, const std::string& kind, const std::string& message, Json extra = Json::object()) {
  Json e;
  e["kind"] = kind;
  e["message"] = message;
  for (auto& [k, v] : extra.items()) e[k] = v;
  Json body;
  body["error"] = std::move(e);
  throw Failure{code, std::move(body)};
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(kExitFailure, "io", "cannot read " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

InputDocument load(const std::string& path) { return parse_document(read_file(path)); }

std::vector<DiffPoly> system_of(const InputDocument& doc) {
  auto F = doc.system();
  if (F.empty()) fail(kExitPrecondition, "precondition", "the input has no equations");
  return F;
}

struct Globals {
  std::uint64_t c = 1;
  std::uint64_t cap_bits = 1'000'000;
  unsigned threads = 1;

  BoundsConfig bounds() const { return {c, cap_bits}; }
};

Json oracle_check(const std::vector<DiffPoly>& F, const Verdict& v) {
  Json j;
  std::uint32_t maxdeg = 0;
  for (const auto& f : F) maxdeg = std::max(maxdeg, f.degree());
  const std::uint32_t cap = maxdeg + v.L + 4;
  j["degree_cap"] = num(cap);
  std::optional<std::uint32_t> found;
  for (std::uint32_t k = 0; k <= v.L && !found; ++k) {
    const auto fam = prolong(F, k).flatten();
    const std::size_t unknowns = macaulay_unknowns(DiffPoly(1), fam, cap);
    if (unknowns > kOracleUnknownLimit) {
      j["status"] = "skipped";
      j["reason"] = "linear system at order " + num(k) + " exceeds " + num(kOracleUnknownLimit) + " unknowns";
      return j;
    }
    auto w = macaulay_membership(DiffPoly(1), fam, cap);
    if (w) {
      if (!w->verify(fam)) fail(kExitFailure, "internal", "oracle witness does not verify");
      found = k;
    }
  }
  const bool inconsistent = v.status == Verdict::Status::Inconsistent;
  j["L_min"] = found ? Json(num(*found)) : Json(nullptr);
  j["status"] = (inconsistent ? found && *found == v.L : !found) ? "agree" : "disagree";
  return j;
}

int cmd_decide(const Globals& g, const std::string& input, std::uint32_t max_order, bool oracle, std::ostream& out) {
  const auto F = system_of(load(input));
  const Verdict v = decide(F, max_order, g.bounds());
  Json j = json::verdict(v);
  j["config"] = json::config(g.bounds());
  int code = kExitOk;
  if (oracle) {
    j["oracle"] = oracle_check(F, v);
    if (j["oracle"]["status"] == "disagree") code = kExitFailure;
  }
  out << j.dump(2) << '\n';
  return code;
}

int cmd_certify(const std::string& input, std::uint32_t max_order, std::uint32_t max_power, std::ostream& out) {
  const auto doc = load(input);
  const auto F = system_of(doc);
  std::optional<Certificate> cert;
  if (doc.claim) {
    if (doc.claim->is_zero()) fail(kExitPrecondition, "precondition", "claim must be nonzero");
    if (auto r = strong_nss(F, *doc.claim, max_order, max_power)) cert = r->certificate;
  } else {
    const Verdict v = decide(F, max_order);
    cert = v.certificate;
  }
  if (!cert)
    fail(kExitPrecondition, "cap_exhausted",
         "no certificate with order <= " + num(max_order) + (doc.claim ? " and power <= " + num(max_power) : ""));
  out << json::certificate(*cert).dump(2) << '\n';
  return kExitOk;
}

int cmd_verify(const Globals& g, const std::string& cert_path, const std::string& input, std::ostream& out) {
  const std::string text = read_file(cert_path);
  Json raw;
  try {
    raw = Json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    fail(kExitParse, "parse", std::string("certificate is not valid JSON: ") + e.what());
  }
  const Certificate cert = json::certificate_from(raw);
  const auto doc = load(input);
  const auto F = system_of(doc);
  const bool valid = verify_certificate(cert, F);
  Json j;
  j["valid"] = valid;
  j["L"] = num(cert.L);
  if (cert.M) j["M"] = num(*cert.M);
  j["target_is_one"] = cert.target == DiffPoly(1);
  if (cert.M && doc.claim) j["target_is_claim_power"] = cert.target == doc.claim->pow(std::uint32_t(*cert.M));
  j["max_degree"] = num(certificate_degree(cert, F));
  const SystemProfile p = syntactic_profile(F);
  j["degree_bound"] = json::tower(bound_cert_degree(p.d, p.n, p.e, TowerInt(Integer(cert.L)), g.bounds()));
  j["config"] = json::config(g.bounds());
  out << j.dump(2) << '\n';
  return kExitOk;
}

struct BoundArgs {
  std::uint64_t n = 1;
  std::uint64_t m = 0;
  std::uint64_t degree = 1;
  std::uint64_t order = 1;
  std::optional<std::uint64_t> dim;
  std::optional<std::string> D;
  std::optional<std::string> L;
};

Integer parse_integer(const std::string& s, const char* what) {
  Integer v;
  if (s.empty() || s.find_first_not_of("0123456789") != std::string::npos || v.set_str(s, 10) != 0)
    fail(kExitFailure, "usage", std::string(what) + " must be a nonnegative integer");
  return v;
}

int cmd_bound(const Globals& g, const BoundArgs& a, std::ostream& out) {
  SystemProfile p;
  p.n = a.n;
  p.m = a.m;
  p.e = a.order;
  p.d = Integer(a.degree);
  p.r = a.dim;
  if (a.D) p.D = parse_integer(*a.D, "--D");
  std::optional<TowerInt> L;
  if (a.L) L = TowerInt(parse_integer(*a.L, "--L"));
  try {
    p.validate();
  } catch (const Error& e) {
    fail(kExitFailure, "usage", e.what());
  }
  const BoundReport rep = bound_report(p, g.bounds(), L);
  out << json::bound_report(rep).dump(2) << '\n';
  return kExitOk;
}

SemiexplicitSystem semiexplicit_of(const InputDocument& doc, bool& reduced) {
  reduced = doc.has_general();
  if (!reduced) return SemiexplicitSystem::from_document(doc);
  return to_first_order(GeneralSystem::from_document(doc)).system;
}

int cmd_descend(const Globals& g, const std::string& input, std::size_t max_stages, std::uint32_t eps_cap,
                std::uint32_t k_cap, std::ostream& out) {
  const auto doc = load(input);
  bool reduced = false;
  SemiexplicitSystem sys;
  try {
    sys = semiexplicit_of(doc, reduced);
  } catch (const ParseError&) {
    throw;
  } catch (const Error& e) {
    fail(kExitPrecondition, "precondition", e.what());
  }
  DescentChain chain;
  try {
    chain = build_chain(sys, max_stages);
  } catch (const DescentError& e) {
    Json extra;
    extra["partial"] = json::chain(e.partial(), std::nullopt);
    fail(kExitPrecondition, "descent", e.what(), extra);
  }
  measure(chain, eps_cap, k_cap, g.threads);
  std::optional<LReconstruction> rec;
  try {
    rec = reconstruct_L(chain);
  } catch (const Error& e) {
    Json extra;
    extra["partial"] = json::chain(chain, std::nullopt);
    fail(kExitPrecondition, "reconstruction", e.what(), extra);
  }

  Json j;
  j["reduced_to_first_order"] = reduced;
  auto body = json::chain(chain, rec);
  for (auto& [k, v] : body.items()) j[k] = v;

  SystemProfile p;
  p.n = sys.states.size();
  p.m = sys.controls.size();
  p.e = 1;
  std::uint32_t d = 1;
  for (const auto& f : sys.f) d = std::max(d, f.degree());
  for (const auto& h : sys.g) d = std::max(d, h.degree());
  p.d = d;
  if (chain.stages[0].dim >= 0) p.r = std::uint64_t(chain.stages[0].dim);
  j["bounds"] = json::bound_report(bound_report(p, g.bounds()));
  out << j.dump(2) << '\n';
  return kExitOk;
}

int cmd_reduce(const std::string& input, bool text, std::ostream& out) {
  const auto doc = load(input);
  const GeneralSystem gs = GeneralSystem::from_document(doc);
  if (gs.equations.empty()) fail(kExitPrecondition, "precondition", "the input has no equations");
  FirstOrderReduction red;
  try {
    red = to_first_order(gs);
  } catch (const Error& e) {
    fail(kExitPrecondition, "precondition", e.what());
  }
  const std::string doc_text = to_string(to_document(red.system));
  if (text) {
    out << doc_text;
    return kExitOk;
  }
  Json j;
  j["e"] = num(red.e);
  j["variables"] = num(red.system.states.size() + red.system.controls.size());
  j["system"] = doc_text;
  Json back;
  for (JetVar v : red.system.states) back[v.name()] = red.back(v).name();
  for (JetVar v : red.system.controls) back[v.name()] = red.back(v).name();
  j["back_map"] = std::move(back);
  out << j.dump(2) << '\n';
  return kExitOk;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Differential Nullstellensatz toolkit: consistency, certificates and bounds for DAE systems"};
  app.name("dnss");
  app.require_subcommand(1);
  app.fallthrough();
  Globals g;
  app.add_option("--c", g.c, "universal constant in the doubly exponential bounds (not certified)")
      ->check(CLI::PositiveNumber);
  app.add_option("--tower-cap-bits", g.cap_bits, "bit length up to which bounds are evaluated exactly")
      ->check(CLI::PositiveNumber);
  app.add_option("--threads", g.threads, "worker threads for descend")->check(CLI::PositiveNumber);

  std::string input;
  std::string cert;
  std::uint32_t max_order = 16;
  std::uint32_t max_power = 64;
  bool oracle = false;
  bool text = false;
  std::size_t max_stages = 16;
  std::uint32_t eps_cap = 64;
  std::uint32_t k_cap = 64;
  BoundArgs ba;

  auto* decide_cmd = app.add_subcommand("decide", "decide consistency up to an order cap");
  decide_cmd->add_option("--input", input, "system file (.dnss)")->required();
  decide_cmd->add_option("--max-order", max_order, "largest prolongation order tried");
  decide_cmd->add_flag("--oracle-check", oracle, "cross-check the order with the Macaulay oracle");

  auto* certify_cmd = app.add_subcommand("certify", "emit a certificate (strong form when the input has a claim)");
  certify_cmd->add_option("--input", input, "system file (.dnss)")->required();
  certify_cmd->add_option("--max-order", max_order, "largest prolongation order tried");
  certify_cmd->add_option("--max-power", max_power, "largest power of the claim tried");

  auto* verify_cmd = app.add_subcommand("verify", "check a certificate by exact expansion");
  verify_cmd->add_option("--cert", cert, "certificate JSON")->required();
  verify_cmd->add_option("--input", input, "system file (.dnss)")->required();

  auto* bound_cmd = app.add_subcommand("bound", "evaluate the closed-form bounds");
  bound_cmd->add_option("--n", ba.n, "state variables");
  bound_cmd->add_option("--m", ba.m, "control variables");
  bound_cmd->add_option("--degree", ba.degree, "max degree d")->check(CLI::PositiveNumber);
  bound_cmd->add_option("--order", ba.order, "max order e");
  bound_cmd->add_option("--dim", ba.dim, "dimension r of the constraint variety");
  bound_cmd->add_option("--D", ba.D, "degree bound D (default d^(n+m))");
  bound_cmd->add_option("--L", ba.L, "order fed into M and the certificate degree");

  auto* descend_cmd = app.add_subcommand("descend", "build the dimension-descending chain");
  descend_cmd->add_option("--input", input, "system file (.dnss)")->required();
  descend_cmd->add_option("--max-stages", max_stages, "stage limit")->check(CLI::PositiveNumber);
  descend_cmd->add_option("--eps-cap", eps_cap, "largest eps_i tried")->check(CLI::PositiveNumber);
  descend_cmd->add_option("--k-cap", k_cap, "largest k_i tried");

  auto* reduce_cmd = app.add_subcommand("reduce", "rewrite a general system in first-order form");
  reduce_cmd->add_option("--input", input, "system file (.dnss)")->required();
  reduce_cmd->add_flag("--text", text, "print the system text only");

  std::vector<const char*> argv{"dnss"};
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(int(argv.size()), argv.data());
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    Json body;
    body["error"] = {{"kind", "usage"}, {"message", e.what()}};
    err << body.dump(2) << '\n';
    return kExitFailure;
  }

  try {
    if (*decide_cmd) return cmd_decide(g, input, max_order, oracle, out);
    if (*certify_cmd) return cmd_certify(input, max_order, max_power, out);
    if (*verify_cmd) return cmd_verify(g, cert, input, out);
    if (*bound_cmd) return cmd_bound(g, ba, out);
    if (*descend_cmd) return cmd_descend(g, input, max_stages, eps_cap, k_cap, out);
    if (*reduce_cmd) return cmd_reduce(input, text, out);
    return kExitFailure;
  } catch (const Failure& f) {
    err << f.body.dump(2) << '\n';
    return f.code;
  } catch (const ParseError& e) {
    Json body;
    body["error"] = {{"kind", std::string("parse/") + to_string(e.kind())},
                     {"message", e.what()},
                     {"line", std::to_string(e.line())},
                     {"column", std::to_string(e.column())}};
    err << body.dump(2) << '\n';
    return kExitParse;
  } catch (const CertificateError& e) {
    Json body;
    body["error"] = {{"kind", "certificate"}, {"message", e.what()}};
    err << body.dump(2) << '\n';
    return kExitPrecondition;
  } catch (const std::exception& e) {
    Json body;
    body["error"] = {{"kind", "internal"}, {"message", e.what()}};
    err << body.dump(2) << '\n';
    return kExitFailure;
  }
}

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return run_cli(args, out, err);
}

}  // namespace dnss
