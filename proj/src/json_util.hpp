#pragma once

#include <optional>

#include "dnss/bounds.hpp"
#include "dnss/decide.hpp"
#include "dnss/descent.hpp"
#include "json.hpp"

namespace dnss::json {

using Json = nlohmann::ordered_json;

template <class T>
std::string num(const T& v) {
  if constexpr (std::is_same_v<T, Integer>) {
    return v.get_str();
  } else {
    return std::to_string(v);
  }
}

Json tower(const TowerInt& t);
Json config(const BoundsConfig& cfg);
Json profile(const SystemProfile& p);
Json certificate(const Certificate& c);
Certificate certificate_from(const Json& j);
Json bound_report(const BoundReport& rep);
Json verdict(const Verdict& v);
Json chain(const DescentChain& chain, const std::optional<LReconstruction>& rec);

}  // namespace dnss::json
