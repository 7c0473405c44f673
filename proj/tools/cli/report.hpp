#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "psqm/protocols.hpp"

namespace psqm::cli {

using Json = nlohmann::json;

struct Check {
  std::string name;
  bool pass = false;
  Json witnesses = Json::object();
  Json coverage = nullptr;

  friend bool operator==(const Check&, const Check&) = default;
};

struct Report {
  std::string version;
  Json config = Json::object();
  std::vector<Check> checks;
  std::optional<protocols::Cost> cost;
  /// Only filled when timing was requested, so default reports are reproducible.
  std::optional<double> elapsed_ms;

  bool all_pass() const;
  friend bool operator==(const Report&, const Report&) = default;
};

/// Number as it will read back after serialization: 12 significant digits,
/// -0 folded to 0, infinities as the strings "inf" / "-inf", NaN as null.
Json number(double value);

Json to_json(const Report& report);
Report report_from_json(const Json& json);

/// Canonical text: sorted keys, two-space indent, floats with %.12g, trailing newline.
std::string canonical_dump(const Json& json);
std::string serialize(const Report& report);
Report parse_report(std::string_view text);

}  // namespace psqm::cli
