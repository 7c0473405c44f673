#include "report.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <stdexcept>

namespace psqm::cli {

bool Report::all_pass() const {
  return std::all_of(checks.begin(), checks.end(), [](const Check& c) { return c.pass; });
}

namespace {

std::string format_double(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  std::string s(buf);
  if (s == "-0") {
    s = "0";
  }
  return s;
}

void dump(const Json& j, std::string& out, int depth) {
  const std::string pad(static_cast<std::size_t>(2 * (depth + 1)), ' ');
  const std::string close_pad(static_cast<std::size_t>(2 * depth), ' ');
  switch (j.type()) {
    case Json::value_t::object: {
      if (j.empty()) {
        out += "{}";
        return;
      }
      out += "{\n";
      bool first = true;
      for (const auto& [key, value] : j.items()) {
        if (!first) {
          out += ",\n";
        }
        first = false;
        out += pad + Json(key).dump() + ": ";
        dump(value, out, depth + 1);
      }
      out += "\n" + close_pad + "}";
      return;
    }
    case Json::value_t::array: {
      if (j.empty()) {
        out += "[]";
        return;
      }
      out += "[\n";
      for (std::size_t i = 0; i < j.size(); ++i) {
        if (i > 0) {
          out += ",\n";
        }
        out += pad;
        dump(j[i], out, depth + 1);
      }
      out += "\n" + close_pad + "]";
      return;
    }
    case Json::value_t::number_float:
      out += format_double(j.get<double>());
      return;
    default:
      out += j.dump();
      return;
  }
}

}  // namespace

Json number(double value) {
  if (std::isnan(value)) {
    return nullptr;
  }
  if (std::isinf(value)) {
    return value > 0 ? "inf" : "-inf";
  }
  const double rounded = std::strtod(format_double(value).c_str(), nullptr);
  return rounded == 0.0 ? 0.0 : rounded;
}

Json to_json(const Report& report) {
  Json checks = Json::array();
  for (const auto& c : report.checks) {
    checks.push_back({{"name", c.name}, {"pass", c.pass}, {"witnesses", c.witnesses}, {"coverage", c.coverage}});
  }
  Json j;
  j["version"] = report.version;
  j["config"] = report.config;
  j["checks"] = std::move(checks);
  j["cost"] = report.cost ? Json{{"value", report.cost->value}, {"unit", report.cost->unit}} : Json(nullptr);
  j["elapsed_ms"] = report.elapsed_ms ? number(*report.elapsed_ms) : Json(nullptr);
  return j;
}

Report report_from_json(const Json& j) {
  if (!j.is_object()) {
    throw std::invalid_argument("report must be a JSON object");
  }
  Report r;
  r.version = j.at("version").get<std::string>();
  r.config = j.at("config");
  for (const auto& c : j.at("checks")) {
    r.checks.push_back(Check{.name = c.at("name").get<std::string>(),
                             .pass = c.at("pass").get<bool>(),
                             .witnesses = c.at("witnesses"),
                             .coverage = c.at("coverage")});
  }
  if (const auto& cost = j.at("cost"); !cost.is_null()) {
    r.cost = protocols::Cost{cost.at("value").get<int>(), cost.at("unit").get<std::string>()};
  }
  if (const auto& t = j.at("elapsed_ms"); !t.is_null()) {
    r.elapsed_ms = t.get<double>();
  }
  return r;
}

std::string canonical_dump(const Json& json) {
  std::string out;
  dump(json, out, 0);
  out += "\n";
  return out;
}

std::string serialize(const Report& report) { return canonical_dump(to_json(report)); }

Report parse_report(std::string_view text) { return report_from_json(Json::parse(text)); }

}  // namespace psqm::cli
