#pragma once

// Verification report: named checks, each with target, measured value,
// tolerance and status. Output is keyed and sorted by check name.

#include <charconv>
#include <cmath>
#include <map>
#include <ostream>
#include <string>
#include <system_error>

#include <nlohmann/json.hpp>

namespace annulus_green {

enum class CheckStatus { pass, fail, flagged, info };

inline const char* to_string(CheckStatus s) {
  switch (s) {
    case CheckStatus::pass: return "pass";
    case CheckStatus::fail: return "fail";
    case CheckStatus::flagged: return "flagged";
    case CheckStatus::info: return "info";
  }
  return "unknown";
}

struct CheckResult {
  std::string name;
  double target = 0.0;
  double measured = 0.0;
  double tolerance = 0.0;
  CheckStatus status = CheckStatus::info;
  std::string notes;
};

/// Shortest decimal string that parses back to the same double.
inline std::string format_double(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

class VerificationReport {
 public:
  /// Adds a check whose status is decided by |measured - target| <= tolerance.
  /// soft checks are downgraded from fail to flagged.
  CheckResult& add_tolerance_check(const std::string& name, double target, double measured, double tolerance,
                                   std::string notes = {}, bool soft = false) {
    const bool ok = std::abs(measured - target) <= tolerance;
    CheckStatus status = ok ? CheckStatus::pass : (soft ? CheckStatus::flagged : CheckStatus::fail);
    return add({name, target, measured, tolerance, status, std::move(notes)});
  }

  /// Report-only entry.
  CheckResult& add_info(const std::string& name, double measured, std::string notes = {}) {
    return add({name, 0.0, measured, 0.0, CheckStatus::info, std::move(notes)});
  }

  CheckResult& add(CheckResult check) {
    auto [it, inserted] = checks_.insert_or_assign(check.name, std::move(check));
    return it->second;
  }

  void merge(const VerificationReport& other) {
    for (const auto& [name, check] : other.checks_) add(check);
  }

  const std::map<std::string, CheckResult>& checks() const { return checks_; }
  const CheckResult* find(const std::string& name) const {
    auto it = checks_.find(name);
    return it == checks_.end() ? nullptr : &it->second;
  }

  int count(CheckStatus s) const {
    int n = 0;
    for (const auto& [name, c] : checks_) n += c.status == s;
    return n;
  }
  bool has_hard_failure() const { return count(CheckStatus::fail) > 0; }

  nlohmann::json to_json() const {
    nlohmann::json checks = nlohmann::json::array();
    for (const auto& [name, c] : checks_) {
      nlohmann::json j;
      j["name"] = c.name;
      j["target"] = json_number(c.target);
      j["measured"] = json_number(c.measured);
      j["tolerance"] = json_number(c.tolerance);
      j["status"] = to_string(c.status);
      j["notes"] = c.notes;
      checks.push_back(std::move(j));
    }
    nlohmann::json summary;
    summary["pass"] = count(CheckStatus::pass);
    summary["fail"] = count(CheckStatus::fail);
    summary["flagged"] = count(CheckStatus::flagged);
    summary["info"] = count(CheckStatus::info);
    return nlohmann::json{{"checks", std::move(checks)}, {"summary", std::move(summary)}};
  }

  void write_json(std::ostream& os) const { os << to_json().dump(2) << '\n'; }

  void write_csv(std::ostream& os) const {
    os << "name,target,measured,tolerance,status,notes\n";
    for (const auto& [name, c] : checks_) {
      os << c.name << ',' << format_double(c.target) << ',' << format_double(c.measured) << ','
         << format_double(c.tolerance) << ',' << to_string(c.status) << ',' << quote(c.notes) << '\n';
    }
  }

 private:
  static nlohmann::json json_number(double v) {
    if (!std::isfinite(v)) return nullptr;
    return v;
  }
  static std::string quote(const std::string& s) {
    std::string out = "\"";
    for (char ch : s) {
      if (ch == '"') out += '"';
      out += ch;
    }
    return out + '"';
  }

  std::map<std::string, CheckResult> checks_;
};

}  // namespace annulus_green
