#include "dpres/report.hpp"

#include <algorithm>
#include <cstdio>
#include <sstream>

#include <openssl/evp.h>

#include "json.hpp"

#include "dpres/errors.hpp"

namespace dpres {

std::string digest(std::string_view bytes) {
  unsigned char hash[EVP_MAX_MD_SIZE];
  unsigned int length = 0;
  EVP_Digest(bytes.data(), bytes.size(), hash, &length, EVP_sha256(), nullptr);
  std::string out = "sha256:";
  char buf[3];
  for (unsigned int i = 0; i < length; ++i) {
    const unsigned char c = hash[i];
    std::snprintf(buf, sizeof buf, "%02x", c);
    out += buf;
  }
  return out;
}

ReportFormat parse_report_format(std::string_view name) {
  if (name == "json") return ReportFormat::Json;
  if (name == "text") return ReportFormat::Text;
  throw UsageError("unknown report format '" + std::string(name) + "'");
}

std::string emit_report(const Report& report, ReportFormat format) {
  for (const char* key : {"node_count", "edge_count", "pair_count"}) {
    if (!report.metrics.count(key)) throw InvariantViolation(std::string("report is missing metric ") + key);
  }
  const char* status = report.pass() ? "pass" : "fail";

  if (format == ReportFormat::Json) {
    nlohmann::json j;
    j["command"] = report.command;
    j["inputs"] = report.inputs;
    j["metrics"] = report.metrics;
    j["status"] = status;
    j["violations"] = nlohmann::json::array();
    for (const auto& v : report.violations) j["violations"].push_back({{"kind", v.kind}, {"detail", v.detail}});
    return j.dump(2) + "\n";
  }

  std::vector<std::pair<std::string, std::string>> rows;
  rows.emplace_back("command", report.command);
  rows.emplace_back("status", status);
  for (const auto& [name, value] : report.inputs) rows.emplace_back("input." + name, value);
  for (const auto& [name, value] : report.metrics) rows.emplace_back(name, std::to_string(value));
  for (const auto& v : report.violations) rows.emplace_back("violation." + v.kind, v.detail);
  std::size_t width = 0;
  for (const auto& [key, value] : rows) width = std::max(width, key.size());
  std::ostringstream os;
  for (const auto& [key, value] : rows) os << key << std::string(width - key.size() + 2, ' ') << value << '\n';
  return os.str();
}

}  // namespace dpres
