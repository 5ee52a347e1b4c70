#pragma once

// Executes parsed sessions and renders their reports.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "dq/session.hpp"

namespace dq {

using Json = nlohmann::ordered_json;

struct RunOptions {
  bool fail_fast = false;
  std::optional<std::uint32_t> max_order;
  std::optional<std::uint32_t> max_coeff_degree;
  /// "lex" or "degrevlex"; overrides the session's order.
  std::optional<std::string> order;
  std::uint64_t seed = 1;
};

struct TaskResult {
  std::size_t line = 0;
  std::string task;
  std::string command;
  /// Assertion tasks have a verdict; the others only report values.
  bool assertion = false;
  bool expected = true;
  std::optional<bool> outcome;
  bool passed = true;
  bool skipped = false;
  std::string error;
  std::string summary;
  Json value = Json::object();
  double seconds = 0;
};

struct Report {
  std::string source;
  std::string order;
  std::uint64_t seed = 0;
  std::vector<TaskResult> results;

  [[nodiscard]] std::size_t failures() const;
  [[nodiscard]] std::size_t assertions() const;
  /// 0 when every task passed, 1 otherwise.
  [[nodiscard]] int status() const;
};

Report run_session(const Session& session, const RunOptions& options = {});

/// Deterministic for a fixed session and options unless timing is included.
std::string report_json(const Report& report, bool include_timing = false);
std::string report_text(const Report& report, bool include_timing = false);

/// JSON encodings shared by the report.
Json poly_json(const Poly& p, const VariableNames& vars, const MonomialOrder& order);
Json bivector_json(const Bivector& q, const VariableNames& vars, const MonomialOrder& order);
Json trivector_json(const TriVector& t, const VariableNames& vars, const MonomialOrder& order);
Json op_json(const PolyDiffOp& op, const VariableNames& vars, const MonomialOrder& order);

}  // namespace dq
