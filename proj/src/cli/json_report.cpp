#include <iomanip>
#include <sstream>

#include "dq/runner.hpp"

namespace dq {

std::string report_json(const Report& report, bool include_timing) {
  Json tasks = Json::array();
  for (const auto& r : report.results) {
    Json t{{"line", r.line}, {"task", r.task}, {"command", r.command}, {"assertion", r.assertion}};
    if (r.assertion) {
      t["expected"] = r.expected;
      t["outcome"] = *r.outcome;
    }
    t["passed"] = r.passed;
    if (r.skipped) t["skipped"] = true;
    if (!r.error.empty()) t["error"] = r.error;
    if (!r.value.empty()) t["result"] = r.value;
    if (include_timing) t["seconds"] = r.seconds;
    tasks.push_back(std::move(t));
  }
  Json out{{"source", report.source},
           {"order", report.order},
           {"seed", report.seed},
           {"tasks", tasks},
           {"summary", Json{{"tasks", report.results.size()},
                            {"assertions", report.assertions()},
                            {"failed", report.failures()}}},
           {"status", report.status()}};
  return out.dump(2) + "\n";
}

std::string report_text(const Report& report, bool include_timing) {
  std::ostringstream os;
  for (const auto& r : report.results) {
    std::string verdict;
    if (r.skipped)
      verdict = "SKIP";
    else if (!r.error.empty())
      verdict = "ERROR";
    else if (r.assertion)
      verdict = r.passed ? "PASS" : "FAIL";
    else
      verdict = "done";
    os << "line " << std::setw(3) << r.line << "  " << std::left << std::setw(6) << verdict << std::right << r.command;
    if (!r.error.empty())
      os << "\n          " << r.error;
    else if (!r.summary.empty())
      os << "\n          " << r.summary;
    if (r.assertion && !r.passed && r.error.empty())
      os << "\n          expected " << (r.expected ? "true" : "false") << ", got " << (*r.outcome ? "true" : "false");
    if (include_timing) os << "  (" << std::fixed << std::setprecision(3) << r.seconds << " s)";
    os << "\n";
  }
  os << report.results.size() << " tasks, " << report.assertions() << " assertions, " << report.failures()
     << " failed\n";
  return os.str();
}

}  // namespace dq
