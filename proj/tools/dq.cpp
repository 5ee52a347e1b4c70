// Session runner: dq SESSION [--json PATH] [--fail-fast] [--order lex|degrevlex] ...

#include <fstream>
#include <iostream>

#include <CLI11.hpp>

#include "dq/runner.hpp"

int main(int argc, char** argv) {
  CLI::App app{"Exact Poisson-bracket and deformation-quantization checks driven by session files"};
  std::string path;
  std::string json_path;
  dq::RunOptions options;
  std::uint32_t max_order = 0;
  std::uint32_t max_coeff_degree = 0;
  std::string order;
  bool timing = false;
  bool quiet = false;

  app.add_option("session", path, "Session file")->required()->check(CLI::ExistingFile);
  app.add_option("--json", json_path, "Write the JSON report to this path (- for stdout)");
  app.add_flag("--fail-fast", options.fail_fast, "Skip remaining tasks after the first failure");
  auto* mo = app.add_option("--max-order", max_order, "Derivative order bound for solve-p2");
  auto* md = app.add_option("--max-coeff-degree", max_coeff_degree, "Coefficient degree bound for solve-p2");
  auto* oo = app.add_option("--order", order, "Monomial order")->check(CLI::IsMember({"lex", "degrevlex"}));
  app.add_option("--seed", options.seed, "Seed for random-check tasks");
  app.add_flag("--timing", timing, "Report per-task wall time (also in JSON)");
  app.add_flag("-q,--quiet", quiet, "Only print the summary line");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }
  if (*mo) options.max_order = max_order;
  if (*md) options.max_coeff_degree = max_coeff_degree;
  if (*oo) options.order = order;

  dq::Session session;
  try {
    session = dq::load_session(path);
  } catch (const dq::Error& e) {
    std::cerr << e.what() << "\n";
    return 2;
  }

  dq::Report report = dq::run_session(session, options);
  if (json_path == "-") {
    std::cout << dq::report_json(report, timing);
    return report.status();
  }
  std::string text = dq::report_text(report, timing);
  if (quiet) text = text.substr(text.rfind('\n', text.size() - 2) + 1);
  std::cout << text;

  if (!json_path.empty()) {
    std::ofstream out(json_path, std::ios::binary);
    if (!out) {
      std::cerr << "cannot write " << json_path << "\n";
      return 2;
    }
    out << dq::report_json(report, timing);
  }
  return report.status();
}
