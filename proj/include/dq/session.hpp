#pragma once

// Line-oriented session files: declarations of a ring, named objects and an
// ordered list of tasks. See README for the grammar.

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "dq/brackets.hpp"
#include "dq/error.hpp"
#include "dq/hochschild.hpp"
#include "dq/k3atlas.hpp"
#include "dq/polyring.hpp"

namespace dq {

/// Parse or semantic error in a session file; line and column are 1-based.
class SessionError : public Error {
 public:
  SessionError(std::string source, std::size_t line, std::size_t column, const std::string& msg)
      : Error(source + ":" + std::to_string(line) + ":" + std::to_string(column) + ": " + msg),
        line_(line),
        column_(column) {}

  [[nodiscard]] std::size_t line() const { return line_; }
  [[nodiscard]] std::size_t column() const { return column_; }

 private:
  std::size_t line_;
  std::size_t column_;
};

struct SurfaceBinding {
  SurfaceSpec spec;
  VariableNames vars;
};

enum class TaskKind {
  Groebner,
  NormalForm,
  Member,
  Dimension,
  CompleteIntersection,
  BracketOf,
  Apply,
  Jacobiator,
  LiftCheck,
  PoissonCheck,
  Decompose3,
  CocycleCheck,
  Square,
  AssocDefect,
  SolveP2,
  ShuffleCheck,
  K3Verify,
  RandomCheck,
};

std::string task_name(TaskKind k);

struct Task {
  std::size_t line = 0;
  TaskKind kind = TaskKind::Groebner;
  /// The task line as written, without comments.
  std::string text;
  /// Object names the task refers to (bivectors, operators, surface).
  std::vector<std::string> names;
  std::vector<Poly> polys;
  /// Ideal name; empty means the zero ideal.
  std::string ideal;
  std::optional<bool> expect_bool;
  std::optional<Poly> expect_poly;
  std::optional<long> expect_int;
  std::uint32_t power = 0;
  std::optional<std::uint32_t> max_order;
  std::optional<std::uint32_t> max_coeff_degree;
  /// random-check: kind and count.
  std::string check;
  std::size_t count = 0;
};

struct Session {
  std::string source;
  VariableNames vars;
  std::string order = "degrevlex";
  PolyBindings polys;
  std::map<std::string, std::vector<Poly>> ideals;
  std::map<std::string, Bivector> bivectors;
  std::map<std::string, PolyDiffOp> ops;
  std::map<std::string, SurfaceBinding> surfaces;
  std::vector<Task> tasks;
};

/// Parses and validates a whole session. Throws SessionError.
Session parse_session(std::string_view text, const std::string& source = "<session>");
Session load_session(const std::string& path);

/// Names of the random-check kinds accepted by the parser.
const std::vector<std::string>& random_check_kinds();

}  // namespace dq
