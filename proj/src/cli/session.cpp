#include "dq/session.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <fstream>
#include <set>
#include <sstream>

namespace dq {

namespace {

const std::set<std::string, std::less<>> kReserved{"mod", "in", "at", "order", "degree", "to", "expect", "on"};

struct Segment {
  std::string_view text;
  std::size_t col = 1;  // 1-based column of text[0]

  [[nodiscard]] bool empty() const { return text.empty(); }
};

Segment trim(Segment s) {
  while (!s.text.empty() && std::isspace(static_cast<unsigned char>(s.text.front()))) {
    s.text.remove_prefix(1);
    ++s.col;
  }
  while (!s.text.empty() && std::isspace(static_cast<unsigned char>(s.text.back()))) s.text.remove_suffix(1);
  return s;
}

Segment sub(Segment s, std::size_t pos, std::size_t len = std::string_view::npos) {
  return trim(Segment{s.text.substr(pos, len), s.col + pos});
}

bool is_identifier(std::string_view w) {
  if (w.empty() || !(std::isalpha(static_cast<unsigned char>(w[0])) || w[0] == '_')) return false;
  return std::all_of(w.begin(), w.end(), [](char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; });
}

std::vector<Segment> words(Segment s) {
  std::vector<Segment> out;
  std::size_t i = 0;
  while (i < s.text.size()) {
    while (i < s.text.size() && std::isspace(static_cast<unsigned char>(s.text[i]))) ++i;
    std::size_t j = i;
    while (j < s.text.size() && !std::isspace(static_cast<unsigned char>(s.text[j]))) ++j;
    if (j > i) out.push_back(Segment{s.text.substr(i, j - i), s.col + i});
    i = j;
  }
  return out;
}

// Splits on `sep` outside parentheses.
std::vector<Segment> split(Segment s, char sep) {
  std::vector<Segment> out;
  int depth = 0;
  std::size_t start = 0;
  for (std::size_t i = 0; i < s.text.size(); ++i) {
    char c = s.text[i];
    if (c == '(') ++depth;
    if (c == ')') --depth;
    if (c == sep && depth == 0) {
      out.push_back(sub(s, start, i - start));
      start = i + 1;
    }
  }
  out.push_back(sub(s, start));
  return out;
}

// Position of the whole word `w` in s, or npos.
std::size_t find_word(std::string_view s, std::string_view w, std::size_t from = 0) {
  for (std::size_t pos = s.find(w, from); pos != std::string_view::npos; pos = s.find(w, pos + 1)) {
    bool left = pos == 0 || std::isspace(static_cast<unsigned char>(s[pos - 1]));
    bool right = pos + w.size() == s.size() || std::isspace(static_cast<unsigned char>(s[pos + w.size()]));
    if (left && right) return pos;
  }
  return std::string_view::npos;
}

struct TaskSyntax {
  TaskKind kind;
  const char* name;
};

const std::vector<TaskSyntax>& task_table() {
  static const std::vector<TaskSyntax> t{
      {TaskKind::Groebner, "groebner"},
      {TaskKind::NormalForm, "nf"},
      {TaskKind::Member, "member"},
      {TaskKind::Dimension, "dimension"},
      {TaskKind::CompleteIntersection, "complete-intersection"},
      {TaskKind::BracketOf, "bracket-of"},
      {TaskKind::Apply, "apply"},
      {TaskKind::Jacobiator, "jacobiator"},
      {TaskKind::LiftCheck, "lift-check"},
      {TaskKind::PoissonCheck, "poisson-check"},
      {TaskKind::Decompose3, "decompose3"},
      {TaskKind::CocycleCheck, "cocycle-check"},
      {TaskKind::Square, "square"},
      {TaskKind::AssocDefect, "assoc-defect"},
      {TaskKind::SolveP2, "solve-p2"},
      {TaskKind::ShuffleCheck, "shuffle-check"},
      {TaskKind::K3Verify, "k3-verify"},
      {TaskKind::RandomCheck, "random-check"},
  };
  return t;
}

class Parser {
 public:
  Parser(std::string source) : session_{} { session_.source = std::move(source); }

  Session run(std::string_view text) {
    std::size_t lineno = 0;
    std::size_t start = 0;
    while (start <= text.size()) {
      std::size_t end = text.find('\n', start);
      if (end == std::string_view::npos) end = text.size();
      ++lineno;
      line_ = lineno;
      std::string_view raw = text.substr(start, end - start);
      if (auto hash = raw.find('#'); hash != std::string_view::npos) raw = raw.substr(0, hash);
      if (!raw.empty() && raw.back() == '\r') raw.remove_suffix(1);
      Segment seg = trim(Segment{raw, 1});
      if (!seg.empty()) statement(seg);
      start = end + 1;
    }
    return std::move(session_);
  }

 private:
  [[noreturn]] void fail(std::size_t col, const std::string& msg) const {
    throw SessionError(session_.source, line_, col, msg);
  }
  [[noreturn]] void fail(const Segment& s, const std::string& msg) const { fail(s.col, msg); }

  void require_vars(const Segment& at) const {
    if (session_.vars.size() == 0) fail(at, "'vars' must be declared first");
  }

  Poly poly(Segment s, const VariableNames* vars = nullptr) const {
    if (s.empty()) fail(s, "expected a polynomial expression");
    const VariableNames& v = vars ? *vars : session_.vars;
    try {
      return parse_poly(s.text, v, vars ? nullptr : &session_.polys);
    } catch (const ParseError& e) {
      fail(s.col + e.column() - 1, e.detail());
    } catch (const Error& e) {
      fail(s, e.what());
    }
  }

  std::string new_name(Segment s) {
    std::string name(s.text);
    if (!is_identifier(name)) fail(s, "invalid name '" + name + "'");
    if (kReserved.count(name)) fail(s, "'" + name + "' is a reserved word");
    if (session_.vars.find(name) >= 0) fail(s, "name '" + name + "' is already a variable");
    if (taken_.count(name)) fail(s, "name '" + name + "' is already defined");
    taken_.insert(name);
    return name;
  }

  std::size_t var_index(Segment s, const VariableNames& vars) const {
    long k = vars.find(s.text);
    if (k < 0) fail(s, "unknown variable '" + std::string(s.text) + "'");
    return static_cast<std::size_t>(k);
  }

  const Bivector& bivector(Segment s) const {
    auto it = session_.bivectors.find(std::string(s.text));
    if (it == session_.bivectors.end()) fail(s, "unknown bivector '" + std::string(s.text) + "'");
    return it->second;
  }

  // Operators may be given by an op name or a bivector name.
  std::string op_name(Segment s) const {
    std::string name(s.text);
    if (!session_.ops.count(name) && !session_.bivectors.count(name))
      fail(s, "unknown operator or bivector '" + name + "'");
    return name;
  }

  std::string ideal_name(Segment s) const {
    std::string name(s.text);
    if (!session_.ideals.count(name)) fail(s, "unknown ideal '" + name + "'");
    return name;
  }

  static std::pair<Segment, Segment> split_eq(Segment s) {
    auto pos = s.text.find('=');
    if (pos == std::string_view::npos) return {s, Segment{{}, s.col + s.text.size()}};
    return {sub(s, 0, pos), sub(s, pos + 1)};
  }

  std::pair<std::string, Segment> definition(Segment rest) {
    auto [lhs, rhs] = split_eq(rest);
    if (rhs.text.data() == nullptr) fail(rest, "expected 'NAME = ...'");
    auto w = words(lhs);
    if (w.size() != 1) fail(lhs, "expected a single name before '='");
    if (rhs.empty()) fail(rhs, "empty definition");
    return {new_name(w[0]), rhs};
  }

  void statement(Segment seg) {
    auto w = words(seg);
    const Segment head = w.front();
    Segment rest = sub(seg, head.text.size());
    const std::string kw(head.text);
    if (kw == "vars") return vars(head, rest);
    if (kw == "order") {
      auto ws = words(rest);
      if (ws.size() != 1 || (ws[0].text != "lex" && ws[0].text != "degrevlex"))
        fail(rest, "expected 'order lex' or 'order degrevlex'");
      session_.order = std::string(ws[0].text);
      return;
    }
    if (kw == "poly") {
      require_vars(head);
      auto [name, rhs] = definition(rest);
      session_.polys.emplace(name, poly(rhs));
      return;
    }
    if (kw == "ideal") {
      require_vars(head);
      auto [name, rhs] = definition(rest);
      std::vector<Poly> gens;
      for (auto& part : split(rhs, ',')) gens.push_back(poly(part));
      session_.ideals.emplace(name, std::move(gens));
      return;
    }
    if (kw == "bivector") return bivector_def(head, rest);
    if (kw == "op") return op_def(head, rest);
    if (kw == "surface") return surface_def(rest);
    for (const auto& t : task_table())
      if (kw == t.name) return task(t.kind, seg, rest);
    fail(head, "unknown statement '" + kw + "'");
  }

  void vars(Segment head, Segment rest) {
    if (session_.vars.size() != 0) fail(head, "'vars' declared twice");
    std::vector<std::string> names;
    for (auto& w : words(rest)) {
      std::string n(w.text);
      if (!is_identifier(n)) fail(w, "invalid variable name '" + n + "'");
      if (kReserved.count(n)) fail(w, "'" + n + "' is a reserved word");
      if (std::find(names.begin(), names.end(), n) != names.end()) fail(w, "duplicate variable '" + n + "'");
      names.push_back(n);
    }
    if (names.empty()) fail(rest, "expected at least one variable");
    session_.vars = VariableNames(std::move(names));
  }

  void bivector_def(Segment head, Segment rest) {
    require_vars(head);
    auto [name, rhs] = definition(rest);
    auto w = words(rhs);
    const std::string form(w.front().text);
    Segment body = sub(rhs, w.front().text.size());
    const std::size_t n = session_.vars.size();
    try {
      if (form == "jacobian") {
        session_.bivectors.emplace(name, jacobian_bracket(poly(body)));
      } else if (form == "minor") {
        std::vector<std::size_t> cols;
        Segment gens = body;
        if (auto on = find_word(body.text, "on"); on != std::string_view::npos) {
          gens = sub(body, 0, on);
          for (auto& v : words(sub(body, on + 2))) cols.push_back(var_index(v, session_.vars));
        }
        std::vector<Poly> fs;
        for (auto& part : split(gens, ',')) fs.push_back(poly(part));
        if (cols.empty())
          for (std::size_t j = 0; j < n; ++j) cols.push_back(j);
        session_.bivectors.emplace(name, minor_bracket(fs, cols));
      } else if (form == "entries") {
        Bivector q(n);
        for (auto& item : split(body, ';')) {
          auto parts = split(item, ':');
          if (parts.size() != 2) fail(item, "expected 'VAR VAR : EXPR'");
          auto ij = words(parts[0]);
          if (ij.size() != 2) fail(parts[0], "expected two variable names");
          q.set(var_index(ij[0], session_.vars), var_index(ij[1], session_.vars), poly(parts[1]));
        }
        session_.bivectors.emplace(name, std::move(q));
      } else if (form == "combine") {
        std::vector<Poly> coeffs;
        std::vector<Bivector> qs;
        for (auto& item : split(body, ';')) {
          auto parts = split(item, ':');
          if (parts.size() != 2) fail(item, "expected 'EXPR : BIVECTOR'");
          coeffs.push_back(poly(parts[0]));
          qs.push_back(bivector(parts[1]));
        }
        session_.bivectors.emplace(name, combine(coeffs, qs));
      } else {
        fail(w.front(), "unknown bivector form '" + form + "' (jacobian, minor, entries, combine)");
      }
    } catch (const SessionError&) {
      throw;
    } catch (const Error& e) {
      fail(rhs, e.what());
    }
  }

  MultiIndex derivative_slot(Segment s) const {
    Poly p = poly(s);
    if (p.size() != 1 || !p.terms().begin()->second.is_one())
      fail(s, "derivative slot must be a monomial like x1^2*x2 or 1");
    return p.terms().begin()->first.exponents();
  }

  void op_def(Segment head, Segment rest) {
    require_vars(head);
    auto [name, rhs] = definition(rest);
    auto w = words(rhs);
    const std::string form(w.front().text);
    Segment body = sub(rhs, w.front().text.size());
    const std::size_t n = session_.vars.size();
    if (form == "mult") {
      if (!body.empty()) fail(body, "'mult' takes no arguments");
      session_.ops.emplace(name, PolyDiffOp::multiplication(n));
    } else if (form == "from") {
      session_.ops.emplace(name, PolyDiffOp::from_bivector(bivector(body)));
    } else if (form == "terms") {
      std::optional<PolyDiffOp> op;
      for (auto& item : split(body, ';')) {
        auto parts = split(item, ':');
        if (parts.size() != 2) fail(item, "expected 'SLOT | SLOT ... : EXPR'");
        PolyDiffOp::Key key;
        for (auto& slot : split(parts[0], '|')) key.push_back(derivative_slot(slot));
        if (!op) op.emplace(key.size(), n);
        if (key.size() != op->arity()) fail(parts[0], "all terms must have " + std::to_string(op->arity()) + " slots");
        op->add_term(key, poly(parts[1]));
      }
      session_.ops.emplace(name, std::move(*op));
    } else {
      fail(w.front(), "unknown operator form '" + form + "' (mult, from, terms)");
    }
  }

  void surface_def(Segment rest) {
    auto [name, rhs] = definition(rest);
    auto parts = split(rhs, ':');
    if (parts.size() != 2) fail(rhs, "expected 'FAMILY [in VARS] : EXPR, ...'");
    Segment fam = parts[0];
    VariableNames vars = session_.vars;
    if (auto in = find_word(fam.text, "in"); in != std::string_view::npos) {
      std::vector<std::string> names;
      for (auto& v : words(sub(fam, in + 2))) names.emplace_back(v.text);
      vars = VariableNames(std::move(names));
      fam = sub(fam, 0, in);
    }
    try {
      K3Family family = parse_family(std::string(fam.text));
      std::vector<Poly> polys;
      for (auto& part : split(parts[1], ',')) polys.push_back(poly(part, &vars));
      session_.surfaces.emplace(name, SurfaceBinding{make_surface(family, std::move(polys)), vars});
    } catch (const SessionError&) {
      throw;
    } catch (const Error& e) {
      fail(rhs, e.what());
    }
  }

  // Splits "HEAD kw1 VALUE kw2 VALUE ..." for the given keywords.
  std::map<std::string, Segment> options(Segment rest, Segment& head, std::initializer_list<const char*> allowed) const {
    std::vector<std::pair<std::size_t, std::string>> found;
    for (const auto& kw : kReserved) {
      for (std::size_t pos = find_word(rest.text, kw); pos != std::string_view::npos;
           pos = find_word(rest.text, kw, pos + 1))
        found.emplace_back(pos, kw);
    }
    std::sort(found.begin(), found.end());
    std::map<std::string, Segment> out;
    head = found.empty() ? rest : sub(rest, 0, found.front().first);
    for (std::size_t k = 0; k < found.size(); ++k) {
      const auto& [pos, kw] = found[k];
      bool ok = std::any_of(allowed.begin(), allowed.end(), [&](const char* a) { return kw == a; });
      Segment at{rest.text.substr(pos, kw.size()), rest.col + pos};
      if (!ok) fail(at, "'" + kw + "' is not valid here");
      if (out.count(kw)) fail(at, "'" + kw + "' given twice");
      std::size_t from = pos + kw.size();
      std::size_t to = k + 1 < found.size() ? found[k + 1].first : rest.text.size();
      Segment value = sub(rest, from, to - from);
      if (value.empty()) fail(at, "missing value after '" + kw + "'");
      out.emplace(kw, value);
    }
    return out;
  }

  std::uint32_t natural(Segment s) const {
    std::uint32_t v = 0;
    auto [ptr, ec] = std::from_chars(s.text.data(), s.text.data() + s.text.size(), v);
    if (ec != std::errc() || ptr != s.text.data() + s.text.size()) fail(s, "expected a non-negative integer");
    return v;
  }

  bool boolean(Segment s) const {
    if (s.text == "true") return true;
    if (s.text == "false") return false;
    fail(s, "expected 'true' or 'false'");
  }

  Segment single(Segment s, const char* what) const {
    auto w = words(s);
    if (w.size() != 1) fail(s, std::string("expected ") + what);
    return w[0];
  }

  void task(TaskKind kind, Segment line, Segment rest) {
    Task t;
    t.line = line_;
    t.kind = kind;
    t.text = std::string(line.text);
    Segment head;
    auto need_vars = [&] { require_vars(line); };
    auto opt_ideal = [&](const std::map<std::string, Segment>& o) {
      if (auto it = o.find("mod"); it != o.end()) t.ideal = ideal_name(single(it->second, "an ideal name"));
    };
    auto expect_bool = [&](const std::map<std::string, Segment>& o) {
      if (auto it = o.find("expect"); it != o.end()) t.expect_bool = boolean(it->second);
    };
    switch (kind) {
      case TaskKind::Groebner: {
        auto o = options(rest, head, {});
        t.ideal = ideal_name(single(head, "an ideal name"));
        break;
      }
      case TaskKind::NormalForm: {
        need_vars();
        auto o = options(rest, head, {"mod", "expect"});
        if (!o.count("mod")) fail(line, "expected 'nf EXPR mod IDEAL'");
        t.polys.push_back(poly(head));
        opt_ideal(o);
        if (o.count("expect")) t.expect_poly = poly(o.at("expect"));
        break;
      }
      case TaskKind::Member: {
        need_vars();
        auto o = options(rest, head, {"in", "expect"});
        if (!o.count("in")) fail(line, "expected 'member EXPR in IDEAL'");
        t.polys.push_back(poly(head));
        t.ideal = ideal_name(single(o.at("in"), "an ideal name"));
        expect_bool(o);
        break;
      }
      case TaskKind::Dimension: {
        auto o = options(rest, head, {"expect"});
        t.ideal = ideal_name(single(head, "an ideal name"));
        if (o.count("expect")) t.expect_int = natural(o.at("expect"));
        break;
      }
      case TaskKind::CompleteIntersection: {
        auto o = options(rest, head, {"expect"});
        t.ideal = ideal_name(single(head, "an ideal name"));
        expect_bool(o);
        break;
      }
      case TaskKind::BracketOf: {
        auto o = options(rest, head, {});
        Segment n = single(head, "a bivector name");
        bivector(n);
        t.names.emplace_back(n.text);
        break;
      }
      case TaskKind::Apply: {
        need_vars();
        auto o = options(rest, head, {"to", "expect"});
        if (!o.count("to")) fail(line, "expected 'apply NAME to EXPR, ...'");
        t.names.push_back(op_name(single(head, "an operator or bivector name")));
        for (auto& part : split(o.at("to"), ',')) t.polys.push_back(poly(part));
        if (o.count("expect")) t.expect_poly = poly(o.at("expect"));
        break;
      }
      case TaskKind::Jacobiator:
      case TaskKind::LiftCheck:
      case TaskKind::PoissonCheck: {
        auto o = options(rest, head, {"mod", "expect"});
        Segment n = single(head, "a bivector name");
        bivector(n);
        t.names.emplace_back(n.text);
        opt_ideal(o);
        if (kind == TaskKind::LiftCheck && t.ideal.empty()) fail(line, "expected 'lift-check BIVECTOR mod IDEAL'");
        expect_bool(o);
        break;
      }
      case TaskKind::Decompose3:
      case TaskKind::CocycleCheck:
      case TaskKind::Square:
      case TaskKind::ShuffleCheck: {
        auto o = options(rest, head, {"mod", "expect"});
        t.names.push_back(op_name(single(head, "an operator or bivector name")));
        opt_ideal(o);
        expect_bool(o);
        break;
      }
      case TaskKind::AssocDefect: {
        auto o = options(rest, head, {"at", "mod", "expect"});
        if (!o.count("at")) fail(line, "expected 'assoc-defect OP ... at N'");
        for (auto& w : words(head)) t.names.push_back(op_name(w));
        if (t.names.empty()) fail(head, "expected at least one operator");
        t.power = natural(o.at("at"));
        if (t.power < 1 || t.power > t.names.size() + 1)
          fail(o.at("at"), "power must lie in [1, " + std::to_string(t.names.size() + 1) + "]");
        opt_ideal(o);
        expect_bool(o);
        break;
      }
      case TaskKind::SolveP2: {
        auto o = options(rest, head, {"mod", "order", "degree", "expect"});
        t.names.push_back(op_name(single(head, "an operator or bivector name")));
        opt_ideal(o);
        if (o.count("order")) t.max_order = natural(o.at("order"));
        if (o.count("degree")) t.max_coeff_degree = natural(o.at("degree"));
        expect_bool(o);
        break;
      }
      case TaskKind::K3Verify: {
        auto o = options(rest, head, {"expect"});
        Segment n = single(head, "a surface name");
        if (!session_.surfaces.count(std::string(n.text))) fail(n, "unknown surface '" + std::string(n.text) + "'");
        t.names.emplace_back(n.text);
        expect_bool(o);
        break;
      }
      case TaskKind::RandomCheck: {
        auto o = options(rest, head, {"expect"});
        auto w = words(head);
        if (w.empty() || w.size() > 2) fail(head, "expected 'random-check KIND [COUNT]'");
        t.check = std::string(w[0].text);
        const auto& kinds = random_check_kinds();
        if (std::find(kinds.begin(), kinds.end(), t.check) == kinds.end()) {
          std::string list;
          for (const auto& k : kinds) list += (list.empty() ? "" : ", ") + k;
          fail(w[0], "unknown random-check kind '" + t.check + "' (" + list + ")");
        }
        t.count = w.size() == 2 ? natural(w[1]) : 10;
        expect_bool(o);
        break;
      }
    }
    session_.tasks.push_back(std::move(t));
  }

  Session session_;
  std::size_t line_ = 0;
  std::set<std::string, std::less<>> taken_;
};

}  // namespace

std::string task_name(TaskKind k) {
  for (const auto& t : task_table())
    if (t.kind == k) return t.name;
  return "?";
}

const std::vector<std::string>& random_check_kinds() {
  static const std::vector<std::string> k{"d-squared", "projectors", "obstruction", "minor-lift", "cross-oracle"};
  return k;
}

Session parse_session(std::string_view text, const std::string& source) { return Parser(source).run(text); }

Session load_session(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw SessionError(path, 0, 0, "cannot open session file");
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_session(ss.str(), path);
}

}  // namespace dq
