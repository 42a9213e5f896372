#include <fstream>
#include <sstream>

#include "csc/theory.hpp"

namespace csc {

namespace {

std::string trim(std::string_view s) {
  std::size_t b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  std::size_t e = s.find_last_not_of(" \t\r");
  return std::string(s.substr(b, e - b + 1));
}

std::string strip_comment(const std::string& line) {
  auto p = line.find('#');
  return p == std::string::npos ? line : line.substr(0, p);
}

[[noreturn]] void bad(std::size_t lineno, const std::string& msg) {
  throw LoadError("line " + std::to_string(lineno) + ": " + msg);
}

// Splits "<term> : <type>" where the term may itself contain ':' in lambda annotations.
std::pair<Term, Type> split_typed_term(const std::string& s, std::size_t lineno) {
  for (std::size_t p = s.rfind(':'); p != std::string::npos; p = p ? s.rfind(':', p - 1) : std::string::npos) {
    try {
      Type t = parse_type(s.substr(p + 1));
      Term m = parse_term(s.substr(0, p));
      return {m, t};
    } catch (const ParseError&) {
    }
    if (p == 0) break;
  }
  bad(lineno, "expected '<term> : <type>' in '" + s + "'");
}

}  // namespace

Theory parse_theory(std::string_view text, std::string name) {
  Theory th;
  th.name = std::move(name);
  std::istringstream in{std::string(text)};
  std::string raw;
  std::size_t lineno = 0;
  while (std::getline(in, raw)) {
    ++lineno;
    std::string line = trim(strip_comment(raw));
    if (line.empty()) continue;
    auto sp = line.find_first_of(" \t");
    std::string kw = line.substr(0, sp);
    std::string rest = sp == std::string::npos ? "" : trim(line.substr(sp));
    try {
      if (kw == "name") {
        th.name = rest;
      } else if (kw == "ground") {
        if (rest.empty()) bad(lineno, "ground needs a name");
        Type g = parse_type(rest);
        if (!g.is(TypeKind::Ground)) bad(lineno, "'" + rest + "' is not a ground type name");
        th.ground_types.insert(g.name());
      } else if (kw == "type-eq") {
        auto eq = rest.find('=');
        if (eq == std::string::npos) bad(lineno, "type-eq needs '='");
        th.type_axioms.emplace_back(parse_type(rest.substr(0, eq)), parse_type(rest.substr(eq + 1)));
      } else if (kw == "const") {
        auto colon = rest.find(':');
        if (colon == std::string::npos) bad(lineno, "const needs ':'");
        std::string c = trim(rest.substr(0, colon));
        if (c.empty()) bad(lineno, "const needs a name");
        if (th.constants.count(c)) bad(lineno, "duplicate constant '" + c + "'");
        th.constants.emplace(c, parse_type(rest.substr(colon + 1)));
      } else if (kw == "axiom") {
        TermAxiom ax;
        ax.label = "axiom" + std::to_string(th.term_axioms.size() + 1);
        if (!rest.empty() && rest[0] == '@') {
          auto e = rest.find_first_of(" \t");
          ax.label = rest.substr(1, e == std::string::npos ? std::string::npos : e - 1);
          rest = e == std::string::npos ? "" : trim(rest.substr(e));
        }
        auto turn = rest.find("|-");
        if (turn == std::string::npos) bad(lineno, "axiom needs '|-'");
        ax.ctx = parse_context(rest.substr(0, turn));
        std::string eqn = rest.substr(turn + 2);
        auto eq = eqn.find('=');
        if (eq == std::string::npos) bad(lineno, "axiom needs '='");
        ax.lhs = parse_term(eqn.substr(0, eq));
        auto [rhs, type] = split_typed_term(eqn.substr(eq + 1), lineno);
        ax.rhs = rhs;
        ax.type = type;
        th.term_axioms.push_back(std::move(ax));
      } else {
        bad(lineno, "unknown declaration '" + kw + "'");
      }
    } catch (const ParseError& e) {
      bad(lineno, e.what());
    } catch (const LoadError&) {
      throw;
    } catch (const Error& e) {
      bad(lineno, e.what());
    }
  }
  auto diags = validate_theory(th);
  if (!diags.empty()) {
    std::string msg = "invalid theory '" + th.name + "':";
    for (const auto& d : diags) msg += "\n  " + d.message;
    throw LoadError(msg);
  }
  return th;
}

Theory load_theory(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw LoadError("cannot open theory file '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  std::string name = path;
  if (auto slash = name.find_last_of('/'); slash != std::string::npos) name = name.substr(slash + 1);
  return parse_theory(ss.str(), name);
}

std::string serialize_theory(const Theory& th) {
  std::ostringstream out;
  out << "name " << th.name << "\n";
  for (const auto& g : th.ground_types) out << "ground " << g << "\n";
  for (const auto& [a, b] : th.type_axioms) out << "type-eq " << to_string(a) << " = " << to_string(b) << "\n";
  for (const auto& [c, t] : th.constants) out << "const " << c << " : " << to_string(t) << "\n";
  for (const auto& ax : th.term_axioms)
    out << "axiom @" << ax.label << " " << to_string(ax.ctx) << " |- " << to_string(ax.lhs) << " = "
        << to_string(ax.rhs) << " : " << to_string(ax.type) << "\n";
  return out.str();
}

}  // namespace csc
