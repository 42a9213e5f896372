#include <fstream>
#include <sstream>

#include "csc/semantics.hpp"

namespace csc {

namespace {

std::vector<std::string> words(const std::string& line) {
  std::istringstream in(line);
  std::vector<std::string> out;
  for (std::string w; in >> w;) out.push_back(w);
  return out;
}

std::optional<std::uint64_t> as_number(const std::string& s) {
  if (s.empty() || s.find_first_not_of("0123456789") != std::string::npos) return std::nullopt;
  return std::stoull(s);
}

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  return s.substr(b, s.find_last_not_of(" \t\r") - b + 1);
}

Elem element_of(const FinSet& set, const std::string& w, const std::string& where) {
  if (auto e = set.find(w)) return *e;
  if (auto n = as_number(w); n && *n < set.size()) return *n;
  throw Error(where + ": unknown element '" + w + "'");
}

std::vector<Elem> table_rows(const std::vector<std::vector<std::string>>& rows, const FinSet& set,
                             const std::string& what) {
  const auto n = set.size();
  if (rows.size() != n) throw Error(what + " needs " + std::to_string(n) + " rows, got " + std::to_string(rows.size()));
  std::vector<Elem> out;
  for (const auto& row : rows) {
    if (row.size() != n) throw Error(what + " rows need " + std::to_string(n) + " entries");
    for (const auto& w : row) out.push_back(element_of(set, w, what));
  }
  return out;
}

}  // namespace

ModelFile parse_model_file(std::string_view text, std::string name) {
  ModelFile f;
  f.name = std::move(name);
  std::vector<std::string> elements;
  std::optional<std::string> unit, zero, one;
  std::vector<std::vector<std::string>> mult, add;
  std::vector<std::string> central;

  std::istringstream in{std::string(text)};
  std::string raw;
  for (int lineno = 1; std::getline(in, raw); ++lineno) {
    const std::string line = trim(raw.substr(0, raw.find('#')));
    if (line.empty()) continue;
    const std::string where = "line " + std::to_string(lineno);
    auto w = words(line);
    const std::string& key = w[0];
    std::vector<std::string> rest(w.begin() + 1, w.end());
    if (key == "name") {
      f.name = trim(line.substr(4));
    } else if (key == "monad") {
      if (rest.empty()) throw Error(where + ": monad needs a kind");
      f.monad = rest[0];
      if (rest.size() > 1) {
        auto n = as_number(rest[1]);
        if (!n) throw Error(where + ": bad monad parameter '" + rest[1] + "'");
        f.param = *n;
      }
    } else if (key == "elements") {
      elements = rest;
    } else if (key == "unit" && rest.size() == 1) {
      unit = rest[0];
    } else if (key == "zero" && rest.size() == 1) {
      zero = rest[0];
    } else if (key == "one" && rest.size() == 1) {
      one = rest[0];
    } else if (key == "mult") {
      mult.push_back(rest);
    } else if (key == "add") {
      add.push_back(rest);
    } else if (key == "central-submonoid") {
      central = rest;
      f.central_submonoid.emplace();
    } else if (key == "submonad" && rest.size() == 1) {
      f.submonad = rest[0];
    } else if (key == "ground" || key == "const") {
      auto eq = line.find('=');
      if (eq == std::string::npos) throw Error(where + ": expected '" + key + " name = value'");
      std::string lhs = trim(line.substr(key.size(), eq - key.size()));
      std::string rhs = trim(line.substr(eq + 1));
      if (lhs.empty() || rhs.empty()) throw Error(where + ": expected '" + key + " name = value'");
      (key == "ground" ? f.ground : f.constants)[lhs] = rhs;
    } else if (key == "test-sizes") {
      f.test_sizes.clear();
      for (const auto& s : rest) {
        auto n = as_number(s);
        if (!n || *n == 0) throw Error(where + ": bad test size '" + s + "'");
        f.test_sizes.push_back(*n);
      }
    } else {
      throw Error(where + ": unrecognised directive '" + key + "'");
    }
  }

  if (!elements.empty()) {
    FinSet set(elements);
    if (!add.empty() || zero || one) {
      if (!zero || !one) throw Error("semiring needs both 'zero' and 'one'");
      f.semiring.emplace(set, element_of(set, *zero, "zero"), element_of(set, *one, "one"),
                         table_rows(add, set, "add"), table_rows(mult, set, "mult"));
    } else {
      if (!unit) throw Error("monoid needs 'unit'");
      f.monoid.emplace(set, element_of(set, *unit, "unit"), table_rows(mult, set, "mult"));
    }
    if (f.central_submonoid) {
      for (const auto& c : central) f.central_submonoid->push_back(element_of(set, c, "central-submonoid"));
    }
  } else if (f.central_submonoid) {
    throw Error("'central-submonoid' needs 'elements'");
  }
  return f;
}

ModelFile load_model_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open model file '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  std::string stem = path.substr(path.find_last_of('/') + 1);
  return parse_model_file(ss.str(), stem.substr(0, stem.find('.')));
}

MonadPtr build_monad(const ModelFile& f, const std::string& monad_override, std::uint64_t cap) {
  const std::string kind = monad_override.empty() ? f.monad : monad_override;
  if (kind == "writer") {
    if (!f.monoid) throw Error("writer monad needs a monoid ('elements', 'unit', 'mult')");
    return writer_monad(*f.monoid, "writer(" + f.name + ")", cap);
  }
  if (kind == "semiring") {
    if (!f.semiring) throw Error("semiring monad needs 'elements', 'zero', 'one', 'add', 'mult'");
    return semiring_monad(*f.semiring, "semiring(" + f.name + ")", cap);
  }
  if (kind == "continuation") return continuation_monad(f.param, cap);
  if (kind == "identity") return identity_monad(cap);
  if (kind == "list") return list_monad(f.param, cap);
  throw Error("unknown monad kind '" + kind + "'");
}

namespace {

std::uint64_t ground_size(const std::string& value, const Model& partial) {
  if (auto n = as_number(value)) return *n;
  return interpret_size(partial, parse_type(value));
}

Elem constant_value(const Model& model, const Theory& th, const ModelFile& f, const std::string& name,
                    const Type& type, const std::string& value) {
  const std::string where = "constant '" + name + "'";
  if (auto n = as_number(value)) {
    if (*n >= interpret_size(model, type)) throw Error(where + ": index " + value + " out of range");
    return *n;
  }
  // monoid element for T 1 / S 1 over a writer model
  if (f.monoid && type.is(TypeKind::Monad) && type.inner().is(TypeKind::Unit)) {
    if (auto e = f.monoid->carrier().find(value)) {
      if (type.flavour() == Flavour::T) return *e;
      const auto& c = model.S->carrier(1);
      auto it = std::lower_bound(c.begin(), c.end(), *e);
      if (it == c.end() || *it != *e) throw Error(where + ": '" + value + "' is not in the central submonoid");
      return static_cast<Elem>(it - c.begin());
    }
  }
  // function table [v0 v1 ...], f(0) first
  if (value.front() == '[' && value.back() == ']' && type.is(TypeKind::Arrow)) {
    auto entries = words(value.substr(1, value.size() - 2));
    const auto na = interpret_size(model, type.dom());
    const auto nb = interpret_size(model, type.cod());
    if (entries.size() != na) throw Error(where + ": table needs " + std::to_string(na) + " entries");
    FinSet cod = interpret_type(model, th, type.cod());
    std::vector<Elem> table;
    for (const auto& e : entries) table.push_back(element_of(cod, e, where));
    return function_index(table, nb);
  }
  return element_of(interpret_type(model, th, type), value, where);
}

}  // namespace

Model build_model(const ModelFile& f, const Theory& th, std::uint64_t cap) {
  Model model;
  model.name = f.name;
  model.cap = cap;
  model.test_sizes = f.test_sizes;
  model.T = build_monad(f, "", cap);

  std::string sub = f.submonad;
  if (sub == "auto") sub = f.central_submonoid ? "submonoid" : "centre";
  if (sub == "submonoid") {
    if (!f.monoid || f.monad != "writer") throw Error("'submonad submonoid' needs a writer model");
    if (!f.central_submonoid) throw Error("'submonad submonoid' needs 'central-submonoid'");
    model.S = writer_submonad(model.T, *f.monoid, *f.central_submonoid, "writer(" + f.name + ")/central");
  } else if (sub == "unit") {
    model.S = unit_submonad(model.T);
  } else if (sub == "centre") {
    model.S = centre_submonad(model.T, model.test_sizes);
  } else {
    throw Error("unknown submonad '" + sub + "'");
  }

  for (const auto& [g, value] : f.ground) model.ground[g] = ground_size(value, model);
  for (const auto& [name, value] : f.constants) {
    const Type* t = th.constant(name);
    if (!t) throw Error("model gives a value for '" + name + "', which the theory does not declare");
    model.constants[name] = constant_value(model, th, f, name, *t, value);
  }

  std::vector<ModelIssue> issues = validate_model(model, {0, 1, 2});
  auto more = validate_model_for(model, th);
  issues.insert(issues.end(), more.begin(), more.end());
  if (!issues.empty()) throw Error("invalid model '" + f.name + "': " + issues.front().check + ": " + issues.front().detail);
  return model;
}

}  // namespace csc
