#include <fstream>
#include <sstream>

#include "csc/semantics.hpp"
#include "csc/translation.hpp"

namespace csc {

Translation identity_translation(const Theory& th) {
  Translation v{th, th, {}, {}};
  for (const auto& g : th.ground_types) v.ground.emplace(g, Type::ground(g));
  for (const auto& [c, t] : th.constants) v.constants.emplace(c, Term::free(c));
  return v;
}

Type translate_type(const Translation& v, const Type& a) {
  switch (a.kind()) {
    case TypeKind::Unit:
      return a;
    case TypeKind::Ground: {
      auto it = v.ground.find(a.name());
      if (it == v.ground.end()) throw Error("translation has no image for ground type '" + a.name() + "'");
      return it->second;
    }
    case TypeKind::Arrow:
      return Type::arrow(translate_type(v, a.dom()), translate_type(v, a.cod()));
    case TypeKind::Prod:
      return Type::prod(translate_type(v, a.left()), translate_type(v, a.right()));
    case TypeKind::Monad:
      return Type::monad(a.flavour(), translate_type(v, a.inner()));
  }
  throw Error("unreachable type kind");
}

Term translate_term(const Translation& v, const Term& m) {
  switch (m.kind()) {
    case TermKind::Free: {
      if (!v.source.constant(m.name())) return m;
      auto it = v.constants.find(m.name());
      if (it == v.constants.end()) throw Error("translation has no image for constant '" + m.name() + "'");
      return it->second;
    }
    case TermKind::Lam:
      return Term::lam(translate_type(v, m.annot()), translate_term(v, m.child(0)), m.name());
    default: {
      Term out = m;
      for (std::size_t i = 0; i < m.arity(); ++i) out = out.with_child(i, translate_term(v, m.child(i)));
      return out;
    }
  }
}

Context translate_context(const Translation& v, const Context& ctx) {
  Context out;
  for (const auto& [n, t] : ctx.entries()) out.push(n, translate_type(v, t));
  return out;
}

const char* to_string(TranslationVerdict::Status s) {
  switch (s) {
    case TranslationVerdict::Status::Verified:
      return "Verified";
    case TranslationVerdict::Status::FailedAt:
      return "FailedAt";
    case TranslationVerdict::Status::Unknown:
      return "Unknown";
  }
  return "?";
}

namespace {

// Folds one equation's verdict into the aggregate. Returns true on failure.
bool record(TranslationVerdict& out, const std::string& what, const Verdict& v) {
  if (auto* d = std::get_if<Distinct>(&v)) {
    out.status = TranslationVerdict::Status::FailedAt;
    out.failed = what;
    out.detail = "at " + d->env_label + ": " + d->lhs_value + " vs " + d->rhs_value;
    return true;
  }
  if (std::holds_alternative<Unknown>(v)) {
    out.unknown.push_back(what);
    out.status = TranslationVerdict::Status::Unknown;
  }
  return false;
}

}  // namespace

TranslationVerdict check_translation(const Translation& v, std::size_t budget, const Model* countermodel) {
  for (const auto& [c, t] : v.source.constants) {
    Type want = translate_type(v, t);
    Term img = translate_term(v, Term::free(c));
    Type got = Type::unit();
    try {
      got = infer(v.target, Context{}, img);
    } catch (const TypeError& e) {
      throw IllTypedTranslation("image of '" + c + "': " + e.what());
    }
    if (!type_equal(v.target, got, want))
      throw IllTypedTranslation("image of '" + c + "' has type " + to_string(got) + ", expected " + to_string(want));
  }

  TranslationVerdict out;
  for (const auto& [l, r] : v.source.type_axioms) {
    if (!type_equal(v.target, translate_type(v, l), translate_type(v, r))) {
      out.status = TranslationVerdict::Status::FailedAt;
      out.failed = to_string(l) + " = " + to_string(r);
      out.detail = "translated types are not equal in the target theory";
      return out;
    }
  }
  DecideOptions opts;
  opts.budget = budget;
  opts.oracle = countermodel;
  for (const auto& ax : v.source.term_axioms) {
    Context ctx = translate_context(v, ax.ctx);
    Verdict verdict = decide_equal(v.target, ctx, translate_term(v, ax.lhs), translate_term(v, ax.rhs), opts);
    if (record(out, ax.label, verdict)) return out;
  }
  return out;
}

Translation compose(const Translation& from, const Translation& to) {
  Translation v{from.source, to.target, {}, {}};
  for (const auto& [g, t] : from.ground) v.ground.emplace(g, translate_type(to, t));
  for (const auto& [c, m] : from.constants) v.constants.emplace(c, translate_term(to, m));
  return v;
}

Term TranslationTransformation::component(const Type& a) const {
  auto it = components.find(to_string(a));
  if (it != components.end()) return it->second;
  return Term::free("x");
}

TranslationVerdict check_transformation(const TranslationTransformation& alpha, const std::vector<Probe>& probes,
                                        std::size_t budget, const Model* countermodel) {
  const Theory& th = alpha.from.target;
  TranslationVerdict out;
  DecideOptions opts;
  opts.budget = budget;
  opts.oracle = countermodel;
  auto checked_component = [&](const Type& a, const std::string& var) {
    Term c = alpha.component(a);
    Context cx{{"x", translate_type(alpha.from, a)}};
    try {
      Type got = infer(th, cx, c);
      if (!type_equal(th, got, translate_type(alpha.to, a)))
        throw IllTypedComponent("component at " + to_string(a) + " has type " + to_string(got));
    } catch (const TypeError& e) {
      throw IllTypedComponent("component at " + to_string(a) + ": " + e.what());
    }
    return substitute_free(c, "x", Term::free(var));
  };
  for (const auto& p : probes) {
    if (p.ctx.size() != 1) throw Error("a probe needs exactly one context variable");
    const auto& [var, a] = p.ctx.entries()[0];
    Term alpha_a = checked_component(a, var);
    Term alpha_b = checked_component(p.type, var);
    Term lhs = substitute_free(alpha_b, var, translate_term(alpha.from, p.term));
    Term rhs = substitute_free(translate_term(alpha.to, p.term), var, alpha_a);
    Context ctx{{var, translate_type(alpha.from, a)}};
    const std::string what = to_string(p.ctx) + " |- " + to_string(p.term) + " : " + to_string(p.type);
    if (record(out, what, decide_equal(th, ctx, lhs, rhs, opts))) return out;
  }
  return out;
}

// --- files ------------------------------------------------------------------------

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  return s.substr(b, s.find_last_not_of(" \t\r") - b + 1);
}

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

TranslationFile parse_translation_file(std::string_view text) {
  TranslationFile f;
  std::istringstream in{std::string(text)};
  std::string raw;
  for (int lineno = 1; std::getline(in, raw); ++lineno) {
    const std::string line = trim(raw.substr(0, raw.find('#')));
    if (line.empty()) continue;
    const std::string where = "line " + std::to_string(lineno) + ": ";
    const auto sp = line.find_first_of(" \t");
    const std::string kw = line.substr(0, sp);
    const std::string rest = sp == std::string::npos ? "" : trim(line.substr(sp));
    if (kw == "source" || kw == "target") {
      if (rest.empty()) throw Error(where + kw + " needs a theory file");
      (kw == "source" ? f.source : f.target) = rest;
    } else if (kw == "ground" || kw == "const") {
      const auto arrow = rest.find("=>");
      if (arrow == std::string::npos) throw Error(where + "expected '" + kw + " name => image'");
      std::string name = trim(rest.substr(0, arrow));
      std::string image = trim(rest.substr(arrow + 2));
      if (name.empty() || image.empty()) throw Error(where + "expected '" + kw + " name => image'");
      (kw == "ground" ? f.ground : f.constants)[name] = image;
    } else {
      throw Error(where + "unrecognised directive '" + kw + "'");
    }
  }
  if (f.source.empty() || f.target.empty()) throw Error("translation file needs 'source' and 'target'");
  return f;
}

Translation build_translation(const TranslationFile& f, Theory source, Theory target) {
  Translation v{std::move(source), std::move(target), {}, {}};
  for (const auto& [g, t] : f.ground) {
    if (!v.source.ground_types.count(g)) throw Error("'" + g + "' is not a ground type of the source theory");
    Type img = parse_type(t);
    require_well_formed(v.target, img);
    v.ground.emplace(g, img);
  }
  for (const auto& g : v.source.ground_types)
    if (!v.ground.count(g)) throw Error("no image for ground type '" + g + "'");
  for (const auto& [c, m] : f.constants) {
    if (!v.source.constant(c)) throw Error("'" + c + "' is not a constant of the source theory");
    v.constants.emplace(c, parse_term(m));
  }
  for (const auto& [c, t] : v.source.constants)
    if (!v.constants.count(c)) throw Error("no image for constant '" + c + "'");
  return v;
}

Translation load_translation(const std::string& path) {
  TranslationFile f = parse_translation_file(read_file(path));
  const auto slash = path.find_last_of('/');
  const std::string dir = slash == std::string::npos ? "" : path.substr(0, slash + 1);
  auto resolve = [&](const std::string& p) { return !p.empty() && p[0] == '/' ? p : dir + p; };
  return build_translation(f, load_theory(resolve(f.source)), load_theory(resolve(f.target)));
}

nlohmann::json to_json(const TranslationVerdict& v) {
  nlohmann::json j{{"verdict", to_string(v.status)}};
  if (v.status == TranslationVerdict::Status::FailedAt) {
    j["failed"] = v.failed;
    j["detail"] = v.detail;
  }
  if (!v.unknown.empty()) j["unknown"] = v.unknown;
  return j;
}

}  // namespace csc
