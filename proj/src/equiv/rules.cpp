#include <algorithm>
#include <map>

#include "csc/equiv.hpp"

namespace csc {

std::string path_string(const Path& p) {
  if (p.empty()) return "root";
  std::string out;
  for (std::size_t i = 0; i < p.size(); ++i) out += (i ? "." : "") + std::to_string(p[i]);
  return out;
}

nlohmann::json to_json(const RewriteStep& s) {
  return {{"rule", s.rule}, {"path", path_string(s.path)}, {"before", to_string(s.before)}, {"after", to_string(s.after)}};
}

std::string to_json_lines(const RewriteTrace& t) {
  std::string out;
  for (const auto& s : t.steps) out += to_json(s).dump() + "\n";
  return out;
}

const Term& subterm_at(const Term& t, const Path& p) {
  const Term* cur = &t;
  for (std::size_t i : p) {
    if (i >= cur->arity()) throw Error("path " + path_string(p) + " leaves the term");
    cur = &cur->child(i);
  }
  return *cur;
}

namespace {

Term replace_from(const Term& t, const Path& p, std::size_t at, const Term& r) {
  if (at == p.size()) return r;
  if (p[at] >= t.arity()) throw Error("path " + path_string(p) + " leaves the term");
  return t.with_child(p[at], replace_from(t.child(p[at]), p, at + 1, r));
}

}  // namespace

Term replace_at(const Term& t, const Path& p, const Term& replacement) { return replace_from(t, p, 0, replacement); }

Locals locals_at(const Theory& th, const Context& ctx, const Term& t, const Path& p, TypeClosure& tc) {
  Locals locals;
  const Term* cur = &t;
  for (std::size_t i : p) {
    if (i >= cur->arity()) throw Error("path " + path_string(p) + " leaves the term");
    if (cur->binders_above(i)) {
      if (cur->is(TermKind::Lam)) {
        locals.push_back(cur->annot());
      } else {
        Type head = infer(th, ctx, cur->child(0), locals, tc);
        auto m = tc.find_shape(head, TypeKind::Monad, cur->flavour());
        if (!m) throw TypeError(TypeErrorKind::NotMonadic, to_string(head));
        locals.push_back(m->inner());
      }
    }
    cur = &cur->child(i);
  }
  return locals;
}

const std::vector<std::string>& oriented_rules() {
  static const std::vector<std::string> rules = {"lam.beta", "prod.beta", "X.beta",     "X.eta",
                                                 "X.assoc",  "iotaS.ret", "iotaS.comp", "unit.eta"};
  return rules;
}

namespace {

Term swap01(const Term& p) {
  return rename_free(p, [](std::size_t i) { return Term::var(i == 0 ? 1 : i == 1 ? 0 : i); });
}

bool type_is_unit_monad(const Term& m, Flavour f, const Site& s) {
  Type t = infer(s.th, s.ctx, m, s.locals, s.tc);
  auto mon = s.tc.find_shape(t, TypeKind::Monad, f);
  return mon && s.tc.is_unit(mon->inner());
}

}  // namespace

std::optional<Term> apply_rule(const std::string& rule, const Term& m, const Site& site) {
  if (rule == "lam.beta") {
    if (m.is(TermKind::App) && m.child(0).is(TermKind::Lam)) return substitute(m.child(0).child(0), m.child(1));
  } else if (rule == "lam.eta") {
    if (m.is(TermKind::Lam) && m.child(0).is(TermKind::App)) {
      const Term& app = m.child(0);
      if (app.child(1) == Term::var(0) && !occurs(app.child(0), 0)) return shift(app.child(0), -1);
    }
  } else if (rule == "prod.beta") {
    if (m.is(TermKind::Proj) && m.child(0).is(TermKind::Pair)) return m.child(0).child(m.proj_index() - 1);
  } else if (rule == "prod.eta") {
    if (m.is(TermKind::Pair) && m.child(0).is(TermKind::Proj) && m.child(1).is(TermKind::Proj) &&
        m.child(0).proj_index() == 1 && m.child(1).proj_index() == 2 && m.child(0).child(0) == m.child(1).child(0))
      return m.child(0).child(0);
  } else if (rule == "unit.eta") {
    if (!m.is(TermKind::Star) && site.tc.is_unit(infer(site.th, site.ctx, m, site.locals, site.tc)))
      return Term::star();
  } else if (rule == "X.beta") {
    if (m.is(TermKind::Do) && m.child(0).is(TermKind::Ret) && m.child(0).flavour() == m.flavour())
      return substitute(m.child(1), m.child(0).child(0));
  } else if (rule == "X.eta") {
    if (m.is(TermKind::Do) && m.child(1).is(TermKind::Ret) && m.child(1).flavour() == m.flavour()) {
      const Term& r = m.child(1).child(0);
      if (r == Term::var(0)) return m.child(0);
      if (r.is(TermKind::Star) && type_is_unit_monad(m.child(0), m.flavour(), site)) return m.child(0);
    }
  } else if (rule == "X.assoc") {
    if (m.is(TermKind::Do) && m.child(0).is(TermKind::Do) && m.child(0).flavour() == m.flavour()) {
      const Term& inner = m.child(0);
      return Term::do_(m.flavour(), inner.child(0),
                       Term::do_(m.flavour(), inner.child(1), shift(m.child(1), 1, 1), m.name()), inner.name());
    }
  } else if (rule == "iotaS.ret") {
    if (m.is(TermKind::Iota) && m.child(0).is(TermKind::Ret) && m.child(0).flavour() == Flavour::S)
      return Term::ret(Flavour::T, m.child(0).child(0));
  } else if (rule == "iotaS.comp") {
    // oriented as a split: iota (do_S x <- M; N) ~> do_T x <- iota M; iota N
    if (m.is(TermKind::Iota) && m.child(0).is(TermKind::Do) && m.child(0).flavour() == Flavour::S) {
      const Term& d = m.child(0);
      return Term::do_(Flavour::T, Term::iota(d.child(0)), Term::iota(d.child(1)), d.name());
    }
  } else if (rule == "S.comm") {
    if (m.is(TermKind::Do) && m.flavour() == Flavour::S && m.child(1).is(TermKind::Do) &&
        m.child(1).flavour() == Flavour::S && !occurs(m.child(1).child(0), 0)) {
      const Term& h1 = m.child(0);
      const Term& h2 = m.child(1).child(0);
      return Term::do_(Flavour::S, shift(h2, -1),
                       Term::do_(Flavour::S, shift(h1, 1), swap01(m.child(1).child(1)), m.name()),
                       m.child(1).name());
    }
  } else if (rule == "S.central") {
    if (m.is(TermKind::Do) && m.flavour() == Flavour::T && m.child(1).is(TermKind::Do) &&
        m.child(1).flavour() == Flavour::T) {
      const Term& h1 = m.child(0);
      const Term& h2 = m.child(1).child(0);
      if ((h1.is(TermKind::Iota) || h2.is(TermKind::Iota)) && !occurs(h2, 0))
        return Term::do_(Flavour::T, shift(h2, -1),
                         Term::do_(Flavour::T, shift(h1, 1), swap01(m.child(1).child(1)), m.name()),
                         m.child(1).name());
    }
  } else {
    throw Error("unknown rule '" + rule + "'");
  }
  return std::nullopt;
}

// --- axioms ---------------------------------------------------------------------

namespace {

bool uses_below(const Term& t, std::size_t depth) {
  for (std::size_t i = 0; i < depth; ++i)
    if (occurs(t, i)) return true;
  return false;
}

struct Matcher {
  const Context& metas;
  const Site& site;
  std::map<std::string, Term> bound;

  bool match(const Term& p, const Term& t, std::size_t depth) {
    if (p.is(TermKind::Free) && metas.position(p.name())) {
      if (uses_below(t, depth)) return false;
      Term v = shift(t, -static_cast<std::ptrdiff_t>(depth));
      auto [it, fresh] = bound.emplace(p.name(), v);
      return fresh || it->second == v;
    }
    if (p.kind() != t.kind()) return false;
    switch (p.kind()) {
      case TermKind::Var:
        if (p.index() != t.index()) return false;
        break;
      case TermKind::Free:
        if (p.name() != t.name()) return false;
        break;
      case TermKind::Lam:
        if (!site.tc.equal(p.annot(), t.annot())) return false;
        break;
      case TermKind::Proj:
        if (p.proj_index() != t.proj_index()) return false;
        break;
      case TermKind::Ret:
      case TermKind::Do:
        if (p.flavour() != t.flavour()) return false;
        break;
      default:
        break;
    }
    for (std::size_t i = 0; i < p.arity(); ++i)
      if (!match(p.child(i), t.child(i), depth + p.binders_above(i))) return false;
    return true;
  }

  std::optional<Term> instantiate(const Term& replacement) {
    for (const auto& [name, type] : metas.entries()) {
      auto it = bound.find(name);
      if (it == bound.end()) {
        for (const auto& n : free_names(replacement))
          if (n == name) return std::nullopt;
        continue;
      }
      try {
        if (!site.tc.equal(infer(site.th, site.ctx, it->second, site.locals, site.tc), type)) return std::nullopt;
      } catch (const TypeError&) {
        return std::nullopt;
      }
    }
    Term out = replacement;
    for (const auto& [name, type] : metas.entries())
      if (bound.count(name)) out = substitute_free(out, name, Term::free("$" + name));
    for (const auto& [name, value] : bound) out = substitute_free(out, "$" + name, value);
    return out;
  }
};

std::optional<Term> rewrite_with(const TermAxiom& ax, const Term& pattern, const Term& replacement, const Term& t,
                                 const Site& site) {
  Matcher m{ax.ctx, site, {}};
  if (!m.match(pattern, t, 0)) return std::nullopt;
  return m.instantiate(replacement);
}

// Length of the do-chain of flavour f starting at t (number of bindings).
std::size_t chain_length(const Term& t, Flavour f) {
  std::size_t n = 0;
  for (const Term* cur = &t; cur->is(TermKind::Do) && cur->flavour() == f; cur = &cur->child(1)) ++n;
  return n;
}

}  // namespace

std::vector<Term> apply_axiom(const TermAxiom& ax, const Term& m, const Site& site) {
  std::vector<Term> out;
  auto push = [&](const Term& t) {
    if (std::find(out.begin(), out.end(), t) == out.end()) out.push_back(t);
  };
  const std::pair<const Term*, const Term*> dirs[] = {{&ax.lhs, &ax.rhs}, {&ax.rhs, &ax.lhs}};
  for (auto [pat, rep] : dirs) {
    if (auto r = rewrite_with(ax, *pat, *rep, m, site)) push(*r);
    if (!m.is(TermKind::Do) || !pat->is(TermKind::Do)) continue;
    // prefix views: do x1 <- g1; ...; g_k  with the rest R_k not using x1..x_{k-1}
    const Flavour f = m.flavour();
    if (pat->flavour() != f) continue;
    const std::size_t len = chain_length(m, f);
    std::vector<const Term*> nodes;  // Do nodes of the chain
    for (const Term* cur = &m; nodes.size() < len; cur = &cur->child(1)) nodes.push_back(cur);
    for (std::size_t k = 2; k <= len; ++k) {
      const Term& rest = nodes[k - 1]->child(1);
      bool independent = true;
      for (std::size_t j = 1; j < k && independent; ++j) independent = !occurs(rest, j);
      if (!independent) continue;
      // view: rebuild the first k-1 bindings around g_k
      Term view = nodes[k - 1]->child(0);
      for (std::size_t j = k - 1; j-- > 0;) view = Term::do_(f, nodes[j]->child(0), view, nodes[j]->name());
      auto r = rewrite_with(ax, *pat, *rep, view, site);
      if (!r) continue;
      const std::size_t drop = k - 1;
      Term rest2 = rename_free(rest, [drop](std::size_t i) { return Term::var(i == 0 ? 0 : i - drop); });
      push(Term::do_(f, *r, rest2, nodes[k - 1]->name()));
    }
  }
  return out;
}

bool is_rule_instance(const std::string& rule, const Term& a, const Term& b, const Site& site) {
  if (rule.rfind("axiom:", 0) == 0) {
    const std::string label = rule.substr(6);
    for (const auto& ax : site.th.term_axioms) {
      if (ax.label != label) continue;
      for (const auto& r : apply_axiom(ax, a, site))
        if (r == b) return true;
      for (const auto& r : apply_axiom(ax, b, site))
        if (r == a) return true;
    }
    return false;
  }
  if (rule == "eta") return eta_equal_at(site, a, b, infer(site.th, site.ctx, a, site.locals, site.tc));
  if (auto r = apply_rule(rule, a, site); r && *r == b) return true;
  if (auto r = apply_rule(rule, b, site); r && *r == a) return true;
  return false;
}

std::variant<Term, std::string> replay(const Theory& th, const Context& ctx, const Term& start,
                                       const RewriteTrace& trace) {
  Term cur = start;
  TypeClosure tc(th);
  for (std::size_t i = 0; i < trace.steps.size(); ++i) {
    const auto& s = trace.steps[i];
    const std::string where = "step " + std::to_string(i + 1) + " (" + s.rule + " at " + path_string(s.path) + ")";
    if (s.before != cur) return where + ": does not start from the previous term";
    try {
      const Term& sub_before = subterm_at(s.before, s.path);
      const Term& sub_after = subterm_at(s.after, s.path);
      if (replace_at(s.before, s.path, sub_after) != s.after) return where + ": terms differ outside the path";
      Locals locals = locals_at(th, ctx, s.before, s.path, tc);
      Site site{th, ctx, locals, tc};
      if (!is_rule_instance(s.rule, sub_before, sub_after, site)) return where + ": not an instance of the rule";
    } catch (const Error& e) {
      return where + ": " + e.what();
    }
    cur = s.after;
  }
  return cur;
}

}  // namespace csc
