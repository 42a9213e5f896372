#include <functional>

#include "csc/syntax.hpp"

namespace csc {

struct Term::Node {
  TermKind kind;
  std::size_t index = 0;
  std::string name;
  std::optional<Type> annot;
  Flavour flavour = Flavour::T;
  int proj = 0;
  std::vector<Term> kids;
  std::size_t hash = 0;
  std::size_t size = 1;
};

namespace {

std::size_t mix(std::size_t h, std::size_t v) {
  return h ^ (v + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2));
}

}  // namespace

struct TermBuilder {
  static Term make(std::shared_ptr<Term::Node> n) {
    std::size_t h = mix(static_cast<std::size_t>(n->kind) * 7919, n->index);
    h = mix(h, static_cast<std::size_t>(n->flavour) + 3 * static_cast<std::size_t>(n->proj));
    if (n->kind == TermKind::Free) h = mix(h, std::hash<std::string>{}(n->name));
    if (n->annot) h = mix(h, n->annot->hash());
    for (const auto& k : n->kids) {
      h = mix(h, k.hash());
      n->size += k.size();
    }
    n->hash = h;
    return Term(std::move(n));
  }
};

namespace {

std::shared_ptr<Term::Node> node(TermKind k) {
  auto n = std::make_shared<Term::Node>();
  n->kind = k;
  return n;
}

}  // namespace

Term Term::var(std::size_t index) {
  auto n = node(TermKind::Var);
  n->index = index;
  return TermBuilder::make(n);
}

Term Term::free(std::string name) {
  auto n = node(TermKind::Free);
  n->name = std::move(name);
  return TermBuilder::make(n);
}

Term Term::star() {
  static const Term s = TermBuilder::make(node(TermKind::Star));
  return s;
}

Term Term::lam(Type annot, Term body, std::string hint) {
  auto n = node(TermKind::Lam);
  n->annot = std::move(annot);
  n->name = std::move(hint);
  n->kids = {std::move(body)};
  return TermBuilder::make(n);
}

Term Term::app(Term fun, Term arg) {
  auto n = node(TermKind::App);
  n->kids = {std::move(fun), std::move(arg)};
  return TermBuilder::make(n);
}

Term Term::pair(Term fst, Term snd) {
  auto n = node(TermKind::Pair);
  n->kids = {std::move(fst), std::move(snd)};
  return TermBuilder::make(n);
}

Term Term::proj(int i, Term arg) {
  if (i != 1 && i != 2) throw Error("projection index must be 1 or 2");
  auto n = node(TermKind::Proj);
  n->proj = i;
  n->kids = {std::move(arg)};
  return TermBuilder::make(n);
}

Term Term::ret(Flavour f, Term arg) {
  auto n = node(TermKind::Ret);
  n->flavour = f;
  n->kids = {std::move(arg)};
  return TermBuilder::make(n);
}

Term Term::iota(Term arg) {
  auto n = node(TermKind::Iota);
  n->kids = {std::move(arg)};
  return TermBuilder::make(n);
}

Term Term::do_(Flavour f, Term bound, Term body, std::string hint) {
  auto n = node(TermKind::Do);
  n->flavour = f;
  n->name = std::move(hint);
  n->kids = {std::move(bound), std::move(body)};
  return TermBuilder::make(n);
}

TermKind Term::kind() const { return node_->kind; }
std::size_t Term::index() const { return node_->index; }
const std::string& Term::name() const { return node_->name; }
const Type& Term::annot() const { return *node_->annot; }
Flavour Term::flavour() const { return node_->flavour; }
int Term::proj_index() const { return node_->proj; }
std::size_t Term::arity() const { return node_->kids.size(); }
const Term& Term::child(std::size_t i) const { return node_->kids.at(i); }
std::size_t Term::size() const { return node_->size; }
std::size_t Term::hash() const { return node_->hash; }

std::size_t Term::binders_above(std::size_t i) const {
  if (node_->kind == TermKind::Lam) return 1;
  if (node_->kind == TermKind::Do && i == 1) return 1;
  return 0;
}

Term Term::with_child(std::size_t i, Term c) const {
  auto n = std::make_shared<Node>(*node_);
  n->kids.at(i) = std::move(c);
  n->size = 1;
  return TermBuilder::make(n);
}

bool operator==(const Term& x, const Term& y) {
  if (x.node_ == y.node_) return true;
  const auto& a = *x.node_;
  const auto& b = *y.node_;
  if (a.hash != b.hash || a.kind != b.kind || a.size != b.size) return false;
  switch (a.kind) {
    case TermKind::Var:
      return a.index == b.index;
    case TermKind::Free:
      return a.name == b.name;
    case TermKind::Lam:
      if (*a.annot != *b.annot) return false;
      break;
    case TermKind::Proj:
      if (a.proj != b.proj) return false;
      break;
    case TermKind::Ret:
    case TermKind::Do:
      if (a.flavour != b.flavour) return false;
      break;
    default:
      break;
  }
  for (std::size_t i = 0; i < a.kids.size(); ++i)
    if (a.kids[i] != b.kids[i]) return false;
  return true;
}

// --- substitution ------------------------------------------------------------

namespace {

template <class OnVar>
Term map_vars(const Term& t, std::size_t depth, const OnVar& on_var) {
  if (t.is(TermKind::Var)) return on_var(t, depth);
  if (t.arity() == 0) return t;
  Term out = t;
  for (std::size_t i = 0; i < t.arity(); ++i) {
    Term c = map_vars(t.child(i), depth + t.binders_above(i), on_var);
    if (c.identity() != t.child(i).identity()) out = out.with_child(i, std::move(c));
  }
  return out;
}

}  // namespace

Term shift(const Term& t, std::ptrdiff_t by, std::size_t cutoff) {
  if (by == 0) return t;
  return map_vars(t, cutoff, [by](const Term& v, std::size_t depth) {
    if (v.index() < depth) return v;
    auto idx = static_cast<std::ptrdiff_t>(v.index()) + by;
    if (idx < static_cast<std::ptrdiff_t>(depth)) throw Error("shift would capture a free index");
    return Term::var(static_cast<std::size_t>(idx));
  });
}

Term substitute(const Term& body, const Term& replacement) {
  return map_vars(body, 0, [&](const Term& v, std::size_t depth) {
    if (v.index() < depth) return v;
    if (v.index() == depth) return shift(replacement, static_cast<std::ptrdiff_t>(depth));
    return Term::var(v.index() - 1);
  });
}

Term substitute_free(const Term& body, std::string_view name, const Term& replacement) {
  if (body.is(TermKind::Free)) return body.name() == name ? replacement : body;
  Term out = body;
  for (std::size_t i = 0; i < body.arity(); ++i) {
    const Term& r = body.binders_above(i) ? shift(replacement, 1) : replacement;
    Term c = substitute_free(body.child(i), name, r);
    if (c.identity() != body.child(i).identity()) out = out.with_child(i, std::move(c));
  }
  return out;
}

Term rename_free(const Term& t, const std::function<Term(std::size_t)>& f) {
  return map_vars(t, 0, [&](const Term& v, std::size_t depth) {
    if (v.index() < depth) return v;
    return shift(f(v.index() - depth), static_cast<std::ptrdiff_t>(depth));
  });
}

bool occurs(const Term& t, std::size_t index) {
  if (t.is(TermKind::Var)) return t.index() == index;
  for (std::size_t i = 0; i < t.arity(); ++i)
    if (occurs(t.child(i), index + t.binders_above(i))) return true;
  return false;
}

namespace {

void collect_free(const Term& t, std::vector<std::string>& out) {
  if (t.is(TermKind::Free)) {
    for (const auto& n : out)
      if (n == t.name()) return;
    out.push_back(t.name());
    return;
  }
  for (std::size_t i = 0; i < t.arity(); ++i) collect_free(t.child(i), out);
}

}  // namespace

std::vector<std::string> free_names(const Term& t) {
  std::vector<std::string> out;
  collect_free(t, out);
  return out;
}

}  // namespace csc
