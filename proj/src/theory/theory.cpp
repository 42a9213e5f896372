#include <limits>
#include <tuple>

#include "csc/theory.hpp"
#include "csc/typecheck.hpp"

namespace csc {

namespace {
constexpr std::size_t npos = std::numeric_limits<std::size_t>::max();
}

const Type* Theory::constant(std::string_view n) const {
  auto it = constants.find(std::string(n));
  return it == constants.end() ? nullptr : &it->second;
}

TypeClosure::TypeClosure(const Theory& th) : trivial_(th.type_axioms.empty()) {
  for (const auto& [a, b] : th.type_axioms) {
    std::size_t i = intern(a);
    std::size_t j = intern(b);
    parent_[find(i)] = find(j);
  }
  dirty_ = true;
}

std::size_t TypeClosure::intern(const Type& t) {
  if (auto it = ids_.find(t); it != ids_.end()) return it->second;
  std::size_t a = npos, b = npos;
  switch (t.kind()) {
    case TypeKind::Arrow:
      a = intern(t.dom());
      b = intern(t.cod());
      break;
    case TypeKind::Prod:
      a = intern(t.left());
      b = intern(t.right());
      break;
    case TypeKind::Monad:
      a = intern(t.inner());
      break;
    default:
      break;
  }
  std::size_t id = nodes_.size();
  nodes_.push_back(t);
  parent_.push_back(id);
  kids_.emplace_back(a, b);
  ids_.emplace(t, id);
  dirty_ = true;
  return id;
}

std::size_t TypeClosure::find(std::size_t i) {
  while (parent_[i] != i) {
    parent_[i] = parent_[parent_[i]];
    i = parent_[i];
  }
  return i;
}

void TypeClosure::saturate() {
  if (!dirty_) return;
  bool changed = true;
  while (changed) {
    changed = false;
    std::map<std::tuple<int, int, std::string, std::size_t, std::size_t>, std::size_t> sig;
    for (std::size_t i = 0; i < nodes_.size(); ++i) {
      const Type& t = nodes_[i];
      int fl = t.is(TypeKind::Monad) ? static_cast<int>(t.flavour()) : -1;
      std::string nm = t.is(TypeKind::Ground) ? t.name() : std::string();
      auto [a, b] = kids_[i];
      auto key = std::make_tuple(static_cast<int>(t.kind()), fl, nm, a == npos ? npos : find(a),
                                 b == npos ? npos : find(b));
      auto [it, inserted] = sig.emplace(key, i);
      if (!inserted && find(it->second) != find(i)) {
        parent_[find(i)] = find(it->second);
        changed = true;
      }
    }
  }
  dirty_ = false;
}

bool TypeClosure::equal(const Type& a, const Type& b) {
  if (a == b) return true;
  if (trivial_) return false;
  std::size_t i = intern(a);
  std::size_t j = intern(b);
  saturate();
  return find(i) == find(j);
}

std::optional<Type> TypeClosure::find_shape(const Type& a, TypeKind kind,
                                            std::optional<Flavour> flavour) {
  auto matches = [&](const Type& t) {
    return t.kind() == kind && (!flavour || t.flavour() == *flavour);
  };
  if (matches(a)) return a;
  if (trivial_) return std::nullopt;
  std::size_t i = intern(a);
  saturate();
  for (std::size_t j = 0; j < nodes_.size(); ++j)
    if (find(j) == find(i) && matches(nodes_[j])) return nodes_[j];
  return std::nullopt;
}

bool type_equal(const Theory& th, const Type& a, const Type& b) {
  require_well_formed(th, a);
  require_well_formed(th, b);
  if (a == b) return true;
  TypeClosure c(th);
  return c.equal(a, b);
}

const char* to_string(DiagnosticKind k) {
  switch (k) {
    case DiagnosticKind::UnknownGroundType: return "UnknownGroundType";
    case DiagnosticKind::IllTypedAxiom: return "IllTypedAxiom";
    case DiagnosticKind::AxiomSidesDiffer: return "AxiomSidesDiffer";
    case DiagnosticKind::BadConstant: return "BadConstant";
  }
  return "?";
}

namespace {

std::optional<std::string> first_unknown_ground(const Theory& th, const Type& t) {
  switch (t.kind()) {
    case TypeKind::Unit:
      return std::nullopt;
    case TypeKind::Ground:
      if (th.ground_types.count(t.name())) return std::nullopt;
      return t.name();
    case TypeKind::Arrow:
      if (auto g = first_unknown_ground(th, t.dom())) return g;
      return first_unknown_ground(th, t.cod());
    case TypeKind::Prod:
      if (auto g = first_unknown_ground(th, t.left())) return g;
      return first_unknown_ground(th, t.right());
    case TypeKind::Monad:
      return first_unknown_ground(th, t.inner());
  }
  return std::nullopt;
}

}  // namespace

bool well_formed(const Theory& th, const Type& t) { return !first_unknown_ground(th, t); }

void require_well_formed(const Theory& th, const Type& t) {
  if (auto g = first_unknown_ground(th, t))
    throw TypeError(TypeErrorKind::UnknownGroundType, "unknown ground type '" + *g + "'");
}

std::vector<Diagnostic> validate_theory(const Theory& th) {
  std::vector<Diagnostic> out;
  auto check_type = [&](const Type& t, const std::string& where) {
    if (auto g = first_unknown_ground(th, t)) {
      out.push_back({DiagnosticKind::UnknownGroundType, "UnknownGroundType \"" + *g + "\" in " + where});
      return false;
    }
    return true;
  };
  for (const auto& [a, b] : th.type_axioms) {
    std::string where = "type-eq " + to_string(a) + " = " + to_string(b);
    check_type(a, where);
    check_type(b, where);
  }
  for (const auto& [c, t] : th.constants) check_type(t, "const " + c);
  for (const auto& ax : th.term_axioms) {
    bool ok = check_type(ax.type, "axiom " + ax.label);
    for (const auto& [n, t] : ax.ctx.entries()) ok = check_type(t, "axiom " + ax.label) && ok;
    if (!ok) continue;
    for (const auto& [n, t] : ax.ctx.entries()) {
      if (th.constant(n))
        out.push_back({DiagnosticKind::BadConstant,
                       "axiom " + ax.label + " binds '" + n + "' which is also a constant"});
    }
    for (int side = 0; side < 2; ++side) {
      const Term& m = side == 0 ? ax.lhs : ax.rhs;
      try {
        if (!check(th, ax.ctx, m, ax.type))
          out.push_back({DiagnosticKind::IllTypedAxiom,
                         "IllTypedAxiom " + ax.label + ": " + to_string(m) + " does not have type " +
                             to_string(ax.type)});
      } catch (const TypeError& e) {
        out.push_back({DiagnosticKind::IllTypedAxiom,
                       "IllTypedAxiom " + ax.label + ": " + std::string(e.what())});
      }
    }
  }
  return out;
}

}  // namespace csc
