#include <functional>

#include "csc/syntax.hpp"

namespace csc {

const char* to_string(Flavour f) { return f == Flavour::S ? "S" : "T"; }

ParseError::ParseError(std::size_t line, std::size_t column, std::vector<std::string> expected,
                       const std::string& found)
    : Error([&] {
        std::string msg = "parse error at " + std::to_string(line) + ":" + std::to_string(column) +
                          ": unexpected " + found;
        if (!expected.empty()) {
          msg += ", expected one of:";
          for (const auto& e : expected) msg += " " + e;
        }
        return msg;
      }()),
      line_(line),
      column_(column),
      expected_(std::move(expected)) {}

struct Type::Node {
  TypeKind kind;
  std::string name;
  Flavour flavour = Flavour::T;
  std::optional<Type> a;
  std::optional<Type> b;
  std::size_t hash = 0;
};

namespace {

std::size_t mix(std::size_t h, std::size_t v) {
  return h ^ (v + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2));
}

}  // namespace

Type Type::unit() {
  static const Type u = [] {
    auto n = std::make_shared<Node>();
    n->kind = TypeKind::Unit;
    n->hash = 17;
    return Type(n);
  }();
  return u;
}

Type Type::ground(std::string name) {
  if (name.empty()) throw Error("ground type name must be nonempty");
  auto n = std::make_shared<Node>();
  n->kind = TypeKind::Ground;
  n->hash = mix(31, std::hash<std::string>{}(name));
  n->name = std::move(name);
  return Type(n);
}

Type Type::arrow(Type dom, Type cod) {
  auto n = std::make_shared<Node>();
  n->kind = TypeKind::Arrow;
  n->hash = mix(mix(41, dom.hash()), cod.hash());
  n->a = std::move(dom);
  n->b = std::move(cod);
  return Type(n);
}

Type Type::prod(Type left, Type right) {
  auto n = std::make_shared<Node>();
  n->kind = TypeKind::Prod;
  n->hash = mix(mix(43, left.hash()), right.hash());
  n->a = std::move(left);
  n->b = std::move(right);
  return Type(n);
}

Type Type::monad(Flavour f, Type inner) {
  auto n = std::make_shared<Node>();
  n->kind = TypeKind::Monad;
  n->flavour = f;
  n->hash = mix(f == Flavour::S ? 47 : 53, inner.hash());
  n->a = std::move(inner);
  return Type(n);
}

TypeKind Type::kind() const { return node_->kind; }
bool Type::is_monad(Flavour f) const { return node_->kind == TypeKind::Monad && node_->flavour == f; }
const std::string& Type::name() const { return node_->name; }
Flavour Type::flavour() const { return node_->flavour; }
const Type& Type::dom() const { return *node_->a; }
const Type& Type::cod() const { return *node_->b; }
const Type& Type::left() const { return *node_->a; }
const Type& Type::right() const { return *node_->b; }
const Type& Type::inner() const { return *node_->a; }
std::size_t Type::hash() const { return node_->hash; }

bool operator==(const Type& x, const Type& y) {
  if (x.node_ == y.node_) return true;
  if (x.node_->hash != y.node_->hash || x.kind() != y.kind()) return false;
  switch (x.kind()) {
    case TypeKind::Unit:
      return true;
    case TypeKind::Ground:
      return x.name() == y.name();
    case TypeKind::Arrow:
    case TypeKind::Prod:
      return *x.node_->a == *y.node_->a && *x.node_->b == *y.node_->b;
    case TypeKind::Monad:
      return x.flavour() == y.flavour() && x.inner() == y.inner();
  }
  return false;
}

bool operator<(const Type& x, const Type& y) {
  if (x.kind() != y.kind()) return x.kind() < y.kind();
  switch (x.kind()) {
    case TypeKind::Unit:
      return false;
    case TypeKind::Ground:
      return x.name() < y.name();
    case TypeKind::Arrow:
    case TypeKind::Prod:
      if (*x.node_->a != *y.node_->a) return *x.node_->a < *y.node_->a;
      return *x.node_->b < *y.node_->b;
    case TypeKind::Monad:
      if (x.flavour() != y.flavour()) return x.flavour() < y.flavour();
      return x.inner() < y.inner();
  }
  return false;
}

Context::Context(std::initializer_list<std::pair<std::string, Type>> entries) {
  for (const auto& [n, t] : entries) push(n, t);
}

void Context::push(std::string name, Type type) {
  if (lookup(name) != nullptr) throw Error("context repeats variable '" + name + "'");
  entries_.emplace_back(std::move(name), std::move(type));
}

Context Context::extended(std::string name, Type type) const {
  Context c = *this;
  c.push(std::move(name), std::move(type));
  return c;
}

const Type* Context::lookup(std::string_view name) const {
  for (const auto& [n, t] : entries_)
    if (n == name) return &t;
  return nullptr;
}

std::optional<std::size_t> Context::position(std::string_view name) const {
  for (std::size_t i = 0; i < entries_.size(); ++i)
    if (entries_[i].first == name) return i;
  return std::nullopt;
}

}  // namespace csc
