#include <algorithm>

#include "csc/syntax.hpp"

namespace csc {
namespace {

// Precedence levels: 0 arrow, 1 product, 2 monad/atom.
std::string print_type(const Type& t, int level) {
  switch (t.kind()) {
    case TypeKind::Unit:
      return "1";
    case TypeKind::Ground:
      return t.name();
    case TypeKind::Arrow: {
      std::string s = print_type(t.dom(), 1) + " -> " + print_type(t.cod(), 0);
      return level > 0 ? "(" + s + ")" : s;
    }
    case TypeKind::Prod: {
      std::string s = print_type(t.left(), 1) + " * " + print_type(t.right(), 2);
      return level > 1 ? "(" + s + ")" : s;
    }
    case TypeKind::Monad:
      return std::string(to_string(t.flavour())) + " " + print_type(t.inner(), 2);
  }
  return "?";
}

class TermPrinter {
 public:
  explicit TermPrinter(const Term& root) : free_(free_names(root)) {}

  // Levels: 0 full term, 1 application head, 2 argument.
  std::string print(const Term& t, int level) {
    switch (t.kind()) {
      case TermKind::Var:
        if (t.index() < scope_.size()) return scope_[scope_.size() - 1 - t.index()];
        return "#" + std::to_string(t.index() - scope_.size());  // dangling index
      case TermKind::Free:
        return t.name();
      case TermKind::Star:
        return "*";
      case TermKind::Lam: {
        std::string name = fresh(t.name(), t.child(0));
        std::string head = "\\" + name + ":" + print_type(t.annot(), 0) + ". ";
        scope_.push_back(name);
        std::string s = head + print(t.child(0), 0);
        scope_.pop_back();
        return level > 0 ? "(" + s + ")" : s;
      }
      case TermKind::Do: {
        std::string bound = print(t.child(0), 1);
        std::string name = fresh(t.name(), t.child(1));
        scope_.push_back(name);
        std::string s = std::string("do_") + to_string(t.flavour()) + " " + name + " <- " + bound +
                        "; " + print(t.child(1), 0);
        scope_.pop_back();
        return level > 0 ? "(" + s + ")" : s;
      }
      case TermKind::App: {
        std::string s = print(t.child(0), 1) + " " + print(t.child(1), 2);
        return level > 1 ? "(" + s + ")" : s;
      }
      case TermKind::Pair:
        return "<" + print(t.child(0), 0) + ", " + print(t.child(1), 0) + ">";
      case TermKind::Proj:
      case TermKind::Ret:
      case TermKind::Iota: {
        std::string kw = t.is(TermKind::Proj) ? (t.proj_index() == 1 ? "fst" : "snd")
                         : t.is(TermKind::Iota) ? "iota"
                                                : std::string("ret_") + to_string(t.flavour());
        std::string s = kw + " " + print(t.child(0), 2);
        return level > 1 ? "(" + s + ")" : s;
      }
    }
    return "?";
  }

 private:
  bool taken(const std::string& n) const {
    return std::find(scope_.begin(), scope_.end(), n) != scope_.end() ||
           std::find(free_.begin(), free_.end(), n) != free_.end();
  }

  std::string fresh(std::string hint, const Term& body) {
    if (!occurs(body, 0)) return "_";
    if (hint.empty() || hint == "_" || hint == "*") hint = "x";
    if (!taken(hint)) return hint;
    for (std::size_t i = 1;; ++i) {
      std::string c = hint + std::to_string(i);
      if (!taken(c)) return c;
    }
  }

  std::vector<std::string> free_;
  std::vector<std::string> scope_;
};

}  // namespace

std::string to_string(const Type& t) { return print_type(t, 0); }

std::string to_string(const Term& t) {
  TermPrinter p(t);
  return p.print(t, 0);
}

std::string to_string(const Context& c) {
  std::string s = "[";
  for (std::size_t i = 0; i < c.size(); ++i) {
    if (i) s += ", ";
    s += c.entries()[i].first + " : " + to_string(c.entries()[i].second);
  }
  return s + "]";
}

}  // namespace csc
