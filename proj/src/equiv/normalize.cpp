#include <algorithm>
#include <random>

#include "csc/equiv.hpp"

namespace csc {

namespace {

struct Redex {
  Path path;
  std::string rule;
  Term result;
};

class RedexFinder {
 public:
  RedexFinder(const Theory& th, const Context& ctx, TypeClosure& tc, bool all) : th_(th), ctx_(ctx), tc_(tc), all_(all) {}

  std::vector<Redex> find(const Term& t) {
    found_.clear();
    Locals locals;
    Path path;
    visit(t, locals, path);
    return std::move(found_);
  }

 private:
  // Returns true once a redex has been found and only the first is wanted.
  bool visit(const Term& t, Locals& locals, Path& path) {
    Site site{th_, ctx_, locals, tc_};
    for (const auto& rule : oriented_rules()) {
      if (auto r = apply_rule(rule, t, site)) {
        found_.push_back({path, rule, *r});
        if (!all_) return true;
        break;
      }
    }
    for (std::size_t i = 0; i < t.arity(); ++i) {
      bool pushed = false;
      if (t.binders_above(i)) {
        if (t.is(TermKind::Lam)) {
          locals.push_back(t.annot());
        } else {
          Type head = infer(th_, ctx_, t.child(0), locals, tc_);
          auto m = tc_.find_shape(head, TypeKind::Monad, t.flavour());
          if (!m) throw TypeError(TypeErrorKind::NotMonadic, to_string(head));
          locals.push_back(m->inner());
        }
        pushed = true;
      }
      path.push_back(i);
      bool done = visit(t.child(i), locals, path);
      path.pop_back();
      if (pushed) locals.pop_back();
      if (done) return true;
    }
    return false;
  }

  const Theory& th_;
  const Context& ctx_;
  TypeClosure& tc_;
  bool all_;
  std::vector<Redex> found_;
};

// Canonical ordering of binding runs. A run is a maximal chain of do bindings
// of one flavour. In a T run only iota-headed bindings move; in an S run all
// of them do. Movable bindings go as far left as dependencies allow, ordered
// by a printed key; the others keep their relative order.
class Sorter {
 public:
  Sorter(const Theory& th, const Context& ctx, TypeClosure& tc, Term whole, RewriteTrace* trace)
      : th_(th), ctx_(ctx), tc_(tc), whole_(std::move(whole)), trace_(trace) {}

  Term run() {
    Path p;
    walk(p, false);
    return whole_;
  }

 private:
  void record(const std::string& rule, const Path& p, const Term& sub_after) {
    Term next = replace_at(whole_, p, sub_after);
    if (trace_) trace_->steps.push_back({rule, p, whole_, next});
    whole_ = std::move(next);
  }

  void walk(Path& path, bool in_chain) {
    {
      const Term& t = subterm_at(whole_, path);
      if (t.is(TermKind::Do) && !in_chain) sort_run(path, t.flavour());
    }
    const Term t = subterm_at(whole_, path);
    for (std::size_t i = 0; i < t.arity(); ++i) {
      const bool chain = t.is(TermKind::Do) && i == 1 && t.child(1).is(TermKind::Do) &&
                         t.child(1).flavour() == t.flavour();
      path.push_back(i);
      walk(path, chain);
      path.pop_back();
    }
  }

  static bool movable(Flavour f, const Term& head) { return f == Flavour::S || head.is(TermKind::Iota); }

  // Heads of the chain at `p` (each under the binders before it) and its tail.
  static std::vector<Term> heads_of(const Term& t, Flavour f, Term* tail) {
    std::vector<Term> heads;
    const Term* cur = &t;
    for (; cur->is(TermKind::Do) && cur->flavour() == f; cur = &cur->child(1)) heads.push_back(cur->child(0));
    if (tail) *tail = *cur;
    return heads;
  }

  std::vector<std::size_t> target_order(const std::vector<Term>& heads, Flavour f) {
    const std::size_t n = heads.size();
    std::vector<std::vector<std::size_t>> deps(n);
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t i = 0; i < j; ++i)
        if (occurs(heads[j], j - 1 - i)) deps[j].push_back(i);
    std::vector<std::size_t> order;
    std::vector<long> pos(n, -1);
    auto available = [&](std::size_t j) {
      if (pos[j] >= 0) return false;
      for (auto d : deps[j])
        if (pos[d] < 0) return false;
      return true;
    };
    auto key = [&](std::size_t j) {
      Term r = rename_free(heads[j], [&](std::size_t k) {
        if (k < j) return Term::free("#" + std::to_string(pos[j - 1 - k]));
        return Term::free("#o" + std::to_string(k - j));
      });
      return to_string(r);
    };
    while (order.size() < n) {
      long best = -1;
      std::string best_key;
      for (std::size_t j = 0; j < n; ++j) {
        if (!available(j) || !movable(f, heads[j])) continue;
        std::string k = key(j);
        if (best < 0 || k < best_key) best = static_cast<long>(j), best_key = std::move(k);
      }
      if (best < 0)
        for (std::size_t j = 0; j < n && best < 0; ++j)
          if (available(j)) best = static_cast<long>(j);
      if (best < 0) throw Error("binding dependencies are cyclic");
      pos[best] = static_cast<long>(order.size());
      order.push_back(static_cast<std::size_t>(best));
    }
    return order;
  }

  void sort_run(const Path& path, Flavour f) {
    const std::string rule = f == Flavour::T ? "S.central" : "S.comm";
    const std::size_t mark = trace_ ? trace_->steps.size() : 0;
    const Term original = whole_;

    Term tail = Term::star();
    std::vector<Term> heads = heads_of(subterm_at(whole_, path), f, &tail);
    Path tail_path = path;
    tail_path.insert(tail_path.end(), heads.size(), 1);

    // A movable tail E takes part as do z <- E; ret z.
    bool expanded = false;
    if (!tail.is(TermKind::Ret) && movable(f, tail) && !heads.empty()) {
      record("X.eta", tail_path, Term::do_(f, tail, Term::ret(f, Term::var(0)), "z"));
      heads.push_back(tail);
      expanded = true;
    }
    if (heads.size() < 2) return;

    const auto order = target_order(heads, f);
    std::vector<std::size_t> cur(heads.size());
    for (std::size_t i = 0; i < cur.size(); ++i) cur[i] = i;
    Locals no_locals;
    Site site{th_, ctx_, no_locals, tc_};
    for (std::size_t q = 0; q < order.size(); ++q) {
      std::size_t r = std::find(cur.begin(), cur.end(), order[q]) - cur.begin();
      for (; r > q; --r) {
        Path sp = path;
        sp.insert(sp.end(), r - 1, 1);
        auto swapped = apply_rule(rule, subterm_at(whole_, sp), site);
        if (!swapped) throw Error("internal: canonical swap not applicable at " + path_string(sp));
        record(rule, sp, *swapped);
        std::swap(cur[r - 1], cur[r]);
      }
    }

    if (expanded) {
      Path last = path;
      last.insert(last.end(), heads.size() - 1, 1);
      const Term& d = subterm_at(whole_, last);
      if (d.child(1) == Term::ret(f, Term::var(0))) record("X.eta", last, d.child(0));
    }
    if (whole_ == original) {
      if (trace_) trace_->steps.erase(trace_->steps.begin() + static_cast<std::ptrdiff_t>(mark), trace_->steps.end());
    }
  }

  const Theory& th_;
  const Context& ctx_;
  TypeClosure& tc_;
  Term whole_;
  RewriteTrace* trace_;
};

// Type-directed comparison of normal forms.
class Conv {
 public:
  Conv(const Theory& th, const Context& ctx, TypeClosure& tc, Locals locals)
      : th_(th), ctx_(ctx), tc_(tc), locals_(std::move(locals)) {}

  bool conv(const Term& a, const Term& b, const Type& type) {
    if (a == b) return true;
    if (tc_.is_unit(type)) return true;
    if (auto arr = tc_.find_shape(type, TypeKind::Arrow)) {
      locals_.push_back(arr->dom());
      bool r = conv(body(a), body(b), arr->cod());
      locals_.pop_back();
      return r;
    }
    if (auto pr = tc_.find_shape(type, TypeKind::Prod))
      return conv(component(a, 1), component(b, 1), pr->left()) &&
             conv(component(a, 2), component(b, 2), pr->right());
    return same(a, b);
  }

 private:
  static Term body(const Term& f) {
    if (f.is(TermKind::Lam)) return f.child(0);
    return Term::app(shift(f, 1), Term::var(0));
  }
  static Term component(const Term& p, int i) {
    if (p.is(TermKind::Pair)) return p.child(static_cast<std::size_t>(i - 1));
    return Term::proj(i, p);
  }
  Type type_of(const Term& t) { return infer(th_, ctx_, t, locals_, tc_); }

  bool same(const Term& a, const Term& b) {
    if (a.kind() != b.kind()) return false;
    switch (a.kind()) {
      case TermKind::Var:
        return a.index() == b.index();
      case TermKind::Free:
        return a.name() == b.name();
      case TermKind::Star:
        return true;
      case TermKind::App: {
        if (!same(a.child(0), b.child(0))) return false;
        auto arr = tc_.find_shape(type_of(a.child(0)), TypeKind::Arrow);
        return arr && conv(a.child(1), b.child(1), arr->dom());
      }
      case TermKind::Proj:
        return a.proj_index() == b.proj_index() && same(a.child(0), b.child(0));
      case TermKind::Ret:
        return a.flavour() == b.flavour() && conv(a.child(0), b.child(0), type_of(a.child(0)));
      case TermKind::Iota:
        return conv(a.child(0), b.child(0), type_of(a.child(0)));
      case TermKind::Do: {
        if (a.flavour() != b.flavour()) return false;
        Type ht = type_of(a.child(0));
        if (!conv(a.child(0), b.child(0), ht)) return false;
        auto m = tc_.find_shape(ht, TypeKind::Monad, a.flavour());
        if (!m) return false;
        locals_.push_back(m->inner());
        Type bt = type_of(a.child(1));
        bool r = conv(a.child(1), b.child(1), bt);
        locals_.pop_back();
        return r;
      }
      case TermKind::Lam: {
        if (!tc_.equal(a.annot(), b.annot())) return false;
        locals_.push_back(a.annot());
        Type bt = type_of(a.child(0));
        bool r = conv(a.child(0), b.child(0), bt);
        locals_.pop_back();
        return r;
      }
      case TermKind::Pair:
        return conv(a.child(0), b.child(0), type_of(a.child(0))) && conv(a.child(1), b.child(1), type_of(a.child(1)));
    }
    return false;
  }

  const Theory& th_;
  const Context& ctx_;
  TypeClosure& tc_;
  Locals locals_;
};

}  // namespace

Term sort_central_runs(const Theory& th, const Context& ctx, const Term& m, RewriteTrace* trace) {
  TypeClosure tc(th);
  return Sorter(th, ctx, tc, m, trace).run();
}

bool eta_equal_at(const Site& site, const Term& a, const Term& b, const Type& type) {
  try {
    return Conv(site.th, site.ctx, site.tc, site.locals).conv(a, b, type);
  } catch (const TypeError&) {
    return false;
  }
}

bool eta_equal(const Theory& th, const Context& ctx, const Term& a, const Term& b, const Type& type) {
  TypeClosure tc(th);
  Locals none;
  return eta_equal_at(Site{th, ctx, none, tc}, a, b, type);
}

Normalized normalize(const Theory& th, const Context& ctx, const Term& m, const NormalizeOptions& opts) {
  infer(th, ctx, m);
  TypeClosure tc(th);
  Normalized out{m, {}};
  std::optional<std::mt19937_64> rng;
  if (opts.shuffle_seed) rng.emplace(*opts.shuffle_seed);
  RedexFinder finder(th, ctx, tc, rng.has_value());

  std::size_t steps = 0;
  for (;;) {
    for (;;) {
      auto redexes = finder.find(out.term);
      if (redexes.empty()) break;
      if (++steps > opts.max_steps) throw Error("normalization exceeded " + std::to_string(opts.max_steps) + " steps");
      const Redex& r = rng ? redexes[std::uniform_int_distribution<std::size_t>(0, redexes.size() - 1)(*rng)]
                           : redexes.front();
      Term next = replace_at(out.term, r.path, r.result);
      out.trace.steps.push_back({r.rule, r.path, out.term, next});
      out.term = std::move(next);
    }
    if (!opts.sort_central) break;
    Term sorted = Sorter(th, ctx, tc, out.term, &out.trace).run();
    if (sorted == out.term) break;
    out.term = std::move(sorted);
    if (++steps > opts.max_steps) throw Error("normalization exceeded " + std::to_string(opts.max_steps) + " steps");
  }
  return out;
}

}  // namespace csc
