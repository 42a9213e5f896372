#include <functional>

#include "csc/fuzz.hpp"

namespace csc {

namespace {

std::size_t pick(std::mt19937_64& rng, std::size_t n) { return std::uniform_int_distribution<std::size_t>(0, n - 1)(rng); }
bool coin(std::mt19937_64& rng, double p = 0.5) { return std::bernoulli_distribution(p)(rng); }

class Generator {
 public:
  Generator(const Theory& th, const Context& ctx, std::mt19937_64& rng, const FuzzOptions& opts)
      : th_(th), ctx_(ctx), rng_(rng), opts_(opts), tc_(th) {}

  Term gen(const Type& a, Locals& locals, int depth) {
    std::vector<Term> atoms = atoms_of(a, locals);
    if (depth <= 0) {
      if (!atoms.empty() && coin(rng_, 0.6)) return atoms[pick(rng_, atoms.size())];
      return canonical(a, locals);
    }
    const bool monad = tc_.find_shape(a, TypeKind::Monad).has_value();
    // weights: atom, intro, (\x. M) N, fst <M, N>, monadic
    std::discrete_distribution<int> choice =
        monad ? std::discrete_distribution<int>{2, 1, 1, 1, 5} : std::discrete_distribution<int>{3, 4, 1, 1, 0};
    for (int attempt = 0; attempt < 4; ++attempt) {
      switch (choice(rng_)) {
        case 0:
          if (!atoms.empty()) return atoms[pick(rng_, atoms.size())];
          break;
        case 1:
          return intro(a, locals, depth);
        case 2: {  // (\x:B. M) N
          Type b = small();
          locals.push_back(b);
          Term body = gen(a, locals, depth - 1);
          locals.pop_back();
          return Term::app(Term::lam(b, body, "v"), gen(b, locals, depth - 1));
        }
        case 3: {  // fst <M, N>
          Term l = gen(a, locals, depth - 1);
          return Term::proj(1, Term::pair(l, gen(aux(), locals, depth - 1)));
        }
        default:
          if (auto m = tc_.find_shape(a, TypeKind::Monad)) return monadic(*m, locals, depth);
          break;
      }
    }
    return canonical(a, locals);
  }

  /// Types for binders whose function tables must stay small.
  Type small() { return coin(rng_) ? Type::unit() : Type::prod(Type::unit(), Type::unit()); }

  Type aux() {
    static const Type choices[] = {Type::unit(), Type::prod(Type::unit(), Type::unit()), Type::mon_t(Type::unit())};
    return choices[pick(rng_, 3)];
  }

 private:
  std::vector<Term> atoms_of(const Type& a, const Locals& locals) {
    std::vector<Term> out;
    for (std::size_t i = 0; i < locals.size(); ++i)
      if (tc_.equal(locals[locals.size() - 1 - i], a)) out.push_back(Term::var(i));
    for (const auto& [name, t] : ctx_.entries())
      if (tc_.equal(t, a)) out.push_back(Term::free(name));
    if (opts_.use_constants)
      for (const auto& [name, t] : th_.constants)
        if (!ctx_.lookup(name) && tc_.equal(t, a)) out.push_back(Term::free(name));
    return out;
  }

  Term intro(const Type& a, Locals& locals, int depth) {
    if (tc_.is_unit(a)) return Term::star();
    if (auto arr = tc_.find_shape(a, TypeKind::Arrow)) {
      locals.push_back(arr->dom());
      Term body = gen(arr->cod(), locals, depth - 1);
      locals.pop_back();
      return Term::lam(arr->dom(), body, "v");
    }
    if (auto pr = tc_.find_shape(a, TypeKind::Prod))
      return Term::pair(gen(pr->left(), locals, depth - 1), gen(pr->right(), locals, depth - 1));
    if (auto m = tc_.find_shape(a, TypeKind::Monad)) return monadic(*m, locals, depth);
    return canonical(a, locals);
  }

  Term monadic(const Type& m, Locals& locals, int depth) {
    const Flavour f = m.flavour();
    switch (pick(rng_, 4)) {
      case 0:
        return Term::ret(f, gen(m.inner(), locals, depth - 1));
      case 1:
        if (f == Flavour::T) return Term::iota(gen(Type::mon_s(m.inner()), locals, depth - 1));
        [[fallthrough]];
      default: {
        Type b = coin(rng_) ? Type::unit() : m.inner();
        Term head = gen(Type::monad(f, b), locals, depth - 1);
        locals.push_back(b);
        Term body = gen(m, locals, depth - 1);
        locals.pop_back();
        return Term::do_(f, head, body, "y");
      }
    }
  }

  Term canonical(const Type& a, Locals& locals) {
    if (tc_.is_unit(a)) return Term::star();
    if (auto arr = tc_.find_shape(a, TypeKind::Arrow)) {
      locals.push_back(arr->dom());
      Term body = canonical(arr->cod(), locals);
      locals.pop_back();
      return Term::lam(arr->dom(), body, "v");
    }
    if (auto pr = tc_.find_shape(a, TypeKind::Prod))
      return Term::pair(canonical(pr->left(), locals), canonical(pr->right(), locals));
    if (auto m = tc_.find_shape(a, TypeKind::Monad)) return Term::ret(m->flavour(), canonical(m->inner(), locals));
    auto atoms = atoms_of(a, locals);
    if (atoms.empty()) throw Error("no term of type " + to_string(a) + " can be built here");
    return atoms[pick(rng_, atoms.size())];
  }

  const Theory& th_;
  const Context& ctx_;
  std::mt19937_64& rng_;
  FuzzOptions opts_;
  TypeClosure tc_;
};

struct Position {
  Path path;
  Locals locals;
};

void positions(const Theory& th, const Context& ctx, TypeClosure& tc, const Term& t, Locals& locals, Path& path,
               std::vector<Position>& out) {
  out.push_back({path, locals});
  for (std::size_t i = 0; i < t.arity(); ++i) {
    bool pushed = false;
    if (t.binders_above(i)) {
      if (t.is(TermKind::Lam)) {
        locals.push_back(t.annot());
      } else {
        auto m = tc.find_shape(infer(th, ctx, t.child(0), locals, tc), TypeKind::Monad, t.flavour());
        if (!m) continue;
        locals.push_back(m->inner());
      }
      pushed = true;
    }
    path.push_back(i);
    positions(th, ctx, tc, t.child(i), locals, path, out);
    path.pop_back();
    if (pushed) locals.pop_back();
  }
}

}  // namespace

std::vector<Type> fuzz_types(const Theory& th) {
  const Type one = Type::unit();
  std::vector<Type> out = {one,
                           Type::mon_t(one),
                           Type::mon_s(one),
                           Type::prod(one, one),
                           Type::mon_t(Type::prod(one, one)),
                           Type::arrow(one, Type::mon_t(one)),
                           Type::prod(Type::mon_t(one), one)};
  for (const auto& g : th.ground_types) {
    out.push_back(Type::ground(g));
    out.push_back(Type::mon_t(Type::ground(g)));
  }
  return out;
}

Term generate_term(const Theory& th, const Context& ctx, const Type& a, std::mt19937_64& rng, const FuzzOptions& opts) {
  Generator g(th, ctx, rng, opts);
  Locals locals;
  return g.gen(a, locals, opts.depth);
}

Term perturb(const Theory& th, const Context& ctx, const Term& m, int steps, std::mt19937_64& rng, RewriteTrace* trace,
             const FuzzOptions& opts) {
  TypeClosure tc(th);
  Generator g(th, ctx, rng, FuzzOptions{1, opts.use_constants, false, 0});
  Term cur = m;
  int axiom_steps = 0;
  for (int s = 0; s < steps; ++s) {
    std::vector<Position> pos;
    {
      Locals locals;
      Path path;
      positions(th, ctx, tc, cur, locals, path, pos);
    }
    for (int attempt = 0; attempt < 20; ++attempt) {
      Position& p = pos[pick(rng, pos.size())];
      Term sub = subterm_at(cur, p.path);
      Site site{th, ctx, p.locals, tc};
      Type a = infer(th, ctx, sub, p.locals, tc);
      std::optional<Term> r;
      std::string rule;
      switch (pick(rng, 14)) {
        case 0: {  // any oriented contraction
          for (const auto& name : oriented_rules())
            if ((r = apply_rule(name, sub, site))) {
              rule = name;
              break;
            }
          break;
        }
        case 1: {
          Type b = g.small();
          r = Term::app(Term::lam(b, shift(sub, 1), "v"), g.gen(b, p.locals, 1));
          rule = "lam.beta";
          break;
        }
        case 2:
          r = Term::proj(1, Term::pair(sub, g.gen(g.aux(), p.locals, 1)));
          rule = "prod.beta";
          break;
        case 3:
          if (auto mon = tc.find_shape(a, TypeKind::Monad)) {
            Type b = g.aux();
            r = Term::do_(mon->flavour(), Term::ret(mon->flavour(), g.gen(b, p.locals, 1)), shift(sub, 1), "w");
            rule = "X.beta";
          }
          break;
        case 4:
          if (auto mon = tc.find_shape(a, TypeKind::Monad)) {
            r = Term::do_(mon->flavour(), sub, Term::ret(mon->flavour(), Term::var(0)), "w");
            rule = "X.eta";
          }
          break;
        case 5:
          if (tc.find_shape(a, TypeKind::Arrow)) {
            r = Term::lam(tc.find_shape(a, TypeKind::Arrow)->dom(), Term::app(shift(sub, 1), Term::var(0)), "v");
            rule = "lam.eta";
          } else if (tc.find_shape(a, TypeKind::Prod)) {
            r = Term::pair(Term::proj(1, sub), Term::proj(2, sub));
            rule = "prod.eta";
          }
          break;
        case 6:
          if (sub.is(TermKind::Star)) {
            Term e = g.gen(Type::unit(), p.locals, 2);
            if (!e.is(TermKind::Star)) r = e, rule = "unit.eta";
          }
          break;
        case 7:  // do x <- M; do y <- N; P  with P not using x  ~>  do y <- (do x <- M; N); P
          if (sub.is(TermKind::Do) && sub.child(1).is(TermKind::Do) && sub.child(1).flavour() == sub.flavour() &&
              !occurs(sub.child(1).child(1), 1)) {
            const Term& inner = sub.child(1);
            r = Term::do_(sub.flavour(), Term::do_(sub.flavour(), sub.child(0), inner.child(0), sub.name()),
                          shift(inner.child(1), -1, 1), inner.name());
            rule = "X.assoc";
          }
          break;
        case 8:
          if (sub.is(TermKind::Ret) && sub.flavour() == Flavour::T) {
            r = Term::iota(Term::ret(Flavour::S, sub.child(0)));
            rule = "iotaS.ret";
          } else if (sub.is(TermKind::Do) && sub.flavour() == Flavour::T && sub.child(0).is(TermKind::Iota) &&
                     sub.child(1).is(TermKind::Iota)) {
            r = Term::iota(Term::do_(Flavour::S, sub.child(0).child(0), sub.child(1).child(0), sub.name()));
            rule = "iotaS.comp";
          }
          break;
        case 9:
          for (const char* name : {"S.central", "S.comm"})
            if ((r = apply_rule(name, sub, site))) {
              rule = name;
              break;
            }
          break;
        default:
          if (opts.use_axioms && axiom_steps < opts.max_axiom_steps && !th.term_axioms.empty()) {
            std::vector<std::pair<const TermAxiom*, Term>> results;
            for (const auto& ax : th.term_axioms)
              for (auto& t : apply_axiom(ax, sub, site)) results.emplace_back(&ax, std::move(t));
            if (!results.empty()) {
              auto& [ax, t] = results[pick(rng, results.size())];
              r = t;
              rule = "axiom:" + ax->label;
              ++axiom_steps;
            }
          }
          break;
      }
      if (!r) continue;
      Term next = replace_at(cur, p.path, *r);
      if (trace) trace->steps.push_back({rule, p.path, cur, next});
      cur = std::move(next);
      break;
    }
  }
  return cur;
}

}  // namespace csc
