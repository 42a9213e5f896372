#include <functional>

#include "csc/semantics.hpp"
#include "csc/typecheck.hpp"

namespace csc {

const FiniteMonad& Model::monad(Flavour f) const {
  if (f == Flavour::T) return *T;
  return *S;
}

FinFunction Model::iota(std::uint64_t x) const {
  const auto& c = S->carrier(x);
  return FinFunction(FinSet(c.size()), FinSet(T->size(x)), c);
}

std::uint64_t interpret_size(const Model& model, const Type& a) {
  switch (a.kind()) {
    case TypeKind::Unit:
      return 1;
    case TypeKind::Ground: {
      auto it = model.ground.find(a.name());
      if (it == model.ground.end()) throw UninterpretedGround(a.name());
      return it->second;
    }
    case TypeKind::Prod:
      return checked_mul(interpret_size(model, a.left()), interpret_size(model, a.right()), model.cap,
                         "⟦" + to_string(a) + "⟧");
    case TypeKind::Arrow:
      return checked_pow(interpret_size(model, a.cod()), interpret_size(model, a.dom()), model.cap,
                         "⟦" + to_string(a) + "⟧");
    case TypeKind::Monad: {
      auto n = model.monad(a.flavour()).size(interpret_size(model, a.inner()));
      if (n > model.cap) throw SizeBlowup("⟦" + to_string(a) + "⟧", model.cap);
      return n;
    }
  }
  throw Error("unreachable type kind");
}

std::string element_label(const Model& model, const Type& a, Elem e) {
  switch (a.kind()) {
    case TypeKind::Unit:
      return "*";
    case TypeKind::Ground:
      return a.name() + "#" + std::to_string(e);
    case TypeKind::Prod: {
      auto nb = interpret_size(model, a.right());
      return "<" + element_label(model, a.left(), e / nb) + ", " + element_label(model, a.right(), e % nb) + ">";
    }
    case TypeKind::Arrow: {
      auto na = interpret_size(model, a.dom());
      auto nb = interpret_size(model, a.cod());
      if (na > 16) return "fn#" + std::to_string(e);
      auto table = function_table(e, na, nb);
      std::string out = "[";
      for (std::size_t i = 0; i < table.size(); ++i) out += (i ? " " : "") + element_label(model, a.cod(), table[i]);
      return out + "]";
    }
    case TypeKind::Monad:
      return model.monad(a.flavour()).label(interpret_size(model, a.inner()), e);
  }
  return std::to_string(e);
}

FinSet interpret_type(const Model& model, const Theory& th, const Type& a) {
  require_well_formed(th, a);
  const auto n = interpret_size(model, a);
  if (n > 4096) return FinSet(n);
  std::vector<std::string> labels;
  for (Elem e = 0; e < n; ++e) labels.push_back(element_label(model, a, e));
  try {
    return FinSet(std::move(labels));
  } catch (const Error&) {
    return FinSet(n);
  }
}

std::uint64_t context_size(const Model& model, const Context& ctx) {
  std::uint64_t n = 1;
  for (const auto& [name, type] : ctx.entries()) n = checked_mul(n, interpret_size(model, type), model.cap, "⟦Γ⟧");
  return n;
}

std::vector<Elem> context_env(const Model& model, const Context& ctx, Elem index) {
  std::vector<Elem> env(ctx.size());
  for (std::size_t i = ctx.size(); i-- > 0;) {
    auto n = interpret_size(model, ctx.entries()[i].second);
    env[i] = index % n;
    index /= n;
  }
  return env;
}

std::string env_label(const Model& model, const Context& ctx, const std::vector<Elem>& env) {
  std::string out = "{";
  for (std::size_t i = 0; i < env.size(); ++i)
    out += (i ? ", " : "") + ctx.entries()[i].first + " = " + element_label(model, ctx.entries()[i].second, env[i]);
  return out + "}";
}

// --- evaluation ---------------------------------------------------------------

namespace {

using Env = std::vector<Elem>;
using Fn = std::function<Elem(Env&)>;

struct Compiled {
  Type type;
  Fn fn;
};

class Compiler {
 public:
  Compiler(const Model& model, const Theory& th, const Context& ctx) : model_(model), th_(th), ctx_(ctx), tc_(th) {}

  Compiled compile(const Term& m, Locals& locals) {
    switch (m.kind()) {
      case TermKind::Var: {
        std::size_t i = m.index();
        if (i >= locals.size()) throw Error("dangling de Bruijn index in evaluation");
        return {locals[locals.size() - 1 - i], [i](Env& env) { return env[env.size() - 1 - i]; }};
      }
      case TermKind::Free: {
        if (auto pos = ctx_.position(m.name())) {
          std::size_t p = *pos;
          return {ctx_.entries()[p].second, [p](Env& env) { return env[p]; }};
        }
        const Type* t = th_.constant(m.name());
        if (!t) throw TypeError(TypeErrorKind::UnboundVariable, "'" + m.name() + "'");
        auto it = model_.constants.find(m.name());
        if (it == model_.constants.end()) throw Error("model '" + model_.name + "' has no value for constant '" + m.name() + "'");
        Elem v = it->second;
        return {*t, [v](Env&) { return v; }};
      }
      case TermKind::Star:
        return {Type::unit(), [](Env&) -> Elem { return 0; }};
      case TermKind::Lam: {
        const Type a = m.annot();
        locals.push_back(a);
        Compiled body = compile(m.child(0), locals);
        locals.pop_back();
        const auto na = interpret_size(model_, a);
        const auto nb = interpret_size(model_, body.type);
        checked_pow(nb, na, model_.cap, "function table");
        Fn b = body.fn;
        return {Type::arrow(a, body.type), [na, nb, b](Env& env) {
                  Elem idx = 0;
                  for (Elem x = 0; x < na; ++x) {
                    env.push_back(x);
                    Elem v = b(env);
                    env.pop_back();
                    idx = idx * nb + v;
                  }
                  return idx;
                }};
      }
      case TermKind::App: {
        Compiled f = compile(m.child(0), locals);
        Compiled x = compile(m.child(1), locals);
        auto arrow = tc_.find_shape(f.type, TypeKind::Arrow);
        if (!arrow) throw TypeError(TypeErrorKind::NotAFunction, to_string(f.type));
        const auto na = interpret_size(model_, arrow->dom());
        const auto nb = interpret_size(model_, arrow->cod());
        std::vector<Elem> place(na, 1);  // place[a] = nb^(na-1-a)
        for (std::size_t a = na; a-- > 1;) place[a - 1] = place[a] * nb;
        Fn ff = f.fn, xf = x.fn;
        return {arrow->cod(), [ff, xf, place, nb](Env& env) { return (ff(env) / place[xf(env)]) % nb; }};
      }
      case TermKind::Pair: {
        Compiled l = compile(m.child(0), locals);
        Compiled r = compile(m.child(1), locals);
        const auto nr = interpret_size(model_, r.type);
        Fn lf = l.fn, rf = r.fn;
        return {Type::prod(l.type, r.type), [lf, rf, nr](Env& env) { return pair_index(lf(env), rf(env), nr); }};
      }
      case TermKind::Proj: {
        Compiled p = compile(m.child(0), locals);
        auto prod = tc_.find_shape(p.type, TypeKind::Prod);
        if (!prod) throw TypeError(TypeErrorKind::NotAProduct, to_string(p.type));
        const auto nr = interpret_size(model_, prod->right());
        Fn pf = p.fn;
        if (m.proj_index() == 1) return {prod->left(), [pf, nr](Env& env) { return pf(env) / nr; }};
        return {prod->right(), [pf, nr](Env& env) { return pf(env) % nr; }};
      }
      case TermKind::Ret: {
        Compiled a = compile(m.child(0), locals);
        const auto na = interpret_size(model_, a.type);
        const FiniteMonad* mon = &model_.monad(m.flavour());
        Fn af = a.fn;
        return {Type::monad(m.flavour(), a.type), [mon, na, af](Env& env) { return mon->eta(na, af(env)); }};
      }
      case TermKind::Iota: {
        Compiled a = compile(m.child(0), locals);
        auto s = tc_.find_shape(a.type, TypeKind::Monad, Flavour::S);
        if (!s) throw TypeError(TypeErrorKind::IotaExpectsS, to_string(a.type));
        const auto na = interpret_size(model_, s->inner());
        const SubsetMonad* sm = model_.S.get();
        Fn af = a.fn;
        return {Type::mon_t(s->inner()), [sm, na, af](Env& env) { return sm->include(na, af(env)); }};
      }
      case TermKind::Do: {
        Compiled head = compile(m.child(0), locals);
        auto hm = tc_.find_shape(head.type, TypeKind::Monad, m.flavour());
        if (!hm) throw TypeError(TypeErrorKind::NotMonadic, to_string(head.type));
        locals.push_back(hm->inner());
        Compiled body = compile(m.child(1), locals);
        locals.pop_back();
        auto bm = tc_.find_shape(body.type, TypeKind::Monad, m.flavour());
        if (!bm) throw TypeError(TypeErrorKind::NotMonadic, to_string(body.type));
        const auto na = interpret_size(model_, hm->inner());
        const auto nb = interpret_size(model_, bm->inner());
        const FiniteMonad* mon = &model_.monad(m.flavour());
        Fn hf = head.fn, bf = body.fn;
        return {body.type, [mon, na, nb, hf, bf](Env& env) {
                  Elem t = hf(env);
                  std::vector<Elem> k(na);
                  for (Elem a = 0; a < na; ++a) {
                    env.push_back(a);
                    k[a] = bf(env);
                    env.pop_back();
                  }
                  return mon->bind(na, nb, t, k);
                }};
      }
    }
    throw Error("unreachable term kind");
  }

 private:
  const Model& model_;
  const Theory& th_;
  const Context& ctx_;
  TypeClosure tc_;
};

}  // namespace

struct Evaluator::Impl {
  Fn fn;
};

Evaluator::Evaluator(const Model& model, const Theory& th, const Context& ctx, const Term& m) {
  infer(th, ctx, m);
  Compiler c(model, th, ctx);
  Locals locals;
  Compiled compiled = c.compile(m, locals);
  type_ = compiled.type;
  interpret_size(model, type_);
  impl_ = std::make_unique<Impl>(Impl{std::move(compiled.fn)});
}

Evaluator::~Evaluator() = default;
Evaluator::Evaluator(Evaluator&&) noexcept = default;

Elem Evaluator::operator()(const std::vector<Elem>& env) const {
  Env e = env;
  return impl_->fn(e);
}

Elem evaluate(const Model& model, const Theory& th, const Context& ctx, const Term& m, const std::vector<Elem>& env) {
  return Evaluator(model, th, ctx, m)(env);
}

FinFunction interpret_term(const Model& model, const Theory& th, const Context& ctx, const Term& m) {
  Evaluator ev(model, th, ctx, m);
  const auto n = context_size(model, ctx);
  std::vector<Elem> table(n);
  for (Elem i = 0; i < n; ++i) table[i] = ev(context_env(model, ctx, i));
  return FinFunction(FinSet(n), FinSet(interpret_size(model, ev.type())), std::move(table));
}

}  // namespace csc
