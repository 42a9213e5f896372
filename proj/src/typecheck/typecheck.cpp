#include "csc/typecheck.hpp"

namespace csc {

const char* to_string(TypeErrorKind k) {
  switch (k) {
    case TypeErrorKind::UnboundVariable: return "UnboundVariable";
    case TypeErrorKind::NotAFunction: return "NotAFunction";
    case TypeErrorKind::NotAProduct: return "NotAProduct";
    case TypeErrorKind::NotMonadic: return "NotMonadic";
    case TypeErrorKind::IotaExpectsS: return "IotaExpectsS";
    case TypeErrorKind::ConstantUnknown: return "ConstantUnknown";
    case TypeErrorKind::FlavourMismatch: return "FlavourMismatch";
    case TypeErrorKind::ArgumentMismatch: return "ArgumentMismatch";
    case TypeErrorKind::UnknownGroundType: return "UnknownGroundType";
  }
  return "?";
}

namespace {

class Checker {
 public:
  Checker(const Theory& th, const Context& ctx, TypeClosure& closure)
      : th_(th), ctx_(ctx), closure_(closure) {}

  Type infer(const Term& m, Locals& locals) {
    switch (m.kind()) {
      case TermKind::Var:
        if (m.index() >= locals.size())
          throw TypeError(TypeErrorKind::UnboundVariable,
                          "dangling de Bruijn index " + std::to_string(m.index()));
        return locals[locals.size() - 1 - m.index()];
      case TermKind::Free:
        if (const Type* t = ctx_.lookup(m.name())) return *t;
        if (const Type* t = th_.constant(m.name())) return *t;
        throw TypeError(TypeErrorKind::UnboundVariable,
                        "'" + m.name() + "' is neither in the context nor a constant");
      case TermKind::Star:
        return Type::unit();
      case TermKind::Lam: {
        require_well_formed(th_, m.annot());
        locals.push_back(m.annot());
        Type body = infer(m.child(0), locals);
        locals.pop_back();
        return Type::arrow(m.annot(), body);
      }
      case TermKind::App: {
        Type f = infer(m.child(0), locals);
        auto arrow = closure_.find_shape(f, TypeKind::Arrow);
        if (!arrow)
          throw TypeError(TypeErrorKind::NotAFunction,
                          to_string(m.child(0)) + " has type " + to_string(f));
        Type a = infer(m.child(1), locals);
        if (!closure_.equal(a, arrow->dom()))
          throw TypeError(TypeErrorKind::ArgumentMismatch,
                          "argument " + to_string(m.child(1)) + " has type " + to_string(a) +
                              ", expected " + to_string(arrow->dom()));
        return arrow->cod();
      }
      case TermKind::Pair: {
        Type a = infer(m.child(0), locals);
        Type b = infer(m.child(1), locals);
        return Type::prod(a, b);
      }
      case TermKind::Proj: {
        Type p = infer(m.child(0), locals);
        auto prod = closure_.find_shape(p, TypeKind::Prod);
        if (!prod)
          throw TypeError(TypeErrorKind::NotAProduct,
                          to_string(m.child(0)) + " has type " + to_string(p));
        return m.proj_index() == 1 ? prod->left() : prod->right();
      }
      case TermKind::Ret:
        return Type::monad(m.flavour(), infer(m.child(0), locals));
      case TermKind::Iota: {
        Type a = infer(m.child(0), locals);
        auto s = closure_.find_shape(a, TypeKind::Monad, Flavour::S);
        if (!s)
          throw TypeError(TypeErrorKind::IotaExpectsS,
                          "iota expects S A, got " + to_string(a) + " for " + to_string(m.child(0)));
        return Type::mon_t(s->inner());
      }
      case TermKind::Do: {
        Flavour f = m.flavour();
        Type head = infer(m.child(0), locals);
        auto mh = monadic(head, f, m.child(0));
        locals.push_back(mh.inner());
        Type body = infer(m.child(1), locals);
        locals.pop_back();
        monadic(body, f, m.child(1));
        return body;
      }
    }
    throw Error("unreachable term kind");
  }

 private:
  Type monadic(const Type& t, Flavour f, const Term& where) {
    if (auto x = closure_.find_shape(t, TypeKind::Monad, f)) return *x;
    Flavour other = f == Flavour::S ? Flavour::T : Flavour::S;
    if (closure_.find_shape(t, TypeKind::Monad, other))
      throw TypeError(TypeErrorKind::FlavourMismatch,
                      std::string("do_") + to_string(f) + " over " + to_string(where) + " : " +
                          to_string(t));
    throw TypeError(TypeErrorKind::NotMonadic, std::string("expected ") + to_string(f) +
                                                   " _ for " + to_string(where) + ", got " +
                                                   to_string(t));
  }

  const Theory& th_;
  const Context& ctx_;
  TypeClosure& closure_;
};

}  // namespace

Type infer(const Theory& th, const Context& ctx, const Term& m, const Locals& locals,
           TypeClosure& closure) {
  for (const auto& [n, t] : ctx.entries()) require_well_formed(th, t);
  Locals l = locals;
  return Checker(th, ctx, closure).infer(m, l);
}

Type infer(const Theory& th, const Context& ctx, const Term& m) {
  TypeClosure closure(th);
  return infer(th, ctx, m, {}, closure);
}

bool check(const Theory& th, const Context& ctx, const Term& m, const Type& a) {
  require_well_formed(th, a);
  TypeClosure closure(th);
  Type got = infer(th, ctx, m, {}, closure);
  return closure.equal(got, a);
}

}  // namespace csc
