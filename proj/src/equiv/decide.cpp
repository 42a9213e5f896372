#include <deque>
#include <unordered_map>

#include "csc/equiv.hpp"
#include "csc/semantics.hpp"

namespace csc {

namespace {

RewriteStep reversed(const RewriteStep& s) { return {s.rule, s.path, s.after, s.before}; }

void append_reversed(std::vector<RewriteStep>& out, const std::vector<RewriteStep>& steps) {
  for (auto it = steps.rbegin(); it != steps.rend(); ++it) out.push_back(reversed(*it));
}

struct Node {
  Term term;
  std::size_t parent;  // npos at the root
  std::vector<RewriteStep> steps;  // parent ~> term
};

constexpr std::size_t kRoot = static_cast<std::size_t>(-1);

struct Side {
  std::vector<Node> nodes;
  std::unordered_map<Term, std::size_t, TermHash> index;
  std::deque<std::size_t> queue;

  void add(Node n) {
    index.emplace(n.term, nodes.size());
    queue.push_back(nodes.size());
    nodes.push_back(std::move(n));
  }
  // Steps from the root to node i.
  std::vector<RewriteStep> path_to(std::size_t i) const {
    std::vector<const Node*> chain;
    for (std::size_t j = i; j != kRoot; j = nodes[j].parent) chain.push_back(&nodes[j]);
    std::vector<RewriteStep> out;
    for (auto it = chain.rbegin(); it != chain.rend(); ++it)
      out.insert(out.end(), (*it)->steps.begin(), (*it)->steps.end());
    return out;
  }
};

// One raw move from a normal form, before renormalization.
struct Move {
  std::vector<RewriteStep> steps;
  Term result;
};

class Search {
 public:
  Search(const Theory& th, const Context& ctx) : th_(th), ctx_(ctx), tc_(th) {}

  std::vector<Move> moves(const Term& t) {
    out_.clear();
    whole_ = &t;
    Locals locals;
    Path path;
    visit(t, locals, path);
    return std::move(out_);
  }

 private:
  void emit(std::vector<RewriteStep> steps) {
    Term r = steps.back().after;
    out_.push_back({std::move(steps), std::move(r)});
  }

  void axioms_at(const Term& whole, const Term& sub, const Path& path, const Site& site,
                 std::vector<RewriteStep> prefix) {
    for (const auto& ax : th_.term_axioms) {
      for (const auto& r : apply_axiom(ax, sub, site)) {
        auto steps = prefix;
        steps.push_back({"axiom:" + ax.label, path, whole, replace_at(whole, path, r)});
        emit(std::move(steps));
      }
    }
  }

  void visit(const Term& t, Locals& locals, Path& path) {
    Site site{th_, ctx_, locals, tc_};
    axioms_at(*whole_, t, path, site, {});
    if (t.is(TermKind::Ret) && t.flavour() == Flavour::T && !th_.term_axioms.empty()) {
      // ret_T N ~> iota (ret_S N), then an axiom at the inner ret_S
      Term expanded = Term::iota(Term::ret(Flavour::S, t.child(0)));
      Term w = replace_at(*whole_, path, expanded);
      Path inner = path;
      inner.push_back(0);
      axioms_at(w, expanded.child(0), inner, site, {{"iotaS.ret", path, *whole_, w}});
    }
    for (const char* rule : {"S.central", "S.comm"}) {
      if (auto r = apply_rule(rule, t, site)) emit({{rule, path, *whole_, replace_at(*whole_, path, *r)}});
    }
    for (std::size_t i = 0; i < t.arity(); ++i) {
      bool pushed = false;
      if (t.binders_above(i)) {
        if (t.is(TermKind::Lam)) {
          locals.push_back(t.annot());
        } else {
          auto m = tc_.find_shape(infer(th_, ctx_, t.child(0), locals, tc_), TypeKind::Monad, t.flavour());
          if (!m) return;
          locals.push_back(m->inner());
        }
        pushed = true;
      }
      path.push_back(i);
      visit(t.child(i), locals, path);
      path.pop_back();
      if (pushed) locals.pop_back();
    }
  }

  const Theory& th_;
  const Context& ctx_;
  TypeClosure tc_;
  const Term* whole_ = nullptr;
  std::vector<Move> out_;
};

std::optional<Distinct> find_witness(const Model& model, const Theory& th, const Context& ctx, const Term& a,
                                     const Term& b) {
  try {
    Evaluator ea(model, th, ctx, a);
    Evaluator eb(model, th, ctx, b);
    const auto n = context_size(model, ctx);
    for (Elem i = 0; i < n; ++i) {
      auto env = context_env(model, ctx, i);
      Elem va = ea(env), vb = eb(env);
      if (va != vb)
        return Distinct{env, env_label(model, ctx, env), element_label(model, ea.type(), va),
                        element_label(model, eb.type(), vb)};
    }
  } catch (const SizeBlowup&) {
  }
  return std::nullopt;
}

}  // namespace

Verdict decide_equal(const Theory& th, const Context& ctx, const Term& a, const Term& b, const DecideOptions& opts) {
  const Type ta = infer(th, ctx, a);
  const Type tb = infer(th, ctx, b);
  if (!type_equal(th, ta, tb)) throw TypeMismatch(ta, tb);

  Normalized na = normalize(th, ctx, a);
  Normalized nb = normalize(th, ctx, b);

  auto assemble = [&](std::vector<RewriteStep> middle) {
    Equal eq;
    eq.trace.steps = na.trace.steps;
    eq.trace.steps.insert(eq.trace.steps.end(), middle.begin(), middle.end());
    append_reversed(eq.trace.steps, nb.trace.steps);
    return eq;
  };

  if (na.term == nb.term) return assemble({});
  if (eta_equal(th, ctx, na.term, nb.term, ta)) return assemble({{"eta", {}, na.term, nb.term}});

  if (opts.oracle)
    if (auto d = find_witness(*opts.oracle, th, ctx, a, b)) return *d;

  Search search(th, ctx);
  Side sides[2];
  sides[0].add({na.term, kRoot, {}});
  sides[1].add({nb.term, kRoot, {}});
  std::size_t explored = 0;
  while (explored < opts.budget && (!sides[0].queue.empty() || !sides[1].queue.empty())) {
    int s = sides[0].queue.empty() ? 1
            : sides[1].queue.empty() ? 0
                                     : (sides[0].queue.size() <= sides[1].queue.size() ? 0 : 1);
    Side& me = sides[s];
    Side& other = sides[1 - s];
    const std::size_t at = me.queue.front();
    me.queue.pop_front();
    ++explored;
    const Term state = me.nodes[at].term;
    for (auto& mv : search.moves(state)) {
      std::optional<Normalized> n;
      try {
        n = normalize(th, ctx, mv.result);
      } catch (const Error&) {
        continue;
      }
      if (me.index.count(n->term)) continue;
      std::vector<RewriteStep> steps = std::move(mv.steps);
      steps.insert(steps.end(), n->trace.steps.begin(), n->trace.steps.end());
      me.add({n->term, at, std::move(steps)});
      auto hit = other.index.find(n->term);
      if (hit == other.index.end()) continue;
      const std::size_t mine = me.nodes.size() - 1;
      std::vector<RewriteStep> middle;
      if (s == 0) {
        middle = sides[0].path_to(mine);
        append_reversed(middle, sides[1].path_to(hit->second));
      } else {
        middle = sides[0].path_to(hit->second);
        append_reversed(middle, sides[1].path_to(mine));
      }
      return assemble(std::move(middle));
    }
  }
  return Unknown{explored};
}

const char* verdict_name(const Verdict& v) {
  switch (v.index()) {
    case 0:
      return "Equal";
    case 1:
      return "Distinct";
    default:
      return "Unknown";
  }
}

nlohmann::json to_json(const Verdict& v) {
  nlohmann::json j{{"verdict", verdict_name(v)}};
  if (auto* e = std::get_if<Equal>(&v)) {
    j["trace"] = nlohmann::json::array();
    for (const auto& s : e->trace.steps) j["trace"].push_back(to_json(s));
  } else if (auto* d = std::get_if<Distinct>(&v)) {
    j["env"] = d->env_label;
    j["lhs_value"] = d->lhs_value;
    j["rhs_value"] = d->rhs_value;
  } else {
    j["explored"] = std::get<Unknown>(v).explored;
  }
  return j;
}

}  // namespace csc
