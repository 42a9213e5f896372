#include <algorithm>
#include <random>

#include "csc/fuzz.hpp"
#include "csc/semantics.hpp"

namespace csc {

// --- validation -----------------------------------------------------------------

namespace {

// Calls f(k) for every table k : x -> n, or for 2000 random ones when there
// are more than `limit`.
template <typename F>
void each_table(std::uint64_t x, std::uint64_t n, std::uint64_t limit, std::mt19937_64& rng, F f) {
  std::uint64_t count = 1;
  bool big = false;
  for (std::uint64_t i = 0; i < x && !big; ++i) {
    if (count > limit / std::max<std::uint64_t>(n, 1)) big = true;
    count *= n;
  }
  std::vector<Elem> k(x, 0);
  if (!big) {
    for (std::uint64_t c = 0; c < count; ++c) {
      std::uint64_t v = c;
      for (std::uint64_t i = 0; i < x; ++i) k[i] = v % n, v /= n;
      f(k);
    }
    return;
  }
  std::uniform_int_distribution<Elem> d(0, n - 1);
  for (std::uint64_t c = 0; c < 2000; ++c) {
    for (auto& e : k) e = d(rng);
    f(k);
  }
}

}  // namespace

std::vector<ModelIssue> validate_model(const Model& model, const Sizes& sizes) {
  std::vector<ModelIssue> issues;
  const FiniteMonad& t = *model.T;
  const SubsetMonad& s = *model.S;
  std::mt19937_64 rng(7);
  auto issue = [&](std::string check, std::string detail) { issues.push_back({std::move(check), std::move(detail)}); };

  for (auto x : sizes) {
    try {
      const auto& carrier = s.carrier(x);
      const auto tx = t.size(x);
      for (std::size_t i = 0; i < carrier.size(); ++i) {
        if (carrier[i] >= tx) issue("iota", "S " + std::to_string(x) + " element outside T " + std::to_string(x));
        if (i && carrier[i] <= carrier[i - 1]) issue("iota", "inclusion at " + std::to_string(x) + " is not injective");
      }
      for (Elem a = 0; a < x; ++a)
        if (s.include(x, s.eta(x, a)) != t.eta(x, a)) issue("iota.eta", "η differs at " + std::to_string(x));
      for (Elem e = 0; e < carrier.size(); ++e)
        if (!is_central_element(t, x, carrier[e], model.test_sizes))
          issue("iota.central", "element " + t.label(x, carrier[e]) + " of S " + std::to_string(x) + " is not central");
      for (auto y : sizes) {
        const auto sy = s.size(y);
        bool tau_bad = false;
        for (Elem a = 0; a < y; ++a)
          for (Elem b = 0; b < carrier.size(); ++b)
            if (s.include(y * x, s.tau(y, x, a, b)) != t.tau(y, x, a, carrier[b])) tau_bad = true;
        if (tau_bad) issue("iota.strength", "τ differs at " + std::to_string(y) + "×" + std::to_string(x));
        for (Elem e = 0; e < carrier.size(); ++e) {
          bool bad = false;
          each_table(x, sy, 20000, rng, [&](const std::vector<Elem>& k) {
            if (bad) return;
            std::vector<Elem> tk(k.size());
            for (std::size_t i = 0; i < k.size(); ++i) tk[i] = s.include(y, k[i]);
            if (s.include(y, s.bind(x, y, e, k)) != t.bind(x, y, carrier[e], tk)) bad = true;
          });
          if (bad) issue("iota.bind", "bind differs at " + std::to_string(x) + "->" + std::to_string(y));
        }
      }
    } catch (const SizeBlowup&) {
    } catch (const Error& err) {
      issue("iota", err.what());
    }
  }
  return issues;
}

std::vector<ModelIssue> validate_model_for(const Model& model, const Theory& th) {
  std::vector<ModelIssue> issues;
  for (const auto& g : th.ground_types)
    if (!model.ground.count(g)) issues.push_back({"ground", "no interpretation for '" + g + "'"});
  for (const auto& [name, type] : th.constants) {
    auto it = model.constants.find(name);
    if (it == model.constants.end()) {
      issues.push_back({"constant", "no value for '" + name + "'"});
      continue;
    }
    try {
      if (it->second >= interpret_size(model, type))
        issues.push_back({"constant", "'" + name + "' lies outside ⟦" + to_string(type) + "⟧"});
    } catch (const Error& e) {
      issues.push_back({"constant", e.what()});
    }
  }
  for (const auto& [l, r] : th.type_axioms) {
    try {
      if (interpret_size(model, l) != interpret_size(model, r))
        issues.push_back({"type-axiom", to_string(l) + " = " + to_string(r) + " has sides of different size"});
    } catch (const Error& e) {
      issues.push_back({"type-axiom", e.what()});
    }
  }
  return issues;
}

// --- soundness ------------------------------------------------------------------

namespace {

std::optional<SoundnessViolation> compare(const Model& model, const Theory& th, const Context& ctx, const Term& l,
                                          const Term& r, const std::string& source) {
  Evaluator el(model, th, ctx, l);
  Evaluator er(model, th, ctx, r);
  const auto n = context_size(model, ctx);
  for (Elem i = 0; i < n; ++i) {
    auto env = context_env(model, ctx, i);
    Elem a = el(env), b = er(env);
    if (a != b)
      return SoundnessViolation{source,
                                to_string(l),
                                to_string(r),
                                env_label(model, ctx, env),
                                element_label(model, el.type(), a),
                                element_label(model, er.type(), b)};
  }
  return std::nullopt;
}

}  // namespace

SoundnessReport check_model_soundness(const Model& model, const Theory& th, std::size_t fuzz_count,
                                      std::uint64_t seed) {
  SoundnessReport rep;
  for (const auto& ax : th.term_axioms) {
    ++rep.axioms_checked;
    if (auto v = compare(model, th, ax.ctx, ax.lhs, ax.rhs, ax.label)) rep.violations.push_back(*v);
  }
  std::mt19937_64 rng(seed);
  const auto types = fuzz_types(th);
  const Context ctx;
  for (std::size_t i = 0; i < fuzz_count; ++i) {
    const Type& a = types[i % types.size()];
    try {
      Term m = generate_term(th, ctx, a, rng);
      Term p = perturb(th, ctx, m, 4, rng);
      if (auto v = compare(model, th, ctx, m, p, "fuzz #" + std::to_string(i))) rep.violations.push_back(*v);
      ++rep.fuzz_checked;
    } catch (const Error&) {
      ++rep.fuzz_skipped;
    }
  }
  return rep;
}

nlohmann::json to_json(const SoundnessReport& r) {
  nlohmann::json j{{"ok", r.ok()},
                   {"axioms_checked", r.axioms_checked},
                   {"fuzz_checked", r.fuzz_checked},
                   {"fuzz_skipped", r.fuzz_skipped},
                   {"violations", nlohmann::json::array()}};
  for (const auto& v : r.violations)
    j["violations"].push_back({{"source", v.source},
                               {"lhs", v.lhs},
                               {"rhs", v.rhs},
                               {"env", v.env},
                               {"lhs_value", v.lhs_value},
                               {"rhs_value", v.rhs_value}});
  return j;
}

// --- bundled theories and models ------------------------------------------------

std::string action_constant(const FinMonoid& m, Elem c) { return "act_" + m.carrier().label(c); }
std::string central_constant(const FinMonoid& m, Elem z) { return "zact_" + m.carrier().label(z); }

Theory writer_theory(const FinMonoid& m, const std::vector<Elem>& central_in, const std::string& name) {
  const std::vector<Elem> central = submonoid(m, central_in).inclusion;
  const Type one = Type::unit();
  const Type t1 = Type::mon_t(one);
  const Type s1 = Type::mon_s(one);
  Theory th;
  th.name = name;
  auto act = [&](Elem c) { return Term::free(action_constant(m, c)); };
  auto zact = [&](Elem z) { return Term::free(central_constant(m, z)); };
  auto label = [&](Elem c) { return m.carrier().label(c); };
  auto axiom = [&](std::string l, Term lhs, Term rhs, Type ty) {
    TermAxiom ax;
    ax.label = std::move(l);
    ax.lhs = std::move(lhs);
    ax.rhs = std::move(rhs);
    ax.type = std::move(ty);
    th.term_axioms.push_back(std::move(ax));
  };

  for (Elem c = 0; c < m.size(); ++c) th.constants.emplace(action_constant(m, c), t1);
  for (Elem z : central) th.constants.emplace(central_constant(m, z), s1);

  axiom("unit", Term::ret(Flavour::T, Term::star()), act(m.unit()), t1);
  axiom("zunit", Term::ret(Flavour::S, Term::star()), zact(m.unit()), s1);
  for (Elem z : central) axiom("incl_" + label(z), Term::iota(zact(z)), act(z), t1);
  for (Elem c = 0; c < m.size(); ++c)
    for (Elem d = 0; d < m.size(); ++d)
      axiom("comp_" + label(c) + "_" + label(d), Term::do_(Flavour::T, act(c), act(d), "_"), act(m(c, d)),
            t1);
  for (Elem z : central)
    for (Elem w : central)
      axiom("zcomp_" + label(z) + "_" + label(w), Term::do_(Flavour::S, zact(z), zact(w), "_"), zact(m(z, w)), s1);
  return th;
}

Model writer_model(const FinMonoid& m, const std::vector<Elem>& central_in, const std::string& name) {
  const std::vector<Elem> central = submonoid(m, central_in).inclusion;
  Model model;
  model.name = name;
  model.T = writer_monad(m, name);
  model.S = writer_submonad(model.T, m, central, name + "/central");
  for (Elem c = 0; c < m.size(); ++c) model.constants[action_constant(m, c)] = c;  // (*, c)
  for (std::size_t i = 0; i < central.size(); ++i) model.constants[central_constant(m, central[i])] = i;
  return model;
}

Model unit_submonad_model(MonadPtr t, const std::string& name) {
  Model model;
  model.name = name;
  model.S = unit_submonad(t);
  model.T = std::move(t);
  return model;
}

Theory d4_theory() {
  const FinMonoid d4 = fixtures::dihedral4();
  return writer_theory(d4, monoid_centre_elements(d4), "Th_D4");
}

Model d4_model() {
  const FinMonoid d4 = fixtures::dihedral4();
  return writer_model(d4, monoid_centre_elements(d4), "writer(D4)");
}

}  // namespace csc
