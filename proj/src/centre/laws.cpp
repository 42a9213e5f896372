#include <functional>
#include <limits>
#include <optional>
#include <random>

#include "csc/centre.hpp"

namespace csc {

bool LawReport::passed() const {
  for (const auto& c : checks)
    if (!c.passed) return false;
  return true;
}

bool LawReport::exhaustive() const {
  for (const auto& c : checks)
    if (!c.exhaustive) return false;
  return true;
}

std::vector<LawCheck> LawReport::failures() const {
  std::vector<LawCheck> out;
  for (const auto& c : checks)
    if (!c.passed) out.push_back(c);
  return out;
}

namespace {

constexpr std::uint64_t kHuge = std::numeric_limits<std::uint64_t>::max();

std::uint64_t sat_mul(std::uint64_t a, std::uint64_t b) {
  if (a != 0 && b > kHuge / a) return kHuge;
  return a * b;
}

std::uint64_t sat_pow(std::uint64_t base, std::uint64_t exp) {
  std::uint64_t r = 1;
  for (std::uint64_t i = 0; i < exp && r != kHuge; ++i) r = sat_mul(r, base);
  return base == 0 && exp > 0 ? 0 : r;
}

using Instance = std::vector<Elem>;
using Pred = std::function<std::optional<std::string>(const Instance&)>;

// A law instantiated at fixed objects: a box of index ranges and a predicate.
struct Law {
  std::vector<std::uint64_t> ranges;
  Pred holds;
};

std::string objects_label(const std::vector<std::uint64_t>& objs) {
  static const char* names[] = {"X", "Y", "Z", "W"};
  std::string out;
  for (std::size_t i = 0; i < objs.size(); ++i)
    out += (i ? " " : "") + std::string(names[i]) + "=" + std::to_string(objs[i]);
  return out;
}

LawCheck run(const std::string& name, const std::vector<std::uint64_t>& objs, const Law& law, const LawOptions& o,
             std::mt19937_64& rng) {
  LawCheck c;
  c.law = name;
  c.objects = objects_label(objs);
  std::uint64_t total = 1;
  for (auto r : law.ranges) total = sat_mul(total, r);
  if (total == 0) {
    c.instances = 0;
    return c;
  }
  Instance idx(law.ranges.size(), 0);
  auto fail = [&](const std::string& why) {
    c.passed = false;
    std::string at = "(";
    for (std::size_t i = 0; i < idx.size(); ++i) at += (i ? "," : "") + std::to_string(idx[i]);
    c.witness = "instance " + at + "): " + why;
  };
  if (total <= o.budget) {
    c.exhaustive = true;
    for (std::uint64_t n = 0; n < total; ++n) {
      std::uint64_t rest = n;
      for (std::size_t i = law.ranges.size(); i-- > 0;) {
        idx[i] = rest % law.ranges[i];
        rest /= law.ranges[i];
      }
      ++c.instances;
      if (auto why = law.holds(idx)) {
        fail(*why);
        return c;
      }
    }
  } else {
    c.exhaustive = false;
    for (std::uint64_t n = 0; n < o.samples; ++n) {
      for (std::size_t i = 0; i < idx.size(); ++i) idx[i] = std::uniform_int_distribution<Elem>(0, law.ranges[i] - 1)(rng);
      ++c.instances;
      if (auto why = law.holds(idx)) {
        fail(*why);
        return c;
      }
    }
  }
  return c;
}

std::optional<std::string> differ(const FiniteMonad& t, std::uint64_t size, Elem lhs, Elem rhs) {
  if (lhs == rhs) return std::nullopt;
  return "lhs " + t.label(size, lhs) + " != rhs " + t.label(size, rhs);
}

std::vector<Elem> identity_table(std::uint64_t n) {
  std::vector<Elem> id(n);
  for (Elem i = 0; i < n; ++i) id[i] = i;
  return id;
}

struct Suite {
  const FiniteMonad& t;
  const LawOptions& o;
  std::mt19937_64 rng;
  LawReport report;

  std::uint64_t T(std::uint64_t x) const { return t.size(x); }
  std::uint64_t funs(std::uint64_t dom, std::uint64_t cod) const { return sat_pow(cod, dom); }

  void add(const std::string& name, const std::vector<std::uint64_t>& objs, const Law& law) {
    report.checks.push_back(run(name, objs, law, o, rng));
  }

  static std::uint64_t volume(const Law& l) {
    std::uint64_t v = 1;
    for (auto r : l.ranges) v = sat_mul(v, r);
    return v;
  }

  // Runs the μ-form law when it is representable (and, under Auto, small
  // enough for exhaustion); otherwise its Kleisli-form counterpart.
  void add_variant(const std::string& mu_name, const std::vector<std::uint64_t>& mu_objs,
                   const std::function<Law()>& mu_law, const std::string& kl_name,
                   const std::vector<std::vector<std::uint64_t>>& kl_objs,
                   const std::function<Law(const std::vector<std::uint64_t>&)>& kl_law) {
    if (o.form != LawForm::Kleisli) {
      std::optional<Law> l;
      try {
        l = mu_law();
      } catch (const SizeBlowup&) {
      }
      if (l && (o.form == LawForm::Mu || volume(*l) <= o.budget)) {
        add(mu_name, mu_objs, *l);
        return;
      }
      if (o.form == LawForm::Mu) {
        LawCheck c;
        c.law = mu_name;
        c.objects = objects_label(mu_objs);
        c.exhaustive = false;
        c.witness = "skipped: iterated object exceeds the size cap";
        report.checks.push_back(c);
        return;
      }
    }
    for (const auto& objs : kl_objs) add(kl_name, objs, kl_law(objs));
  }
};

std::vector<std::vector<std::uint64_t>> tuples(const Sizes& sizes, std::size_t arity) {
  std::vector<std::vector<std::uint64_t>> out = {{}};
  for (std::size_t i = 0; i < arity; ++i) {
    std::vector<std::vector<std::uint64_t>> next;
    for (const auto& t : out)
      for (auto s : sizes) {
        auto u = t;
        u.push_back(s);
        next.push_back(u);
      }
    out = std::move(next);
  }
  return out;
}

}  // namespace

LawReport check_monad_laws(const FiniteMonad& t, const Sizes& sizes, const LawOptions& opts) {
  Suite s{t, opts, std::mt19937_64(opts.seed), {}};
  s.report.monad = t.name();

  // --- functor ---
  for (auto x : sizes) {
    const auto tx = s.T(x);
    auto id = identity_table(x);
    s.add("functor.identity", {x}, {{tx}, [&t, x, id](const Instance& i) {
                                       return differ(t, x, t.fmap(x, x, id, i[0]), i[0]);
                                     }});
  }
  for (const auto& o : tuples(sizes, 3)) {
    auto [x, y, z] = std::tuple(o[0], o[1], o[2]);
    s.add("functor.composition", o,
          {{s.funs(x, y), s.funs(y, z), s.T(x)}, [&t, x, y, z](const Instance& i) {
             auto f = function_table(i[0], x, y);
             auto g = function_table(i[1], y, z);
             std::vector<Elem> gf(x);
             for (Elem a = 0; a < x; ++a) gf[a] = g[f[a]];
             return differ(t, z, t.fmap(x, z, gf, i[2]), t.fmap(y, z, g, t.fmap(x, y, f, i[2])));
           }});
  }
  for (const auto& o : tuples(sizes, 2)) {
    auto [x, y] = std::pair(o[0], o[1]);
    s.add("eta.natural", o, {{s.funs(x, y), x}, [&t, x, y](const Instance& i) {
                               auto f = function_table(i[0], x, y);
                               return differ(t, y, t.fmap(x, y, f, t.eta(x, i[1])), t.eta(y, f[i[1]]));
                             }});
  }

  // --- monad ---
  for (const auto& o : tuples(sizes, 2)) {
    auto [x, y] = std::pair(o[0], o[1]);
    s.add_variant(
        "mu.natural", o,
        [&]() -> Law {
          const auto tx = s.T(x), ty = s.T(y), ttx = s.T(tx);
          s.T(ty);
          return {{s.funs(x, y), ttx}, [&t, x, y, tx, ty](const Instance& i) {
                    auto f = function_table(i[0], x, y);
                    std::vector<Elem> tf(tx);
                    for (Elem a = 0; a < tx; ++a) tf[a] = t.fmap(x, y, f, a);
                    return differ(t, y, t.fmap(x, y, f, t.mu(x, i[1])), t.mu(y, t.fmap(tx, ty, tf, i[1])));
                  }};
        },
        "bind.natural", {o},
        [&](const std::vector<std::uint64_t>& ob) -> Law {
          auto [x2, y2] = std::pair(ob[0], ob[1]);
          const auto tx = s.T(x2), ty = s.T(y2);
          // g ranges over endomaps of Y: naturality in the result object
          return {{tx, s.funs(x2, ty), s.funs(y2, y2)}, [&t, x2, y2, ty](const Instance& i) {
                    auto k = function_table(i[1], x2, ty);
                    auto g = function_table(i[2], y2, y2);
                    std::vector<Elem> gk(x2);
                    for (Elem a = 0; a < x2; ++a) gk[a] = t.fmap(y2, y2, g, k[a]);
                    return differ(t, y2, t.fmap(y2, y2, g, t.bind(x2, y2, i[0], k)), t.bind(x2, y2, i[0], gk));
                  }};
        });
  }
  for (auto x : sizes) {
    s.add_variant(
        "mu.left-unit", {x},
        [&]() -> Law {
          const auto tx = s.T(x);
          s.T(tx);
          return {{tx}, [&t, x, tx](const Instance& i) { return differ(t, x, t.mu(x, t.eta(tx, i[0])), i[0]); }};
        },
        "bind.left-unit", tuples(sizes, 2),
        [&](const std::vector<std::uint64_t>& ob) -> Law {
          auto [x2, y2] = std::pair(ob[0], ob[1]);
          const auto ty = s.T(y2);
          return {{x2, s.funs(x2, ty)}, [&t, x2, y2, ty](const Instance& i) {
                    auto k = function_table(i[1], x2, ty);
                    return differ(t, y2, t.bind(x2, y2, t.eta(x2, i[0]), k), k[i[0]]);
                  }};
        });
    s.add_variant(
        "mu.right-unit", {x},
        [&]() -> Law {
          const auto tx = s.T(x);
          s.T(tx);
          std::vector<Elem> eta(x);
          for (Elem a = 0; a < x; ++a) eta[a] = t.eta(x, a);
          return {{tx}, [&t, x, tx, eta](const Instance& i) {
                    return differ(t, x, t.mu(x, t.fmap(x, tx, eta, i[0])), i[0]);
                  }};
        },
        "bind.right-unit", {{x}},
        [&](const std::vector<std::uint64_t>&) -> Law {
          std::vector<Elem> eta(x);
          for (Elem a = 0; a < x; ++a) eta[a] = t.eta(x, a);
          return {{s.T(x)}, [&t, x, eta](const Instance& i) { return differ(t, x, t.bind(x, x, i[0], eta), i[0]); }};
        });
    s.add_variant(
        "mu.assoc", {x},
        [&]() -> Law {
          const auto tx = s.T(x), ttx = s.T(tx), tttx = s.T(ttx);
          if (ttx > opts.budget) throw SizeBlowup("mu table", opts.budget);
          auto mu = std::make_shared<std::vector<Elem>>(ttx);
          for (Elem a = 0; a < ttx; ++a) (*mu)[a] = t.mu(x, a);
          return {{tttx}, [&t, x, tx, ttx, mu](const Instance& i) {
                    return differ(t, x, t.mu(x, t.fmap(ttx, tx, *mu, i[0])), t.mu(x, t.mu(tx, i[0])));
                  }};
        },
        "bind.assoc", tuples(sizes, 3),
        [&](const std::vector<std::uint64_t>& ob) -> Law {
          auto [x2, y2, z2] = std::tuple(ob[0], ob[1], ob[2]);
          const auto tx = s.T(x2), ty = s.T(y2), tz = s.T(z2);
          return {{tx, s.funs(x2, ty), s.funs(y2, tz)}, [&t, x2, y2, z2, ty, tz](const Instance& i) {
                    auto f = function_table(i[1], x2, ty);
                    auto g = function_table(i[2], y2, tz);
                    std::vector<Elem> fg(x2);
                    for (Elem a = 0; a < x2; ++a) fg[a] = t.bind(y2, z2, f[a], g);
                    return differ(t, z2, t.bind(y2, z2, t.bind(x2, y2, i[0], f), g), t.bind(x2, z2, i[0], fg));
                  }};
        });
  }

  // --- strength ---
  for (auto x : sizes)
    s.add("strength.unit", {x}, {{s.T(x)}, [&t, x](const Instance& i) {
                                   return differ(t, x, t.tau(1, x, 0, i[0]), i[0]);
                                 }});
  for (const auto& o : tuples(sizes, 2)) {
    auto [x, y] = std::pair(o[0], o[1]);
    s.add("strength.eta", o, {{x, y}, [&t, x, y](const Instance& i) {
                                return differ(t, x * y, t.tau(x, y, i[0], t.eta(y, i[1])),
                                              t.eta(x * y, pair_index(i[0], i[1], y)));
                              }});
  }
  for (const auto& o : tuples(sizes, 3)) {
    auto [x, y, z] = std::tuple(o[0], o[1], o[2]);
    // the associator is the identity on row-major indices
    s.add("strength.assoc", o, {{x, y, s.T(z)}, [&t, x, y, z](const Instance& i) {
                                  return differ(t, x * y * z, t.tau(x * y, z, pair_index(i[0], i[1], y), i[2]),
                                                t.tau(x, y * z, i[0], t.tau(y, z, i[1], i[2])));
                                }});
  }
  for (const auto& o : tuples(sizes, 4)) {
    auto [x, x2, y, y2] = std::tuple(o[0], o[1], o[2], o[3]);
    s.add("strength.natural", o,
          {{s.funs(x, x2), s.funs(y, y2), x, s.T(y)}, [&t, x, x2, y, y2](const Instance& i) {
             auto f = function_table(i[0], x, x2);
             auto g = function_table(i[1], y, y2);
             std::vector<Elem> fg(x * y);
             for (Elem a = 0; a < x; ++a)
               for (Elem b = 0; b < y; ++b) fg[pair_index(a, b, y)] = pair_index(f[a], g[b], y2);
             return differ(t, x2 * y2, t.fmap(x * y, x2 * y2, fg, t.tau(x, y, i[2], i[3])),
                           t.tau(x2, y2, f[i[2]], t.fmap(y, y2, g, i[3])));
           }});
  }
  for (const auto& o : tuples(sizes, 2)) {
    auto [x, y] = std::pair(o[0], o[1]);
    s.add_variant(
        "strength.mu", o,
        [&]() -> Law {
          const auto ty = s.T(y), tty = s.T(ty), txy = s.T(x * y);
          s.T(checked_mul(x, ty, t.cap(), "X × T Y"));
          s.T(txy);
          auto tau_table = std::make_shared<std::vector<Elem>>(x * ty);
          for (Elem a = 0; a < x; ++a)
            for (Elem b = 0; b < ty; ++b) (*tau_table)[pair_index(a, b, ty)] = t.tau(x, y, a, b);
          return {{x, tty}, [&t, x, y, ty, txy, tau_table](const Instance& i) {
                    Elem lhs = t.tau(x, y, i[0], t.mu(y, i[1]));
                    Elem rhs = t.mu(x * y, t.fmap(x * ty, txy, *tau_table, t.tau(x, ty, i[0], i[1])));
                    return differ(t, x * y, lhs, rhs);
                  }};
        },
        "strength.bind", tuples(sizes, 3),
        [&](const std::vector<std::uint64_t>& ob) -> Law {
          auto [x2, y2, z2] = std::tuple(ob[0], ob[1], ob[2]);
          const auto ty = s.T(y2), tz = s.T(z2);
          return {{x2, ty, s.funs(y2, tz)}, [&t, x2, y2, z2, tz](const Instance& i) {
                    auto k = function_table(i[2], y2, tz);
                    std::vector<Elem> tk(y2);
                    for (Elem b = 0; b < y2; ++b) tk[b] = t.tau(x2, z2, i[0], k[b]);
                    return differ(t, x2 * z2, t.tau(x2, z2, i[0], t.bind(y2, z2, i[1], k)),
                                  t.bind(y2, x2 * z2, i[1], tk));
                  }};
        });
  }
  return s.report;
}

namespace {

class CorruptBind final : public FiniteMonad {
 public:
  CorruptBind(MonadPtr inner, std::uint64_t at_size, Elem at_elem, Elem wrong)
      : FiniteMonad(inner->cap()), inner_(std::move(inner)), at_size_(at_size), at_elem_(at_elem), wrong_(wrong) {}
  std::string name() const override { return "corrupted(" + inner_->name() + ")"; }
  std::uint64_t size(std::uint64_t x) const override { return inner_->size(x); }
  Elem eta(std::uint64_t x, Elem a) const override { return inner_->eta(x, a); }
  Elem fmap(std::uint64_t x, std::uint64_t y, std::span<const Elem> f, Elem t) const override {
    return inner_->fmap(x, y, f, t);
  }
  Elem bind(std::uint64_t x, std::uint64_t y, Elem t, std::span<const Elem> k) const override {
    if (x == at_size_ && t == at_elem_) return wrong_;
    return inner_->bind(x, y, t, k);
  }
  std::string label(std::uint64_t x, Elem t) const override { return inner_->label(x, t); }

 private:
  MonadPtr inner_;
  std::uint64_t at_size_;
  Elem at_elem_, wrong_;
};

}  // namespace

MonadPtr corrupt_bind(MonadPtr t, std::uint64_t at_size, Elem at_elem, Elem wrong) {
  return std::make_shared<CorruptBind>(std::move(t), at_size, at_elem, wrong);
}

nlohmann::json to_json(const LawReport& r) {
  nlohmann::json checks = nlohmann::json::array();
  for (const auto& c : r.checks) {
    nlohmann::json j = {{"law", c.law},
                        {"objects", c.objects},
                        {"instances", c.instances},
                        {"exhaustive", c.exhaustive},
                        {"passed", c.passed}};
    if (!c.witness.empty()) j["witness"] = c.witness;
    checks.push_back(j);
  }
  return {{"monad", r.monad}, {"passed", r.passed()}, {"exhaustive", r.exhaustive()}, {"checks", checks}};
}

}  // namespace csc
