// csc: command-line front end for the calculus, its theories and finite models.

#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"

#include "csc/centre.hpp"
#include "csc/equiv.hpp"
#include "csc/semantics.hpp"
#include "csc/translation.hpp"

using namespace csc;
using nlohmann::json;

namespace {

enum Exit { kOk = 0, kFailed = 1, kUnknown = 2, kUsage = 3 };

struct Config {
  std::size_t budget = 2000;
  std::uint64_t size_cap = kDefaultSizeCap;
  std::vector<std::uint64_t> test_sizes;
  std::uint64_t seed = 1;
  bool json = false;
  std::string model_path;
  std::string ctx;
};

// Anything thrown while loading inputs becomes a LoadError (exit code 3).
template <typename F>
auto loading(F f) -> decltype(f()) {
  try {
    return f();
  } catch (const LoadError&) {
    throw;
  } catch (const Error& e) {
    throw LoadError(e.what());
  }
}

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw LoadError("cannot open '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

struct Judgement {
  Context ctx;
  Term term = Term::star();
};

// A term file holds one term, optionally preceded by `Γ |-`. Lines starting
// with '#' are ignored.
Judgement load_term(const std::string& path, const Config& cfg) {
  std::istringstream in(read_file(path));
  std::string text, line;
  while (std::getline(in, line))
    if (line.find_first_not_of(" \t") != std::string::npos && line[line.find_first_not_of(" \t")] != '#')
      text += line + "\n";
  return loading([&] {
    Judgement j;
    auto turn = text.find("|-");
    if (turn != std::string::npos) {
      j.ctx = parse_context(text.substr(0, turn));
      text = text.substr(turn + 2);
    } else if (!cfg.ctx.empty()) {
      j.ctx = parse_context(cfg.ctx);
    }
    j.term = parse_term(text);
    return j;
  });
}

Theory load_theory_arg(const std::string& path) {
  if (path == "d4") return d4_theory();
  return loading([&] { return load_theory(path); });
}

Sizes test_sizes(const Config& cfg, const Sizes& fallback) { return cfg.test_sizes.empty() ? fallback : cfg.test_sizes; }

Model load_model(const Config& cfg, const Theory& th) {
  if (cfg.model_path.empty()) throw LoadError("--model is required");
  if (cfg.model_path == "d4") return d4_model();
  return loading([&] {
    ModelFile f = load_model_file(cfg.model_path);
    if (!cfg.test_sizes.empty()) f.test_sizes = cfg.test_sizes;
    return build_model(f, th, cfg.size_cap);
  });
}

MonadPtr load_monad(const Config& cfg, const std::string& kind) {
  if (cfg.model_path.empty()) {
    if (kind == "identity") return identity_monad(cfg.size_cap);
    throw LoadError("--model is required for monad '" + kind + "'");
  }
  return loading([&] { return build_monad(load_model_file(cfg.model_path), kind, cfg.size_cap); });
}

void print_trace(const RewriteTrace& t) {
  for (const auto& s : t.steps) std::cout << "  " << s.rule << " @ " << path_string(s.path) << ": " << to_string(s.after) << "\n";
}

// --- subcommands ------------------------------------------------------------------

int cmd_check(const Config& cfg, const std::string& th_path, const std::string& term_path) {
  Theory th = load_theory_arg(th_path);
  Judgement j = load_term(term_path, cfg);
  try {
    Type t = infer(th, j.ctx, j.term);
    if (cfg.json)
      std::cout << json{{"ok", true}, {"type", to_string(t)}}.dump(2) << "\n";
    else
      std::cout << to_string(t) << "\n";
    return kOk;
  } catch (const TypeError& e) {
    if (cfg.json)
      std::cout << json{{"ok", false}, {"error", to_string(e.kind())}, {"message", e.what()}}.dump(2) << "\n";
    else
      std::cout << "ill-typed: " << e.what() << "\n";
    return kFailed;
  }
}

int cmd_normalize(const Config& cfg, const std::string& th_path, const std::string& term_path, bool trace,
                  bool shuffle) {
  Theory th = load_theory_arg(th_path);
  Judgement j = load_term(term_path, cfg);
  NormalizeOptions opts;
  if (shuffle) opts.shuffle_seed = cfg.seed;
  Normalized n = normalize(th, j.ctx, j.term, opts);
  if (cfg.json) {
    json out{{"normal_form", to_string(n.term)}, {"steps", n.trace.steps.size()}};
    if (trace) {
      out["trace"] = json::array();
      for (const auto& s : n.trace.steps) out["trace"].push_back(to_json(s));
    }
    std::cout << out.dump(2) << "\n";
  } else {
    if (trace) print_trace(n.trace);
    std::cout << to_string(n.term) << "\n";
  }
  return kOk;
}

int cmd_eq(const Config& cfg, const std::string& th_path, const std::string& a_path, const std::string& b_path) {
  Theory th = load_theory_arg(th_path);
  Judgement a = load_term(a_path, cfg);
  Judgement b = load_term(b_path, cfg);
  if (a.ctx.entries().empty()) a.ctx = b.ctx;
  std::optional<Model> model;
  if (!cfg.model_path.empty()) model = load_model(cfg, th);
  DecideOptions opts;
  opts.budget = cfg.budget;
  opts.oracle = model ? &*model : nullptr;
  Verdict v = Unknown{};
  try {
    v = decide_equal(th, a.ctx, a.term, b.term, opts);
  } catch (const TypeMismatch& e) {
    std::cout << (cfg.json ? json{{"verdict", "TypeMismatch"}, {"message", e.what()}}.dump(2) : std::string(e.what()))
              << "\n";
    return kFailed;
  }
  if (cfg.json) {
    std::cout << to_json(v).dump(2) << "\n";
  } else {
    std::cout << verdict_name(v) << "\n";
    if (auto* e = std::get_if<Equal>(&v)) print_trace(e->trace);
    if (auto* d = std::get_if<Distinct>(&v))
      std::cout << "  witness " << d->env_label << ": " << d->lhs_value << " vs " << d->rhs_value << "\n";
    if (auto* u = std::get_if<Unknown>(&v)) std::cout << "  explored " << u->explored << " states\n";
  }
  return v.index() == 0 ? kOk : v.index() == 1 ? kFailed : kUnknown;
}

int cmd_eval(const Config& cfg, const std::string& th_path, const std::string& term_path) {
  Theory th = load_theory_arg(th_path);
  Judgement j = load_term(term_path, cfg);
  Model model = load_model(cfg, th);
  Evaluator ev(model, th, j.ctx, j.term);
  const auto n = context_size(model, j.ctx);
  json rows = json::array();
  for (Elem i = 0; i < n; ++i) {
    auto env = context_env(model, j.ctx, i);
    Elem v = ev(env);
    const std::string label = element_label(model, ev.type(), v);
    if (cfg.json)
      rows.push_back({{"env", env_label(model, j.ctx, env)}, {"index", v}, {"value", label}});
    else
      std::cout << env_label(model, j.ctx, env) << " -> " << label << "\n";
  }
  if (cfg.json) std::cout << json{{"type", to_string(ev.type())}, {"values", rows}}.dump(2) << "\n";
  return kOk;
}

int cmd_centre(const Config& cfg, const std::string& kind, std::uint64_t base) {
  MonadPtr t = load_monad(cfg, kind);
  CentreResult r = centre_at(*t, base, test_sizes(cfg, kDefaultTestSizes));
  if (cfg.json) {
    std::cout << to_json(r, *t).dump(2) << "\n";
  } else {
    std::cout << "centre of " << t->name() << " at |X| = " << base << ": " << r.carrier.size() << " of " << t->size(base)
              << " elements" << (r.stable ? "" : " (not stable under fewer test objects)") << "\n";
    for (Elem e : r.carrier) std::cout << "  " << t->label(base, e) << "\n";
  }
  return kOk;
}

int cmd_laws(const Config& cfg, const std::string& kind, std::uint64_t max_size) {
  MonadPtr t = load_monad(cfg, kind);
  Sizes sizes;
  for (std::uint64_t s = 0; s <= max_size; ++s) sizes.push_back(s);
  LawOptions opts;
  opts.seed = cfg.seed;
  LawReport r = check_monad_laws(*t, sizes, opts);
  if (cfg.json) {
    std::cout << to_json(r).dump(2) << "\n";
  } else {
    // one line per law; failing instances are listed individually
    std::vector<std::string> order;
    std::map<std::string, std::pair<std::uint64_t, bool>> totals;
    for (const auto& c : r.checks) {
      if (!totals.count(c.law)) order.push_back(c.law), totals[c.law] = {0, true};
      totals[c.law].first += c.instances;
      totals[c.law].second = totals[c.law].second && c.passed;
      if (!c.passed) std::cout << "FAIL " << c.law << " [" << c.objects << "] witness: " << c.witness << "\n";
    }
    for (const auto& law : order)
      std::cout << (totals[law].second ? "ok   " : "FAIL ") << law << ": " << totals[law].first << " instances\n";
    std::cout << (r.passed() ? "all laws hold" : "laws violated") << (r.exhaustive() ? " (exhaustive)" : "") << "\n";
  }
  return r.passed() ? kOk : kFailed;
}

int cmd_iso(const Config& cfg, const std::string& kind, std::uint64_t x, std::uint64_t y) {
  MonadPtr t = load_monad(cfg, kind);
  IsoReport r = verify_centre_iso(*t, x, y, test_sizes(cfg, kDefaultTestSizes));
  if (cfg.json) {
    std::cout << to_json(r).dump(2) << "\n";
  } else {
    std::cout << "Kleisli morphisms " << x << " -> T " << y << ": " << r.morphisms << "\n"
              << "  central: " << r.central << "\n  factoring through the centre: " << r.factoring
              << "\n  premonoidal central: " << r.premonoidal_central << "\n  mismatches: " << r.mismatches.size()
              << "\n";
    for (const auto& m : r.mismatches) std::cout << "    " << m << "\n";
  }
  return r.ok() ? kOk : kFailed;
}

int cmd_soundness(const Config& cfg, const std::string& th_path, std::size_t fuzz) {
  Theory th = load_theory_arg(th_path);
  Model model = load_model(cfg, th);
  SoundnessReport r = check_model_soundness(model, th, fuzz, cfg.seed);
  if (cfg.json) {
    std::cout << to_json(r).dump(2) << "\n";
  } else {
    std::cout << "axioms checked: " << r.axioms_checked << ", fuzzed pairs: " << r.fuzz_checked << " (skipped "
              << r.fuzz_skipped << ")\n";
    for (const auto& v : r.violations)
      std::cout << "  violated " << v.source << ": " << v.lhs << " = " << v.rhs << " at " << v.env << ": "
                << v.lhs_value << " vs " << v.rhs_value << "\n";
    std::cout << (r.ok() ? "sound" : "unsound") << "\n";
  }
  return r.ok() ? kOk : kFailed;
}

int cmd_translate(const Config& cfg, const std::string& path) {
  Translation v = loading([&] { return load_translation(path); });
  std::optional<Model> model;
  if (!cfg.model_path.empty()) model = load_model(cfg, v.target);
  TranslationVerdict r;
  try {
    r = check_translation(v, cfg.budget, model ? &*model : nullptr);
  } catch (const IllTypedTranslation& e) {
    std::cout << (cfg.json ? json{{"verdict", "IllTypedTranslation"}, {"message", e.what()}}.dump(2)
                           : std::string(e.what()))
              << "\n";
    return kFailed;
  }
  if (cfg.json) {
    std::cout << to_json(r).dump(2) << "\n";
  } else {
    std::cout << to_string(r.status);
    if (r.status == TranslationVerdict::Status::FailedAt) std::cout << " " << r.failed << ": " << r.detail;
    std::cout << "\n";
    for (const auto& u : r.unknown) std::cout << "  undecided: " << u << "\n";
  }
  switch (r.status) {
    case TranslationVerdict::Status::Verified:
      return kOk;
    case TranslationVerdict::Status::FailedAt:
      return kFailed;
    default:
      return kUnknown;
  }
}

int cmd_d4(const Config& cfg) {
  D4Report r = d4_noncentralisable_witness();
  if (cfg.json) {
    std::cout << to_json(r).dump(2) << "\n";
  } else {
    std::cout << "Kleisli endomorphisms of 1: " << r.kleisli_endomorphisms_of_unit << "\n"
              << "central endomorphisms of 1: " << r.central_endomorphisms_of_unit << " (";
    for (std::size_t i = 0; i < r.central_labels.size(); ++i) std::cout << (i ? ", " : "") << r.central_labels[i];
    std::cout << ")\n"
              << "power of 8: " << (r.central_count_is_power_of_8 ? "yes" : "no") << "\n"
              << "hom-sets of the D4-power subcategory:";
    for (const auto& [a, b, k] : r.homset_exponents) std::cout << " [" << a << "," << b << "]=8^" << k;
    std::cout << "\nrotations commute with each other: " << (r.rotations_commutative ? "yes" : "no") << "\n"
              << "rotations that are not central:";
    for (const auto& l : r.rotations_not_central) std::cout << " " << l;
    std::cout << "\nobstruction: " << (r.obstruction() ? "yes" : "no") << "\n";
  }
  return r.obstruction() ? kOk : kFailed;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Central submonad calculus: typechecking, equational reasoning and finite models"};
  app.require_subcommand(1);
  app.fallthrough();
  Config cfg;
  std::string test_sizes_arg;
  app.add_option("--budget", cfg.budget, "states explored by the equality search")->check(CLI::PositiveNumber);
  app.add_option("--size-cap", cfg.size_cap, "largest finite set built")->check(CLI::PositiveNumber);
  app.add_option("--test-sizes", test_sizes_arg, "test object sizes, e.g. 1,2");
  app.add_option("--seed", cfg.seed, "random seed");
  app.add_flag("--json", cfg.json, "machine-readable output");
  app.add_option("--model", cfg.model_path, "model file (.cscm), or 'd4' for the bundled writer(D4)");
  app.add_option("--ctx", cfg.ctx, "typing context for term files, e.g. \"x : A, y : T A\"");

  std::string th, a, b, kind = "writer";
  std::uint64_t base = 1, x = 1, y = 1, max_size = 3;
  std::size_t fuzz = 200;
  bool trace = false, shuffle = false;

  auto* check = app.add_subcommand("check", "infer the type of a term");
  check->add_option("theory", th, "theory file (.csct) or 'd4'")->required();
  check->add_option("term", a, "term file")->required();

  auto* norm = app.add_subcommand("normalize", "normal form of a term");
  norm->add_option("theory", th)->required();
  norm->add_option("term", a)->required();
  norm->add_flag("--trace", trace, "print every rewrite step");
  norm->add_flag("--shuffle", shuffle, "pick redexes at random (seeded by --seed)");

  auto* eq = app.add_subcommand("eq", "decide equality of two terms");
  eq->add_option("theory", th)->required();
  eq->add_option("lhs", a)->required();
  eq->add_option("rhs", b)->required();

  auto* eval = app.add_subcommand("eval", "interpret a term in a model");
  eval->add_option("theory", th)->required();
  eval->add_option("term", a)->required();

  auto* centre = app.add_subcommand("centre", "centre of a monad at one object");
  centre->add_option("--monad", kind, "writer | semiring | continuation | identity | list");
  centre->add_option("--base-size", base, "|X|");

  auto* laws = app.add_subcommand("verify-laws", "functor, monad and strength laws");
  laws->add_option("--monad", kind);
  laws->add_option("--max-size", max_size, "check all sets of size 0..N");

  auto* iso = app.add_subcommand("verify-iso", "central Kleisli morphisms vs morphisms into the centre");
  iso->add_option("--monad", kind);
  iso->add_option("--x", x, "|X|");
  iso->add_option("--y", y, "|Y|");

  auto* sound = app.add_subcommand("soundness", "check a model against a theory's axioms and fuzzed equalities");
  sound->add_option("theory", th)->required();
  sound->add_option("--fuzz", fuzz, "number of fuzzed pairs");

  auto* tr = app.add_subcommand("translate-check", "check a translation between theories");
  tr->add_option("translation", a, "translation file (.csctr)")->required();

  auto* d4 = app.add_subcommand("d4-demo", "the D4 cardinality obstruction");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? kOk : kUsage;
  }

  try {
    if (!test_sizes_arg.empty()) {
      std::stringstream ss(test_sizes_arg);
      for (std::string item; std::getline(ss, item, ',');) {
        try {
          auto n = std::stoull(item);
          if (n == 0) throw std::invalid_argument("zero");
          cfg.test_sizes.push_back(n);
        } catch (const std::exception&) {
          throw LoadError("bad --test-sizes entry '" + item + "'");
        }
      }
    }
    if (check->parsed()) return cmd_check(cfg, th, a);
    if (norm->parsed()) return cmd_normalize(cfg, th, a, trace, shuffle);
    if (eq->parsed()) return cmd_eq(cfg, th, a, b);
    if (eval->parsed()) return cmd_eval(cfg, th, a);
    if (centre->parsed()) return cmd_centre(cfg, kind, base);
    if (laws->parsed()) return cmd_laws(cfg, kind, max_size);
    if (iso->parsed()) return cmd_iso(cfg, kind, x, y);
    if (sound->parsed()) return cmd_soundness(cfg, th, fuzz);
    if (tr->parsed()) return cmd_translate(cfg, a);
    if (d4->parsed()) return cmd_d4(cfg);
  } catch (const LoadError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const TypeError& e) {
    std::cerr << "ill-typed: " << e.what() << "\n";
    return kFailed;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kFailed;
  }
  return kUsage;
}
