#include <algorithm>
#include <array>
#include <limits>

#include "csc/finite.hpp"

namespace csc {

std::uint64_t checked_mul(std::uint64_t a, std::uint64_t b, std::uint64_t cap, const std::string& what) {
  if (a != 0 && b > std::numeric_limits<std::uint64_t>::max() / a) throw SizeBlowup(what, cap);
  std::uint64_t r = a * b;
  if (r > cap) throw SizeBlowup(what, cap);
  return r;
}

std::uint64_t checked_pow(std::uint64_t base, std::uint64_t exp, std::uint64_t cap, const std::string& what) {
  std::uint64_t r = 1;
  if (base <= 1) return exp == 0 ? 1 : base;
  for (std::uint64_t i = 0; i < exp; ++i) r = checked_mul(r, base, cap, what);
  return r;
}

FinSet::FinSet(std::vector<std::string> labels) : size_(labels.size()), labels_(std::move(labels)) {
  auto sorted = labels_;
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
    throw Error("finite set labels must be distinct");
}

std::string FinSet::label(Elem i) const {
  if (i < labels_.size()) return labels_[i];
  return std::to_string(i);
}

std::optional<Elem> FinSet::find(std::string_view label) const {
  for (std::size_t i = 0; i < labels_.size(); ++i)
    if (labels_[i] == label) return i;
  return std::nullopt;
}

FinFunction::FinFunction(FinSet dom, FinSet cod, std::vector<Elem> table)
    : dom_(std::move(dom)), cod_(std::move(cod)), table_(std::move(table)) {
  if (table_.size() != dom_.size()) throw Error("function table length differs from domain size");
  for (Elem e : table_)
    if (e >= cod_.size()) throw Error("function table entry outside codomain");
}

FinFunction FinFunction::identity(const FinSet& x) {
  std::vector<Elem> t(x.size());
  for (Elem i = 0; i < x.size(); ++i) t[i] = i;
  return FinFunction(x, x, std::move(t));
}

FinFunction FinFunction::constant(const FinSet& dom, const FinSet& cod, Elem value) {
  return FinFunction(dom, cod, std::vector<Elem>(dom.size(), value));
}

bool FinFunction::injective() const {
  std::vector<Elem> t = table_;
  std::sort(t.begin(), t.end());
  return std::adjacent_find(t.begin(), t.end()) == t.end();
}

FinFunction FinFunction::after(const FinFunction& g) const {
  if (!(g.cod() == dom_)) throw Error("composition of mismatched functions");
  std::vector<Elem> t(g.dom().size());
  for (Elem i = 0; i < t.size(); ++i) t[i] = table_[g(i)];
  return FinFunction(g.dom(), cod_, std::move(t));
}

std::vector<Elem> function_table(Elem index, std::uint64_t dom, std::uint64_t cod) {
  std::vector<Elem> t(dom);
  for (std::uint64_t i = dom; i-- > 0;) {
    t[i] = cod ? index % cod : 0;
    if (cod) index /= cod;
  }
  return t;
}

Elem function_index(std::span<const Elem> table, std::uint64_t cod) {
  Elem idx = 0;
  for (Elem v : table) idx = idx * cod + v;
  return idx;
}

// --- monoids -----------------------------------------------------------------

std::optional<std::string> FinMonoid::violation(const FinSet& carrier, Elem unit,
                                                const std::vector<Elem>& mult) {
  const std::uint64_t n = carrier.size();
  if (mult.size() != n * n) return "multiplication table must have size^2 entries";
  if (n == 0 || unit >= n) return "unit outside carrier";
  for (Elem v : mult)
    if (v >= n) return "multiplication table entry outside carrier";
  auto m = [&](Elem a, Elem b) { return mult[a * n + b]; };
  for (Elem a = 0; a < n; ++a)
    if (m(unit, a) != a || m(a, unit) != a)
      return "unit law fails at " + carrier.label(a);
  for (Elem a = 0; a < n; ++a)
    for (Elem b = 0; b < n; ++b)
      for (Elem c = 0; c < n; ++c)
        if (m(m(a, b), c) != m(a, m(b, c)))
          return "associativity fails at (" + carrier.label(a) + "," + carrier.label(b) + "," +
                 carrier.label(c) + ")";
  return std::nullopt;
}

FinMonoid::FinMonoid(FinSet carrier, Elem unit, std::vector<Elem> mult)
    : carrier_(std::move(carrier)), unit_(unit), mult_(std::move(mult)) {
  if (auto v = violation(carrier_, unit_, mult_)) throw Error("not a monoid: " + *v);
}

FinMonoid::FinMonoid(NoCheck, FinSet carrier, Elem unit, std::vector<Elem> mult)
    : carrier_(std::move(carrier)), unit_(unit), mult_(std::move(mult)) {}

FinMonoid FinMonoid::unchecked(FinSet carrier, Elem unit, std::vector<Elem> mult) {
  return FinMonoid(NoCheck{}, std::move(carrier), unit, std::move(mult));
}

bool FinMonoid::commutative() const {
  for (Elem a = 0; a < size(); ++a)
    for (Elem b = 0; b < size(); ++b)
      if ((*this)(a, b) != (*this)(b, a)) return false;
  return true;
}

Submonoid submonoid(const FinMonoid& m, std::vector<Elem> elems) {
  std::sort(elems.begin(), elems.end());
  elems.erase(std::unique(elems.begin(), elems.end()), elems.end());
  auto pos = [&](Elem parent) -> std::optional<Elem> {
    auto it = std::lower_bound(elems.begin(), elems.end(), parent);
    if (it == elems.end() || *it != parent) return std::nullopt;
    return static_cast<Elem>(it - elems.begin());
  };
  auto u = pos(m.unit());
  if (!u) throw Error("subset does not contain the unit");
  std::vector<std::string> labels;
  for (Elem e : elems) labels.push_back(m.carrier().label(e));
  std::vector<Elem> mult(elems.size() * elems.size());
  for (std::size_t i = 0; i < elems.size(); ++i)
    for (std::size_t j = 0; j < elems.size(); ++j) {
      auto p = pos(m(elems[i], elems[j]));
      if (!p) throw Error("subset is not closed under multiplication");
      mult[i * elems.size() + j] = *p;
    }
  return {FinMonoid(FinSet(std::move(labels)), *u, std::move(mult)), std::move(elems)};
}

// --- semirings ---------------------------------------------------------------

FinSemiring::FinSemiring(FinSet carrier, Elem zero, Elem one, std::vector<Elem> add, std::vector<Elem> mul)
    : carrier_(std::move(carrier)), zero_(zero), one_(one), add_(std::move(add)), mul_(std::move(mul)) {
  if (auto v = FinMonoid::violation(carrier_, zero_, add_)) throw Error("semiring addition: " + *v);
  if (auto v = FinMonoid::violation(carrier_, one_, mul_)) throw Error("semiring multiplication: " + *v);
  const std::uint64_t n = size();
  for (Elem a = 0; a < n; ++a) {
    if (this->mul(zero_, a) != zero_ || this->mul(a, zero_) != zero_) throw Error("zero does not annihilate");
    for (Elem b = 0; b < n; ++b) {
      if (this->add(a, b) != this->add(b, a)) throw Error("semiring addition not commutative");
      for (Elem c = 0; c < n; ++c) {
        if (this->mul(a, this->add(b, c)) != this->add(this->mul(a, b), this->mul(a, c))) throw Error("left distributivity fails");
        if (this->mul(this->add(a, b), c) != this->add(this->mul(a, c), this->mul(b, c))) throw Error("right distributivity fails");
      }
    }
  }
}

bool FinSemiring::commutative() const {
  for (Elem a = 0; a < size(); ++a)
    for (Elem b = 0; b < size(); ++b)
      if (mul(a, b) != mul(b, a)) return false;
  return true;
}

namespace fixtures {

FinMonoid cyclic(std::uint64_t n) {
  std::vector<std::string> labels;
  for (std::uint64_t i = 0; i < n; ++i) labels.push_back("z" + std::to_string(i));
  std::vector<Elem> mult(n * n);
  for (Elem a = 0; a < n; ++a)
    for (Elem b = 0; b < n; ++b) mult[a * n + b] = (a + b) % n;
  return FinMonoid(FinSet(std::move(labels)), 0, std::move(mult));
}

FinMonoid dihedral4() {
  // index = k + 4 f for r^k s^f; (r^a s^f)(r^b s^g) = r^(a + (f ? -b : b)) s^(f xor g)
  std::vector<std::string> labels = {"e", "r", "r2", "r3", "s", "rs", "r2s", "r3s"};
  std::vector<Elem> mult(64);
  for (Elem x = 0; x < 8; ++x)
    for (Elem y = 0; y < 8; ++y) {
      Elem a = x % 4, f = x / 4, b = y % 4, g = y / 4;
      Elem k = (a + (f ? 4 - b : b)) % 4;
      mult[x * 8 + y] = k + 4 * (f ^ g);
    }
  return FinMonoid(FinSet(std::move(labels)), 0, std::move(mult));
}

std::vector<Elem> d4_rotations() { return {0, 1, 2, 3}; }

FinMonoid symmetric3() {
  std::vector<std::array<int, 3>> perms;
  std::array<int, 3> p = {0, 1, 2};
  do perms.push_back(p);
  while (std::next_permutation(p.begin(), p.end()));
  std::vector<std::string> labels;
  for (auto& q : perms) labels.push_back("p" + std::to_string(q[0]) + std::to_string(q[1]) + std::to_string(q[2]));
  std::vector<Elem> mult(36);
  for (std::size_t i = 0; i < 6; ++i)
    for (std::size_t j = 0; j < 6; ++j) {
      std::array<int, 3> c{};
      for (int k = 0; k < 3; ++k) c[k] = perms[i][perms[j][k]];  // (p_i ∘ p_j)
      mult[i * 6 + j] = static_cast<Elem>(std::find(perms.begin(), perms.end(), c) - perms.begin());
    }
  return FinMonoid(FinSet(std::move(labels)), 0, std::move(mult));
}

FinSemiring booleans() {
  return FinSemiring(FinSet(std::vector<std::string>{"0", "1"}), 0, 1, {0, 1, 1, 1}, {0, 0, 0, 1});
}

FinSemiring integers_mod(std::uint64_t n) {
  std::vector<std::string> labels;
  std::vector<Elem> add(n * n), mul(n * n);
  for (Elem a = 0; a < n; ++a) {
    labels.push_back(std::to_string(a));
    for (Elem b = 0; b < n; ++b) {
      add[a * n + b] = (a + b) % n;
      mul[a * n + b] = (a * b) % n;
    }
  }
  return FinSemiring(FinSet(std::move(labels)), 0, n > 1 ? 1 : 0, std::move(add), std::move(mul));
}

FinSemiring bool_matrices2() {
  // bit (2*i + j) holds entry (i, j)
  auto entry = [](Elem m, int i, int j) -> Elem { return (m >> (2 * i + j)) & 1U; };
  std::vector<std::string> labels;
  std::vector<Elem> add(256), mul(256);
  for (Elem a = 0; a < 16; ++a) {
    labels.push_back("[" + std::to_string(entry(a, 0, 0)) + std::to_string(entry(a, 0, 1)) + ";" +
                     std::to_string(entry(a, 1, 0)) + std::to_string(entry(a, 1, 1)) + "]");
    for (Elem b = 0; b < 16; ++b) {
      add[a * 16 + b] = a | b;
      Elem c = 0;
      for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) {
          Elem v = (entry(a, i, 0) & entry(b, 0, j)) | (entry(a, i, 1) & entry(b, 1, j));
          c |= v << (2 * i + j);
        }
      mul[a * 16 + b] = c;
    }
  }
  // identity matrix: entries (0,0) and (1,1) -> bits 0 and 3
  return FinSemiring(FinSet(std::move(labels)), 0, 0b1001, std::move(add), std::move(mul));
}

}  // namespace fixtures

}  // namespace csc
