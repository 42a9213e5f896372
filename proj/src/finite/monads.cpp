#include <algorithm>
#include <mutex>

#include "csc/monad.hpp"

namespace csc {

Elem FiniteMonad::mu(std::uint64_t x, Elem tt) const {
  const std::uint64_t tx = size(x);
  size(tx);  // |T T X| must be representable
  std::vector<Elem> id(tx);
  for (Elem i = 0; i < tx; ++i) id[i] = i;
  return bind(tx, x, tt, id);
}

Elem FiniteMonad::tau(std::uint64_t x, std::uint64_t y, Elem a, Elem s) const {
  std::vector<Elem> pair_with(y);
  for (Elem b = 0; b < y; ++b) pair_with[b] = pair_index(a, b, y);
  return fmap(y, checked_mul(x, y, cap_, "X × Y"), pair_with, s);
}

Elem FiniteMonad::tau_prime(std::uint64_t x, std::uint64_t y, Elem t, Elem b) const {
  // γ_{TX,Y}, then τ_{Y,X}, then T(γ_{Y,X})
  const std::uint64_t xy = checked_mul(x, y, cap_, "X × Y");
  Elem yx = tau(y, x, b, t);
  std::vector<Elem> swap(xy);
  for (Elem bb = 0; bb < y; ++bb)
    for (Elem a = 0; a < x; ++a) swap[pair_index(bb, a, x)] = pair_index(a, bb, y);
  return fmap(xy, xy, swap, yx);
}

bool FiniteMonad::commutes(std::uint64_t x, Elem t, std::uint64_t y, Elem s) const {
  const std::uint64_t xy = checked_mul(x, y, cap_, "X × Y");
  std::vector<Elem> k_lhs(y), k_rhs(x);
  for (Elem b = 0; b < y; ++b) k_lhs[b] = tau_prime(x, y, t, b);
  for (Elem a = 0; a < x; ++a) k_rhs[a] = tau(x, y, a, s);
  return bind(y, xy, s, k_lhs) == bind(x, xy, t, k_rhs);
}

FinSet FiniteMonad::object(std::uint64_t x) const {
  const std::uint64_t n = size(x);
  std::vector<std::string> labels;
  labels.reserve(n);
  for (Elem i = 0; i < n; ++i) labels.push_back(label(x, i));
  return FinSet(std::move(labels));
}

namespace {

// Little-endian digit access for base-b encodings.
Elem digit(Elem v, std::uint64_t pos, std::uint64_t base) {
  for (std::uint64_t i = 0; i < pos; ++i) v /= base;
  return v % base;
}

class Writer final : public FiniteMonad {
 public:
  Writer(FinMonoid m, std::string name, std::uint64_t cap)
      : FiniteMonad(cap), m_(std::move(m)), name_(std::move(name)) {}

  std::string name() const override { return name_; }
  std::uint64_t size(std::uint64_t x) const override { return checked_mul(x, m_.size(), cap_, name_ + " object"); }
  Elem eta(std::uint64_t, Elem a) const override { return a * m_.size() + m_.unit(); }
  Elem fmap(std::uint64_t, std::uint64_t, std::span<const Elem> f, Elem t) const override {
    return f[t / m_.size()] * m_.size() + t % m_.size();
  }
  Elem bind(std::uint64_t, std::uint64_t, Elem t, std::span<const Elem> k) const override {
    const std::uint64_t n = m_.size();
    Elem r = k[t / n];
    return (r / n) * n + m_(t % n, r % n);
  }
  std::string label(std::uint64_t, Elem t) const override {
    return "(" + std::to_string(t / m_.size()) + "," + m_.carrier().label(t % m_.size()) + ")";
  }

 private:
  FinMonoid m_;
  std::string name_;
};

class Continuation final : public FiniteMonad {
 public:
  Continuation(std::uint64_t s, std::uint64_t cap) : FiniteMonad(cap), s_(s) {}

  std::string name() const override { return "continuation(" + std::to_string(s_) + ")"; }
  std::uint64_t size(std::uint64_t x) const override {
    return checked_pow(s_, conts(x), cap_, name() + " object");
  }
  Elem eta(std::uint64_t x, Elem a) const override {
    std::vector<Elem> v(conts(x));
    for (Elem k = 0; k < v.size(); ++k) v[k] = digit(k, a, s_);
    return encode(v);
  }
  Elem fmap(std::uint64_t x, std::uint64_t y, std::span<const Elem> f, Elem t) const override {
    std::vector<Elem> v(conts(y));
    for (Elem k = 0; k < v.size(); ++k) {
      Elem kf = 0, p = 1;
      for (Elem a = 0; a < x; ++a, p *= s_) kf += digit(k, f[a], s_) * p;
      v[k] = digit(t, kf, s_);
    }
    return encode(v);
  }
  Elem bind(std::uint64_t x, std::uint64_t y, Elem t, std::span<const Elem> h) const override {
    std::vector<Elem> v(conts(y));
    for (Elem k = 0; k < v.size(); ++k) {
      Elem inner = 0, p = 1;
      for (Elem a = 0; a < x; ++a, p *= s_) inner += digit(h[a], k, s_) * p;
      v[k] = digit(t, inner, s_);
    }
    return encode(v);
  }
  std::string label(std::uint64_t x, Elem t) const override {
    std::string out = "k[";
    for (Elem k = 0; k < conts(x); ++k) out += std::to_string(digit(t, k, s_));
    return out + "]";
  }

 private:
  std::uint64_t conts(std::uint64_t x) const { return checked_pow(s_, x, cap_, "continuations"); }
  Elem encode(const std::vector<Elem>& v) const {
    Elem r = 0;
    for (std::size_t i = v.size(); i-- > 0;) r = r * s_ + v[i];
    return r;
  }
  std::uint64_t s_;
};

class Semiring final : public FiniteMonad {
 public:
  Semiring(FinSemiring s, std::string name, std::uint64_t cap)
      : FiniteMonad(cap), s_(std::move(s)), name_(std::move(name)) {}

  std::string name() const override { return name_; }
  std::uint64_t size(std::uint64_t x) const override { return checked_pow(s_.size(), x, cap_, name_ + " object"); }
  Elem eta(std::uint64_t x, Elem a) const override {
    std::vector<Elem> v(x, s_.zero());
    v[a] = s_.one();
    return encode(v);
  }
  Elem fmap(std::uint64_t x, std::uint64_t y, std::span<const Elem> f, Elem t) const override {
    std::vector<Elem> v(y, s_.zero());
    for (Elem a = 0; a < x; ++a) v[f[a]] = s_.add(v[f[a]], digit(t, a, s_.size()));
    return encode(v);
  }
  Elem bind(std::uint64_t x, std::uint64_t y, Elem t, std::span<const Elem> k) const override {
    std::vector<Elem> v(y, s_.zero());
    for (Elem a = 0; a < x; ++a) {
      Elem coeff = digit(t, a, s_.size());
      for (Elem b = 0; b < y; ++b) v[b] = s_.add(v[b], s_.mul(coeff, digit(k[a], b, s_.size())));
    }
    return encode(v);
  }
  std::string label(std::uint64_t x, Elem t) const override {
    std::string out;
    for (Elem a = 0; a < x; ++a) out += (a ? "+" : "") + s_.carrier().label(digit(t, a, s_.size())) + "·" + std::to_string(a);
    return out.empty() ? "0" : out;
  }

 private:
  Elem encode(const std::vector<Elem>& v) const {
    Elem r = 0;
    for (std::size_t i = v.size(); i-- > 0;) r = r * s_.size() + v[i];
    return r;
  }
  FinSemiring s_;
  std::string name_;
};

class Identity final : public FiniteMonad {
 public:
  using FiniteMonad::FiniteMonad;
  std::string name() const override { return "identity"; }
  std::uint64_t size(std::uint64_t x) const override { return x; }
  Elem eta(std::uint64_t, Elem a) const override { return a; }
  Elem fmap(std::uint64_t, std::uint64_t, std::span<const Elem> f, Elem t) const override { return f[t]; }
  Elem bind(std::uint64_t, std::uint64_t, Elem t, std::span<const Elem> k) const override { return k[t]; }
  std::string label(std::uint64_t, Elem t) const override { return std::to_string(t); }
};

class List final : public FiniteMonad {
 public:
  List(std::uint64_t max_len, std::uint64_t cap) : FiniteMonad(cap), max_len_(max_len) {}

  std::string name() const override { return "list(<=" + std::to_string(max_len_) + ")"; }
  std::uint64_t size(std::uint64_t x) const override {
    std::uint64_t total = 0;
    for (std::uint64_t n = 0; n <= max_len_; ++n) {
      total += checked_pow(x, n, cap_, name() + " object");
      if (total > cap_) throw SizeBlowup(name() + " object", cap_);
    }
    return total;
  }
  Elem eta(std::uint64_t x, Elem a) const override { return encode(x, {a}); }
  Elem fmap(std::uint64_t x, std::uint64_t y, std::span<const Elem> f, Elem t) const override {
    auto l = decode(x, t);
    for (auto& a : l) a = f[a];
    return encode(y, l);
  }
  Elem bind(std::uint64_t x, std::uint64_t y, Elem t, std::span<const Elem> k) const override {
    std::vector<Elem> out;
    for (Elem a : decode(x, t)) {
      auto part = decode(y, k[a]);
      out.insert(out.end(), part.begin(), part.end());
    }
    if (out.size() > max_len_) throw Error(name() + ": bind result exceeds the length cap");
    return encode(y, out);
  }
  bool commutes(std::uint64_t x, Elem t, std::uint64_t y, Elem s) const override {
    auto lt = decode(x, t);
    auto ls = decode(y, s);
    std::vector<Elem> lhs, rhs;
    for (Elem b : ls)
      for (Elem a : lt) lhs.push_back(pair_index(a, b, y));
    for (Elem a : lt)
      for (Elem b : ls) rhs.push_back(pair_index(a, b, y));
    return lhs == rhs;
  }
  std::string label(std::uint64_t x, Elem t) const override {
    std::string out = "[";
    auto l = decode(x, t);
    for (std::size_t i = 0; i < l.size(); ++i) out += (i ? "," : "") + std::to_string(l[i]);
    return out + "]";
  }

  std::vector<Elem> decode(std::uint64_t x, Elem t) const {
    std::uint64_t n = 0, block = 1;
    while (t >= block) {
      t -= block;
      ++n;
      block *= x;
      if (n > max_len_) throw Error("list index out of range");
    }
    std::vector<Elem> l(n);
    for (std::size_t i = n; i-- > 0;) {
      l[i] = t % x;
      t /= x;
    }
    return l;
  }
  Elem encode(std::uint64_t x, const std::vector<Elem>& l) const {
    if (l.size() > max_len_) throw Error(name() + ": list longer than the cap");
    Elem offset = 0, block = 1;
    for (std::size_t n = 0; n < l.size(); ++n) {
      offset += block;
      block *= x;
    }
    Elem v = 0;
    for (Elem a : l) v = v * x + a;
    return offset + v;
  }

 private:
  std::uint64_t max_len_;
};

}  // namespace

MonadPtr writer_monad(FinMonoid m, std::string name, std::uint64_t cap) {
  return std::make_shared<Writer>(std::move(m), std::move(name), cap);
}
MonadPtr continuation_monad(std::uint64_t s, std::uint64_t cap) { return std::make_shared<Continuation>(s, cap); }
MonadPtr semiring_monad(FinSemiring s, std::string name, std::uint64_t cap) {
  return std::make_shared<Semiring>(std::move(s), std::move(name), cap);
}
MonadPtr identity_monad(std::uint64_t cap) { return std::make_shared<Identity>(cap); }
MonadPtr list_monad(std::uint64_t max_len, std::uint64_t cap) { return std::make_shared<List>(max_len, cap); }

// --- subset monads -----------------------------------------------------------

namespace {
std::mutex& subset_mutex() {
  static std::mutex m;
  return m;
}
}  // namespace

SubsetMonad::SubsetMonad(MonadPtr parent, CarrierFn carrier, std::string name)
    : FiniteMonad(parent->cap()), parent_(std::move(parent)), carrier_fn_(std::move(carrier)), name_(std::move(name)) {}

const std::vector<Elem>& SubsetMonad::carrier(std::uint64_t x) const {
  std::lock_guard lock(subset_mutex());
  auto it = cache_.find(x);
  if (it == cache_.end()) {
    auto c = carrier_fn_(x);
    std::sort(c.begin(), c.end());
    c.erase(std::unique(c.begin(), c.end()), c.end());
    it = cache_.emplace(x, std::move(c)).first;
  }
  return it->second;
}

std::uint64_t SubsetMonad::size(std::uint64_t x) const { return carrier(x).size(); }

Elem SubsetMonad::include(std::uint64_t x, Elem t) const { return carrier(x).at(t); }

Elem SubsetMonad::corestrict(std::uint64_t x, Elem p) const {
  const auto& c = carrier(x);
  auto it = std::lower_bound(c.begin(), c.end(), p);
  if (it == c.end() || *it != p)
    throw Error(name_ + ": result " + parent_->label(x, p) + " leaves the submonad carrier");
  return static_cast<Elem>(it - c.begin());
}

Elem SubsetMonad::eta(std::uint64_t x, Elem a) const { return corestrict(x, parent_->eta(x, a)); }

Elem SubsetMonad::fmap(std::uint64_t x, std::uint64_t y, std::span<const Elem> f, Elem t) const {
  return corestrict(y, parent_->fmap(x, y, f, include(x, t)));
}

Elem SubsetMonad::bind(std::uint64_t x, std::uint64_t y, Elem t, std::span<const Elem> k) const {
  std::vector<Elem> pk(k.size());
  for (std::size_t i = 0; i < k.size(); ++i) pk[i] = include(y, k[i]);
  return corestrict(y, parent_->bind(x, y, include(x, t), pk));
}

std::string SubsetMonad::label(std::uint64_t x, Elem t) const { return parent_->label(x, include(x, t)); }

std::shared_ptr<const SubsetMonad> writer_submonad(MonadPtr writer_parent, const FinMonoid& parent_monoid,
                                                   const std::vector<Elem>& elems_in, std::string name) {
  const std::vector<Elem> elems = submonoid(parent_monoid, elems_in).inclusion;  // sorted, closed
  const std::uint64_t n = parent_monoid.size();
  auto carrier = [n, elems](std::uint64_t x) {
    std::vector<Elem> c;
    for (Elem a = 0; a < x; ++a)
      for (Elem s : elems) c.push_back(a * n + s);
    return c;
  };
  return std::make_shared<SubsetMonad>(std::move(writer_parent), carrier, std::move(name));
}

std::shared_ptr<const SubsetMonad> unit_submonad(MonadPtr parent) {
  auto p = parent;
  auto carrier = [p](std::uint64_t x) {
    std::vector<Elem> c;
    for (Elem a = 0; a < x; ++a) c.push_back(p->eta(x, a));
    return c;
  };
  return std::make_shared<SubsetMonad>(parent, carrier, "eta-image(" + parent->name() + ")");
}

}  // namespace csc
