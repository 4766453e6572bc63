#include "pcoh/pgroup.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>

namespace pcoh {

namespace {

constexpr std::size_t kMaxOrder = 4096;

std::size_t ipow(std::size_t b, unsigned e) {
  std::size_t r = 1;
  while (e--) r *= b;
  return r;
}

void check_word(const PcPresentation& pres, const std::vector<unsigned>& w, unsigned min_index, const char* what) {
  if (w.size() != pres.n) throw GroupError(std::string(what) + ": word has wrong length");
  for (unsigned i = 0; i < pres.n; ++i) {
    if (w[i] >= pres.p) throw GroupError(std::string(what) + ": exponent out of range");
    if (w[i] && i < min_index) throw GroupError(std::string(what) + ": relation involves an earlier generator");
  }
}

// Membership bitmap helpers over a group of known order.
std::vector<char> bitmap(std::size_t order, const std::vector<Elem>& elements) {
  std::vector<char> in(order, 0);
  for (auto x : elements) in[x] = 1;
  return in;
}

std::vector<Elem> from_bitmap(const std::vector<char>& in) {
  std::vector<Elem> out;
  for (std::size_t i = 0; i < in.size(); ++i)
    if (in[i]) out.push_back(static_cast<Elem>(i));
  return out;
}

// S normal in <S, x> with x^p in S: returns S<x>.
void extend_by(const PGroup& g, std::vector<char>& s, Elem x) {
  std::vector<Elem> current = from_bitmap(s);
  Elem xk = x;
  for (unsigned k = 1; k < g.p(); ++k) {
    for (auto y : current) s[g.mul(y, xk)] = 1;
    xk = g.mul(xk, x);
  }
}

}  // namespace

// ---------------------------------------------------------------- presentation

PcPresentation PcPresentation::trivial_relations(Prime p, unsigned n) {
  PcPresentation pres;
  pres.p = p;
  pres.n = n;
  pres.power.assign(n, std::vector<unsigned>(n, 0));
  pres.comm.resize(n);
  for (unsigned j = 0; j < n; ++j) pres.comm[j].assign(j, std::vector<unsigned>(n, 0));
  return pres;
}

void PcPresentation::set_power(unsigned i, std::vector<unsigned> word) {
  if (i >= n) throw GroupError("power relation: generator out of range");
  power[i] = std::move(word);
}

void PcPresentation::set_comm(unsigned j, unsigned i, std::vector<unsigned> word) {
  if (!(i < j && j < n)) throw GroupError("commutator relation: need i < j < n");
  comm[j][i] = std::move(word);
}

std::size_t PcPresentation::order() const { return ipow(p, n); }

// ---------------------------------------------------------------- PGroup

PGroup::PGroup(PcPresentation pres) : pres_(std::move(pres)) {
  const Prime p = pres_.p;
  const unsigned n = pres_.n;
  if (!is_prime(p)) throw GroupError("presentation prime is not prime");
  if (pres_.power.size() != n || pres_.comm.size() != n) throw GroupError("presentation has wrong number of relations");
  for (unsigned i = 0; i < n; ++i) {
    check_word(pres_, pres_.power[i], i + 1, "power relation");
    if (pres_.comm[i].size() != i) throw GroupError("presentation has wrong number of commutator relations");
    for (unsigned k = 0; k < i; ++k) check_word(pres_, pres_.comm[i][k], i + 1, "commutator relation");
  }
  order_ = 1;
  for (unsigned i = 0; i < n; ++i) {
    if (order_ * p > kMaxOrder) throw GroupError("group order exceeds " + std::to_string(kMaxOrder));
    pow_p_.push_back(static_cast<Elem>(order_));
    order_ *= p;
  }

  gen_cache_.assign(order_ * n, -1);
  table_.assign(order_ * order_, 0);
  for (std::size_t a = 0; a < order_; ++a) table_[a * order_] = static_cast<Elem>(a);
  for (std::size_t b = 1; b < order_; ++b) {
    unsigned k = 0;
    while ((b / pow_p_[k]) % p == 0) ++k;
    const std::size_t rest = b - pow_p_[k];
    for (std::size_t a = 0; a < order_; ++a) table_[a * order_ + b] = table_[mul_gen(static_cast<Elem>(a), k) * order_ + rest];
  }

  for (std::size_t b = 0; b < order_; ++b)
    if (table_[b] != b) throw GroupError("inconsistent presentation: identity fails");
  for (std::size_t a = 0; a < order_; ++a)
    for (std::size_t b = 0; b < order_; ++b) {
      const Elem ab = table_[a * order_ + b];
      for (unsigned k = 0; k < n; ++k)
        if (table_[ab * order_ + pow_p_[k]] != table_[a * order_ + table_[b * order_ + pow_p_[k]]])
          throw GroupError("inconsistent presentation: associativity fails");
    }
  inverse_.assign(order_, 0);
  for (std::size_t a = 0; a < order_; ++a) {
    std::size_t b = 0;
    while (b < order_ && table_[a * order_ + b] != 0) ++b;
    if (b == order_ || table_[b * order_ + a] != 0) throw GroupError("inconsistent presentation: no inverse");
    inverse_[a] = static_cast<Elem>(b);
  }
  gen_cache_.clear();
  gen_cache_.shrink_to_fit();
}

std::vector<unsigned> PGroup::exponents(Elem x) const {
  std::vector<unsigned> e(pres_.n);
  for (unsigned i = 0; i < pres_.n; ++i) {
    e[i] = x % pres_.p;
    x /= pres_.p;
  }
  return e;
}

Elem PGroup::encode(const std::vector<unsigned>& exps) const {
  Elem x = 0;
  for (unsigned i = 0; i < pres_.n; ++i) x += (exps[i] % pres_.p) * pow_p_[i];
  return x;
}

Elem PGroup::mul_gen(Elem x, unsigned k) {
  const std::size_t slot = static_cast<std::size_t>(x) * pres_.n + k;
  if (gen_cache_[slot] >= 0) return static_cast<Elem>(gen_cache_[slot]);
  const auto e = exponents(x);
  Elem r = 0;
  for (unsigned i = 0; i < k; ++i) r += e[i] * pow_p_[i];
  if (e[k] + 1 == pres_.p)
    r += encode(pres_.power[k]);
  else
    r += (e[k] + 1) * pow_p_[k];
  // g_k^{-1} g_j g_k = g_j [g_j, g_k] for each letter of the tail.
  for (unsigned j = k + 1; j < pres_.n; ++j)
    for (unsigned t = 0; t < e[j]; ++t) {
      r = mul_gen(r, j);
      const auto& c = pres_.comm[j][k];
      for (unsigned l = j + 1; l < pres_.n; ++l)
        for (unsigned s = 0; s < c[l]; ++s) r = mul_gen(r, l);
    }
  gen_cache_[slot] = r;
  return r;
}

Elem PGroup::pow(Elem a, unsigned k) const {
  Elem r = 0;
  while (k--) r = mul(r, a);
  return r;
}

unsigned PGroup::element_order(Elem a) const {
  unsigned k = 1;
  for (Elem x = a; x != 0; x = mul(x, a)) ++k;
  return a == 0 ? 1 : k;
}

Elem PGroup::normal_form(const Word& w) const {
  Elem r = 0;
  for (const auto& [gen, e] : w) {
    if (gen >= pres_.n) throw GroupError("malformed word: generator index out of range");
    const Elem g = e >= 0 ? generator(gen) : inv(generator(gen));
    for (int t = 0; t < std::abs(e); ++t) r = mul(r, g);
  }
  return r;
}

GroupPtr make_group(PcPresentation pres) { return std::make_shared<const PGroup>(std::move(pres)); }

// ---------------------------------------------------------------- subgroups

bool Subgroup::contains(Elem x) const { return std::binary_search(elements.begin(), elements.end(), x); }

bool Subgroup::contains(const Subgroup& other) const {
  return std::includes(elements.begin(), elements.end(), other.elements.begin(), other.elements.end());
}

Subgroup generate(const PGroup& g, const std::vector<Elem>& gens) {
  std::vector<char> seen(g.order(), 0);
  std::vector<Elem> queue{0};
  seen[0] = 1;
  for (std::size_t q = 0; q < queue.size(); ++q)
    for (auto s : gens) {
      const Elem y = g.mul(queue[q], s);
      if (!seen[y]) {
        seen[y] = 1;
        queue.push_back(y);
      }
    }
  Subgroup out;
  out.gens = gens;
  out.elements = from_bitmap(seen);
  return out;
}

Subgroup subgroup_from_elements(const PGroup& g, std::vector<Elem> elements) {
  std::sort(elements.begin(), elements.end());
  elements.erase(std::unique(elements.begin(), elements.end()), elements.end());
  Subgroup cur = generate(g, {});
  std::vector<Elem> gens;
  for (auto x : elements) {
    if (cur.contains(x)) continue;
    gens.push_back(x);
    cur = generate(g, gens);
  }
  if (cur.elements != elements) throw GroupError("element set is not a subgroup");
  return cur;
}

Subgroup whole_group(const PGroup& g) {
  std::vector<Elem> gens;
  for (unsigned i = 0; i < g.n(); ++i) gens.push_back(g.generator(i));
  return generate(g, gens);
}

Subgroup conjugate(const PGroup& g, Elem h, const Subgroup& s) {
  Subgroup out;
  for (auto x : s.gens) out.gens.push_back(g.conj(h, x));
  for (auto x : s.elements) out.elements.push_back(g.conj(h, x));
  std::sort(out.elements.begin(), out.elements.end());
  return out;
}

// ---------------------------------------------------------------- homomorphisms

GroupHom make_hom(GroupPtr source, GroupPtr target, std::vector<Elem> images) {
  const PGroup& s = *source;
  const PGroup& t = *target;
  if (images.size() != s.n()) throw GroupError("homomorphism: wrong number of generator images");
  for (auto y : images)
    if (y >= t.order()) throw GroupError("homomorphism: image out of range");
  std::vector<Elem> map(s.order(), 0);
  for (std::size_t x = 1; x < s.order(); ++x) {
    unsigned k = 0;
    while ((x / s.generator(k)) % s.p() == 0) ++k;
    map[x] = t.mul(images[k], map[x - s.generator(k)]);
  }
  for (std::size_t x = 0; x < s.order(); ++x)
    for (unsigned k = 0; k < s.n(); ++k)
      if (map[s.mul(static_cast<Elem>(x), s.generator(k))] != t.mul(map[x], images[k]))
        throw GroupError("homomorphism: relations not preserved");
  return GroupHom{std::move(source), std::move(target), std::move(images), std::move(map)};
}

GroupHom compose(const GroupHom& second, const GroupHom& first) {
  if (first.target.get() != second.source.get() && !(first.target->presentation() == second.source->presentation()))
    throw GroupError("compose: groups do not match");
  std::vector<Elem> images;
  for (auto y : first.images) images.push_back(second(y));
  return make_hom(first.source, second.target, std::move(images));
}

GroupHom identity_hom(GroupPtr g) {
  std::vector<Elem> images;
  for (unsigned i = 0; i < g->n(); ++i) images.push_back(g->generator(i));
  return make_hom(g, g, std::move(images));
}

Elem Embedded::pull(Elem parent_elem) const {
  const auto v = from_parent.at(parent_elem);
  if (v < 0) throw GroupError("element not in subgroup");
  return static_cast<Elem>(v);
}

// ---------------------------------------------------------------- Cayley tables

std::pair<GroupPtr, std::vector<std::size_t>> from_cayley_table(Prime p, const std::vector<std::size_t>& table,
                                                                 std::string name) {
  std::size_t order = 1;
  while (order * order < table.size()) ++order;
  if (order * order != table.size()) throw GroupError("Cayley table is not square");
  auto mul = [&](std::size_t a, std::size_t b) { return table[a * order + b]; };
  for (std::size_t b = 0; b < order; ++b)
    if (mul(0, b) != b) throw GroupError("Cayley table: element 0 is not the identity");
  std::vector<std::size_t> inv(order);
  for (std::size_t a = 0; a < order; ++a) {
    std::size_t b = 0;
    while (b < order && mul(a, b) != 0) ++b;
    if (b == order) throw GroupError("Cayley table: missing inverse");
    inv[a] = b;
  }
  auto power = [&](std::size_t a, unsigned k) {
    std::size_t r = 0;
    while (k--) r = mul(r, a);
    return r;
  };
  auto closure = [&](std::vector<char> in, const std::vector<std::size_t>& gens) {
    std::vector<std::size_t> queue;
    for (std::size_t i = 0; i < order; ++i)
      if (in[i]) queue.push_back(i);
    if (!in[0]) {
      in[0] = 1;
      queue.push_back(0);
    }
    for (std::size_t q = 0; q < queue.size(); ++q)
      for (auto s : gens) {
        for (auto y : {mul(queue[q], s), mul(s, queue[q])})
          if (!in[y]) {
            in[y] = 1;
            queue.push_back(y);
          }
      }
    return in;
  };
  auto members = [&](const std::vector<char>& in) {
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < order; ++i)
      if (in[i]) out.push_back(i);
    return out;
  };

  // Generators of the whole group, used for normal closures.
  std::vector<std::size_t> ggens;
  {
    std::vector<char> cur(order, 0);
    cur[0] = 1;
    for (std::size_t x = 0; x < order; ++x)
      if (!cur[x]) {
        ggens.push_back(x);
        cur = closure(std::vector<char>(order, 0), ggens);
      }
  }

  // Lower exponent-p central series.
  std::vector<std::vector<char>> layers{std::vector<char>(order, 1)};
  while (members(layers.back()).size() > 1) {
    const auto cur = members(layers.back());
    std::vector<std::size_t> gens;
    for (auto x : cur) {
      gens.push_back(power(x, p));
      for (auto s : ggens) gens.push_back(mul(mul(inv[x], inv[s]), mul(x, s)));
    }
    std::sort(gens.begin(), gens.end());
    gens.erase(std::unique(gens.begin(), gens.end()), gens.end());
    std::vector<char> next = closure(std::vector<char>(order, 0), gens);
    // normal closure
    while (true) {
      std::vector<std::size_t> extra;
      for (auto y : members(next))
        for (auto s : ggens) {
          const auto c = mul(mul(s, y), inv[s]);
          if (!next[c]) extra.push_back(c);
        }
      if (extra.empty()) break;
      gens.insert(gens.end(), extra.begin(), extra.end());
      next = closure(std::vector<char>(order, 0), gens);
    }
    if (members(next).size() == cur.size()) throw GroupError("Cayley table: not a p-group");
    layers.push_back(std::move(next));
  }

  std::vector<std::size_t> seq;
  for (std::size_t l = 0; l + 1 < layers.size(); ++l) {
    std::vector<char> s = layers[l + 1];
    for (std::size_t x = 0; x < order; ++x) {
      if (!layers[l][x] || s[x]) continue;
      seq.push_back(x);
      auto current = members(s);
      std::size_t xk = x;
      for (unsigned k = 1; k < p; ++k) {
        for (auto y : current) s[mul(y, xk)] = 1;
        xk = mul(xk, x);
      }
    }
  }
  const unsigned n = static_cast<unsigned>(seq.size());
  if (ipow(p, n) != order) throw GroupError("Cayley table: order is not a power of p");

  std::vector<std::size_t> new_to_old(order), old_to_new(order, order);
  for (std::size_t t = 0; t < order; ++t) {
    std::size_t x = 0, rest = t;
    for (unsigned i = 0; i < n; ++i) {
      x = mul(x, power(seq[i], static_cast<unsigned>(rest % p)));
      rest /= p;
    }
    if (old_to_new[x] != order) throw GroupError("Cayley table: normal forms collide");
    new_to_old[t] = x;
    old_to_new[x] = t;
  }
  auto exps = [&](std::size_t old) {
    std::vector<unsigned> e(n);
    std::size_t t = old_to_new[old];
    for (unsigned i = 0; i < n; ++i) {
      e[i] = static_cast<unsigned>(t % p);
      t /= p;
    }
    return e;
  };
  PcPresentation pres = PcPresentation::trivial_relations(p, n);
  pres.name = std::move(name);
  for (unsigned i = 0; i < n; ++i) {
    pres.power[i] = exps(power(seq[i], p));
    for (unsigned k = 0; k < i; ++k) pres.comm[i][k] = exps(mul(mul(inv[seq[i]], inv[seq[k]]), mul(seq[i], seq[k])));
  }
  auto group = make_group(std::move(pres));
  for (std::size_t x = 0; x < order; ++x)
    for (unsigned k = 0; k < n; ++k)
      if (new_to_old[group->mul(static_cast<Elem>(x), group->generator(k))] != mul(new_to_old[x], seq[k]))
        throw GroupError("Cayley table: recovered presentation does not match");
  return {group, new_to_old};
}

Embedded as_group(const GroupPtr& g, const Subgroup& s, std::string name) {
  const std::size_t m = s.order();
  std::vector<std::int64_t> pos(g->order(), -1);
  for (std::size_t i = 0; i < m; ++i) pos[s.elements[i]] = static_cast<std::int64_t>(i);
  std::vector<std::size_t> table(m * m);
  for (std::size_t a = 0; a < m; ++a)
    for (std::size_t b = 0; b < m; ++b) {
      const auto c = pos[g->mul(s.elements[a], s.elements[b])];
      if (c < 0) throw GroupError("as_group: not closed under multiplication");
      table[a * m + b] = static_cast<std::size_t>(c);
    }
  auto [h, new_to_old] = from_cayley_table(g->p(), table, std::move(name));
  std::vector<Elem> images;
  for (unsigned i = 0; i < h->n(); ++i) images.push_back(s.elements[new_to_old[h->generator(i)]]);
  Embedded out{h, make_hom(h, g, std::move(images)), std::vector<std::int64_t>(g->order(), -1)};
  for (std::size_t x = 0; x < m; ++x) out.from_parent[s.elements[new_to_old[x]]] = static_cast<std::int64_t>(x);
  return out;
}

Embedded as_group(const GroupPtr& g, const ElemAbelian& v, std::string name) {
  auto pres = elementary_abelian_presentation(g->p(), v.rank());
  if (!name.empty()) pres.name = std::move(name);
  auto h = make_group(std::move(pres));
  Embedded out{h, make_hom(h, g, v.basis), std::vector<std::int64_t>(g->order(), -1)};
  for (std::size_t x = 0; x < h->order(); ++x) out.from_parent[out.inclusion(static_cast<Elem>(x))] = static_cast<std::int64_t>(x);
  return out;
}

PcPresentation elementary_abelian_presentation(Prime p, unsigned rank) {
  auto pres = PcPresentation::trivial_relations(p, rank);
  pres.name = "Z" + std::to_string(p) + "^" + std::to_string(rank);
  return pres;
}

PcPresentation direct_product(const PcPresentation& a, const PcPresentation& b) {
  if (a.p != b.p) throw GroupError("direct product of groups at different primes");
  auto pres = PcPresentation::trivial_relations(a.p, a.n + b.n);
  auto shift = [&](const std::vector<unsigned>& w, unsigned offset) {
    std::vector<unsigned> out(a.n + b.n, 0);
    std::copy(w.begin(), w.end(), out.begin() + offset);
    return out;
  };
  for (unsigned i = 0; i < a.n; ++i) {
    pres.power[i] = shift(a.power[i], 0);
    for (unsigned k = 0; k < i; ++k) pres.comm[i][k] = shift(a.comm[i][k], 0);
  }
  for (unsigned i = 0; i < b.n; ++i) {
    pres.power[a.n + i] = shift(b.power[i], a.n);
    for (unsigned k = 0; k < i; ++k) pres.comm[a.n + i][a.n + k] = shift(b.comm[i][k], a.n);
  }
  pres.name = a.name + "x" + b.name;
  return pres;
}

Quotient quotient_by_central(const GroupPtr& g, const Subgroup& z) {
  for (auto x : z.elements)
    for (unsigned k = 0; k < g->n(); ++k)
      if (!g->commute(x, g->generator(k))) throw GroupError("quotient_by_central: subgroup is not central");
  const std::size_t none = g->order();
  std::vector<std::size_t> coset(g->order(), none);
  std::vector<Elem> reps;
  for (std::size_t x = 0; x < g->order(); ++x) {
    if (coset[x] != none) continue;
    for (auto c : z.elements) coset[g->mul(static_cast<Elem>(x), c)] = reps.size();
    reps.push_back(static_cast<Elem>(x));
  }
  const std::size_t m = reps.size();
  std::vector<std::size_t> table(m * m);
  for (std::size_t a = 0; a < m; ++a)
    for (std::size_t b = 0; b < m; ++b) table[a * m + b] = coset[g->mul(reps[a], reps[b])];
  auto [q, new_to_old] = from_cayley_table(g->p(), table, g->name() + "/Z");
  std::vector<Elem> old_to_new(m);
  for (std::size_t x = 0; x < m; ++x) old_to_new[new_to_old[x]] = static_cast<Elem>(x);
  std::vector<Elem> images;
  for (unsigned k = 0; k < g->n(); ++k) images.push_back(old_to_new[coset[g->generator(k)]]);
  return Quotient{q, make_hom(g, q, std::move(images))};
}

Subgroup kernel(const GroupHom& f) {
  std::vector<Elem> els;
  for (std::size_t x = 0; x < f.map.size(); ++x)
    if (f.map[x] == 0) els.push_back(static_cast<Elem>(x));
  return subgroup_from_elements(*f.source, els);
}

// ---------------------------------------------------------------- structure

Subgroup center(const PGroup& g) {
  std::vector<Elem> els;
  for (Elem x = 0; x < g.order(); ++x) {
    bool central = true;
    for (unsigned k = 0; k < g.n() && central; ++k) central = g.commute(x, g.generator(k));
    if (central) els.push_back(x);
  }
  return subgroup_from_elements(g, els);
}

ElemAbelian omega1_center(const PGroup& g) {
  std::vector<Elem> els;
  for (auto x : center(g).elements)
    if (g.pow(x, g.p()) == 0) els.push_back(x);
  ElemAbelian v;
  v.sub = subgroup_from_elements(g, els);
  v.basis = v.sub.gens;
  return v;
}

bool is_p_central(const PGroup& g) {
  for (Elem x = 1; x < g.order(); ++x) {
    if (g.pow(x, g.p()) != 0) continue;
    for (unsigned k = 0; k < g.n(); ++k)
      if (!g.commute(x, g.generator(k))) return false;
  }
  return true;
}

Subgroup centralizer(const PGroup& g, const Subgroup& s) {
  std::vector<Elem> els;
  for (Elem x = 0; x < g.order(); ++x)
    if (std::all_of(s.gens.begin(), s.gens.end(), [&](Elem y) { return g.commute(x, y); })) els.push_back(x);
  return subgroup_from_elements(g, els);
}

Subgroup normalizer(const PGroup& g, const Subgroup& s) {
  std::vector<Elem> els;
  for (Elem x = 0; x < g.order(); ++x)
    if (std::all_of(s.gens.begin(), s.gens.end(), [&](Elem y) { return s.contains(g.conj(x, y)); })) els.push_back(x);
  return subgroup_from_elements(g, els);
}

Subgroup frattini(const PGroup& g) {
  std::vector<Elem> gens;
  for (Elem x = 0; x < g.order(); ++x) gens.push_back(g.pow(x, g.p()));
  for (unsigned i = 0; i < g.n(); ++i)
    for (unsigned j = 0; j < i; ++j) gens.push_back(g.commutator(g.generator(i), g.generator(j)));
  std::sort(gens.begin(), gens.end());
  gens.erase(std::unique(gens.begin(), gens.end()), gens.end());
  // Normal closure under the pc generators.
  Subgroup h = generate(g, gens);
  while (true) {
    std::vector<Elem> extra;
    for (auto x : h.elements)
      for (unsigned k = 0; k < g.n(); ++k) {
        const Elem y = g.conj(g.generator(k), x);
        if (!h.contains(y)) extra.push_back(y);
      }
    if (extra.empty()) break;
    gens.insert(gens.end(), extra.begin(), extra.end());
    h = generate(g, gens);
  }
  return subgroup_from_elements(g, h.elements);
}

std::vector<Elem> minimal_generators(const PGroup& g) {
  auto s = bitmap(g.order(), frattini(g).elements);
  std::vector<Elem> out;
  for (Elem x = 0; x < g.order(); ++x) {
    if (s[x]) continue;
    out.push_back(x);
    extend_by(g, s, x);
  }
  return out;
}

std::vector<Subgroup> maximal_subgroups(const PGroup& g) {
  const auto phi = frattini(g);
  const auto gens = minimal_generators(g);
  const unsigned d = static_cast<unsigned>(gens.size());
  const Prime p = g.p();
  std::vector<std::vector<unsigned>> coords(g.order());
  const std::size_t count = ipow(p, d);
  for (std::size_t t = 0; t < count; ++t) {
    std::vector<unsigned> c(d);
    Elem y = 0;
    std::size_t rest = t;
    for (unsigned i = 0; i < d; ++i) {
      c[i] = static_cast<unsigned>(rest % p);
      rest /= p;
      y = g.mul(y, g.pow(gens[i], c[i]));
    }
    for (auto f : phi.elements) coords[g.mul(y, f)] = c;
  }
  std::vector<Subgroup> out;
  for (std::size_t t = 1; t < count; ++t) {
    std::vector<unsigned> lambda(d);
    std::size_t rest = t;
    for (unsigned i = 0; i < d; ++i) {
      lambda[i] = static_cast<unsigned>(rest % p);
      rest /= p;
    }
    const auto lead = std::find_if(lambda.begin(), lambda.end(), [](unsigned v) { return v != 0; });
    if (*lead != 1) continue;
    std::vector<Elem> els;
    for (Elem x = 0; x < g.order(); ++x) {
      unsigned s = 0;
      for (unsigned i = 0; i < d; ++i) s += lambda[i] * coords[x][i];
      if (s % p == 0) els.push_back(x);
    }
    out.push_back(subgroup_from_elements(g, els));
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<ElemAbelian> elementary_abelian_subgroups(const PGroup& g, const ElemAbelian* containing) {
  std::vector<Elem> order_p;
  for (Elem x = 1; x < g.order(); ++x)
    if (g.pow(x, g.p()) == 0) order_p.push_back(x);
  ElemAbelian base;
  if (containing) {
    base = *containing;
  } else {
    base.sub = generate(g, {});
  }
  std::set<std::vector<Elem>> seen{base.sub.elements};
  std::vector<ElemAbelian> out{base};
  for (std::size_t q = 0; q < out.size(); ++q) {
    for (auto x : order_p) {
      const ElemAbelian e = out[q];
      if (e.sub.contains(x)) continue;
      if (!std::all_of(e.basis.begin(), e.basis.end(), [&](Elem b) { return g.commute(b, x); })) continue;
      std::vector<Elem> els;
      Elem xk = 0;
      for (unsigned k = 0; k < g.p(); ++k) {
        for (auto y : e.sub.elements) els.push_back(g.mul(y, xk));
        xk = g.mul(xk, x);
      }
      std::sort(els.begin(), els.end());
      if (!seen.insert(els).second) continue;
      ElemAbelian next;
      next.basis = e.basis;
      next.basis.push_back(x);
      next.sub.gens = next.basis;
      next.sub.elements = std::move(els);
      out.push_back(std::move(next));
    }
  }
  std::stable_sort(out.begin(), out.end(), [](const ElemAbelian& a, const ElemAbelian& b) {
    if (a.rank() != b.rank()) return a.rank() < b.rank();
    return a.sub.elements < b.sub.elements;
  });
  return out;
}

unsigned p_rank(const PGroup& g) {
  unsigned r = 0;
  for (const auto& v : elementary_abelian_subgroups(g)) r = std::max(r, v.rank());
  return r;
}

std::vector<ConjugacyClass> conjugacy_classes(const PGroup& g, const std::vector<Subgroup>& subgroups) {
  std::map<std::vector<Elem>, std::size_t> index;
  for (std::size_t i = 0; i < subgroups.size(); ++i) index.emplace(subgroups[i].elements, i);
  std::vector<char> assigned(subgroups.size(), 0);
  std::vector<ConjugacyClass> out;
  for (std::size_t i = 0; i < subgroups.size(); ++i) {
    if (assigned[i]) continue;
    ConjugacyClass cls;
    cls.rep = i;
    for (Elem h = 0; h < g.order(); ++h) {
      const auto c = conjugate(g, h, subgroups[i]);
      const auto it = index.find(c.elements);
      if (it == index.end()) throw GroupError("conjugacy_classes: list not closed under conjugation");
      if (assigned[it->second]) continue;
      assigned[it->second] = 1;
      cls.members.push_back(it->second);
      cls.conjugators.push_back(h);
    }
    out.push_back(std::move(cls));
  }
  return out;
}

GroupHom multiplication_hom(const GroupPtr& g, const ElemAbelian& c) {
  for (auto x : c.basis)
    for (unsigned k = 0; k < g->n(); ++k)
      if (!g->commute(x, g->generator(k))) throw GroupError("multiplication_hom: subgroup is not central");
  auto prod = make_group(direct_product(elementary_abelian_presentation(g->p(), c.rank()), g->presentation()));
  std::vector<Elem> images = c.basis;
  for (unsigned k = 0; k < g->n(); ++k) images.push_back(g->generator(k));
  return make_hom(prod, g, std::move(images));
}

QuillenCategoryAC quillen_category_AC(const PGroup& g) {
  const auto c = omega1_center(g);
  const auto subs = elementary_abelian_subgroups(g, &c);
  std::vector<Subgroup> plain;
  for (const auto& v : subs) plain.push_back(v.sub);
  const auto classes = conjugacy_classes(g, plain);

  QuillenCategoryAC cat;
  std::vector<std::size_t> class_of_object;
  for (std::size_t k = 0; k < classes.size(); ++k) {
    AcObject obj;
    obj.v = subs[classes[k].rep];
    obj.centralizer = centralizer(g, obj.v.sub);
    obj.normalizer = normalizer(g, obj.v.sub);
    std::vector<char> covered(g.order(), 0);
    for (auto x : obj.normalizer.elements) {
      if (covered[x]) continue;
      obj.weyl_reps.push_back(x);
      for (auto y : obj.centralizer.elements) covered[g.mul(x, y)] = 1;
    }
    cat.objects.push_back(std::move(obj));
  }
  for (std::size_t a = 0; a < classes.size(); ++a)
    for (std::size_t b = 0; b < classes.size(); ++b) {
      if (cat.objects[a].v.rank() >= cat.objects[b].v.rank()) continue;
      for (std::size_t k = 0; k < classes[a].members.size(); ++k)
        if (cat.objects[b].v.sub.contains(plain[classes[a].members[k]])) cat.edges.push_back({a, b, classes[a].conjugators[k]});
    }
  return cat;
}

}  // namespace pcoh
