#include "pcoh/invariants.hpp"

#include <algorithm>
#include <numeric>

namespace pcoh {

namespace {

std::vector<FpVector> columns(const FpMatrix& m) {
  std::vector<FpVector> out;
  for (std::size_t c = 0; c < m.cols(); ++c) out.push_back(m.column(c));
  return out;
}

FpMatrix from_columns(Prime p, std::size_t rows, const std::vector<FpVector>& cols) {
  FpMatrix m(p, rows, cols.size());
  for (std::size_t c = 0; c < cols.size(); ++c)
    for (std::size_t r = cols[c].next_nonzero(); r < rows; r = cols[c].next_nonzero(r + 1)) m.set(r, c, cols[c].get(r));
  return m;
}

std::optional<FpVector> preimage(const FpMatrix& m, const FpVector& target) {
  ImageSolver s(m.prime(), m.rows(), m.cols());
  for (const auto& c : columns(m)) s.insert(c);
  return s.solve(target);
}

GroupHom conjugation_hom(const GroupPtr& parent, const GroupPtr& from, const std::vector<Elem>& from_to_parent,
                         const GroupPtr& to, const std::vector<std::int64_t>& parent_to_to, Elem h) {
  std::vector<Elem> images;
  for (unsigned i = 0; i < from->n(); ++i) {
    const Elem y = from_to_parent.empty() ? from->generator(i) : from_to_parent[from->generator(i)];
    const Elem z = parent->conj(h, y);
    const auto back = parent_to_to.empty() ? static_cast<std::int64_t>(z) : parent_to_to[z];
    if (back < 0) throw InvariantError("conjugate leaves the expected subgroup");
    images.push_back(static_cast<Elem>(back));
  }
  return make_hom(from, to, std::move(images));
}

// pi_j^*(u) for the coordinate projections pi_j : C -> Z/p and the generator u of H^deg(Z/p).
std::vector<FpVector> coordinate_classes(const Cohomology& hc, const GroupPtr& c, unsigned deg,
                                         const ResolutionOptions& options) {
  const Prime p = c->p();
  const auto zp = make_group(elementary_abelian_presentation(p, 1));
  const auto rz = std::make_shared<const Resolution>(zp, deg, options);
  std::vector<FpVector> out;
  for (unsigned j = 0; j < c->n(); ++j) {
    std::vector<Elem> images(c->n(), 0);
    images[j] = 1;
    out.push_back(induced_maps(hc.resolution_ptr(), rz, make_hom(c, zp, images), deg)[deg].column(0));
  }
  return out;
}

unsigned ipow(unsigned b, std::size_t e) {
  unsigned r = 1;
  while (e--) r *= b;
  return r;
}

std::size_t equalizer_dim(Prime p, std::size_t vars, const std::vector<FpVector>& variable_columns) {
  if (vars == 0) return 0;
  if (variable_columns.empty() || variable_columns[0].size() == 0) return vars;
  return vars - rref(FpMatrix::from_rows(p, variable_columns[0].size(), variable_columns)).rank;
}

}  // namespace

int GradedDims::top() const {
  for (int k = static_cast<int>(dims.size()) - 1; k >= 0; --k)
    if (dims[static_cast<std::size_t>(k)]) return k;
  return -1;
}

int e_of(const GroupType& t) {
  int e = 0;
  for (auto a : t.entries) e += static_cast<int>(a) - 1;
  return e;
}

int h_of(const GroupType& t, Prime p) {
  if (t.entries.empty()) return 0;
  const unsigned a1 = t.entries.front();
  if (a1 == 1) return 0;
  if (a1 == 2) return 1;
  return static_cast<int>(a1 / p);
}

std::vector<std::size_t> free_algebra_series(const std::vector<unsigned>& polynomial_degrees, unsigned exterior_count,
                                             unsigned n) {
  std::vector<std::size_t> s(n + 1, 0);
  s[0] = 1;
  for (auto a : polynomial_degrees)
    for (unsigned k = a; k <= n; ++k) s[k] += s[k - a];
  for (unsigned e = 0; e < exterior_count; ++e)
    for (unsigned k = n; k >= 1; --k) s[k] += s[k - 1];
  return s;
}

std::vector<FpSubspace> comodule_primitives(const ResolutionPtr& rv, const ResolutionPtr& rk,
                                            const std::vector<Elem>& iota, unsigned top) {
  const auto m = comodule_map(rv, rk, iota, top);
  std::vector<FpSubspace> out;
  for (unsigned k = 0; k <= top; ++k) {
    FpMatrix stack(rk->prime(), 0, rk->betti(k));
    for (unsigned i = 1; i <= k; ++i) stack = vstack(stack, m.component(k, i));
    out.push_back(stack.rows() == 0 ? FpSubspace::full(rk->prime(), rk->betti(k)) : kernel_basis(stack));
  }
  return out;
}

// ---------------------------------------------------------------- Analysis

struct Analysis::ObjectData {
  GroupPtr k;
  ResolutionPtr res_k;
  std::vector<Elem> to_parent;              // empty: K is G itself
  std::vector<std::int64_t> from_parent;
  std::shared_ptr<Analysis> analysis;       // null for C(G) itself
  Embedded v;                               // V inside K
  ResolutionPtr res_v;
  std::vector<FpMatrix> restriction;        // H^k(G) -> H^k(K)
  mutable std::optional<std::vector<FpSubspace>> primitives;
  std::vector<std::vector<FpMatrix>> weyl_k, weyl_v;
};

Analysis::Analysis(GroupPtr g, unsigned degree, ResolutionOptions options)
    : Analysis(std::make_shared<const Resolution>(g, degree, options), degree, options) {}

Analysis::Analysis(ResolutionPtr res, unsigned degree, ResolutionOptions options)
    : g_(res->group_ptr()), n_(degree), options_(options), res_(std::move(res)) {
  if (res_->max_degree() < degree) throw std::out_of_range("analysis degree beyond the resolution");
  coh_ = std::make_shared<Cohomology>(res_);
  center_ = as_group(g_, omega1_center(*g_), "C");
  c_ = center_.group->n();
}

unsigned Analysis::p_rank() const {
  if (!p_rank_) p_rank_ = pcoh::p_rank(*g_);
  return *p_rank_;
}

bool Analysis::p_central() const { return p_rank() == c_; }

const Cohomology& Analysis::center_cohomology() const {
  if (!coh_c_) coh_c_ = std::make_shared<Cohomology>(std::make_shared<const Resolution>(center_.group, n_, options_));
  return *coh_c_;
}

const std::vector<FpMatrix>& Analysis::restriction_to_center() const {
  if (!res_c_) res_c_ = induced_maps(center_cohomology().resolution_ptr(), res_, center_.inclusion, n_);
  return *res_c_;
}

const std::vector<FpSubspace>& Analysis::restriction_image() const {
  if (!image_) {
    image_.emplace();
    for (const auto& m : restriction_to_center()) image_->push_back(image_basis(m));
  }
  return *image_;
}

GradedDims Analysis::restriction_image_dims() const {
  GradedDims d{"im i*", {}, n_, false};
  for (const auto& s : restriction_image()) d.dims.push_back(s.dim());
  return d;
}

// Images in H*(C) of the basis x_1..x_c of C# under x -> x^{2^k} (p = 2) or
// x -> (beta x)^{p^k} (p odd), k >= 0.
std::vector<FpVector> Analysis::power_images(unsigned k) const {
  const Cohomology& hc = center_cohomology();
  const Prime p = prime();
  std::vector<FpVector> base;
  unsigned deg;
  if (p == 2) {
    for (unsigned j = 0; j < c_; ++j) base.push_back(FpVector::unit(p, hc.dim(1), j));
    deg = 1;
  } else {
    base = coordinate_classes(hc, center_.group, 2, options_);
    deg = 2;
  }
  for (unsigned step = 0; step < k; ++step) {
    for (auto& y : base) {
      FpVector acc = y;
      for (unsigned t = 1; t < p; ++t) acc = hc.product(deg * t, acc, deg, y);
      y = std::move(acc);
    }
    deg *= p;
  }
  return base;
}

const FrobeniusFlag& Analysis::flag() const {
  if (flag_) return *flag_;
  const Prime p = prime();
  FrobeniusFlag f;
  f.exterior = FpSubspace(p, c_);
  if (p != 2 && n_ >= 1) {
    const auto xs = coordinate_classes(center_cohomology(), center_.group, 1, options_);
    f.exterior = solve_preimage(from_columns(p, center_cohomology().dim(1), xs), restriction_image()[1]);
  }
  const unsigned first = p == 2 ? 1 : 2;
  for (unsigned k = 0, deg = first; deg <= n_; ++k, deg *= p) {
    const auto imgs = power_images(k);
    f.levels.push_back(solve_preimage(from_columns(p, center_cohomology().dim(deg), imgs), restriction_image()[deg]));
    if (f.levels.back().dim() == c_) break;
  }
  flag_ = std::move(f);
  return *flag_;
}

const GroupType& Analysis::type() const {
  if (type_) return *type_;
  const auto& f = flag();
  const Prime p = prime();
  GroupType t;
  std::size_t prev = f.exterior.dim();
  for (std::size_t k = 0; k < f.levels.size(); ++k) {
    const unsigned a = p == 2 ? (1u << k) : 2 * ipow(p, k);
    for (std::size_t i = prev; i < f.levels[k].dim(); ++i) t.entries.push_back(a);
    prev = std::max(prev, f.levels[k].dim());
  }
  for (std::size_t i = 0; i < f.exterior.dim(); ++i) t.entries.push_back(1);
  std::sort(t.entries.rbegin(), t.entries.rend());
  t.certified = t.entries.size() == c_;
  type_ = std::move(t);
  return *type_;
}

const DuflotData& Analysis::duflot() const {
  if (duflot_) return *duflot_;
  const auto& f = flag();
  const Prime p = prime();
  DuflotData d;
  std::vector<FpVector> chosen;
  auto complement = [&](const FpSubspace& level) {
    std::vector<FpVector> fresh;
    for (const auto& v : level.basis().row_vectors()) {
      auto probe = chosen;
      probe.push_back(v);
      if (FpSubspace::span(p, c_, probe).dim() > chosen.size()) {
        chosen.push_back(v);
        fresh.push_back(v);
      }
    }
    return fresh;
  };
  auto add = [&](unsigned deg, const FpVector& image, bool exterior) {
    auto lift = preimage(restriction_to_center()[deg], image);
    if (!lift) throw InvariantError("no lift of a restriction-image generator in degree " + std::to_string(deg));
    d.degrees.push_back(deg);
    d.lifts.push_back(std::move(*lift));
    d.images.push_back(image);
    d.exterior.push_back(exterior);
  };
  auto combine = [&](const std::vector<FpVector>& imgs, const FpVector& coeffs) {
    FpVector out(p, imgs.empty() ? 0 : imgs[0].size());
    for (std::size_t j = 0; j < imgs.size(); ++j) out.add_scaled(imgs[j], coeffs.get(j));
    return out;
  };
  if (p != 2 && f.exterior.dim() > 0) {
    const auto xs = coordinate_classes(center_cohomology(), center_.group, 1, options_);
    const auto betas = n_ >= 2 ? power_images(0) : std::vector<FpVector>{};
    for (const auto& v : complement(f.exterior)) {
      add(1, combine(xs, v), true);
      if (n_ >= 2) add(2, combine(betas, v), false);
    }
  }
  const unsigned first = p == 2 ? 1 : 2;
  unsigned deg = first;
  for (std::size_t k = 0; k < f.levels.size(); ++k, deg *= p) {
    const auto fresh = complement(f.levels[k]);
    if (fresh.empty()) continue;
    const auto imgs = power_images(static_cast<unsigned>(k));
    for (const auto& v : fresh) add(deg, combine(imgs, v), false);
  }
  std::vector<unsigned> poly;
  unsigned ext = 0;
  for (std::size_t i = 0; i < d.degrees.size(); ++i) {
    if (d.exterior[i])
      ++ext;
    else
      poly.push_back(d.degrees[i]);
  }
  d.hilbert = free_algebra_series(poly, ext, n_);
  duflot_ = std::move(d);
  return *duflot_;
}

const std::vector<FpMatrix>& Analysis::multiplication(std::size_t i) const {
  auto it = mult_.find(i);
  if (it != mult_.end()) return it->second;
  const auto& d = duflot();
  const unsigned a = d.degrees[i];
  std::vector<FpMatrix> mats;
  const auto lift = coh_->lift_class(a, d.lifts[i], n_);
  for (unsigned m = 0; m + a <= n_; ++m) mats.push_back(lift.cohomology_matrix(*res_, m + a));
  return mult_.emplace(i, std::move(mats)).first->second;
}

std::vector<FpSubspace> Analysis::a_plus_times(const std::vector<FpSubspace>& m) const {
  const auto& d = duflot();
  std::vector<FpSubspace> out;
  for (unsigned k = 0; k <= n_; ++k) {
    std::vector<FpVector> gens;
    for (std::size_t i = 0; i < d.degrees.size(); ++i) {
      if (d.degrees[i] > k) continue;
      const auto img = map_subspace(multiplication(i)[k - d.degrees[i]], m[k - d.degrees[i]]);
      for (const auto& v : img.basis().row_vectors()) gens.push_back(v);
    }
    out.push_back(FpSubspace::span(prime(), res_->betti(k), gens));
  }
  return out;
}

std::vector<std::size_t> Analysis::quotient_dims(const std::vector<FpSubspace>& m) const {
  const auto ap = a_plus_times(m);
  std::vector<std::size_t> out;
  for (unsigned k = 0; k <= n_; ++k) out.push_back(m[k].dim() - intersect(ap[k], m[k]).dim());
  return out;
}

bool Analysis::freeness_holds(const std::vector<FpSubspace>& m) const {
  const auto q = quotient_dims(m);
  const auto& a = duflot().hilbert;
  for (unsigned k = 0; k <= n_; ++k) {
    std::size_t s = 0;
    for (unsigned j = 0; j <= k; ++j) s += a[j] * q[k - j];
    if (s != m[k].dim()) return false;
  }
  return true;
}

GradedDims Analysis::qa_dims() const {
  std::vector<FpSubspace> all;
  for (unsigned k = 0; k <= n_; ++k) all.push_back(FpSubspace::full(prime(), res_->betti(k)));
  GradedDims d{"Q_A H*", quotient_dims(all), n_, false};
  if (p_central() && type().certified && static_cast<int>(n_) > e()) {
    d.top_degree_certified = true;
    for (unsigned k = static_cast<unsigned>(e()) + 1; k <= n_; ++k) d.top_degree_certified &= d.dims[k] == 0;
  }
  return d;
}

const std::vector<FpSubspace>& Analysis::primitives() const {
  if (!primitives_) primitives_ = comodule_primitives(center_cohomology().resolution_ptr(), res_, center_.inclusion.map, n_);
  return *primitives_;
}

GradedDims Analysis::pc_dims() const {
  GradedDims d{"P_C H*", {}, n_, false};
  for (const auto& s : primitives()) d.dims.push_back(s.dim());
  d.top_degree_certified = qa_dims().top_degree_certified;
  return d;
}

// ---------------------------------------------------------------- Quillen objects

const QuillenCategoryAC& Analysis::quillen() const {
  if (!quillen_) quillen_ = quillen_category_AC(*g_);
  return *quillen_;
}

const Analysis::ObjectData& Analysis::object(std::size_t i) const {
  auto it = objects_.find(i);
  if (it != objects_.end()) return *it->second;
  const auto& obj = quillen().objects.at(i);
  auto d = std::make_shared<ObjectData>();
  if (i == 0) {
    d->k = g_;
    d->res_k = res_;
  } else {
    const auto emb = as_group(g_, obj.centralizer);
    d->k = emb.group;
    d->to_parent = emb.inclusion.map;
    d->from_parent = emb.from_parent;
    d->analysis = std::make_shared<Analysis>(d->k, n_, options_);
    d->res_k = d->analysis->resolution();
    d->restriction = induced_maps(d->res_k, res_, emb.inclusion, n_);
  }
  ElemAbelian vk;
  for (auto b : obj.v.basis)
    vk.basis.push_back(d->from_parent.empty() ? b : static_cast<Elem>(d->from_parent[b]));
  vk.sub = generate(*d->k, vk.basis);
  d->v = as_group(d->k, vk);
  d->res_v = std::make_shared<const Resolution>(d->v.group, n_, options_);
  for (std::size_t w = 1; w < obj.weyl_reps.size(); ++w) {
    const Elem n = obj.weyl_reps[w];
    const auto ck = conjugation_hom(g_, d->k, d->to_parent, d->k, d->from_parent, n);
    d->weyl_k.push_back(induced_maps(d->res_k, d->res_k, ck, n_));
    std::vector<Elem> v_to_parent;
    for (std::size_t x = 0; x < d->v.group->order(); ++x) {
      const Elem in_k = d->v.inclusion(static_cast<Elem>(x));
      v_to_parent.push_back(d->to_parent.empty() ? in_k : d->to_parent[in_k]);
    }
    std::vector<std::int64_t> parent_to_v(g_->order(), -1);
    for (std::size_t x = 0; x < v_to_parent.size(); ++x) parent_to_v[v_to_parent[x]] = static_cast<std::int64_t>(x);
    const auto cv = conjugation_hom(g_, d->v.group, v_to_parent, d->v.group, parent_to_v, n);
    d->weyl_v.push_back(induced_maps(d->res_v, d->res_v, cv, n_));
  }
  return *objects_.emplace(i, std::move(d)).first->second;
}

const Analysis& Analysis::centralizer_analysis(std::size_t i) const {
  if (i == 0) return *this;
  return *object(i).analysis;
}

// ---------------------------------------------------------------- Cess and e', e''

const std::vector<FpSubspace>& Analysis::cess() const {
  if (cess_) return *cess_;
  std::vector<FpSubspace> out;
  for (unsigned k = 0; k <= n_; ++k) out.push_back(FpSubspace::full(prime(), res_->betti(k)));
  for (std::size_t i = 1; i < quillen().objects.size(); ++i) {
    const auto& r = object(i).restriction;
    for (unsigned k = 0; k <= n_; ++k) out[k] = intersect(out[k], kernel_basis(r[k]));
  }
  cess_ = std::move(out);
  return *cess_;
}

GradedDims Analysis::cess_dims() const {
  GradedDims d{"Cess", {}, n_, false};
  for (const auto& s : cess()) d.dims.push_back(s.dim());
  return d;
}

GradedDims Analysis::qa_cess_dims() const {
  GradedDims d{"Q_A Cess", quotient_dims(cess()), n_, false};
  d.top_degree_certified = p_central() ? qa_dims().top_degree_certified : top_certified(d.top()).certified;
  return d;
}

GradedDims Analysis::pc_cess_dims() const {
  GradedDims d{"P_C Cess", {}, n_, false};
  for (unsigned k = 0; k <= n_; ++k) d.dims.push_back(intersect(primitives()[k], cess()[k]).dim());
  d.top_degree_certified = qa_cess_dims().top_degree_certified;
  return d;
}

bool Analysis::cess_nonzero() const {
  for (const auto& s : cess())
    if (s.dim() > 0) return true;
  return false;
}

Certified Analysis::top_certified(int candidate) const {
  Certified out{candidate, false};
  if (!type().certified) return out;
  const int e = this->e();
  if (p_rank() == c_ + 1 && static_cast<int>(n_) > e) {
    const auto q = quotient_dims(cess());
    bool ok = true;
    for (int d = 0; d <= e; ++d) ok &= q[static_cast<std::size_t>(d)] == q[static_cast<std::size_t>(e - d)];
    for (unsigned d = static_cast<unsigned>(e) + 1; d <= n_; ++d) ok &= q[d] == 0;
    out.certified = ok;
    return out;
  }
  unsigned max_a = 0;
  for (auto a : type().entries) max_a = std::max(max_a, a);
  out.certified = static_cast<int>(n_) >= candidate + static_cast<int>(max_a);
  return out;
}

Certified Analysis::e_prime() const {
  if (p_central()) return {e(), type().certified};
  return top_certified(qa_cess_dims().top());
}

Certified Analysis::e_double_prime() const {
  if (p_central()) return {e(), type().certified};
  GradedDims d{"P_C Cess", {}, n_, false};
  for (unsigned k = 0; k <= n_; ++k) d.dims.push_back(intersect(primitives()[k], cess()[k]).dim());
  return {d.top(), e_prime().certified};
}

Certified Analysis::d0() const {
  if (p_central()) return {e(), type().certified};
  Certified best{-1, true};
  const auto& q = quillen();
  for (std::size_t i = 0; i < q.objects.size(); ++i) {
    const Analysis& a = centralizer_analysis(i);
    if (a.center_rank() != q.objects[i].v.rank()) continue;
    const auto v = a.e_double_prime();
    best.value = std::max(*best.value, v.value.value_or(-1));
    best.certified = best.certified && v.certified;
  }
  return best;
}

Certified Analysis::d1() const {
  if (!p_central()) return {};
  return {e() + h(), type().certified};
}

std::pair<Certified, Certified> sylow_transfer(const Analysis& sylow) {
  if (!sylow.p_central()) throw InvariantError("Sylow subgroup is not p-central");
  return {sylow.d0(), sylow.d1()};
}

// ---------------------------------------------------------------- top class

FpVector Analysis::top_primitive_class() const {
  if (!p_central()) throw InvariantError("top primitive class needs a p-central group");
  if (!type().certified) throw InvariantError("type not certified within the degree bound");
  const int e = this->e();
  if (e <= 0) throw InvariantError("e(G) = 0: no positive-degree top class");
  if (e > static_cast<int>(n_)) throw InvariantError("e(G) beyond the degree bound");
  const auto& p = primitives()[static_cast<std::size_t>(e)];
  if (p.dim() != 1)
    throw InvariantError("P_C H^e(G) has dimension " + std::to_string(p.dim()) + ", expected 1");
  return p.basis().row(0);
}

bool Analysis::is_essential(unsigned k, const FpVector& z) const {
  for (const auto& m : maximal_subgroups(*g_)) {
    const auto emb = as_group(g_, m);
    const auto r = std::make_shared<const Resolution>(emb.group, k, options_);
    if (!induced_maps(r, res_, emb.inclusion, k)[k].apply(z).is_zero()) return false;
  }
  return true;
}

// ---------------------------------------------------------------- LF and R_d

namespace {

struct EdgeMaps {
  std::vector<FpMatrix> rho;   // H^k(K_from) -> H^k(K_to)
  std::vector<FpMatrix> iota;  // H^k(V_to) -> H^k(V_from)
};

}  // namespace

GradedDims Analysis::lf_dims() const {
  return bar_rd_dims(n_ + 1);
}

GradedDims Analysis::bar_rd_dims(unsigned d) const {
  const bool lf = d > n_;
  const auto& q = quillen();
  const Prime p = prime();
  for (std::size_t i = 0; i < q.objects.size(); ++i) {
    const auto& obj = object(i);
    if (!obj.primitives) obj.primitives = comodule_primitives(obj.res_v, obj.res_k, obj.v.inclusion.map, n_);
  }
  std::vector<EdgeMaps> edges;
  for (const auto& e : q.edges) {
    const auto& a = object(e.from);
    const auto& b = object(e.to);
    const Elem hinv = g_->inv(e.h);
    EdgeMaps m;
    m.rho = induced_maps(b.res_k, a.res_k, conjugation_hom(g_, b.k, b.to_parent, a.k, a.from_parent, hinv), n_);
    if (!lf) {
      auto v_to_parent = [&](const ObjectData& o) {
        std::vector<Elem> out;
        for (std::size_t x = 0; x < o.v.group->order(); ++x) {
          const Elem in_k = o.v.inclusion(static_cast<Elem>(x));
          out.push_back(o.to_parent.empty() ? in_k : o.to_parent[in_k]);
        }
        return out;
      };
      const auto va = v_to_parent(a), vb = v_to_parent(b);
      std::vector<std::int64_t> parent_to_vb(g_->order(), -1);
      for (std::size_t x = 0; x < vb.size(); ++x) parent_to_vb[vb[x]] = static_cast<std::int64_t>(x);
      m.iota = induced_maps(a.res_v, b.res_v, conjugation_hom(g_, a.v.group, va, b.v.group, parent_to_vb, e.h), n_);
    }
    edges.push_back(std::move(m));
  }

  GradedDims out{lf ? "LF" : "R_" + std::to_string(d), {}, n_, false};
  for (unsigned k = 0; k <= n_; ++k) {
    // Variables: per object, a basis of P_V H^k(K) (LF) or H^k(V) (x) P_V H^d(K).
    std::vector<std::vector<FpVector>> basis(q.objects.size());
    std::size_t vars = 0;
    for (std::size_t i = 0; i < q.objects.size(); ++i) {
      const auto& o = object(i);
      if (lf) {
        basis[i] = (*o.primitives)[k].basis().row_vectors();
      } else {
        const std::size_t bv = o.res_v->betti(k);
        const auto& pd = (*o.primitives)[d].basis().row_vectors();
        for (std::size_t a = 0; a < bv; ++a)
          for (const auto& w : pd) {
            FpVector v(p, bv * w.size());
            for (std::size_t t = w.next_nonzero(); t < w.size(); t = w.next_nonzero(t + 1)) v.set(a * w.size() + t, w.get(t));
            basis[i].push_back(std::move(v));
          }
      }
      vars += basis[i].size();
    }
    // Constraint blocks, each a map from the variables to some space.
    std::vector<std::vector<FpVector>> cols(q.objects.size());
    for (std::size_t i = 0; i < q.objects.size(); ++i) cols[i].resize(basis[i].size());
    auto append_block = [&](std::size_t len, const std::function<FpVector(std::size_t, const FpVector&)>& f) {
      for (std::size_t i = 0; i < q.objects.size(); ++i)
        for (std::size_t s = 0; s < basis[i].size(); ++s) {
          FpVector piece = f(i, basis[i][s]);
          FpVector& c = cols[i][s];
          FpVector grown(p, c.size() + len);
          for (std::size_t t = c.next_nonzero(); t < c.size(); t = c.next_nonzero(t + 1)) grown.set(t, c.get(t));
          if (piece.size())
            for (std::size_t t = piece.next_nonzero(); t < len; t = piece.next_nonzero(t + 1)) grown.set(c.size() + t, piece.get(t));
          c = std::move(grown);
        }
    };
    for (std::size_t i = 0; i < q.objects.size(); ++i) {
      const auto& o = object(i);
      for (std::size_t w = 0; w < o.weyl_k.size(); ++w) {
        const FpMatrix op = lf ? o.weyl_k[w][k] : kronecker(o.weyl_v[w][k], o.weyl_k[w][d]);
        append_block(op.rows(), [&](std::size_t j, const FpVector& x) {
          if (j != i) return FpVector();
          FpVector y = op.apply(x);
          y.add_scaled(x, p - 1);
          return y;
        });
      }
    }
    for (std::size_t ei = 0; ei < q.edges.size(); ++ei) {
      const auto& e = q.edges[ei];
      const auto& a = object(e.from);
      const auto& b = object(e.to);
      FpMatrix from_a, from_b;
      if (lf) {
        from_a = edges[ei].rho[k];
        from_b = FpMatrix::identity(p, b.res_k->betti(k));
      } else {
        from_a = kronecker(FpMatrix::identity(p, a.res_v->betti(k)), edges[ei].rho[d]);
        from_b = kronecker(edges[ei].iota[k], FpMatrix::identity(p, b.res_k->betti(d)));
      }
      append_block(from_a.rows(), [&](std::size_t j, const FpVector& x) {
        FpVector y(p, from_a.rows());
        if (j == e.from) y.add_scaled(from_a.apply(x), 1);
        if (j == e.to) y.add_scaled(from_b.apply(x), p - 1);
        return y;
      });
    }
    std::vector<FpVector> all;
    for (auto& c : cols)
      for (auto& v : c) all.push_back(std::move(v));
    out.dims.push_back(equalizer_dim(p, vars, all));
  }
  return out;
}

// ---------------------------------------------------------------- report

InvariantReport make_report(const std::string& id, const GroupPtr& g, unsigned degree, ResolutionOptions options,
                            const ResolutionProvider& provider) {
  InvariantReport r;
  r.group_id = id;
  r.p = g->p();
  r.order = g->order();
  r.rank = p_rank(*g);
  r.center_rank = omega1_center(*g).rank();
  r.p_central = r.rank == r.center_rank;
  for (unsigned n = degree;;) {
    try {
      Analysis a(provider ? provider(g, n, options) : std::make_shared<const Resolution>(g, n, options), n, options);
      r.truncation_degree = n;
      r.type = a.type();
      r.e = {a.e(), r.type.certified};
      r.h = {a.h(), r.type.certified};
      r.d0 = a.d0();
      r.d1 = a.d1();
      r.e_prime = a.e_prime();
      r.e_double_prime = a.e_double_prime();
      r.cess_nonzero = a.cess_nonzero();
      return r;
    } catch (const BudgetExceeded& ex) {
      r.error = ex.what();
      if (n == 0) return r;
      n = std::min(n - 1, ex.degree == 0 ? 0u : ex.degree - 1);
      r.truncation_degree = n;
    }
  }
}

}  // namespace pcoh
