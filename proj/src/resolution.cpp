#include "pcoh/resolution.hpp"

#include <sstream>

namespace pcoh {

namespace {

// Semi-echelon span used to pick complements; pivot = first nonzero entry.
class Echelon {
 public:
  Echelon(Prime p, std::size_t dim) : p_(p), pivot_row_(dim, -1) {}

  FpVector reduce(FpVector v) const {
    for (std::size_t c = v.next_nonzero(); c < v.size(); c = v.next_nonzero(c)) {
      const auto r = pivot_row_[c];
      if (r < 0) return v;
      v.add_scaled(rows_[static_cast<std::size_t>(r)], p_ - v.get(c));
    }
    return v;
  }

  bool insert(const FpVector& v) {
    FpVector w = reduce(v);
    const std::size_t c = w.next_nonzero();
    if (c == w.size()) return false;
    w.scale(inverse_mod(w.get(c), p_));
    pivot_row_[c] = static_cast<std::int64_t>(rows_.size());
    rows_.push_back(std::move(w));
    return true;
  }

  std::size_t rank() const { return rows_.size(); }

 private:
  Prime p_;
  std::vector<std::int64_t> pivot_row_;
  std::vector<FpVector> rows_;
};

unsigned sign_mod(unsigned i, Prime p) { return (i % 2 == 0 || p == 2) ? 1u : p - 1; }

}  // namespace

BudgetExceeded::BudgetExceeded(unsigned d, std::size_t c, std::size_t b)
    : std::runtime_error("resolution budget exceeded in degree " + std::to_string(d) + ": " + std::to_string(c) +
                         " columns > " + std::to_string(b)),
      degree(d),
      columns(c),
      budget(b) {}

// ---------------------------------------------------------------- RegularAction

RegularAction::RegularAction(GroupPtr g) : g_(std::move(g)) {
  const std::size_t order = g_->order();
  if (g_->p() != 2 || order > 128) return;
  unit_words_ = std::max<std::size_t>(1, order / 64);
  const std::size_t unit_bytes = 8 * unit_words_;
  table_.assign(order * unit_bytes * 256 * unit_words_, 0);
  for (std::size_t h = 0; h < order; ++h)
    for (std::size_t c = 0; c < unit_bytes; ++c)
      for (std::size_t v = 1; v < 256; ++v) {
        std::uint64_t* entry = &table_[((h * unit_bytes + c) * 256 + v) * unit_words_];
        for (std::size_t b = 0; b < 8; ++b) {
          if (!((v >> b) & 1)) continue;
          const std::size_t pos = c * 8 + b;
          const std::size_t block = pos / order, off = pos % order;
          const std::size_t np = block * order + g_->mul(static_cast<Elem>(h), static_cast<Elem>(off));
          entry[np / 64] |= std::uint64_t{1} << (np % 64);
        }
      }
}

void RegularAction::add_translate(Elem h, const FpVector& v, unsigned coef, FpVector& out) const {
  if (v.size() != out.size()) throw DimensionError("translate: length mismatch");
  const Prime p = v.prime();
  coef %= p;
  if (coef == 0) return;
  if (unit_words_) {
    const auto in = v.words();
    auto dst = out.words();
    const std::size_t unit_bytes = 8 * unit_words_;
    const std::uint64_t* base = &table_[h * unit_bytes * 256 * unit_words_];
    for (std::size_t u = 0; u * unit_words_ < in.size(); ++u) {
      std::uint64_t* o = &dst[u * unit_words_];
      for (std::size_t w = 0; w < unit_words_; ++w) {
        std::uint64_t word = in[u * unit_words_ + w];
        for (std::size_t c = w * 8; word; ++c, word >>= 8) {
          const auto byte = word & 0xff;
          if (!byte) continue;
          const std::uint64_t* e = base + (c * 256 + byte) * unit_words_;
          for (std::size_t k = 0; k < unit_words_; ++k) o[k] ^= e[k];
        }
      }
    }
    return;
  }
  const std::size_t order = g_->order();
  for (std::size_t i = v.next_nonzero(); i < v.size(); i = v.next_nonzero(i + 1)) {
    const std::size_t block = i / order;
    const std::size_t target = block * order + g_->mul(h, static_cast<Elem>(i % order));
    out.set(target, (out.get(target) + coef * v.get(i)) % p);
  }
}

FpVector RegularAction::translate(Elem h, const FpVector& v) const {
  FpVector out(v.prime(), v.size());
  add_translate(h, v, 1, out);
  return out;
}

// ---------------------------------------------------------------- Resolution

Resolution::Resolution(GroupPtr g, unsigned max_degree, ResolutionOptions options, int)
    : g_(std::move(g)), max_degree_(max_degree), options_(options) {
  action_ = std::make_shared<RegularAction>(g_);
  min_gens_ = minimal_generators(*g_);
  solvers_.resize(max_degree_ + 1);
}

Resolution::Resolution(GroupPtr g, unsigned max_degree, ResolutionOptions options)
    : Resolution(std::move(g), max_degree, options, 0) {
  betti_ = {1};
  boundaries_.resize(1);
  build_solver(0);
  for (unsigned i = 0; i < max_degree_; ++i) {
    extend(i);
    build_solver(i + 1);
    check_degree(i + 1);
  }
}

Resolution Resolution::from_boundaries(GroupPtr g, std::vector<std::vector<FpVector>> boundaries,
                                       ResolutionOptions options) {
  if (boundaries.empty()) throw ResolutionError("no degrees supplied");
  Resolution r(std::move(g), static_cast<unsigned>(boundaries.size() - 1), options, 0);
  r.betti_ = {1};
  for (unsigned i = 1; i < boundaries.size(); ++i) r.betti_.push_back(boundaries[i].size());
  r.boundaries_ = std::move(boundaries);
  r.boundaries_[0].clear();
  r.build_solver(0);
  for (unsigned i = 1; i <= r.max_degree_; ++i) {
    for (const auto& v : r.boundaries_[i])
      if (v.prime() != r.prime() || v.size() != r.module_dim(i - 1)) throw ResolutionError("boundary has wrong shape");
    r.build_solver(i);
    r.check_degree(i);
  }
  return r;
}

std::size_t Resolution::betti(unsigned i) const {
  if (i > max_degree_) throw std::out_of_range("degree " + std::to_string(i) + " beyond resolution bound");
  return betti_[i];
}

const FpVector& Resolution::boundary(unsigned i, std::size_t j) const {
  if (i == 0 || i > max_degree_) throw std::out_of_range("boundary degree out of range");
  return boundaries_[i].at(j);
}

void Resolution::build_solver(unsigned i) {
  const std::size_t order = g_->order();
  const std::size_t columns = betti_[i] * order;
  if (columns > options_.budget_columns) throw BudgetExceeded(i, columns, options_.budget_columns);
  const std::size_t image_dim = i == 0 ? 1 : module_dim(i - 1);
  auto solver = std::make_shared<ImageSolver>(prime(), image_dim, columns);
  for (std::size_t j = 0; j < betti_[i]; ++j)
    for (Elem h = 0; h < order; ++h) {
      if (i == 0)
        solver->insert(FpVector::unit(prime(), 1, 0));
      else
        solver->insert(action_->translate(h, boundaries_[i][j]));
    }
  solvers_[i] = std::move(solver);
}

void Resolution::extend(unsigned i) {
  const Prime p = prime();
  const std::size_t dim = module_dim(i);
  const auto k = FpSubspace::span(p, dim, solvers_[i]->kernel());
  Echelon span(p, dim);
  for (const auto& v : k.basis().row_vectors())
    for (auto s : min_gens_) {
      FpVector w = action_->translate(s, v);
      w.add_scaled(v, p - 1);
      span.insert(w);
    }
  std::vector<FpVector> chosen;
  for (const auto& v : k.basis().row_vectors())
    if (span.insert(v)) chosen.push_back(v);
  betti_.push_back(chosen.size());
  boundaries_.push_back(std::move(chosen));
}

void Resolution::check_degree(unsigned i) const {
  const std::size_t order = g_->order();
  for (const auto& v : boundaries_[i]) {
    for (std::size_t t = 0; t < betti_[i - 1]; ++t)
      if (v.block_sum(t * order, order) != 0) throw ResolutionError("resolution is not minimal in degree " + std::to_string(i));
    if (i >= 2 && !apply_differential(i - 1, v).is_zero()) throw ResolutionError("d o d != 0 in degree " + std::to_string(i));
  }
  if (solvers_[i]->rank() != solvers_[i - 1]->kernel().size())
    throw ResolutionError("resolution is not exact in degree " + std::to_string(i - 1));
}

FpMatrix Resolution::differential_matrix(unsigned i) const {
  if (i == 0 || i > max_degree_) throw std::out_of_range("differential degree out of range");
  std::vector<FpVector> columns;
  for (std::size_t j = 0; j < betti_[i]; ++j)
    for (Elem h = 0; h < g_->order(); ++h) columns.push_back(action_->translate(h, boundaries_[i][j]));
  return FpMatrix::from_rows(prime(), module_dim(i - 1), std::move(columns)).transpose();
}

FpVector Resolution::apply_differential(unsigned i, const FpVector& x) const {
  if (i == 0 || i > max_degree_) throw std::out_of_range("differential degree out of range");
  if (x.size() != module_dim(i)) throw DimensionError("apply_differential: wrong length");
  const std::size_t order = g_->order();
  FpVector out(prime(), module_dim(i - 1));
  for (std::size_t idx = x.next_nonzero(); idx < x.size(); idx = x.next_nonzero(idx + 1))
    action_->add_translate(static_cast<Elem>(idx % order), boundaries_[i][idx / order], x.get(idx), out);
  return out;
}

std::optional<FpVector> Resolution::solve(unsigned i, const FpVector& y) const {
  if (i == 0 || i > max_degree_) throw std::out_of_range("solve degree out of range");
  return solvers_[i]->solve(y);
}

// ---------------------------------------------------------------- sources

SourceComplex resolution_source(const ResolutionPtr& r, const GroupHom* phi) {
  SourceComplex s;
  s.rank = [r](unsigned k) { return r->betti(k); };
  std::vector<Elem> map;
  if (phi) map = phi->map;
  s.boundary = [r, map](unsigned k, std::size_t j) {
    const std::size_t order = r->group().order();
    const FpVector& v = r->boundary(k, j);
    std::vector<BoundaryTerm> terms;
    for (std::size_t idx = v.next_nonzero(); idx < v.size(); idx = v.next_nonzero(idx + 1)) {
      const Elem h = static_cast<Elem>(idx % order);
      terms.push_back({idx / order, map.empty() ? h : map[h], v.get(idx)});
    }
    return terms;
  };
  return s;
}

TensorSource::TensorSource(ResolutionPtr pv, ResolutionPtr rk, std::vector<Elem> iota)
    : pv_(std::move(pv)), rk_(std::move(rk)), iota_(std::move(iota)) {
  if (pv_->prime() != rk_->prime()) throw DimensionError("tensor of resolutions at different primes");
}

unsigned TensorSource::max_degree() const { return std::min(pv_->max_degree(), rk_->max_degree()); }

std::size_t TensorSource::rank(unsigned k) const {
  std::size_t r = 0;
  for (unsigned i = 0; i <= k; ++i) r += pv_->betti(i) * rk_->betti(k - i);
  return r;
}

std::size_t TensorSource::index(unsigned k, unsigned i, std::size_t a, std::size_t b) const {
  std::size_t offset = 0;
  for (unsigned l = 0; l < i; ++l) offset += pv_->betti(l) * rk_->betti(k - l);
  return offset + a * rk_->betti(k - i) + b;
}

std::vector<BoundaryTerm> TensorSource::boundary(unsigned k, std::size_t j) const {
  unsigned i = 0;
  while (j >= pv_->betti(i) * rk_->betti(k - i)) {
    j -= pv_->betti(i) * rk_->betti(k - i);
    ++i;
  }
  const std::size_t a = j / rk_->betti(k - i), b = j % rk_->betti(k - i);
  const Prime p = pv_->prime();
  std::vector<BoundaryTerm> terms;
  if (i >= 1) {
    const std::size_t vo = pv_->group().order();
    const FpVector& d = pv_->boundary(i, a);
    for (std::size_t idx = d.next_nonzero(); idx < d.size(); idx = d.next_nonzero(idx + 1))
      terms.push_back({index(k - 1, i - 1, idx / vo, b), iota_[idx % vo], d.get(idx)});
  }
  if (k - i >= 1) {
    const std::size_t ko = rk_->group().order();
    const unsigned sign = sign_mod(i, p);
    const FpVector& d = rk_->boundary(k - i, b);
    for (std::size_t idx = d.next_nonzero(); idx < d.size(); idx = d.next_nonzero(idx + 1))
      terms.push_back({index(k - 1, i, a, idx / ko), static_cast<Elem>(idx % ko), d.get(idx) * sign % p});
  }
  return terms;
}

SourceComplex TensorSource::complex() const {
  SourceComplex s;
  s.rank = [this](unsigned k) { return rank(k); };
  s.boundary = [this](unsigned k, std::size_t j) { return boundary(k, j); };
  return s;
}

// ---------------------------------------------------------------- lifting

FpMatrix ChainLift::cohomology_matrix(const Resolution& target, unsigned k) const {
  if (k < shift || k > top) throw std::out_of_range("lift does not cover degree " + std::to_string(k));
  const std::size_t order = target.group().order();
  const std::size_t cols = target.betti(k - shift);
  FpMatrix m(target.prime(), images[k].size(), cols);
  for (std::size_t j = 0; j < images[k].size(); ++j)
    for (std::size_t t = 0; t < cols; ++t) m.set(j, t, images[k][j].block_sum(t * order, order));
  return m;
}

ChainLift lift_chain_map(const Resolution& target, const SourceComplex& source, unsigned shift, unsigned top,
                         std::vector<FpVector> base) {
  if (top < shift) throw std::invalid_argument("lift: top below shift");
  if (top - shift > target.max_degree()) throw std::out_of_range("lift: target resolution too short");
  if (base.size() != source.rank(shift)) throw DimensionError("lift: wrong number of base images");
  for (const auto& v : base)
    if (v.size() != target.module_dim(0)) throw DimensionError("lift: base image has wrong length");
  const std::size_t order = target.group().order();
  const Prime p = target.prime();
  ChainLift lift;
  lift.shift = shift;
  lift.top = top;
  lift.images.resize(top + 1);
  lift.images[shift] = std::move(base);
  for (unsigned k = shift + 1; k <= top; ++k) {
    const unsigned tdeg = k - shift;
    const auto& prev = lift.images[k - 1];
    std::vector<std::vector<FpVector>> translates(prev.size());
    const std::size_t rank = source.rank(k);
    lift.images[k].reserve(rank);
    for (std::size_t j = 0; j < rank; ++j) {
      FpVector z(p, target.module_dim(tdeg - 1));
      for (const auto& term : source.boundary(k, j)) {
        auto& cache = translates[term.gen];
        if (cache.empty()) cache.resize(order);
        FpVector& tr = cache[term.elem];
        if (tr.size() == 0) tr = target.action().translate(term.elem, prev[term.gen]);
        z.add_scaled(tr, term.coef);
      }
      auto y = target.solve(tdeg, z);
      if (!y) throw ResolutionError("chain map lift failed in degree " + std::to_string(k));
      lift.images[k].push_back(std::move(*y));
    }
  }
  return lift;
}

std::vector<FpMatrix> induced_maps(const ResolutionPtr& source, const ResolutionPtr& target, const GroupHom& phi,
                                   unsigned top) {
  if (phi.source->order() != source->group().order() || phi.target->order() != target->group().order())
    throw GroupError("induced_maps: homomorphism does not match the resolutions");
  const auto lift = lift_chain_map(*target, resolution_source(source, &phi), 0, top,
                                   {FpVector::unit(target->prime(), target->module_dim(0), 0)});
  std::vector<FpMatrix> out;
  for (unsigned k = 0; k <= top; ++k) out.push_back(lift.cohomology_matrix(*target, k));
  return out;
}

Resolution kunneth(const ResolutionPtr& a, const ResolutionPtr& b, const GroupPtr& product) {
  const std::size_t ga = a->group().order(), gb = b->group().order();
  if (product->order() != ga * gb) throw GroupError("kunneth: product group has the wrong order");
  const TensorSource t(a, b, std::vector<Elem>(ga, 0));
  const unsigned n = t.max_degree();
  const Prime p = a->prime();
  std::vector<std::vector<FpVector>> boundaries(n + 1);
  for (unsigned k = 1; k <= n; ++k) {
    const std::size_t len = t.rank(k - 1) * ga * gb;
    for (unsigned i = 0; i <= k; ++i)
      for (std::size_t x = 0; x < a->betti(i); ++x)
        for (std::size_t y = 0; y < b->betti(k - i); ++y) {
          FpVector v(p, len);
          if (i >= 1) {
            const FpVector& d = a->boundary(i, x);
            for (std::size_t idx = d.next_nonzero(); idx < d.size(); idx = d.next_nonzero(idx + 1))
              v.set(t.index(k - 1, i - 1, idx / ga, y) * ga * gb + idx % ga, d.get(idx));
          }
          if (k - i >= 1) {
            const FpVector& d = b->boundary(k - i, y);
            const unsigned sign = sign_mod(i, p);
            for (std::size_t idx = d.next_nonzero(); idx < d.size(); idx = d.next_nonzero(idx + 1))
              v.set(t.index(k - 1, i, x, idx / gb) * ga * gb + ga * (idx % gb), d.get(idx) * sign % p);
          }
          boundaries[k].push_back(std::move(v));
        }
  }
  return Resolution::from_boundaries(product, std::move(boundaries));
}

ComoduleMap comodule_map(const ResolutionPtr& pv, const ResolutionPtr& rk, std::vector<Elem> iota, unsigned top) {
  const PGroup& k = rk->group();
  if (iota.size() != pv->group().order()) throw GroupError("comodule_map: inclusion has the wrong size");
  for (auto v : iota)
    for (unsigned s = 0; s < k.n(); ++s)
      if (!k.commute(v, k.generator(s))) throw GroupError("comodule_map: subgroup is not central");
  ComoduleMap out{TensorSource(pv, rk, std::move(iota)), {}};
  if (top > out.source.max_degree()) throw std::out_of_range("comodule_map: resolutions too short");
  const auto lift = lift_chain_map(*rk, out.source.complex(), 0, top, {FpVector::unit(rk->prime(), rk->module_dim(0), 0)});
  for (unsigned d = 0; d <= top; ++d) out.matrices.push_back(lift.cohomology_matrix(*rk, d));
  return out;
}

FpMatrix ComoduleMap::component(unsigned k, unsigned i) const {
  const auto& m = matrices.at(k);
  const std::size_t begin = source.index(k, i, 0, 0);
  const std::size_t rows = source.left().betti(i) * source.right().betti(k - i);
  FpMatrix out(m.prime(), 0, m.cols());
  for (std::size_t r = 0; r < rows; ++r) out.append_row(m.row(begin + r));
  return out;
}

// ---------------------------------------------------------------- Cohomology

Cohomology::Cohomology(ResolutionPtr res) : res_(std::move(res)) {
  basis_lifts_.resize(res_->max_degree() + 1);
  basis_mats_.resize(res_->max_degree() + 1);
  for (unsigned n = 0; n <= res_->max_degree(); ++n) {
    basis_lifts_[n].resize(res_->betti(n));
    basis_mats_[n].resize(res_->betti(n));
  }
}

ChainLift Cohomology::lift_class(unsigned n, const FpVector& g, unsigned top) const {
  if (g.size() != dim(n)) throw DimensionError("class has wrong length");
  std::vector<FpVector> base;
  for (std::size_t j = 0; j < dim(n); ++j) {
    FpVector v(prime(), res_->module_dim(0));
    v.set(0, g.get(j));
    base.push_back(std::move(v));
  }
  return lift_chain_map(*res_, resolution_source(res_), n, top, std::move(base));
}

const FpMatrix& Cohomology::basis_right_mult(unsigned n, std::size_t j, unsigned m) const {
  if (m + n > max_degree()) throw std::out_of_range("product beyond the degree bound");
  auto& lift = basis_lifts_[n].at(j);
  if (!lift) lift = lift_class(n, FpVector::unit(prime(), dim(n), j), max_degree());
  auto& mats = basis_mats_[n][j];
  if (mats.empty())
    for (unsigned k = n; k <= max_degree(); ++k) mats.push_back(lift->cohomology_matrix(*res_, k));
  return mats[m];
}

FpMatrix Cohomology::right_mult(unsigned n, const FpVector& g, unsigned m) const {
  if (m + n > max_degree()) throw std::out_of_range("product beyond the degree bound");
  FpMatrix out(prime(), dim(m + n), dim(m));
  for (std::size_t j = g.next_nonzero(); j < g.size(); j = g.next_nonzero(j + 1)) {
    const FpMatrix& b = basis_right_mult(n, j, m);
    for (std::size_t r = 0; r < out.rows(); ++r) out.row(r).add_scaled(b.row(r), g.get(j));
  }
  return out;
}

FpVector Cohomology::product(unsigned m, const FpVector& f, unsigned n, const FpVector& g) const {
  if (m + n > max_degree()) throw std::out_of_range("product beyond the degree bound");
  return lift_class(n, g, m + n).cohomology_matrix(*res_, m + n).apply(f);
}

FpSubspace Cohomology::decomposables(unsigned k) const {
  std::vector<FpVector> gens;
  for (unsigned i = 1; i < k; ++i)
    for (std::size_t j = 0; j < dim(i); ++j) {
      const FpMatrix& m = basis_right_mult(i, j, k - i);
      for (std::size_t c = 0; c < m.cols(); ++c) gens.push_back(m.column(c));
    }
  return FpSubspace::span(prime(), dim(k), gens);
}

// ---------------------------------------------------------------- cache format

std::string serialize_resolution(const Resolution& r, const std::string& presentation_hash) {
  std::ostringstream out;
  out << "COHRES v1\n";
  out << "hash " << presentation_hash << "\n";
  out << "prime " << r.prime() << "\n";
  out << "order " << r.group().order() << "\n";
  out << "degree " << r.max_degree() << "\n";
  out << "betti";
  for (auto b : r.betti_numbers()) out << ' ' << b;
  out << "\n";
  static const char* hex = "0123456789abcdef";
  for (unsigned i = 1; i <= r.max_degree(); ++i)
    for (std::size_t j = 0; j < r.betti(i); ++j) {
      const FpVector& v = r.boundary(i, j);
      out << "d " << i << ' ' << j << ' ';
      if (r.prime() == 2) {
        for (std::size_t c = 0; c < v.size(); c += 4) {
          unsigned nib = 0;
          for (std::size_t b = 0; b < 4 && c + b < v.size(); ++b) nib |= v.get(c + b) << b;
          out << hex[nib];
        }
      } else {
        for (std::size_t c = 0; c < v.size(); ++c) out << hex[v.get(c) >> 4] << hex[v.get(c) & 15];
      }
      out << "\n";
    }
  return out.str();
}

std::optional<Resolution> deserialize_resolution(const GroupPtr& g, const std::string& text,
                                                 const std::string& presentation_hash, ResolutionOptions options) {
  std::istringstream in(text);
  std::string line, key;
  auto expect = [&](const std::string& k) -> std::optional<std::string> {
    if (!std::getline(in, line)) return std::nullopt;
    std::istringstream ls(line);
    std::string got;
    ls >> got;
    if (got != k) return std::nullopt;
    std::string rest;
    std::getline(ls, rest);
    if (!rest.empty() && rest[0] == ' ') rest.erase(0, 1);
    return rest;
  };
  if (!std::getline(in, line) || line != "COHRES v1") return std::nullopt;
  const auto hash = expect("hash");
  const auto prime = expect("prime");
  const auto order = expect("order");
  const auto degree = expect("degree");
  const auto betti = expect("betti");
  if (!hash || !prime || !order || !degree || !betti) return std::nullopt;
  if (*hash != presentation_hash || std::stoul(*prime) != g->p() || std::stoul(*order) != g->order()) return std::nullopt;
  const unsigned n = static_cast<unsigned>(std::stoul(*degree));
  std::vector<std::size_t> b;
  {
    std::istringstream bs(*betti);
    for (std::size_t x; bs >> x;) b.push_back(x);
  }
  if (b.size() != n + 1) return std::nullopt;
  std::vector<std::vector<FpVector>> boundaries(n + 1);
  auto hexval = [](char c) -> int {
    if (c >= '0' && c <= '9') return c - '0';
    if (c >= 'a' && c <= 'f') return c - 'a' + 10;
    return -1;
  };
  try {
    for (unsigned i = 1; i <= n; ++i)
      for (std::size_t j = 0; j < b[i]; ++j) {
        if (!std::getline(in, line)) return std::nullopt;
        std::istringstream ls(line);
        std::string d, data;
        unsigned di = 0;
        std::size_t dj = 0;
        ls >> d >> di >> dj >> data;
        if (d != "d" || di != i || dj != j) return std::nullopt;
        FpVector v(g->p(), b[i - 1] * g->order());
        if (g->p() == 2) {
          if (data.size() != (v.size() + 3) / 4) return std::nullopt;
          for (std::size_t c = 0; c < data.size(); ++c) {
            const int nib = hexval(data[c]);
            if (nib < 0) return std::nullopt;
            for (std::size_t bit = 0; bit < 4 && 4 * c + bit < v.size(); ++bit) v.set(4 * c + bit, (nib >> bit) & 1);
          }
        } else {
          if (data.size() != 2 * v.size()) return std::nullopt;
          for (std::size_t c = 0; c < v.size(); ++c) {
            const int hi = hexval(data[2 * c]), lo = hexval(data[2 * c + 1]);
            if (hi < 0 || lo < 0 || static_cast<unsigned>(hi * 16 + lo) >= g->p()) return std::nullopt;
            v.set(c, static_cast<unsigned>(hi * 16 + lo));
          }
        }
        boundaries[i].push_back(std::move(v));
      }
    return Resolution::from_boundaries(g, std::move(boundaries), options);
  } catch (const ResolutionError&) {
    return std::nullopt;
  } catch (const std::invalid_argument&) {
    return std::nullopt;
  }
}

}  // namespace pcoh
