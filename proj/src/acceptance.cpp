#include "pcoh/acceptance.hpp"

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <random>
#include <sstream>

#include "pcoh/catalog.hpp"
#include "pcoh/invariants.hpp"

namespace pcoh {

namespace {

using Clock = std::chrono::steady_clock;

std::string str(int v) { return std::to_string(v); }
std::string str(unsigned v) { return std::to_string(v); }
std::string str(std::size_t v) { return std::to_string(v); }
std::string str(bool v) { return v ? "true" : "false"; }
std::string str(const std::optional<int>& v) { return v ? std::to_string(*v) : "null"; }

template <class T>
std::string str(const std::vector<T>& v) {
  std::string out = "(";
  for (std::size_t i = 0; i < v.size(); ++i) out += (i ? "," : "") + str(v[i]);
  return out + ")";
}

class Check {
 public:
  template <class A, class B>
  void eq(const std::string& what, const A& got, const B& want) {
    ++count_;
    if (!(got == want)) failures_.push_back(what + " = " + str(got) + ", expected " + str(want));
  }
  void ok(const std::string& what, bool cond) {
    ++count_;
    if (!cond) failures_.push_back(what);
  }
  void certified(const std::string& what, const Certified& c, int want) {
    eq(what, c.value, std::optional<int>(want));
    ++count_;
    if (c.value && !c.certified) failures_.push_back(what + " not certified at this degree");
  }
  void fail(const std::string& why) {
    ++count_;
    failures_.push_back(why);
  }
  bool passed() const { return failures_.empty(); }
  std::string summary() const {
    if (failures_.empty()) return std::to_string(count_) + " checks";
    std::string out;
    for (std::size_t i = 0; i < failures_.size() && i < 8; ++i) out += (i ? "; " : "") + failures_[i];
    if (failures_.size() > 8) out += "; and " + std::to_string(failures_.size() - 8) + " more";
    return out;
  }

 private:
  std::vector<std::string> failures_;
  std::size_t count_ = 0;
};

GroupPtr grp(const std::string& id) { return make_group(builtin(id).presentation); }

std::vector<FpSubspace> everything(const Analysis& a) {
  std::vector<FpSubspace> out;
  for (unsigned k = 0; k <= a.degree(); ++k) out.push_back(FpSubspace::full(a.prime(), a.resolution()->betti(k)));
  return out;
}

std::vector<std::size_t> prefix(const std::vector<std::size_t>& v, std::size_t begin, std::size_t end) {
  return {v.begin() + static_cast<std::ptrdiff_t>(begin), v.begin() + static_cast<std::ptrdiff_t>(end)};
}

FpVector random_vector(Prime p, std::size_t n, std::mt19937_64& rng) {
  FpVector v(p, n);
  for (std::size_t i = 0; i < n; ++i) v.set(i, static_cast<unsigned>(rng() % p));
  return v;
}

std::size_t rank_of(const FpMatrix& m) { return image_basis(m).dim(); }

double since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

void check_time(Check& c, Clock::time_point t0, double limit) {
  const double s = since(t0);
  if (s >= limit) c.fail("runtime " + std::to_string(s) + " s exceeds " + std::to_string(limit) + " s");
}

void check_central_row(Check& c, const std::string& id, const Analysis& a, bool with_e_h) {
  const auto pv = reference_values(id);
  if (!pv) return c.fail(id + ": no reference values");
  c.eq(id + " type", a.type().entries, pv->type);
  c.ok(id + " type certified", a.type().certified);
  if (with_e_h) {
    c.eq(id + " e", a.e(), *pv->e);
    c.eq(id + " h", a.h(), *pv->h);
  }
  c.certified(id + " d0", a.d0(), *pv->d0);
  c.certified(id + " d1", a.d1(), *pv->d1);
}

// ---------------------------------------------------------------- criteria

void quaternion(Check& c, Suite) {
  const auto t0 = Clock::now();
  Analysis a(grp("Q8"), 8);
  c.eq("type", a.type().entries, std::vector<unsigned>{4});
  c.eq("e", a.e(), 3);
  c.eq("h", a.h(), 2);
  c.certified("d0", a.d0(), 3);
  c.certified("d1", a.d1(), 5);
  check_time(c, t0, 5);
}

void central_corpus(Check& c, Suite suite) {
  const auto t0 = Clock::now();
  for (const char* id : {"Z4", "Z8", "Z16", "Q8", "Q16", "Q32", "Q64"}) {
    const auto g = grp(id);
    check_central_row(c, id, Analysis(g, default_degree(g->order(), suite)), false);
  }
  check_time(c, t0, 60);
}

void noncentral_corpus(Check& c, Suite suite) {
  const auto t0 = Clock::now();
  for (const char* id : {"D8", "D16", "D32", "SD16", "SD32"}) {
    const auto g = grp(id);
    const Analysis a(g, default_degree(g->order(), suite));
    const auto pv = *reference_values(id);
    const std::string s = id;
    c.eq(s + " type", a.type().entries, pv.type);
    c.eq(s + " e", a.e(), *pv.e);
    c.certified(s + " e'", a.e_prime(), *pv.e_prime);
    c.certified(s + " d0", a.d0(), *pv.d0);
    c.eq(s + " rank", a.p_rank(), *pv.rank);
    c.eq(s + " center rank", a.center_rank(), 1u);
    c.ok(s + " should not be p-central", !a.p_central());
  }
  check_time(c, t0, 120);
}

std::size_t w2_series(unsigned k) {
  // (1 + 2t + 2t^2 + t^3) / (1 - t^2)^3
  const unsigned numerator[] = {1, 2, 2, 1};
  std::size_t total = 0;
  for (unsigned i = 0; i < 4 && i <= k; ++i)
    if ((k - i) % 2 == 0) {
      const std::size_t j = (k - i) / 2;
      total += numerator[i] * (j + 2) * (j + 1) / 2;
    }
  return total;
}

void w2(Check& c, Suite) {
  const auto t0 = Clock::now();
  const auto g = grp("W2");
  const Analysis a(g, 10);
  c.eq("type", a.type().entries, std::vector<unsigned>{2, 2, 2});
  c.certified("d0", a.d0(), 3);
  c.certified("d1", a.d1(), 4);
  const auto q = a.qa_dims();
  c.eq("Q_A dims", prefix(q.dims, 0, 4), std::vector<std::size_t>{1, 2, 2, 1});
  for (unsigned k = 4; k <= 10; ++k) c.eq("Q_A dim in degree " + str(k), q.dims[k], std::size_t{0});
  for (unsigned k = 0; k <= 10; ++k) c.eq("b" + str(k), a.resolution()->betti(k), w2_series(k));

  const auto pc = a.pc_dims();
  c.eq("P_C dim in degree 3", pc.dims[3], std::size_t{1});
  const auto top = a.top_primitive_class();
  c.ok("top class is essential", a.is_essential(3, top));
  c.ok("top class survives in Q_A", !a.a_plus_times(everything(a))[3].contains(top));

  // A degree-two indecomposable u is not primitive: m*(u) has terms beyond 1 (x) u.
  c.eq("P_C dim in degree 2", pc.dims[2], std::size_t{0});
  const auto decomposable = a.a_plus_times(everything(a))[2];
  const auto rv = std::make_shared<const Resolution>(a.center().group, 2);
  const auto m = comodule_map(rv, a.resolution(), a.center().inclusion.map, 2);
  std::size_t witnesses = 0;
  for (std::size_t j = 0; j < a.resolution()->betti(2); ++j) {
    const auto u = FpVector::unit(2, a.resolution()->betti(2), j);
    if (decomposable.contains(u)) continue;
    if (!m.component(2, 1).apply(u).is_zero() || !m.component(2, 2).apply(u).is_zero()) ++witnesses;
  }
  c.ok("some degree-two indecomposable has m*(u) != 1 (x) u", witnesses > 0);
  check_time(c, t0, 120);
}

void products(Check& c, Suite) {
  const auto q8 = builtin("Q8").presentation, z4 = builtin("Z4").presentation;
  const auto g = make_group(direct_product(q8, z4));
  const Analysis a(g, 8);
  c.eq("type", a.type().entries, std::vector<unsigned>{4, 2});
  c.eq("e", a.e(), 4);
  c.eq("h", a.h(), 2);
  c.certified("d0", a.d0(), 4);
  c.certified("d1", a.d1(), 6);
  const Resolution r1(make_group(q8), 8), r2(make_group(z4), 8);
  for (unsigned n = 0; n <= 8; ++n) {
    std::size_t want = 0;
    for (unsigned i = 0; i <= n; ++i) want += r1.betti(i) * r2.betti(n - i);
    c.eq("b" + str(n), a.resolution()->betti(n), want);
  }
}

// -------- property suites

void resolution_properties(Check& c, const std::string& id, const Resolution& r) {
  const std::size_t order = r.group().order();
  const unsigned n = r.max_degree();
  std::vector<std::size_t> ranks(n + 1, 0);
  for (unsigned i = 1; i <= n; ++i) ranks[i] = rank_of(r.differential_matrix(i));
  c.eq(id + " rank d1", ranks[1], order - 1);
  for (unsigned i = 1; i < n; ++i)
    c.eq(id + " rank d" + str(i) + " + rank d" + str(i + 1), ranks[i] + ranks[i + 1], r.module_dim(i));
  for (unsigned i = 2; i <= n; ++i) {
    const auto a = r.differential_matrix(i - 1), b = r.differential_matrix(i);
    c.ok(id + " d o d = 0 at " + str(i), (a.cols() == b.rows() ? multiply(a, b) : multiply(b, a)).is_zero());
  }
  for (unsigned i = 1; i <= n; ++i)
    for (const auto& v : r.boundaries(i))
      for (std::size_t t = 0; t < r.betti(i - 1); ++t)
        if (v.block_sum(t * order, order) != 0) return c.fail(id + " boundary outside the augmentation ideal");
}

void ring_properties(Check& c, const std::string& id, const Cohomology& h, std::mt19937_64& rng) {
  const Prime p = h.prime();
  const unsigned n = h.max_degree();
  for (unsigned a = 1; a + 1 <= n; ++a)
    for (unsigned b = 1; a + b <= n; ++b) {
      const auto x = random_vector(p, h.dim(a), rng), y = random_vector(p, h.dim(b), rng);
      auto yx = h.product(b, y, a, x);
      if (a % 2 && b % 2) yx.scale(p - 1);
      c.eq(id + " graded commutativity in degrees " + str(a) + "," + str(b), h.product(a, x, b, y) == yx, true);
      for (unsigned d = 1; a + b + d <= n; ++d) {
        const auto z = random_vector(p, h.dim(d), rng);
        c.ok(id + " associativity in degrees " + str(a) + "," + str(b) + "," + str(d),
             h.product(a + b, h.product(a, x, b, y), d, z) == h.product(a, x, b + d, h.product(b, y, d, z)));
      }
    }
}

void map_properties(Check& c, const std::string& id, const GroupPtr& g, const ResolutionPtr& rg,
                    std::mt19937_64& rng) {
  const unsigned n = rg->max_degree();
  const Cohomology hg(rg);
  auto multiplicative = [&](const std::string& what, const std::vector<FpMatrix>& f, const Cohomology& from,
                            const Cohomology& to) {
    for (unsigned a = 1; a < n; ++a)
      for (unsigned b = 1; a + b <= n; ++b) {
        const auto x = random_vector(g->p(), from.dim(a), rng), y = random_vector(g->p(), from.dim(b), rng);
        c.ok(id + " " + what + " is multiplicative in degrees " + str(a) + "," + str(b),
             f[a + b].apply(from.product(a, x, b, y)) == to.product(a, f[a].apply(x), b, f[b].apply(y)));
      }
  };

  const auto maximal = maximal_subgroups(*g);
  if (!maximal.empty()) {
    const auto m = as_group(g, maximal.front());
    const auto rm = std::make_shared<const Resolution>(m.group, n);
    const auto res_gm = induced_maps(rm, rg, m.inclusion, n);
    multiplicative("restriction", res_gm, hg, Cohomology(rm));
    const auto inner = maximal_subgroups(*m.group);
    if (!inner.empty()) {
      const auto l = as_group(m.group, inner.front());
      const auto rl = std::make_shared<const Resolution>(l.group, n);
      const auto res_ml = induced_maps(rl, rm, l.inclusion, n);
      const auto res_gl = induced_maps(rl, rg, compose(m.inclusion, l.inclusion), n);
      for (unsigned k = 0; k <= n; ++k)
        c.ok(id + " restriction is functorial in degree " + str(k), multiply(res_ml[k], res_gm[k]) == res_gl[k]);
    }
  }

  const auto z = center(*g);
  if (z.order() < g->order()) {
    const auto q = quotient_by_central(g, z);
    const auto rq = std::make_shared<const Resolution>(q.group, n);
    multiplicative("inflation", induced_maps(rg, rq, q.projection, n), Cohomology(rq), hg);
  }
}

void comodule_properties(Check& c, const std::string& id, const Analysis& a) {
  const unsigned n = std::min(a.degree(), 4u);
  const Prime p = a.prime();
  const auto rk = a.resolution();
  const auto rv = std::make_shared<const Resolution>(a.center().group, n);
  const auto m = comodule_map(rv, rk, a.center().inclusion.map, n);
  std::vector<Elem> id_map(a.center().group->order());
  for (Elem e = 0; e < id_map.size(); ++e) id_map[e] = e;
  const auto delta = comodule_map(rv, rv, id_map, n);
  for (unsigned k = 0; k <= n; ++k) {
    c.ok(id + " counit in degree " + str(k), m.component(k, 0) == FpMatrix::identity(p, rk->betti(k)));
    for (unsigned i = 0; i <= k; ++i)
      for (unsigned j = 0; i + j <= k; ++j) {
        const unsigned l = k - i - j;
        const auto lhs = multiply(kronecker(delta.component(i + j, i), FpMatrix::identity(p, rk->betti(l))),
                                  m.component(k, i + j));
        const auto rhs = multiply(kronecker(FpMatrix::identity(p, rv->betti(i)), m.component(j + l, j)),
                                  m.component(k, i));
        c.ok(id + " coassociativity at (" + str(i) + "," + str(j) + "," + str(l) + ")", lhs == rhs);
      }
  }
}

void invariant_properties(Check& c, const std::string& id, const Analysis& a) {
  const unsigned n = a.degree();
  const auto ap = a.a_plus_times(everything(a));
  for (unsigned k = 0; k <= n; ++k)
    c.eq(id + " P_C meets A+ H* in degree " + str(k), intersect(a.primitives()[k], ap[k]).dim(), std::size_t{0});
  c.ok(id + " H* is free over A", a.freeness_holds(everything(a)));
  c.ok(id + " Cess is free over A", a.freeness_holds(a.cess()));

  const auto ep = a.e_prime(), epp = a.e_double_prime();
  if (ep.value && epp.value) c.ok(id + " e'' <= e'", *epp.value <= *ep.value);

  if (!a.p_central() || !a.type().certified) return;
  const int e = a.e();
  if (e >= static_cast<int>(n)) return;
  const auto q = a.qa_dims().dims;
  for (int d = 0; d <= e; ++d)
    c.eq(id + " Q_A palindrome at " + str(d), q[static_cast<std::size_t>(d)], q[static_cast<std::size_t>(e - d)]);
  c.ok(id + " Q_A nonzero in degree e", q[static_cast<std::size_t>(e)] > 0);
  for (unsigned k = static_cast<unsigned>(e) + 1; k <= n; ++k) c.eq(id + " Q_A in degree " + str(k), q[k], std::size_t{0});

  const auto pc = a.pc_dims().dims;
  c.eq(id + " LF dims", a.lf_dims().dims, pc);
  const Resolution hc(a.center().group, n);
  for (unsigned d = 0; d <= static_cast<unsigned>(e); ++d) {
    const auto rd = a.bar_rd_dims(d).dims;
    for (unsigned k = 0; k <= n; ++k) c.eq(id + " R_" + str(d) + " in degree " + str(k), rd[k], hc.betti(k) * pc[d]);
  }
}

void properties(Check& c, Suite suite) {
  std::mt19937_64 rng(20240611);
  struct Item {
    std::string id;
    PcPresentation pres;
    unsigned degree;
  };
  const unsigned extra = suite == Suite::quick ? 0 : 2;
  std::vector<Item> items = {
      {"Z4", builtin("Z4").presentation, 6 + extra},
      {"Z2^3", builtin("Z2^3").presentation, 5 + extra},
      {"D8", builtin("D8").presentation, 6 + extra},
      {"Q8", builtin("Q8").presentation, 6 + extra},
      {"SD16", builtin("SD16").presentation, 6 + extra},
      {"W2", builtin("W2").presentation, 5 + extra},
      {"Q8 x Z4", builtin("Q8 x Z4").presentation, 6 + extra},
      {"Z3^2", elementary_abelian_presentation(3, 2), 5 + extra},
      {"Z3 x Z9", direct_product(cyclic_presentation(3, 1), cyclic_presentation(3, 2)), 5 + extra},
  };
  for (const auto& item : items) {
    const auto g = make_group(item.pres);
    const Analysis a(g, item.degree);
    resolution_properties(c, item.id, *a.resolution());
    ring_properties(c, item.id, a.cohomology(), rng);
    map_properties(c, item.id, g, a.resolution(), rng);
    comodule_properties(c, item.id, a);
    invariant_properties(c, item.id, a);
  }

  const Analysis sd(grp("SD16"), 8 + extra);
  const auto q = sd.qa_cess_dims().dims;
  const int e = sd.e();
  for (int d = 0; d <= e; ++d)
    c.eq("SD16 Cess palindrome at " + str(d), q[static_cast<std::size_t>(d)], q[static_cast<std::size_t>(e - d)]);
}

void carlson(Check& c, Suite suite) {
  for (const char* id : {"D8", "D16", "D32", "SD16", "SD32"}) {
    const auto g = grp(id);
    const Analysis a(g, default_degree(g->order(), suite));
    const auto pv = *reference_values(id);
    const bool predicted = *pv.depth == a.center_rank();
    const bool computed = a.cess_nonzero();
    if (predicted != computed)
      c.fail(std::string(id) + ": depth " + str(*pv.depth) + (predicted ? " = " : " != ") + "rank C " +
             str(a.center_rank()) + " but computed Cess " + (computed ? "!= 0" : "= 0") + " (e' = " +
             str(a.e_prime().value) + ")");
  }
}

const std::vector<std::size_t> su3_4_indecomposables = {1, 4, 8, 10, 12, 13, 16, 20, 16, 13, 12, 10, 8, 4, 1};

void stretch(Check& c, Suite) {
  const Analysis su(grp("SU3_4"), 16);
  c.eq("64#187 type", su.type().entries, std::vector<unsigned>{8, 8});
  c.certified("64#187 d0", su.d0(), 14);
  c.certified("64#187 d1", su.d1(), 18);
  const auto q = su.qa_dims().dims;
  c.eq("64#187 Q_A dims", prefix(q, 0, 15), su3_4_indecomposables);
  c.eq("64#187 Q_A beyond 14", prefix(q, 15, 17), std::vector<std::size_t>{0, 0});

  const Analysis sz(grp("Sz8"), 10);
  c.eq("64#153 type", sz.type().entries, std::vector<unsigned>{4, 4, 4});
  c.certified("64#153 d0", sz.d0(), 9);
  c.certified("64#153 d1", sz.d1(), 11);
}

bool user_group(Check& c, Suite) {
  const char* path = std::getenv("PCOH_PCP_64_108");
  if (!path || !*path) return false;
  CatalogEntry entry;
  try {
    entry = from_pcp_file("64#108", path);
  } catch (const std::exception& ex) {
    c.fail(ex.what());
    return true;
  }
  const Analysis a(make_group(entry.presentation), 10);
  c.eq("type", a.type().entries, std::vector<unsigned>{8, 2});
  c.eq("e", a.e(), 8);
  c.certified("e'", a.e_prime(), 7);
  c.certified("e''", a.e_double_prime(), 7);
  c.certified("d0", a.d0(), 7);
  c.eq("Q_A Cess dims in degrees 1-7", prefix(a.qa_cess_dims().dims, 1, 8),
       std::vector<std::size_t>{1, 3, 5, 6, 5, 3, 1});
  return true;
}

}  // namespace

std::optional<Suite> parse_suite(const std::string& name) {
  if (name == "quick") return Suite::quick;
  if (name == "full") return Suite::full;
  if (name == "stretch") return Suite::stretch;
  return std::nullopt;
}

unsigned default_degree(std::size_t order, Suite suite) {
  const unsigned base = order <= 32 ? 10 : 8;
  return suite == Suite::quick ? base : base + 2;
}

std::vector<CriterionResult> run_acceptance(Suite suite, const std::function<void(const CriterionResult&)>& on_result) {
  struct Criterion {
    unsigned number;
    std::string title;
    std::function<bool(Check&, Suite)> run;  // false means skipped
  };
  auto always = [](void (*f)(Check&, Suite)) {
    return [f](Check& c, Suite s) {
      f(c, s);
      return true;
    };
  };
  std::vector<Criterion> criteria = {
      {1, "Q8 end-to-end", always(quaternion)},
      {2, "cyclic and quaternion rows with Q64", always(central_corpus)},
      {3, "dihedral and semidihedral rows", always(noncentral_corpus)},
      {4, "W(2) = 32#18", always(w2)},
      {5, "product laws for Q8 x Z4", always(products)},
      {6, "property suites", always(properties)},
      {7, "Carlson consistency against the Depth column", always(carlson)},
      {8, "stretch: 64#187 at N=16 and 64#153",
       [](Check& c, Suite s) {
         if (s != Suite::stretch) return false;
         stretch(c, s);
         return true;
       }},
      {9, "user-supplied 64#108", user_group},
  };
  std::vector<CriterionResult> out;
  for (const auto& cr : criteria) {
    CriterionResult r;
    r.number = cr.number;
    r.title = cr.title;
    Check c;
    const auto t0 = Clock::now();
    bool ran = true;
    try {
      ran = cr.run(c, suite);
    } catch (const std::exception& ex) {
      c.fail(std::string("error: ") + ex.what());
    }
    r.seconds = since(t0);
    if (!ran) {
      r.status = CriterionResult::Status::skip;
      r.detail = cr.number == 8 ? "long-running, only in the stretch suite" : "set PCOH_PCP_64_108 to a .pcp file";
    } else {
      r.status = c.passed() ? CriterionResult::Status::pass : CriterionResult::Status::fail;
      r.detail = c.summary();
    }
    if (on_result) on_result(r);
    out.push_back(std::move(r));
  }
  return out;
}

std::string format_result(const CriterionResult& r) {
  const char* tag = r.status == CriterionResult::Status::pass   ? "PASS"
                    : r.status == CriterionResult::Status::fail ? "FAIL"
                                                                : "SKIP";
  char secs[32];
  std::snprintf(secs, sizeof secs, "%.2f s", r.seconds);
  std::string out = std::string(tag) + " [" + std::to_string(r.number) + "] " + r.title + " (" + secs + ")";
  if (!r.detail.empty()) out += ": " + r.detail;
  return out;
}

}  // namespace pcoh
