#pragma once

// Minimal free resolutions of the trivial module over F_p G, chain-map
// lifting, and the maps on cohomology they induce.
//
// A free module F = (F_p G)^b is stored in the regular expansion: the element
// h * e_j sits at coordinate j * |G| + h.  Cohomology H^k is identified with
// Hom(F_k, F_p) = F_p^{b_k} through the dual basis of the generators.

#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "pcoh/linalg.hpp"
#include "pcoh/pgroup.hpp"

namespace pcoh {

class BudgetExceeded : public std::runtime_error {
 public:
  BudgetExceeded(unsigned degree, std::size_t columns, std::size_t budget);
  unsigned degree;
  std::size_t columns;
  std::size_t budget;
};

class ResolutionError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct ResolutionOptions {
  std::size_t budget_columns = 20000;
};

/// Left multiplication on the regular expansion, with a table-driven path for p = 2.
class RegularAction {
 public:
  explicit RegularAction(GroupPtr g);
  /// out += coef * (h . v)
  void add_translate(Elem h, const FpVector& v, unsigned coef, FpVector& out) const;
  FpVector translate(Elem h, const FpVector& v) const;

 private:
  GroupPtr g_;
  std::size_t unit_words_ = 0;  // words per table unit; 0 disables the table path
  std::vector<std::uint64_t> table_;
};

class Resolution {
 public:
  Resolution(GroupPtr g, unsigned max_degree, ResolutionOptions options = {});
  /// Rebuilds from stored boundaries, re-running every structural check.
  static Resolution from_boundaries(GroupPtr g, std::vector<std::vector<FpVector>> boundaries,
                                    ResolutionOptions options = {});

  const PGroup& group() const { return *g_; }
  const GroupPtr& group_ptr() const { return g_; }
  Prime prime() const { return g_->p(); }
  unsigned max_degree() const { return max_degree_; }

  std::size_t betti(unsigned i) const;
  std::vector<std::size_t> betti_numbers() const { return betti_; }
  std::size_t module_dim(unsigned i) const { return betti(i) * g_->order(); }

  /// d_i(e_j) as an element of F_{i-1}; i >= 1.
  const FpVector& boundary(unsigned i, std::size_t j) const;
  const std::vector<FpVector>& boundaries(unsigned i) const { return boundaries_.at(i); }
  FpMatrix differential_matrix(unsigned i) const;
  FpVector apply_differential(unsigned i, const FpVector& x) const;
  /// Some x in F_i with d_i x = y, if y is a boundary.
  std::optional<FpVector> solve(unsigned i, const FpVector& y) const;

  const RegularAction& action() const { return *action_; }

 private:
  Resolution(GroupPtr g, unsigned max_degree, ResolutionOptions options, int);
  void build_solver(unsigned i);
  void check_degree(unsigned i) const;
  void extend(unsigned i);

  GroupPtr g_;
  unsigned max_degree_;
  ResolutionOptions options_;
  std::vector<std::size_t> betti_;
  std::vector<std::vector<FpVector>> boundaries_;  // boundaries_[i][j], i >= 1
  std::vector<std::shared_ptr<ImageSolver>> solvers_;
  std::shared_ptr<RegularAction> action_;
  std::vector<Elem> min_gens_;
};

using ResolutionPtr = std::shared_ptr<const Resolution>;

// ---------------------------------------------------------------- lifting

/// A term coef * h * e_gen of a boundary, with h already in the target group.
struct BoundaryTerm {
  std::size_t gen;
  Elem elem;
  unsigned coef;
};

/// A free complex over some group, described by generator counts and boundaries
/// whose group elements have been pushed into the target group.
struct SourceComplex {
  std::function<std::size_t(unsigned)> rank;
  std::function<std::vector<BoundaryTerm>(unsigned, std::size_t)> boundary;
};

/// Resolution viewed over the target group through phi (identity if null).
SourceComplex resolution_source(const ResolutionPtr& r, const GroupHom* phi = nullptr);

/// Tensor product P_V (x) R_K viewed over K through m : V x K -> K, m(v, y) = iota(v) y.
/// Generators in total degree k are ordered by (i, a, b) with a < b_i(V), b < b_{k-i}(K).
class TensorSource {
 public:
  TensorSource(ResolutionPtr pv, ResolutionPtr rk, std::vector<Elem> iota);
  std::size_t rank(unsigned k) const;
  std::size_t index(unsigned k, unsigned i, std::size_t a, std::size_t b) const;
  std::vector<BoundaryTerm> boundary(unsigned k, std::size_t j) const;
  SourceComplex complex() const;
  unsigned max_degree() const;
  const Resolution& left() const { return *pv_; }
  const Resolution& right() const { return *rk_; }

 private:
  ResolutionPtr pv_, rk_;
  std::vector<Elem> iota_;
};

/// Chain map Phi from a source complex to a resolution, lowering degree by shift.
struct ChainLift {
  unsigned shift = 0;
  unsigned top = 0;
  std::vector<std::vector<FpVector>> images;  // images[k][j] = Phi_k(e_j), k in [shift, top]

  /// Matrix with entry (j, t) = epsilon_t(Phi_k(e_j)); it maps H^{k-shift}(target) to H^k(source).
  FpMatrix cohomology_matrix(const Resolution& target, unsigned k) const;
};

ChainLift lift_chain_map(const Resolution& target, const SourceComplex& source, unsigned shift, unsigned top,
                         std::vector<FpVector> base);

/// Degree-wise matrices of phi^* : H^k(target group) -> H^k(source group), k <= top.
std::vector<FpMatrix> induced_maps(const ResolutionPtr& source, const ResolutionPtr& target, const GroupHom& phi,
                                   unsigned top);

/// m^* : H^k(K) -> sum_i H^i(V) (x) H^{k-i}(K) for a central V with inclusion iota.
/// Row (i, a, b) of matrices[k] is the coefficient of the a-th class of H^i(V)
/// tensor the b-th class of H^{k-i}(K).
struct ComoduleMap {
  TensorSource source;
  std::vector<FpMatrix> matrices;

  /// Rows of matrices[k] belonging to H^i(V) (x) H^{k-i}(K), in order a * b_{k-i}(K) + b.
  FpMatrix component(unsigned k, unsigned i) const;
};

ComoduleMap comodule_map(const ResolutionPtr& pv, const ResolutionPtr& rk, std::vector<Elem> iota, unsigned top);

/// Materializes the tensor product of two minimal resolutions as a resolution of G x H.
Resolution kunneth(const ResolutionPtr& a, const ResolutionPtr& b, const GroupPtr& product);

// ---------------------------------------------------------------- cohomology ring

class Cohomology {
 public:
  explicit Cohomology(ResolutionPtr res);

  const Resolution& resolution() const { return *res_; }
  const ResolutionPtr& resolution_ptr() const { return res_; }
  Prime prime() const { return res_->prime(); }
  unsigned max_degree() const { return res_->max_degree(); }
  std::size_t dim(unsigned k) const { return res_->betti(k); }

  /// Matrix of x -> x * g from H^m to H^{m+n}; g is an arbitrary class of degree n.
  FpMatrix right_mult(unsigned n, const FpVector& g, unsigned m) const;
  /// Right multiplication by the j-th basis class of H^n (cached per class).
  const FpMatrix& basis_right_mult(unsigned n, std::size_t j, unsigned m) const;
  FpVector product(unsigned m, const FpVector& f, unsigned n, const FpVector& g) const;
  /// Lift of a single class, useful when only a few products are needed.
  ChainLift lift_class(unsigned n, const FpVector& g, unsigned top) const;

  /// Span of all products H^i * H^{k-i}, 0 < i < k.
  FpSubspace decomposables(unsigned k) const;

 private:
  ResolutionPtr res_;
  mutable std::vector<std::vector<std::optional<ChainLift>>> basis_lifts_;
  mutable std::vector<std::vector<std::vector<FpMatrix>>> basis_mats_;
};

// ---------------------------------------------------------------- cache format

std::string serialize_resolution(const Resolution& r, const std::string& presentation_hash);
/// Returns nullopt if the header does not match the hash or is malformed.
std::optional<Resolution> deserialize_resolution(const GroupPtr& g, const std::string& text,
                                                 const std::string& presentation_hash, ResolutionOptions options = {});

}  // namespace pcoh
