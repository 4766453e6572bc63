#pragma once

// Central-detection invariants of a p-group computed from its cohomology up
// to a degree bound N: the type of the restriction image to C(G), Duflot
// subalgebras, A-indecomposables, comodule primitives, central essential
// cohomology, and the numbers e, h, e', e'', d0, d1.

#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "pcoh/resolution.hpp"

namespace pcoh {

class InvariantError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Certified {
  std::optional<int> value;
  bool certified = false;
};

struct GradedDims {
  std::string role;
  std::vector<std::size_t> dims;  // degrees 0..truncation
  unsigned truncation = 0;
  bool top_degree_certified = false;

  /// Highest degree with a nonzero entry, or -1.
  int top() const;
};

struct GroupType {
  std::vector<unsigned> entries;  // nonincreasing
  bool certified = false;
};

/// levels[k] is the subspace of C# (coordinates in the basis x_1..x_c of H^1(C))
/// whose Frobenius power of order k lies in the restriction image.
struct FrobeniusFlag {
  std::vector<FpSubspace> levels;
  /// Coordinates of classes already in the degree-one image (odd p only; zero at p = 2).
  FpSubspace exterior;
};

struct DuflotData {
  std::vector<unsigned> degrees;
  std::vector<FpVector> lifts;   // xi_i in H^{degrees[i]}(G)
  std::vector<FpVector> images;  // restriction of xi_i to C
  std::vector<bool> exterior;    // degree-one exterior generators (odd p)
  std::vector<std::size_t> hilbert;  // dims of A in degrees 0..N
};

int e_of(const GroupType& t);
int h_of(const GroupType& t, Prime p);

/// Hilbert series coefficients of a free graded-commutative algebra, degrees 0..n.
std::vector<std::size_t> free_algebra_series(const std::vector<unsigned>& polynomial_degrees, unsigned exterior_count,
                                             unsigned n);

/// Primitives of the H*(V)-comodule H*(K) for central V, degreewise through top.
std::vector<FpSubspace> comodule_primitives(const ResolutionPtr& rv, const ResolutionPtr& rk,
                                            const std::vector<Elem>& iota, unsigned top);

/// Every computation for one group at one degree bound.  Results are computed
/// on first use and kept.
class Analysis {
 public:
  Analysis(GroupPtr g, unsigned degree, ResolutionOptions options = {});
  Analysis(ResolutionPtr res, unsigned degree, ResolutionOptions options = {});

  const PGroup& group() const { return *g_; }
  const GroupPtr& group_ptr() const { return g_; }
  Prime prime() const { return g_->p(); }
  unsigned degree() const { return n_; }
  const ResolutionOptions& options() const { return options_; }
  const ResolutionPtr& resolution() const { return res_; }
  const Cohomology& cohomology() const { return *coh_; }

  const Embedded& center() const { return center_; }
  unsigned center_rank() const { return c_; }
  unsigned p_rank() const;
  bool p_central() const;

  /// Restriction H^k(G) -> H^k(C), k <= N.
  const std::vector<FpMatrix>& restriction_to_center() const;
  const std::vector<FpSubspace>& restriction_image() const;
  GradedDims restriction_image_dims() const;

  const FrobeniusFlag& flag() const;
  const GroupType& type() const;
  int e() const { return e_of(type()); }
  int h() const { return h_of(type(), prime()); }

  const DuflotData& duflot() const;
  /// Span of xi_i * M^{k - a_i} inside H^k, for M given degreewise.
  std::vector<FpSubspace> a_plus_times(const std::vector<FpSubspace>& m) const;
  GradedDims qa_dims() const;
  /// Hilbert identity dim M^k = sum_j dim A^j dim Q_A M^{k-j}, k <= N.
  bool freeness_holds(const std::vector<FpSubspace>& m) const;

  const std::vector<FpSubspace>& primitives() const;
  GradedDims pc_dims() const;

  /// Kernel of restriction to C_G(U) for every U > C(G); all of H* when G is p-central.
  const std::vector<FpSubspace>& cess() const;
  GradedDims cess_dims() const;
  GradedDims qa_cess_dims() const;
  GradedDims pc_cess_dims() const;
  bool cess_nonzero() const;

  Certified e_prime() const;
  Certified e_double_prime() const;
  Certified d0() const;
  /// Defined only for p-central groups.
  Certified d1() const;

  /// Generator of P_C H^{e(G)}; requires p-central G with e(G) > 0.
  FpVector top_primitive_class() const;
  /// Restricts to zero on every maximal subgroup.
  bool is_essential(unsigned k, const FpVector& z) const;

  GradedDims lf_dims() const;
  GradedDims bar_rd_dims(unsigned d) const;

  /// The analysis of C_G(V) for the V = objects[i] of the Quillen category over C(G).
  const Analysis& centralizer_analysis(std::size_t object) const;
  const QuillenCategoryAC& quillen() const;

 private:
  struct ObjectData;
  const ObjectData& object(std::size_t i) const;
  const std::vector<FpMatrix>& multiplication(std::size_t generator) const;
  const Cohomology& center_cohomology() const;
  std::vector<FpVector> power_images(unsigned k) const;
  std::vector<std::size_t> quotient_dims(const std::vector<FpSubspace>& m) const;
  Certified top_certified(int candidate) const;

  GroupPtr g_;
  unsigned n_;
  ResolutionOptions options_;
  ResolutionPtr res_;
  std::shared_ptr<Cohomology> coh_;
  Embedded center_;
  unsigned c_ = 0;

  mutable std::optional<unsigned> p_rank_;
  mutable std::optional<std::vector<FpMatrix>> res_c_;
  mutable std::optional<std::vector<FpSubspace>> image_;
  mutable std::shared_ptr<Cohomology> coh_c_;
  mutable std::optional<FrobeniusFlag> flag_;
  mutable std::optional<GroupType> type_;
  mutable std::optional<DuflotData> duflot_;
  mutable std::map<std::size_t, std::vector<FpMatrix>> mult_;
  mutable std::optional<std::vector<FpSubspace>> primitives_;
  mutable std::optional<std::vector<FpSubspace>> cess_;
  mutable std::optional<QuillenCategoryAC> quillen_;
  mutable std::map<std::size_t, std::shared_ptr<ObjectData>> objects_;
};

/// d0 and d1 of a finite group whose Sylow subgroup is p-central, from the Sylow analysis.
std::pair<Certified, Certified> sylow_transfer(const Analysis& sylow);

struct InvariantReport {
  std::string group_id;
  Prime p = 2;
  std::size_t order = 0;
  unsigned rank = 0;
  unsigned center_rank = 0;
  bool p_central = false;
  GroupType type;
  Certified e, h, d0, d1, e_prime, e_double_prime;
  std::optional<bool> cess_nonzero;
  unsigned truncation_degree = 0;
  std::string error;  // set when the computation stopped early
};

using ResolutionProvider = std::function<ResolutionPtr(const GroupPtr&, unsigned, const ResolutionOptions&)>;

/// Runs everything; a budget overrun lowers the degree bound and leaves fields uncertified.
InvariantReport make_report(const std::string& id, const GroupPtr& g, unsigned degree, ResolutionOptions options = {},
                            const ResolutionProvider& provider = {});

}  // namespace pcoh
