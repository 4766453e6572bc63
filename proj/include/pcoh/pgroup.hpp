#pragma once

// Finite p-groups given by consistent power-commutator presentations.
//
// An element is stored as the integer sum_i e_i p^i of its normal-form
// exponent vector g_1^{e_1} ... g_n^{e_n} (generator g_{i+1} sits at digit i).
// Groups here are small, so the full multiplication table is kept.

#include <cstdint>
#include <memory>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "pcoh/linalg.hpp"

namespace pcoh {

using Elem = std::uint32_t;

class GroupError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Exponent vectors are 0-based: exps[i] is the exponent of generator g_{i+1}.
struct PcPresentation {
  Prime p = 2;
  unsigned n = 0;
  std::vector<std::vector<unsigned>> power;              // power[i] = g_i^p
  std::vector<std::vector<std::vector<unsigned>>> comm;  // comm[j][i] = [g_j, g_i] for i < j
  std::string name;

  static PcPresentation trivial_relations(Prime p, unsigned n);
  void set_power(unsigned i, std::vector<unsigned> word);
  void set_comm(unsigned j, unsigned i, std::vector<unsigned> word);
  std::size_t order() const;

  friend bool operator==(const PcPresentation& a, const PcPresentation& b) {
    return a.p == b.p && a.n == b.n && a.power == b.power && a.comm == b.comm;
  }
};

/// A word in the generators: (generator index, exponent), exponent may be negative.
using Word = std::vector<std::pair<unsigned, int>>;

class PGroup {
 public:
  /// Validates the presentation by exhaustive associativity checks.
  explicit PGroup(PcPresentation pres);

  const PcPresentation& presentation() const { return pres_; }
  const std::string& name() const { return pres_.name; }
  Prime p() const { return pres_.p; }
  unsigned n() const { return pres_.n; }
  std::size_t order() const { return order_; }

  Elem identity() const { return 0; }
  Elem generator(unsigned i) const { return pow_p_[i]; }
  std::vector<unsigned> exponents(Elem x) const;
  Elem encode(const std::vector<unsigned>& exps) const;

  Elem mul(Elem a, Elem b) const { return table_[static_cast<std::size_t>(a) * order_ + b]; }
  Elem inv(Elem a) const { return inverse_[a]; }
  /// a b a^{-1}
  Elem conj(Elem a, Elem b) const { return mul(mul(a, b), inv(a)); }
  /// a^{-1} b^{-1} a b
  Elem commutator(Elem a, Elem b) const { return mul(mul(inv(a), inv(b)), mul(a, b)); }
  Elem pow(Elem a, unsigned k) const;
  unsigned element_order(Elem a) const;
  bool commute(Elem a, Elem b) const { return mul(a, b) == mul(b, a); }

  /// Collection from the left, one letter at a time.
  Elem normal_form(const Word& w) const;

 private:
  Elem mul_gen(Elem x, unsigned k);

  PcPresentation pres_;
  std::size_t order_ = 1;
  std::vector<Elem> pow_p_;
  std::vector<std::int64_t> gen_cache_;
  std::vector<Elem> table_;
  std::vector<Elem> inverse_;
};

using GroupPtr = std::shared_ptr<const PGroup>;

GroupPtr make_group(PcPresentation pres);

/// Sorted element list plus a generating set.
struct Subgroup {
  std::vector<Elem> gens;
  std::vector<Elem> elements;

  std::size_t order() const { return elements.size(); }
  bool contains(Elem x) const;
  bool contains(const Subgroup& other) const;
  friend bool operator==(const Subgroup& a, const Subgroup& b) { return a.elements == b.elements; }
  friend bool operator<(const Subgroup& a, const Subgroup& b) { return a.elements < b.elements; }
};

struct ElemAbelian {
  Subgroup sub;
  std::vector<Elem> basis;
  unsigned rank() const { return static_cast<unsigned>(basis.size()); }
};

Subgroup generate(const PGroup& g, const std::vector<Elem>& gens);
/// Subgroup from a known element set; a small generating set is chosen greedily.
Subgroup subgroup_from_elements(const PGroup& g, std::vector<Elem> elements);
Subgroup whole_group(const PGroup& g);
Subgroup conjugate(const PGroup& g, Elem h, const Subgroup& s);

/// Homomorphism determined by images of the source generators.
struct GroupHom {
  GroupPtr source;
  GroupPtr target;
  std::vector<Elem> images;
  std::vector<Elem> map;  // every source element

  Elem operator()(Elem x) const { return map[x]; }
};

/// Builds and validates; throws GroupError if the relations are not preserved.
GroupHom make_hom(GroupPtr source, GroupPtr target, std::vector<Elem> images);
GroupHom compose(const GroupHom& second, const GroupHom& first);
GroupHom identity_hom(GroupPtr g);

/// A subgroup realized as a group in its own right.
struct Embedded {
  GroupPtr group;
  GroupHom inclusion;                      // group -> parent
  std::vector<std::int64_t> from_parent;  // parent element -> group element or -1

  Elem pull(Elem parent_elem) const;
};

/// Finds a pc presentation for the group with the given Cayley table
/// (table[a*N+b] = ab, element 0 the identity).  Returns the group and, for
/// each new element, the corresponding old index.
std::pair<GroupPtr, std::vector<std::size_t>> from_cayley_table(Prime p, const std::vector<std::size_t>& table,
                                                                 std::string name = {});

Embedded as_group(const GroupPtr& g, const Subgroup& s, std::string name = {});
/// Elementary abelian group with generators mapped to the chosen basis.
Embedded as_group(const GroupPtr& g, const ElemAbelian& v, std::string name = {});

PcPresentation elementary_abelian_presentation(Prime p, unsigned rank);
PcPresentation direct_product(const PcPresentation& a, const PcPresentation& b);
/// Element (a, b) of the product has index a + |A| b.
inline Elem product_elem(const PGroup& a, Elem x, Elem y) { return static_cast<Elem>(x + a.order() * y); }

struct Quotient {
  GroupPtr group;
  GroupHom projection;
};
Quotient quotient_by_central(const GroupPtr& g, const Subgroup& z);
Subgroup kernel(const GroupHom& f);

Subgroup center(const PGroup& g);
ElemAbelian omega1_center(const PGroup& g);
bool is_p_central(const PGroup& g);
Subgroup centralizer(const PGroup& g, const Subgroup& s);
Subgroup normalizer(const PGroup& g, const Subgroup& s);
Subgroup frattini(const PGroup& g);
/// Elements whose images form a basis of G/Phi(G).
std::vector<Elem> minimal_generators(const PGroup& g);
std::vector<Subgroup> maximal_subgroups(const PGroup& g);

std::vector<ElemAbelian> elementary_abelian_subgroups(const PGroup& g, const ElemAbelian* containing = nullptr);
unsigned p_rank(const PGroup& g);

struct ConjugacyClass {
  std::size_t rep;                    // index into the input list
  std::vector<std::size_t> members;   // indices into the input list
  std::vector<Elem> conjugators;      // conjugators[k] * rep * conjugators[k]^{-1} = members[k]
};
/// Groups a conjugation-closed list of subgroups into classes.
std::vector<ConjugacyClass> conjugacy_classes(const PGroup& g, const std::vector<Subgroup>& subgroups);

/// Multiplication C x G -> G for a central elementary abelian C.
GroupHom multiplication_hom(const GroupPtr& g, const ElemAbelian& c);

struct AcObject {
  ElemAbelian v;
  Subgroup centralizer;
  Subgroup normalizer;
  std::vector<Elem> weyl_reps;  // coset representatives of C_G(V) in N_G(V), identity first
};

struct AcEdge {
  std::size_t from;
  std::size_t to;
  Elem h;  // h V_from h^{-1} is a proper subgroup of V_to
};

struct QuillenCategoryAC {
  std::vector<AcObject> objects;  // objects[0] = C(G)
  std::vector<AcEdge> edges;      // one per distinct conjugate of V_from inside V_to
};

QuillenCategoryAC quillen_category_AC(const PGroup& g);

}  // namespace pcoh
