#pragma once

#include "tstruct/indec_set.hpp"

#include <array>
#include <memory>
#include <mutex>
#include <string>
#include <utility>
#include <vector>

namespace tstruct {

// Seeded faults used by the verification harness to prove the checks bite.
enum class Mutation {
  none,
  drop_extension_closure,
  skip_kernel_condition,
  xi_skip_perp,
  psi_skip_quotients,
  theta_off_by_one,
};

Mutation parse_mutation(const std::string& name);
std::string to_string(Mutation m);
const std::vector<std::string>& mutation_names();

struct BackendOptions {
  int summand_bound = 3;   // objects scanned by the one-step closure tables
  int copy_bound = 4;      // targets of the tilting monomorphism search
  int star_budget = 2;     // summands per degree in triangle searches
  Mutation mutation = Mutation::none;
};

struct MorphismParts {
  Obj kernel;
  Obj image;
  Obj cokernel;
  friend bool operator==(const MorphismParts&, const MorphismParts&) = default;
  friend auto operator<=>(const MorphismParts&, const MorphismParts&) = default;
};

// Backend-neutral morphism handle: coordinates (field element codes) in the
// backend's canonical basis of Hom(source, target).
struct Morphism {
  Obj source;
  Obj target;
  std::vector<int> coords;
};

enum Rule : unsigned {
  rule_cokernels = 1u << 0,
  rule_kernels = 1u << 1,
  rule_quotients = 1u << 2,
  rule_subobjects = 1u << 3,
  rule_extensions = 1u << 4,
  rule_images = 1u << 5,
};
inline constexpr unsigned wide_rules = rule_cokernels | rule_kernels | rule_extensions;
inline constexpr unsigned narrow_rules = rule_cokernels | rule_extensions;
inline constexpr unsigned nullity_rules = rule_quotients | rule_extensions;

enum Flag : unsigned {
  flag_narrow = 1u << 0,
  flag_wide = 1u << 1,
  flag_nullity = 1u << 2,
  flag_torsion = 1u << 3,
};

struct SubcatFlags {
  bool narrow = false;
  bool wide = false;
  bool nullity = false;
  bool torsion = false;
  unsigned mask() const {
    return (narrow ? flag_narrow : 0u) | (wide ? flag_wide : 0u) | (nullity ? flag_nullity : 0u) |
           (torsion ? flag_torsion : 0u);
  }
};

enum class Side { left, right };
enum class PerpDegrees { zero_only, all };

// A finite hereditary category with a Krull-Schmidt skeleton of at most 64
// indecomposables. Subclasses provide the primitives; the subcategory
// calculus is implemented here on top of them.
class FiniteBackend {
 public:
  explicit FiniteBackend(BackendOptions opts);
  virtual ~FiniteBackend();
  FiniteBackend(const FiniteBackend&) = delete;
  FiniteBackend& operator=(const FiniteBackend&) = delete;

  // --- primitives -------------------------------------------------------
  virtual std::string name() const = 0;
  virtual int size() const = 0;
  virtual bool truncated() const = 0;
  virtual std::string label(IndecId i) const = 0;
  virtual std::vector<int> dimension_vector(IndecId i) const = 0;
  virtual int hom_dim(IndecId a, IndecId b) const = 0;
  virtual int ext_dim(IndecId a, IndecId b) const = 0;

  // Dimension of Hom(source, target); coordinates of Morphism handles live in
  // a basis of this size.
  virtual int hom_basis_size(const Obj& source, const Obj& target) const = 0;
  virtual MorphismParts morphism_parts(const Morphism& f) const = 0;
  // Distinct (kernel, image, cokernel) triples over every morphism.
  virtual const std::vector<MorphismParts>& all_morphism_parts(const Obj& source,
                                                               const Obj& target) const = 0;
  // Every M with a short exact sequence 0 -> sub -> M -> quot -> 0.
  virtual const std::vector<Obj>& middle_terms(const Obj& quot, const Obj& sub) const = 0;
  virtual bool has_monomorphism(const Obj& source, const Obj& target) const = 0;
  // True iff every monomorphism indec -> target splits.
  virtual bool every_mono_splits(IndecId indec, const Obj& target) const = 0;
  // Trace of `t` in `a` and the corresponding quotient.
  virtual std::pair<Obj, Obj> trace_split(const Obj& a, IndecSet t) const = 0;
  // Support patterns (A,B,C,D,E) of exact sequences A->B->C->D->E whose
  // terms have total dimension <= max_term_dim, found by direct enumeration.
  virtual std::vector<std::array<IndecSet, 5>> five_term_patterns(int max_term_dim) const = 0;

  // --- derived conveniences ------------------------------------------------
  const BackendOptions& options() const { return opts_; }
  int field_order() const { return field_order_; }
  IndecSet everything() const { return IndecSet::all(size()); }
  int hom_dim(const Obj& a, const Obj& b) const;
  int ext_dim(const Obj& a, const Obj& b) const;
  int total_dim(const Obj& a) const;
  std::vector<int> dimension_vector(const Obj& a) const;
  Morphism identity(const Obj& a) const;
  Morphism zero_morphism(const Obj& a, const Obj& b) const;
  std::string describe(const Obj& a) const;
  std::string describe(IndecSet s) const;

  // --- subcategory calculus --------------------------------------------
  // Cokernels (images, kernels) of maps from objects of `from` to objects
  // of `to`; sources and targets are scanned up to the summand bound.
  IndecSet cokernels(IndecSet from, IndecSet to) const;
  IndecSet kernels(IndecSet from, IndecSet to) const;
  IndecSet images(IndecSet from, IndecSet to) const;
  IndecSet quotients(IndecSet s) const;
  IndecSet subobjects(IndecSet s) const;
  IndecSet extensions(IndecSet s) const;

  IndecSet closure(IndecSet seed, unsigned rules) const;
  IndecSet wide_closure(IndecSet s) const { return closure(s, wide_rules); }

  bool is_extension_closed(IndecSet s) const;
  bool is_narrow(IndecSet s) const;
  bool is_wide(IndecSet s) const;
  bool is_nullity(IndecSet s) const;
  bool is_torsion_class(IndecSet s) const { return is_nullity(s); }
  // Nullity class inside the abelian subcategory `w`.
  bool is_nullity_in(IndecSet s, IndecSet w) const;
  SubcatFlags classify(IndecSet s) const;
  bool is_tilting_in(IndecSet n, IndecSet w) const;
  IndecSet perp(IndecSet s, Side side, PerpDegrees degrees) const;
  std::pair<Obj, Obj> torsion_decompose(const Obj& a, IndecSet t) const;
  IndecSet ext_injectives(IndecSet c) const;
  IndecSet split_injectives(IndecSet c) const;
  // Subsets passing every requested flag, in bitmask order.
  std::vector<IndecSet> enumerate_subcats(unsigned flags) const;

 protected:
  void set_field_order(int q) { field_order_ = q; }

 private:
  struct Tables;
  const Tables& tables() const;
  const std::vector<std::vector<IndecSet>>& mono_targets() const;

  BackendOptions opts_;
  int field_order_ = 0;
  mutable std::once_flag tables_once_;
  mutable std::unique_ptr<Tables> tables_;
  mutable std::once_flag mono_once_;
  mutable std::vector<std::vector<IndecSet>> mono_targets_;
};

}  // namespace tstruct
