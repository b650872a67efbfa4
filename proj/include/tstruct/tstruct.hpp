#pragma once

#include "tstruct/derived.hpp"
#include "tstruct/quiver.hpp"

#include <string>
#include <vector>

namespace tstruct {

// Nondecreasing wide subcategories f(n) together with a tilting torsion
// class tf(n) in f(n) ∩ ⊥f(n-1). Explicit on [lo, hi]; f is constant on each
// side and tf vanishes outside the window.
struct RefinedTSeq {
  int lo = 0;
  int hi = -1;
  IndecSet f_below;
  std::vector<IndecSet> f;
  std::vector<IndecSet> tf;
  IndecSet f_above;

  IndecSet f_at(int k) const {
    if (k < lo) return f_below;
    if (k > hi) return f_above;
    return f[static_cast<std::size_t>(k - lo)];
  }
  IndecSet tf_at(int k) const { return k < lo || k > hi ? IndecSet{} : tf[static_cast<std::size_t>(k - lo)]; }
  bool same_as(const RefinedTSeq& o) const;
  friend bool operator==(const RefinedTSeq&, const RefinedTSeq&) = default;
};

std::string describe(const FiniteBackend& b, const RefinedTSeq& r);

// Left perpendicular in all degrees.
IndecSet left_perp(const FiniteBackend& b, IndecSet s);
// Least subcategory containing `seed`, closed under extensions and under
// quotients that lie in `w`.
IndecSet nullity_closure_in(const FiniteBackend& b, IndecSet seed, IndecSet w);

// f(n) = wide N(n), tf(n) = N(n) ∩ ⊥f(n-1). The window grows by one degree
// at the top, where the upper tail starts. Throws on an invalid sequence.
RefinedTSeq xi(const FiniteBackend& b, const SubcatSeq& u);
// Degreewise: V(k) = nullity closure of tf(k) ∪ f(k-1) inside f(k). The input
// is not validated.
SubcatSeq psi(const FiniteBackend& b, const RefinedTSeq& r);
SeqReport validate_refined(const FiniteBackend& b, const RefinedTSeq& r);

enum class EnumMode {
  nondegenerate,  // 0 below lo, everything from hi on, free on [lo, hi)
  wide_above,     // 0 below lo, free on [lo, hi], constant wide tail above hi
};

// All narrow sequences of the given shape, in lexicographic order of the
// degreewise bitmasks.
std::vector<SubcatSeq> enumerate_narrow_sequences(const FiniteBackend& b, int lo, int hi, EnumMode mode);
// All refined sequences with f = 0 below lo and f constant from hi on.
std::vector<RefinedTSeq> enumerate_refined(const FiniteBackend& b, int lo, int hi);

// Outcome of one named verification suite.
struct CheckResult {
  CheckResult() = default;
  CheckResult(std::string n, std::string a) : name(std::move(n)), anchor(std::move(a)) {}
  std::string name;
  std::string anchor;
  long long cases = 0;
  long long failures = 0;
  std::string first_witness;
  bool passed() const { return failures == 0; }
  void fail(std::string witness) {
    if (failures++ == 0) first_witness = std::move(witness);
  }
};

struct VerifyOptions {
  int lo = 0;
  int hi = 2;
  int jobs = 1;
  // Lower bound on the total dimension for the five-term sequence scan. The
  // suite raises it to cover witnesses built from single indecomposables.
  int five_term_dim = 4;
};

// Individual suites over a finite backend. Each returns one CheckResult.
CheckResult check_subcat_counts(const FiniteBackend& b, int torsion, int wide, int narrow);
CheckResult check_narrow_theta_mu(const FiniteBackend& b, const VerifyOptions& o);
CheckResult check_reduced_roundtrip(const FiniteBackend& b, const VerifyOptions& o);
CheckResult check_psi_star_oracle(const FiniteBackend& b, const VerifyOptions& o);
CheckResult check_no_change(const FiniteBackend& b, const VerifyOptions& o);
CheckResult check_images(const FiniteBackend& b);
CheckResult check_growing_fast_enough(const FiniteBackend& b, const VerifyOptions& o);
CheckResult check_generated_in_one_step(const FiniteBackend& b);
CheckResult check_gluing_pieces(const FiniteBackend& b, const VerifyOptions& o);
CheckResult check_big_gluing(const FiniteBackend& b, const VerifyOptions& o);
CheckResult check_left_adjoint_aisles(const FiniteBackend& b, const VerifyOptions& o);
CheckResult check_narrow_is_pretorsion(const FiniteBackend& b);
CheckResult check_split_injectives(const FiniteBackend& b);
CheckResult check_five_term(const FiniteBackend& b, int max_term_dim);
// Largest total dimension of a five-term witness whose nonzero terms come from
// one nonzero map or one extension between indecomposables.
int single_witness_dim(const FiniteBackend& b);
CheckResult check_euler_form(const FiniteBackend& b, const QuiverSpec& spec);
CheckResult check_narrow_predicate_scan(const FiniteBackend& b);
// Needs the one-vertex backend.
CheckResult check_bad_preaisle(const FiniteBackend& b);

// Every suite that applies to the backend, in a fixed order.
std::vector<CheckResult> verify_quiver_suite(const FiniteBackend& b, const QuiverSpec& spec, const VerifyOptions& o);

}  // namespace tstruct
