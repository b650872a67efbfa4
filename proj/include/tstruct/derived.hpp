#pragma once

#include "tstruct/backend.hpp"

#include <functional>
#include <limits>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace tstruct {

// Object of the bounded derived category of a hereditary backend, stored as
// its homology: the object is the sum of H_k[k]. Zero entries are dropped.
class DerivedObj {
 public:
  DerivedObj() = default;
  static DerivedObj stalk(const Obj& a, int degree) {
    DerivedObj x;
    x.set(degree, a);
    return x;
  }

  const Obj& at(int k) const {
    static const Obj zero;
    auto it = h_.find(k);
    return it == h_.end() ? zero : it->second;
  }
  void set(int k, const Obj& a) {
    if (a.is_zero())
      h_.erase(k);
    else
      h_[k] = a;
  }
  bool is_zero() const { return h_.empty(); }
  // Both need a nonzero object.
  int min_degree() const { return h_.begin()->first; }
  int max_degree() const { return h_.rbegin()->first; }
  const std::map<int, Obj>& homology() const { return h_; }

  DerivedObj shifted(int n) const {
    DerivedObj x;
    for (const auto& [k, a] : h_) x.h_[k + n] = a;
    return x;
  }
  friend DerivedObj operator+(const DerivedObj& a, const DerivedObj& b) {
    DerivedObj x = a;
    for (const auto& [k, o] : b.h_) x.set(k, x.at(k) + o);
    return x;
  }
  friend bool operator==(const DerivedObj&, const DerivedObj&) = default;
  friend auto operator<=>(const DerivedObj&, const DerivedObj&) = default;

 private:
  std::map<int, Obj> h_;
};

std::string describe(const FiniteBackend& b, const DerivedObj& x);

// Which Ext^1 component enters Hom(X, Y): ext(X_k, Y_{k+1}) follows the
// product formula over Ext^{l-k}(X_k, Y_l); the other switch position pairs
// X_k with Y_{k-1}.
enum class GradingConvention { ext_to_next, ext_to_previous };

int derived_hom_dim(const FiniteBackend& b, const DerivedObj& x, const DerivedObj& y,
                    GradingConvention conv = GradingConvention::ext_to_next);

// Nondecreasing sequence of subcategories, explicit on [lo, hi] and constant
// on either side.
template <class S>
struct BasicSubcatSeq {
  int lo = 0;
  int hi = -1;
  S below{};
  std::vector<S> entries;
  S above{};

  const S& at(int k) const {
    if (k < lo) return below;
    if (k > hi) return above;
    return entries[static_cast<std::size_t>(k - lo)];
  }
  // Same function on all of Z.
  bool same_as(const BasicSubcatSeq& o) const {
    if (below != o.below || above != o.above) return false;
    for (int k = std::min(lo, o.lo); k <= std::max(hi, o.hi); ++k)
      if (!(at(k) == o.at(k))) return false;
    return true;
  }
  friend bool operator==(const BasicSubcatSeq&, const BasicSubcatSeq&) = default;
};

using SubcatSeq = BasicSubcatSeq<IndecSet>;

SubcatSeq constant_seq(IndecSet s);
// 0 below 0, T in degree 0, everything above.
SubcatSeq aisle_from_torsion(const FiniteBackend& b, IndecSet t);
SubcatSeq standard_aisle(const FiniteBackend& b);
std::string describe(const FiniteBackend& b, const SubcatSeq& seq);

struct Violation {
  std::string condition;
  int degree = 0;
  std::string witness;
};

struct SeqReport {
  std::vector<Violation> violations;  // lowest degree first
  bool ok() const { return violations.empty(); }
};

// Monotonicity plus, per degree, extension closure, cokernels of maps from
// N(k+1) into N(k), and kernels of maps from N(k) into N(k-1). The window is
// re-checked two steps past each end so both tails are covered.
SeqReport check_narrow_sequence(const FiniteBackend& b, const SubcatSeq& seq);
bool is_narrow_sequence(const FiniteBackend& b, const SubcatSeq& seq);
// The same three conditions for a single degree k.
bool degree_condition_holds(const FiniteBackend& b, IndecSet next, IndecSet here, IndecSet prev);

bool theta_membership(const FiniteBackend& b, const SubcatSeq& seq, const DerivedObj& x);

using ObjectPredicate = std::function<bool(const DerivedObj&)>;

// Degreewise homology of the members of an object set, restricted to the
// given probe objects. Window [lo, hi]; tails are read off at lo-1 and hi+1,
// so probes should reach those degrees.
SubcatSeq mu(const FiniteBackend& b, const ObjectPredicate& member, const std::vector<DerivedObj>& probes, int lo,
             int hi);

// Objects with homology in degrees [lo, hi], at most `per_degree` summands in
// each degree and `total` summands overall.
std::vector<DerivedObj> window_objects(const FiniteBackend& b, int lo, int hi, int per_degree, int total);
// Stalks of single indecomposables (and zero) in degrees [lo, hi].
std::vector<DerivedObj> stalk_objects(const FiniteBackend& b, int lo, int hi);

class SearchBudgetExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct StarLimits {
  int extra_summands = -1;  // summands allowed in the image of each connecting map; -1 uses star_budget
  std::size_t max_states = 200000;
};

// Is there a triangle A -> X -> B -> A[1] with A in theta(u), B in theta(v)?
// The search is exact except that the images of the connecting maps
// H_k(B) -> H_{k-1}(A) are limited to `extra_summands` summands. Too many
// search states throws SearchBudgetExceeded.
bool star_membership(const FiniteBackend& b, const SubcatSeq& u, const SubcatSeq& v, const DerivedObj& x,
                     StarLimits limits = {});

inline constexpr int minus_infinity = std::numeric_limits<int>::min();
inline constexpr int plus_infinity = std::numeric_limits<int>::max();

// 0 below k, N(n) for k <= n <= l, wide closure of N(l) above l.
SubcatSeq restriction(const FiniteBackend& b, const SubcatSeq& u, int k, int l);

enum class Keep { above, below };
// Keep::above retains degrees >= n, Keep::below retains degrees < n.
DerivedObj truncate(const DerivedObj& x, int n, Keep keep);

// Violations of the narrow-sequence conditions for an abstract category
// presented by test objects and morphisms. Used by symbolic backends.
template <class S>
struct WitnessModel {
  struct Arrow {
    int source;
    int target;
    int kernel;
    int cokernel;
  };
  struct ShortExact {
    int sub;
    int middle;
    int quot;
  };
  int object_count = 0;
  std::function<bool(const S&, int)> contains;
  std::function<std::string(int)> name;
  std::vector<Arrow> arrows;
  std::vector<ShortExact> extensions;
};

// Kernel and cokernel roles swap and degrees reverse.
template <class S>
WitnessModel<S> opposite(const WitnessModel<S>& m) {
  WitnessModel<S> o = m;
  for (auto& a : o.arrows) {
    std::swap(a.source, a.target);
    std::swap(a.kernel, a.cokernel);
  }
  for (auto& e : o.extensions) std::swap(e.sub, e.quot);
  return o;
}

template <class S>
BasicSubcatSeq<S> reversed(const BasicSubcatSeq<S>& seq) {
  BasicSubcatSeq<S> r;
  r.lo = -seq.hi;
  r.hi = -seq.lo;
  r.below = seq.above;
  r.above = seq.below;
  r.entries.assign(seq.entries.rbegin(), seq.entries.rend());
  return r;
}

template <class S>
SeqReport check_with_witnesses(const WitnessModel<S>& m, const BasicSubcatSeq<S>& seq) {
  SeqReport rep;
  auto in = [&](int k, int obj) { return m.contains(seq.at(k), obj); };
  for (int k = seq.lo - 2; k <= seq.hi + 2; ++k) {
    for (int x = 0; x < m.object_count; ++x)
      if (in(k, x) && !in(k + 1, x)) {
        rep.violations.push_back({"monotone", k, m.name(x) + " in N(k) but not in N(k+1)"});
        break;
      }
    for (const auto& e : m.extensions)
      if (in(k, e.sub) && in(k, e.quot) && !in(k, e.middle)) {
        rep.violations.push_back({"extension-closed", k, "extension " + m.name(e.middle)});
        break;
      }
    for (const auto& a : m.arrows)
      if (in(k + 1, a.source) && in(k, a.target) && !in(k, a.cokernel)) {
        rep.violations.push_back({"cokernel", k, "cokernel " + m.name(a.cokernel)});
        break;
      }
    for (const auto& a : m.arrows)
      if (in(k, a.source) && in(k - 1, a.target) && !in(k, a.kernel)) {
        rep.violations.push_back({"kernel", k, "kernel " + m.name(a.kernel)});
        break;
      }
  }
  return rep;
}

}  // namespace tstruct
