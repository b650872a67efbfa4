#include "tstruct/derived.hpp"

#include <algorithm>
#include <optional>
#include <set>
#include <sstream>

namespace tstruct {

std::string describe(const FiniteBackend& b, const DerivedObj& x) {
  if (x.is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [k, a] : x.homology()) {
    if (!first) os << " + ";
    first = false;
    os << "(" << b.describe(a) << ")[" << k << "]";
  }
  return os.str();
}

int derived_hom_dim(const FiniteBackend& b, const DerivedObj& x, const DerivedObj& y, GradingConvention conv) {
  const int step = conv == GradingConvention::ext_to_next ? 1 : -1;
  int total = 0;
  for (const auto& [k, a] : x.homology()) {
    total += b.hom_dim(a, y.at(k));
    total += b.ext_dim(a, y.at(k + step));
  }
  return total;
}

SubcatSeq constant_seq(IndecSet s) {
  SubcatSeq q;
  q.lo = 0;
  q.hi = -1;
  q.below = s;
  q.above = s;
  return q;
}

SubcatSeq aisle_from_torsion(const FiniteBackend& b, IndecSet t) {
  if (!b.is_torsion_class(t)) throw std::invalid_argument("not a torsion class: " + b.describe(t));
  SubcatSeq q;
  q.lo = 0;
  q.hi = 0;
  q.entries = {t};
  q.above = b.everything();
  return q;
}

SubcatSeq standard_aisle(const FiniteBackend& b) { return aisle_from_torsion(b, b.everything()); }

std::string describe(const FiniteBackend& b, const SubcatSeq& seq) {
  std::ostringstream os;
  os << "below " << b.describe(seq.below) << "; ";
  for (int k = seq.lo; k <= seq.hi; ++k) os << k << ": " << b.describe(seq.at(k)) << "; ";
  os << "above " << b.describe(seq.above);
  return os.str();
}

namespace {

void degree_violations(const FiniteBackend& b, IndecSet next, IndecSet here, IndecSet prev, int k,
                       std::vector<Violation>& out) {
  if (!here.subset_of(next))
    out.push_back({"monotone", k, "N(k) has " + b.describe(here - next) + " outside N(k+1)"});
  if (!b.is_extension_closed(here))
    out.push_back({"extension-closed", k, "extensions add " + b.describe(b.extensions(here) - here)});
  const IndecSet cok = b.cokernels(next, here) - here;
  if (!cok.empty()) out.push_back({"cokernel", k, "cokernels of N(k+1) -> N(k) add " + b.describe(cok)});
  if (b.options().mutation != Mutation::skip_kernel_condition) {
    const IndecSet ker = b.kernels(here, prev) - here;
    if (!ker.empty()) out.push_back({"kernel", k, "kernels of N(k) -> N(k-1) add " + b.describe(ker)});
  }
}

}  // namespace

SeqReport check_narrow_sequence(const FiniteBackend& b, const SubcatSeq& seq) {
  SeqReport rep;
  for (int k = seq.lo - 2; k <= seq.hi + 2; ++k)
    degree_violations(b, seq.at(k + 1), seq.at(k), seq.at(k - 1), k, rep.violations);
  return rep;
}

bool is_narrow_sequence(const FiniteBackend& b, const SubcatSeq& seq) { return check_narrow_sequence(b, seq).ok(); }

bool degree_condition_holds(const FiniteBackend& b, IndecSet next, IndecSet here, IndecSet prev) {
  std::vector<Violation> v;
  degree_violations(b, next, here, prev, 0, v);
  // Monotonicity is not part of the single-degree condition.
  return std::all_of(v.begin(), v.end(), [](const Violation& x) { return x.condition == "monotone"; });
}

bool theta_membership(const FiniteBackend& b, const SubcatSeq& seq, const DerivedObj& x) {
  const int shift = b.options().mutation == Mutation::theta_off_by_one ? 1 : 0;
  for (const auto& [k, a] : x.homology())
    if (!a.support().subset_of(seq.at(k + shift))) return false;
  return true;
}

SubcatSeq mu(const FiniteBackend&, const ObjectPredicate& member, const std::vector<DerivedObj>& probes, int lo,
             int hi) {
  std::map<int, IndecSet> seen;
  for (const auto& x : probes) {
    if (!member(x)) continue;
    for (const auto& [k, a] : x.homology()) seen[k] |= a.support();
  }
  auto get = [&](int k) {
    auto it = seen.find(k);
    return it == seen.end() ? IndecSet{} : it->second;
  };
  SubcatSeq q;
  q.lo = lo;
  q.hi = hi;
  q.below = get(lo - 1);
  q.above = get(hi + 1);
  for (int k = lo; k <= hi; ++k) q.entries.push_back(get(k));
  return q;
}

std::vector<DerivedObj> window_objects(const FiniteBackend& b, int lo, int hi, int per_degree, int total) {
  const auto objs = objects_within(b.everything(), per_degree);
  std::vector<DerivedObj> out;
  DerivedObj cur;
  auto rec = [&](auto&& self, int k, int left) -> void {
    if (k > hi) {
      out.push_back(cur);
      return;
    }
    for (const Obj& a : objs) {
      if (a.summands() > left) break;
      cur.set(k, a);
      self(self, k + 1, left - a.summands());
    }
    cur.set(k, Obj{});
  };
  rec(rec, lo, total);
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<DerivedObj> stalk_objects(const FiniteBackend& b, int lo, int hi) {
  std::vector<DerivedObj> out{DerivedObj{}};
  for (int k = lo; k <= hi; ++k)
    for (IndecId i = 0; i < b.size(); ++i) out.push_back(DerivedObj::stalk(Obj{i}, k));
  return out;
}

// Degreewise search over the connecting maps d_k: B_k -> A_{k-1} of a triangle
// A -> X -> B -> A[1]. Homology gives 0 -> coker d_{k+1} -> X_k -> ker d_k -> 0,
// and by heredity every extension is realized by some triangle. Each d_k is
// split as B_k ->> I -> A_{k-1}, so only kernel, image and cokernel are chosen.
// Outside [min, max+1] the d_k are isomorphisms and cancel.
bool star_membership(const FiniteBackend& b, const SubcatSeq& u, const SubcatSeq& v, const DerivedObj& x,
                     StarLimits limits) {
  if (x.is_zero()) return true;
  const int extra = limits.extra_summands < 0 ? b.options().star_budget : limits.extra_summands;
  const int top = x.max_degree(), bottom = x.min_degree();
  const int n = b.size();
  std::vector<std::vector<int>> indec_dims(n);
  for (IndecId i = 0; i < n; ++i) indec_dims[i] = b.dimension_vector(i);
  // Objects whose dimension vector is bounded by that of `bound`.
  auto dominated = [&](const Obj& bound) {
    std::vector<int> room = b.dimension_vector(bound);
    std::vector<Obj> out;
    std::vector<IndecId> ids;
    auto rec = [&](auto&& self, IndecId from) -> void {
      out.push_back(Obj(ids));
      for (IndecId i = from; i < n; ++i) {
        bool fits = true;
        for (std::size_t v = 0; v < room.size() && fits; ++v) fits = indec_dims[i][v] <= room[v];
        if (!fits) continue;
        for (std::size_t v = 0; v < room.size(); ++v) room[v] -= indec_dims[i][v];
        ids.push_back(i);
        self(self, i);
        ids.pop_back();
        for (std::size_t v = 0; v < room.size(); ++v) room[v] += indec_dims[i][v];
      }
    };
    rec(rec, 0);
    return out;
  };
  auto has_middle_in = [&](const Obj& quot, const Obj& sub, IndecSet s) {
    const auto& mids = b.middle_terms(quot, sub);
    return std::any_of(mids.begin(), mids.end(), [&](const Obj& m) { return m.support().subset_of(s); });
  };

  // State entering degree k: coker d_{k+1}, a subobject of X_k.
  std::set<Obj> states{Obj{}};
  for (int k = top + 1; k >= bottom; --k) {
    const Obj& xk = x.at(k);
    const auto dx = b.dimension_vector(xk);
    const auto cokernels = dominated(x.at(k - 1));
    // The image is a quotient of B_k and a subobject of A_{k-1}.
    const IndecSet img_support =
        b.closure(v.at(k), rule_quotients) & b.closure(u.at(k - 1), rule_subobjects);
    const auto images = objects_within(img_support, extra);
    // Cokernels reachable from each image through some A_{k-1} in u, on demand.
    std::vector<std::optional<std::vector<Obj>>> reach_cache(images.size());
    auto reach = [&](std::size_t i) -> const std::vector<Obj>& {
      if (!reach_cache[i]) {
        reach_cache[i].emplace();
        for (const Obj& cok : cokernels)
          if (has_middle_in(cok, images[i], u.at(k - 1))) reach_cache[i]->push_back(cok);
      }
      return *reach_cache[i];
    };
    std::set<Obj> next;
    for (const Obj& ker : dominated(xk)) {
      std::vector<int> rest = dx;
      for (IndecId i : ker.ids())
        for (std::size_t v = 0; v < rest.size(); ++v) rest[v] -= indec_dims[i][v];
      bool any_image = false;
      std::vector<char> usable(images.size(), 0);
      for (const Obj& c : states) {
        if (b.dimension_vector(c) != rest) continue;
        const auto& mids = b.middle_terms(ker, c);
        if (std::find(mids.begin(), mids.end(), xk) == mids.end()) continue;
        if (!any_image) {
          for (std::size_t i = 0; i < images.size(); ++i)
            usable[i] = has_middle_in(images[i], ker, v.at(k)) && !reach(i).empty();
          any_image = true;
        }
        for (std::size_t i = 0; i < images.size(); ++i) {
          if (!usable[i]) continue;
          for (const Obj& cok : reach(i)) {
            next.insert(cok);
            if (next.size() > limits.max_states)
              throw SearchBudgetExceeded("triangle search exceeded " + std::to_string(limits.max_states) +
                                         " states at degree " + std::to_string(k));
          }
        }
        break;  // further states give the same images
      }
    }
    states = std::move(next);
    if (states.empty()) return false;
  }
  // Nothing may be left over below the support.
  return states.count(Obj{}) > 0;
}

SubcatSeq restriction(const FiniteBackend& b, const SubcatSeq& u, int k, int l) {
  if (k > l) throw std::invalid_argument("restriction needs k <= l");
  if (k == minus_infinity && l == plus_infinity) return u;
  SubcatSeq q;
  q.lo = k == minus_infinity ? u.lo : k;
  q.hi = l == plus_infinity ? u.hi : l;
  if (q.hi < q.lo) q.hi = q.lo;
  q.below = k == minus_infinity ? u.below : IndecSet{};
  q.above = l == plus_infinity ? u.above : b.wide_closure(u.at(l));
  for (int n = q.lo; n <= q.hi; ++n) q.entries.push_back(n > l ? q.above : u.at(n));
  return q;
}

DerivedObj truncate(const DerivedObj& x, int n, Keep keep) {
  DerivedObj out;
  for (const auto& [k, a] : x.homology())
    if ((keep == Keep::above) == (k >= n)) out.set(k, a);
  return out;
}

}  // namespace tstruct
