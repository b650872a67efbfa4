#include "tstruct/quiver.hpp"

#include <Eigen/LU>

#include <cmath>
#include <map>
#include <set>
#include <shared_mutex>
#include <sstream>
#include <stdexcept>

namespace tstruct {

void validate(const QuiverSpec& spec) {
  if (spec.vertices < 0) throw std::invalid_argument("vertex count must be nonnegative");
  if (!is_supported_field(spec.field))
    throw std::invalid_argument("unsupported field order " + std::to_string(spec.field));
  if (static_cast<int>(spec.dim_bound.size()) != spec.vertices)
    throw std::invalid_argument("dim_bound must have one entry per vertex");
  for (int b : spec.dim_bound)
    if (b < 0) throw std::invalid_argument("dim_bound entries must be nonnegative");
  std::vector<int> indeg(spec.vertices, 0);
  std::vector<std::vector<int>> out(spec.vertices);
  for (auto [s, t] : spec.arrows) {
    if (s < 0 || t < 0 || s >= spec.vertices || t >= spec.vertices)
      throw std::invalid_argument("arrow endpoint out of range");
    out[s].push_back(t);
    ++indeg[t];
  }
  std::vector<int> stack;
  for (int v = 0; v < spec.vertices; ++v)
    if (indeg[v] == 0) stack.push_back(v);
  int seen = 0;
  while (!stack.empty()) {
    int v = stack.back();
    stack.pop_back();
    ++seen;
    for (int t : out[v])
      if (--indeg[t] == 0) stack.push_back(t);
  }
  if (seen != spec.vertices) throw std::invalid_argument("quiver has an oriented cycle");
}

bool is_dynkin(const QuiverSpec& spec) {
  // Sylvester's criterion on the symmetrized Tits form, with exact
  // fraction-free (Bareiss) elimination: every leading pivot must be > 0.
  const int n = spec.vertices;
  std::vector<std::vector<long long>> m(n, std::vector<long long>(n, 0));
  for (int v = 0; v < n; ++v) m[v][v] = 2;
  for (auto [s, t] : spec.arrows) {
    m[s][t] -= 1;
    m[t][s] -= 1;
  }
  long long prev = 1;
  for (int k = 0; k < n; ++k) {
    if (m[k][k] <= 0) return false;
    for (int i = k + 1; i < n; ++i)
      for (int j = k + 1; j < n; ++j) m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) / prev;
    prev = m[k][k];
  }
  return true;
}

int euler_form(const QuiverSpec& spec, const std::vector<int>& d, const std::vector<int>& e) {
  int out = 0;
  for (int v = 0; v < spec.vertices; ++v) out += d[v] * e[v];
  for (auto [s, t] : spec.arrows) out -= d[s] * e[t];
  return out;
}

namespace {

std::vector<std::vector<int>> positive_roots(const QuiverSpec& spec) {
  const int n = spec.vertices;
  std::set<std::vector<int>> seen;
  std::vector<std::vector<int>> queue;
  for (int v = 0; v < n; ++v) {
    std::vector<int> e(n, 0);
    e[v] = 1;
    seen.insert(e);
    queue.push_back(e);
  }
  for (std::size_t i = 0; i < queue.size(); ++i) {
    for (int v = 0; v < n; ++v) {
      std::vector<int> x = queue[i];
      int pair = 2 * x[v];
      for (auto [s, t] : spec.arrows) {
        if (s == v) pair -= x[t];
        if (t == v) pair -= x[s];
      }
      x[v] -= pair;
      if (x[v] < 0) continue;
      bool nonzero = false;
      for (int c : x) nonzero = nonzero || c > 0;
      if (nonzero && seen.insert(x).second) queue.push_back(x);
      if (queue.size() > 100000) throw std::runtime_error("root system does not terminate");
    }
  }
  return queue;
}

template <class F>
class QuiverBackend final : public FiniteBackend {
 public:
  QuiverBackend(QuiverSpec spec, BackendOptions opts, QuiverLimits limits)
      : FiniteBackend(opts), spec_(std::move(spec)), limits_(limits) {
    set_field_order(F::order);
    enumerate();
    finish_tables();
  }

  std::string name() const override { return spec_.name; }
  int size() const override { return static_cast<int>(indecs_.size()); }
  bool truncated() const override { return truncated_; }
  std::string label(IndecId i) const override { return labels_.at(i); }
  std::vector<int> dimension_vector(IndecId i) const override { return indecs_.at(i).dims; }
  int hom_dim(IndecId a, IndecId b) const override { return hom_[a][b]; }
  int ext_dim(IndecId a, IndecId b) const override { return ext_[a][b]; }

  int hom_basis_size(const Obj& source, const Obj& target) const override {
    return hom_dimension(spec_, rep_of(source), rep_of(target));
  }

  MorphismParts morphism_parts(const Morphism& f) const override {
    check_obj(f.source);
    check_obj(f.target);
    const Rep<F> m = rep_of(f.source), n = rep_of(f.target);
    const auto basis = hom_basis(spec_, m, n);
    if (f.coords.size() != basis.size())
      throw std::invalid_argument("malformed morphism handle: expected " + std::to_string(basis.size()) +
                                  " coordinates, got " + std::to_string(f.coords.size()));
    for (int c : f.coords)
      if (c < 0 || c >= F::order) throw std::invalid_argument("malformed morphism handle: coordinate out of range");
    return parts_of(m, n, combine(spec_, m, n, basis, f.coords));
  }

  const std::vector<MorphismParts>& all_morphism_parts(const Obj& source, const Obj& target) const override {
    const auto key = std::make_pair(source, target);
    {
      std::shared_lock lock(mutex_);
      auto it = parts_cache_.find(key);
      if (it != parts_cache_.end()) return it->second;
    }
    check_obj(source);
    check_obj(target);
    const Rep<F> m = rep_of(source), n = rep_of(target);
    const auto basis = hom_basis(spec_, m, n);
    std::set<MorphismParts> found;
    for_each_line(static_cast<int>(basis.size()), true, [&](const std::vector<int>& coords) {
      found.insert(parts_of(m, n, combine(spec_, m, n, basis, coords)));
      return false;
    });
    std::unique_lock lock(mutex_);
    return parts_cache_.emplace(key, std::vector<MorphismParts>(found.begin(), found.end())).first->second;
  }

  const std::vector<Obj>& middle_terms(const Obj& quot, const Obj& sub) const override {
    const auto key = std::make_pair(quot, sub);
    {
      std::shared_lock lock(mutex_);
      auto it = middle_cache_.find(key);
      if (it != middle_cache_.end()) return it->second;
    }
    check_obj(quot);
    check_obj(sub);
    const Rep<F> q = rep_of(quot), s = rep_of(sub);
    const Mat<F> sys = intertwiner_system(spec_, q, s);
    // Standard basis vectors completing the coboundaries represent Ext^1.
    Mat<F> aug(sys.rows(), sys.cols() + sys.rows());
    aug << sys, Mat<F>::Identity(sys.rows(), sys.rows());
    const auto ech = row_reduce<F>(aug);
    std::vector<int> classes;
    for (int p : ech.pivots)
      if (p >= sys.cols()) classes.push_back(p - static_cast<int>(sys.cols()));
    std::set<Obj> found;
    for_each_line(static_cast<int>(classes.size()), true, [&](const std::vector<int>& coords) {
      Mat<F> cocycle = Mat<F>::Zero(sys.rows(), 1);
      for (std::size_t j = 0; j < classes.size(); ++j) cocycle(classes[j], 0) = F::from_code(coords[j]);
      found.insert(decompose(extension_rep(q, s, cocycle)));
      return false;
    });
    std::unique_lock lock(mutex_);
    return middle_cache_.emplace(key, std::vector<Obj>(found.begin(), found.end())).first->second;
  }

  bool has_monomorphism(const Obj& source, const Obj& target) const override {
    const Rep<F> m = rep_of(source), n = rep_of(target);
    for (int v = 0; v < spec_.vertices; ++v)
      if (m.dims[v] > n.dims[v]) return false;
    const auto basis = hom_basis(spec_, m, n);
    return for_each_line(static_cast<int>(basis.size()), false, [&](const std::vector<int>& coords) {
      return is_injective(combine(spec_, m, n, basis, coords));
    });
  }

  bool every_mono_splits(IndecId indec, const Obj& target) const override {
    const Rep<F>& m = indecs_.at(indec);
    const Rep<F> n = rep_of(target);
    const auto fbasis = hom_basis(spec_, m, n);
    const auto gbasis = hom_basis(spec_, n, m);
    int total = 0;
    for (int v = 0; v < spec_.vertices; ++v) total += m.dims[v] * m.dims[v];
    bool all_split = true;
    for_each_line(static_cast<int>(fbasis.size()), false, [&](const std::vector<int>& coords) {
      const auto f = combine(spec_, m, n, fbasis, coords);
      if (!is_injective(f)) return false;
      Mat<F> lhs = Mat<F>::Zero(total, static_cast<Eigen::Index>(gbasis.size()));
      Mat<F> rhs = Mat<F>::Zero(total, 1);
      for (std::size_t j = 0; j < gbasis.size(); ++j) {
        const auto gf = compose(gbasis[j], f);
        int off = 0;
        for (int v = 0; v < spec_.vertices; ++v)
          for (Eigen::Index i = 0; i < gf[v].size(); ++i) lhs(off++, j) = gf[v].data()[i];
      }
      int off = 0;
      for (int v = 0; v < spec_.vertices; ++v) {
        const Mat<F> id = Mat<F>::Identity(m.dims[v], m.dims[v]);
        for (Eigen::Index i = 0; i < id.size(); ++i) rhs(off++, 0) = id.data()[i];
      }
      Mat<F> x;
      if (!solve<F>(lhs, rhs, x)) {
        all_split = false;
        return true;
      }
      return false;
    });
    return all_split;
  }

  std::pair<Obj, Obj> trace_split(const Obj& a, IndecSet t) const override {
    check_obj(a);
    const Rep<F> m = rep_of(a);
    std::vector<Mat<F>> span(spec_.vertices);
    for (int v = 0; v < spec_.vertices; ++v) span[v] = Mat<F>(m.dims[v], 0);
    for (IndecId i : t.ids()) {
      if (i >= size()) throw std::invalid_argument("indecomposable id out of range");
      for (const auto& phi : hom_basis(spec_, indecs_[i], m)) {
        for (int v = 0; v < spec_.vertices; ++v) {
          Mat<F> joined(m.dims[v], span[v].cols() + phi[v].cols());
          joined << span[v], phi[v];
          span[v] = column_basis<F>(joined);
        }
      }
    }
    std::vector<Mat<F>> proj;
    for (int v = 0; v < spec_.vertices; ++v) proj.push_back(left_nullspace<F>(span[v]));
    return {decompose(restrict_to(spec_, m, span)), decompose(quotient_by(spec_, m, proj))};
  }

  std::vector<std::array<IndecSet, 5>> five_term_patterns(int max_total_dim) const override {
    // Objects indexed by total dimension.
    std::vector<Obj> objs;
    for (const Obj& o : objects_within(everything(), std::max(max_total_dim, 0)))
      if (total_dim(o) <= max_total_dim) objs.push_back(o);
    std::vector<Rep<F>> reps;
    for (const Obj& o : objs) reps.push_back(rep_of(o));
    std::set<std::array<IndecSet, 5>> patterns;
    const int count = static_cast<int>(objs.size());
    std::vector<int> dims(count);
    for (int i = 0; i < count; ++i) dims[i] = total_dim(objs[i]);

    auto ranks = [](const RepMap<F>& f) {
      std::vector<int> r;
      for (const auto& m : f) r.push_back(rank<F>(m));
      return r;
    };
    auto composite_zero = [](const RepMap<F>& g, const RepMap<F>& f) {
      for (std::size_t v = 0; v < f.size(); ++v)
        if (!is_zero<F>(Mat<F>(g[v] * f[v]))) return false;
      return true;
    };

    for (int ib = 0; ib < count; ++ib)
      for (int ic = 0; ic < count; ++ic)
        for (int id = 0; id < count; ++id) {
          const int mid = dims[ib] + dims[ic] + dims[id];
          if (mid > max_total_dim) continue;
          for (int ia = 0; ia < count; ++ia) {
            if (mid + dims[ia] > max_total_dim) continue;
            for (int ie = 0; ie < count; ++ie) {
              if (mid + dims[ia] + dims[ie] > max_total_dim) continue;
              const std::array<IndecSet, 5> pat{objs[ia].support(), objs[ib].support(), objs[ic].support(),
                                                objs[id].support(), objs[ie].support()};
              if (patterns.count(pat)) continue;
              const Rep<F>&A = reps[ia], &B = reps[ib], &C = reps[ic], &D = reps[id], &E = reps[ie];
              const auto fb = hom_basis(spec_, A, B), gb = hom_basis(spec_, B, C), hb = hom_basis(spec_, C, D),
                         kb = hom_basis(spec_, D, E);
              bool found = false;
              for_each_line(static_cast<int>(gb.size()), true, [&](const std::vector<int>& gc) {
                const auto g = combine(spec_, B, C, gb, gc);
                const auto rg = ranks(g);
                return for_each_line(static_cast<int>(hb.size()), true, [&](const std::vector<int>& hc) {
                  const auto h = combine(spec_, C, D, hb, hc);
                  if (!composite_zero(h, g)) return false;
                  const auto rh = ranks(h);
                  for (int v = 0; v < spec_.vertices; ++v)
                    if (rg[v] + rh[v] != C.dims[v]) return false;
                  bool at_b = for_each_line(static_cast<int>(fb.size()), true, [&](const std::vector<int>& fc) {
                    const auto f = combine(spec_, A, B, fb, fc);
                    if (!composite_zero(g, f)) return false;
                    const auto rf = ranks(f);
                    for (int v = 0; v < spec_.vertices; ++v)
                      if (rf[v] + rg[v] != B.dims[v]) return false;
                    return true;
                  });
                  if (!at_b) return false;
                  bool at_d = for_each_line(static_cast<int>(kb.size()), true, [&](const std::vector<int>& kc) {
                    const auto k = combine(spec_, D, E, kb, kc);
                    if (!composite_zero(k, h)) return false;
                    const auto rk = ranks(k);
                    for (int v = 0; v < spec_.vertices; ++v)
                      if (rh[v] + rk[v] != D.dims[v]) return false;
                    return true;
                  });
                  found = at_d;
                  return found;
                });
              });
              if (found) patterns.insert(pat);
            }
          }
        }
    return {patterns.begin(), patterns.end()};
  }

  // --- helpers -------------------------------------------------------------
  const QuiverSpec& spec() const { return spec_; }

  Rep<F> rep_of(const Obj& o) const {
    std::vector<const Rep<F>*> parts;
    for (IndecId i : o.ids()) parts.push_back(&indecs_.at(i));
    return direct_sum(spec_, parts);
  }

  Obj decompose(const Rep<F>& m) const {
    bool zero = true;
    for (int d : m.dims) zero = zero && d == 0;
    if (zero) return {};
    const int n = size();
    std::vector<int> h(n);
    for (int i = 0; i < n; ++i) h[i] = hom_dimension(spec_, indecs_[i], m);
    if (hom_invertible_) {
      Eigen::VectorXd rhs(n);
      for (int i = 0; i < n; ++i) rhs(i) = h[i];
      const Eigen::VectorXd sol = hom_inverse_ * rhs;
      std::vector<int> mult(n);
      for (int i = 0; i < n; ++i) {
        const double r = std::round(sol(i));
        if (std::abs(sol(i) - r) > 1e-6 || r < 0) escape();
        mult[i] = static_cast<int>(r);
      }
      if (!consistent(mult, h, m.dims)) escape();
      return Obj::from_counts(mult);
    }
    // Hom vectors may not separate the table; search multisets explicitly.
    std::vector<int> mult(n, 0), best;
    int matches = 0;
    std::vector<int> left = m.dims;
    auto rec = [&](auto&& self, int i) -> void {
      if (matches > 1) return;
      if (i == n) {
        for (int d : left)
          if (d != 0) return;
        if (consistent(mult, h, m.dims)) {
          ++matches;
          best = mult;
        }
        return;
      }
      self(self, i + 1);
      const auto& d = indecs_[i].dims;
      int added = 0;
      while (true) {
        bool fits = true;
        for (int v = 0; v < spec_.vertices; ++v) fits = fits && d[v] <= left[v];
        bool nonzero = false;
        for (int v = 0; v < spec_.vertices; ++v) nonzero = nonzero || d[v] > 0;
        if (!fits || !nonzero) break;
        for (int v = 0; v < spec_.vertices; ++v) left[v] -= d[v];
        ++mult[i];
        ++added;
        self(self, i + 1);
      }
      for (int v = 0; v < spec_.vertices; ++v) left[v] += added * d[v];
      mult[i] -= added;
    };
    rec(rec, 0);
    if (matches != 1) escape();
    return Obj::from_counts(best);
  }

 private:
  [[noreturn]] static void escape() {
    throw std::runtime_error("representation escapes the indecomposable table; raise dim_bound");
  }

  bool consistent(const std::vector<int>& mult, const std::vector<int>& h, const std::vector<int>& dims) const {
    const int n = size();
    std::vector<int> d(spec_.vertices, 0);
    for (int j = 0; j < n; ++j)
      for (int v = 0; v < spec_.vertices; ++v) d[v] += mult[j] * indecs_[j].dims[v];
    if (d != dims) return false;
    for (int i = 0; i < n; ++i) {
      int s = 0;
      for (int j = 0; j < n; ++j) s += hom_[i][j] * mult[j];
      if (s != h[i]) return false;
    }
    return true;
  }

  void check_obj(const Obj& o) const {
    for (IndecId i : o.ids())
      if (i < 0 || i >= size()) throw std::invalid_argument("object refers to an unknown indecomposable");
  }

  // Visits coefficient vectors of length `len` over the field, in counter
  // order. With `projective`, only vectors whose first nonzero entry is 1
  // (plus the zero vector) are visited. Stops early when fn returns true;
  // returns whether it stopped early.
  template <class Fn>
  bool for_each_line(int len, bool include_zero, Fn&& fn) const {
    long long total = 1;
    for (int i = 0; i < len; ++i) {
      total *= F::order;
      if (total > limits_.max_hom_combinations)
        throw std::runtime_error("morphism enumeration budget exceeded (Hom space too large)");
    }
    std::vector<int> coords(len, 0);
    if (include_zero && fn(coords)) return true;
    for (long long code = 1; code < total; ++code) {
      long long c = code;
      int lead = -1;
      for (int i = 0; i < len; ++i) {
        coords[i] = static_cast<int>(c % F::order);
        c /= F::order;
        if (lead < 0 && coords[i] != 0) lead = i;
      }
      if (coords[lead] != 1) continue;
      if (fn(coords)) return true;
    }
    return false;
  }

  Rep<F> extension_rep(const Rep<F>& q, const Rep<F>& s, const Mat<F>& cocycle) const {
    std::vector<int> dims(spec_.vertices);
    for (int v = 0; v < spec_.vertices; ++v) dims[v] = s.dims[v] + q.dims[v];
    Rep<F> out = zero_rep<F>(spec_, dims);
    int r = 0;
    for (std::size_t a = 0; a < spec_.arrows.size(); ++a) {
      auto [src, tgt] = spec_.arrows[a];
      auto& m = out.maps[a];
      if (s.dims[tgt] && s.dims[src]) m.block(0, 0, s.dims[tgt], s.dims[src]) = s.maps[a];
      if (q.dims[tgt] && q.dims[src]) m.block(s.dims[tgt], s.dims[src], q.dims[tgt], q.dims[src]) = q.maps[a];
      for (int c = 0; c < q.dims[src]; ++c)
        for (int rr = 0; rr < s.dims[tgt]; ++rr) m(rr, s.dims[src] + c) = cocycle(r + c * s.dims[tgt] + rr, 0);
      r += q.dims[src] * s.dims[tgt];
    }
    return out;
  }

  MorphismParts parts_of(const Rep<F>& m, const Rep<F>& n, const RepMap<F>& f) const {
    return {decompose(kernel_rep(spec_, m, f)), decompose(image_rep(spec_, n, f)),
            decompose(cokernel_rep(spec_, n, f))};
  }

  bool has_nontrivial_idempotent(const Rep<F>& m) const {
    const auto basis = hom_basis(spec_, m, m);
    return for_each_line(static_cast<int>(basis.size()), false, [&](const std::vector<int>& coords) {
      // Scalar multiples of an idempotent are not idempotent unless the
      // scalar is 1, so lines suffice only for q = 2; scan all scalars.
      for (int s = 1; s < F::order; ++s) {
        const F c = F::from_code(s);
        RepMap<F> e = combine(spec_, m, m, basis, coords);
        for (auto& x : e) x *= c;
        bool zero = true, identity = true, idem = true;
        for (int v = 0; v < spec_.vertices && idem; ++v) {
          const Mat<F> sq = e[v] * e[v];
          idem = (sq == e[v]);
          zero = zero && is_zero<F>(e[v]);
          identity = identity && (e[v] == Mat<F>::Identity(m.dims[v], m.dims[v]));
        }
        if (idem && !zero && !identity) return true;
      }
      return false;
    });
  }

  bool isomorphic(const Rep<F>& m, const Rep<F>& n) const {
    if (m.dims != n.dims) return false;
    const auto basis = hom_basis(spec_, m, n);
    return for_each_line(static_cast<int>(basis.size()), false,
                         [&](const std::vector<int>& coords) { return is_iso(combine(spec_, m, n, basis, coords)); });
  }

  void enumerate() {
    validate(spec_);
    const int nv = spec_.vertices;
    // Dimension vectors bounded by dim_bound, graded lexicographic order.
    std::vector<std::vector<int>> dvs;
    std::vector<int> d(nv, 0);
    auto rec = [&](auto&& self, int v) -> void {
      if (v == nv) {
        dvs.push_back(d);
        return;
      }
      for (int x = 0; x <= spec_.dim_bound[v]; ++x) {
        d[v] = x;
        self(self, v + 1);
      }
      d[v] = 0;
    };
    rec(rec, 0);
    std::stable_sort(dvs.begin(), dvs.end(), [](const auto& a, const auto& b) {
      int sa = 0, sb = 0;
      for (int x : a) sa += x;
      for (int x : b) sb += x;
      if (sa != sb) return sa < sb;
      return a < b;
    });

    long long budget = 0;
    for (const auto& dv : dvs) {
      long long entries = 0;
      for (auto [s, t] : spec_.arrows) entries += static_cast<long long>(dv[s]) * dv[t];
      long long count = 1;
      for (long long i = 0; i < entries; ++i) {
        count *= F::order;
        if (count > limits_.max_candidates) break;
      }
      budget += count;
      if (budget > limits_.max_candidates)
        throw std::runtime_error("dim_bound too large for the configured enumeration budget (" +
                                 std::to_string(limits_.max_candidates) + " representations)");
    }

    int current_total = -1;
    std::size_t smaller = 0;  // accepted representatives of strictly smaller total dimension
    std::vector<std::vector<int>> fingerprints;
    for (const auto& dv : dvs) {
      int total = 0;
      for (int x : dv) total += x;
      if (total == 0) continue;
      if (total != current_total) {
        current_total = total;
        smaller = indecs_.size();
      }
      auto fingerprint = [&](const Rep<F>& m) {
        std::vector<int> fp;
        for (std::size_t j = 0; j < smaller; ++j) fp.push_back(hom_dimension(spec_, indecs_[j], m));
        return fp;
      };
      std::vector<std::pair<int, int>> shape;  // (rows, cols) per arrow
      long long entries = 0;
      for (auto [s, t] : spec_.arrows) {
        shape.emplace_back(dv[t], dv[s]);
        entries += static_cast<long long>(dv[s]) * dv[t];
      }
      std::vector<int> digits(entries, 0);
      while (true) {
        Rep<F> cand = zero_rep<F>(spec_, dv);
        int pos = 0;
        for (std::size_t a = 0; a < shape.size(); ++a)
          for (int c = 0; c < shape[a].second; ++c)
            for (int r = 0; r < shape[a].first; ++r) cand.maps[a](r, c) = F::from_code(digits[pos++]);
        const auto fp = fingerprint(cand);
        bool known = false;
        for (std::size_t j = smaller; j < indecs_.size() && !known; ++j)
          if (indecs_[j].dims == dv && fingerprints[j] == fp && isomorphic(cand, indecs_[j])) known = true;
        if (!known && !has_nontrivial_idempotent(cand)) {
          indecs_.push_back(cand);
          fingerprints.push_back(fp);
          // Earlier representatives of the same total dimension keep their
          // own fingerprints; store the new one padded consistently.
        }
        // Advance the base-q counter.
        int i = 0;
        while (i < entries && ++digits[i] == F::order) digits[i++] = 0;
        if (i == entries) break;
      }
    }
  }

  void finish_tables() {
    const int n = size();
    hom_.assign(n, std::vector<int>(n));
    ext_.assign(n, std::vector<int>(n));
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        hom_[i][j] = hom_dimension(spec_, indecs_[i], indecs_[j]);
        ext_[i][j] = ext_dimension(spec_, indecs_[i], indecs_[j]);
      }
    if (n > 0) {
      Eigen::MatrixXd h(n, n);
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) h(i, j) = hom_[i][j];
      Eigen::FullPivLU<Eigen::MatrixXd> lu(h);
      hom_invertible_ = lu.isInvertible();
      if (hom_invertible_) hom_inverse_ = lu.inverse();
    }
    std::map<std::vector<int>, int> seen;
    for (int i = 0; i < n; ++i) {
      std::ostringstream os;
      os << '[';
      for (int v = 0; v < spec_.vertices; ++v) os << (v ? "," : "") << indecs_[i].dims[v];
      os << ']';
      const int k = ++seen[indecs_[i].dims];
      if (k > 1) os << '#' << k;
      labels_.push_back(os.str());
    }
    truncated_ = !is_dynkin(spec_);
    if (!truncated_)
      for (const auto& root : positive_roots(spec_))
        for (int v = 0; v < spec_.vertices; ++v)
          if (root[v] > spec_.dim_bound[v]) truncated_ = true;
  }

  QuiverSpec spec_;
  QuiverLimits limits_;
  std::vector<Rep<F>> indecs_;
  std::vector<std::string> labels_;
  std::vector<std::vector<int>> hom_, ext_;
  bool hom_invertible_ = false;
  Eigen::MatrixXd hom_inverse_;
  bool truncated_ = false;

  mutable std::shared_mutex mutex_;
  mutable std::map<std::pair<Obj, Obj>, std::vector<MorphismParts>> parts_cache_;
  mutable std::map<std::pair<Obj, Obj>, std::vector<Obj>> middle_cache_;
};

}  // namespace

std::unique_ptr<FiniteBackend> build_quiver_backend(const QuiverSpec& spec, BackendOptions opts,
                                                    QuiverLimits limits) {
  validate(spec);
  return with_field(spec.field, [&](auto field) -> std::unique_ptr<FiniteBackend> {
    using F = decltype(field);
    return std::make_unique<QuiverBackend<F>>(spec, opts, limits);
  });
}

QuiverSpec linear_quiver(int n, int field, int bound) {
  QuiverSpec s;
  s.vertices = n;
  for (int i = 0; i + 1 < n; ++i) s.arrows.emplace_back(i, i + 1);
  s.field = field;
  s.dim_bound.assign(n, bound);
  s.name = "A" + std::to_string(n);
  return s;
}

QuiverSpec kronecker_quiver(int field, int bound) {
  QuiverSpec s;
  s.vertices = 2;
  s.arrows = {{0, 1}, {0, 1}};
  s.field = field;
  s.dim_bound = {bound, bound};
  s.name = "kronecker";
  return s;
}

}  // namespace tstruct
