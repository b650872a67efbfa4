#pragma once

#include "tstruct/backend.hpp"
#include "tstruct/linalg.hpp"

#include <memory>
#include <string>
#include <utility>
#include <vector>

namespace tstruct {

struct QuiverSpec {
  int vertices = 0;
  std::vector<std::pair<int, int>> arrows;  // 0-based (source, target)
  int field = 2;
  std::vector<int> dim_bound;
  std::string name = "quiver";
};

// Throws std::invalid_argument on out-of-range arrows, cycles, bad field or
// bound size.
void validate(const QuiverSpec& spec);

// Positive definiteness of the symmetrized Tits form.
bool is_dynkin(const QuiverSpec& spec);

// Euler form sum_v d_v e_v - sum_{a: s->t} d_s e_t.
int euler_form(const QuiverSpec& spec, const std::vector<int>& d, const std::vector<int>& e);

struct QuiverLimits {
  long long max_candidates = 1LL << 22;  // representations scanned while enumerating
  long long max_hom_combinations = 1LL << 20;
};

// Quiver backend over GF(spec.field). Indecomposables are numbered in the
// order they are found (graded lexicographic on dimension vectors).
std::unique_ptr<FiniteBackend> build_quiver_backend(const QuiverSpec& spec, BackendOptions opts = {},
                                                    QuiverLimits limits = {});

// Common quivers used by tests and the CLI.
QuiverSpec linear_quiver(int n, int field = 2, int bound = 2);
QuiverSpec kronecker_quiver(int field = 2, int bound = 1);

// Representations over a concrete field, exposed for tests and oracles.
template <class F>
struct Rep {
  std::vector<int> dims;
  std::vector<Mat<F>> maps;  // maps[a] is dims[target] x dims[source]
};

// One matrix per vertex, dims(target)_v x dims(source)_v.
template <class F>
using RepMap = std::vector<Mat<F>>;

template <class F>
Rep<F> zero_rep(const QuiverSpec& spec, const std::vector<int>& dims) {
  Rep<F> r;
  r.dims = dims;
  for (auto [s, t] : spec.arrows) r.maps.push_back(Mat<F>::Zero(dims[t], dims[s]));
  return r;
}

// Linear map whose kernel is Hom(m, n): unknowns are the column-major
// entries of the vertex maps, equations one block per arrow.
template <class F>
Mat<F> intertwiner_system(const QuiverSpec& spec, const Rep<F>& m, const Rep<F>& n) {
  std::vector<int> offset(spec.vertices + 1, 0);
  for (int v = 0; v < spec.vertices; ++v) offset[v + 1] = offset[v] + m.dims[v] * n.dims[v];
  int rows = 0;
  for (auto [s, t] : spec.arrows) rows += m.dims[s] * n.dims[t];
  Mat<F> sys = Mat<F>::Zero(rows, offset.back());
  int r = 0;
  for (std::size_t a = 0; a < spec.arrows.size(); ++a) {
    auto [s, t] = spec.arrows[a];
    const int h = m.dims[s] * n.dims[t];
    if (h == 0) continue;
    if (m.dims[s] * n.dims[s] > 0)
      sys.block(r, offset[s], h, m.dims[s] * n.dims[s]) = kron<F>(Mat<F>::Identity(m.dims[s], m.dims[s]), n.maps[a]);
    if (m.dims[t] * n.dims[t] > 0)
      sys.block(r, offset[t], h, m.dims[t] * n.dims[t]) -=
          kron<F>(m.maps[a].transpose(), Mat<F>::Identity(n.dims[t], n.dims[t]));
    r += h;
  }
  return sys;
}

template <class F>
RepMap<F> unvec(const QuiverSpec& spec, const Rep<F>& m, const Rep<F>& n, const Mat<F>& col) {
  RepMap<F> out;
  int off = 0;
  for (int v = 0; v < spec.vertices; ++v) {
    Mat<F> phi(n.dims[v], m.dims[v]);
    for (int c = 0; c < m.dims[v]; ++c)
      for (int rr = 0; rr < n.dims[v]; ++rr) phi(rr, c) = col(off + c * n.dims[v] + rr, 0);
    off += m.dims[v] * n.dims[v];
    out.push_back(std::move(phi));
  }
  return out;
}

template <class F>
std::vector<RepMap<F>> hom_basis(const QuiverSpec& spec, const Rep<F>& m, const Rep<F>& n) {
  const Mat<F> ns = nullspace<F>(intertwiner_system(spec, m, n));
  std::vector<RepMap<F>> out;
  for (Eigen::Index j = 0; j < ns.cols(); ++j) out.push_back(unvec(spec, m, n, Mat<F>(ns.col(j))));
  return out;
}

template <class F>
int hom_dimension(const QuiverSpec& spec, const Rep<F>& m, const Rep<F>& n) {
  const Mat<F> sys = intertwiner_system(spec, m, n);
  return static_cast<int>(sys.cols()) - rank<F>(sys);
}

template <class F>
int ext_dimension(const QuiverSpec& spec, const Rep<F>& m, const Rep<F>& n) {
  const Mat<F> sys = intertwiner_system(spec, m, n);
  return static_cast<int>(sys.rows()) - rank<F>(sys);
}

// sum_j coords[j] * basis[j], coords given as field element codes.
template <class F>
RepMap<F> combine(const QuiverSpec& spec, const Rep<F>& m, const Rep<F>& n, const std::vector<RepMap<F>>& basis,
                  const std::vector<int>& coords) {
  RepMap<F> out;
  for (int v = 0; v < spec.vertices; ++v) out.push_back(Mat<F>::Zero(n.dims[v], m.dims[v]));
  for (std::size_t j = 0; j < basis.size(); ++j) {
    if (coords[j] == 0) continue;
    const F c = F::from_code(coords[j]);
    for (int v = 0; v < spec.vertices; ++v) out[v] += c * basis[j][v];
  }
  return out;
}

template <class F>
Rep<F> direct_sum(const QuiverSpec& spec, const std::vector<const Rep<F>*>& parts) {
  std::vector<int> dims(spec.vertices, 0);
  for (const auto* p : parts)
    for (int v = 0; v < spec.vertices; ++v) dims[v] += p->dims[v];
  Rep<F> out = zero_rep<F>(spec, dims);
  std::vector<int> off(spec.vertices, 0);
  for (const auto* p : parts) {
    for (std::size_t a = 0; a < spec.arrows.size(); ++a) {
      auto [s, t] = spec.arrows[a];
      if (p->dims[s] > 0 && p->dims[t] > 0) out.maps[a].block(off[t], off[s], p->dims[t], p->dims[s]) = p->maps[a];
    }
    for (int v = 0; v < spec.vertices; ++v) off[v] += p->dims[v];
  }
  return out;
}

template <class F>
bool is_injective(const RepMap<F>& f) {
  for (const auto& m : f)
    if (rank<F>(m) != m.cols()) return false;
  return true;
}

template <class F>
bool is_iso(const RepMap<F>& f) {
  for (const auto& m : f)
    if (m.rows() != m.cols() || rank<F>(m) != m.cols()) return false;
  return true;
}

template <class F>
RepMap<F> compose(const RepMap<F>& g, const RepMap<F>& f) {
  RepMap<F> out;
  for (std::size_t v = 0; v < f.size(); ++v) out.push_back(g[v] * f[v]);
  return out;
}

// Subrepresentation spanned by the given column bases (assumed stable under
// the arrows).
template <class F>
Rep<F> restrict_to(const QuiverSpec& spec, const Rep<F>& m, const std::vector<Mat<F>>& basis) {
  Rep<F> out;
  for (const auto& b : basis) out.dims.push_back(static_cast<int>(b.cols()));
  for (std::size_t a = 0; a < spec.arrows.size(); ++a) {
    auto [s, t] = spec.arrows[a];
    out.maps.push_back(left_inverse<F>(basis[t]) * m.maps[a] * basis[s]);
  }
  return out;
}

// Quotient by the subrepresentation whose left annihilators are given (rows
// of proj[v] span the functionals vanishing on the subspace).
template <class F>
Rep<F> quotient_by(const QuiverSpec& spec, const Rep<F>& m, const std::vector<Mat<F>>& proj) {
  Rep<F> out;
  for (const auto& p : proj) out.dims.push_back(static_cast<int>(p.rows()));
  for (std::size_t a = 0; a < spec.arrows.size(); ++a) {
    auto [s, t] = spec.arrows[a];
    out.maps.push_back(proj[t] * m.maps[a] * right_inverse<F>(proj[s]));
  }
  return out;
}

template <class F>
Rep<F> kernel_rep(const QuiverSpec& spec, const Rep<F>& m, const RepMap<F>& f) {
  std::vector<Mat<F>> basis;
  for (int v = 0; v < spec.vertices; ++v) basis.push_back(nullspace<F>(f[v]));
  return restrict_to(spec, m, basis);
}

template <class F>
Rep<F> image_rep(const QuiverSpec& spec, const Rep<F>& n, const RepMap<F>& f) {
  std::vector<Mat<F>> basis;
  for (int v = 0; v < spec.vertices; ++v) basis.push_back(column_basis<F>(f[v]));
  return restrict_to(spec, n, basis);
}

template <class F>
Rep<F> cokernel_rep(const QuiverSpec& spec, const Rep<F>& n, const RepMap<F>& f) {
  std::vector<Mat<F>> proj;
  for (int v = 0; v < spec.vertices; ++v) proj.push_back(left_nullspace<F>(f[v]));
  return quotient_by(spec, n, proj);
}

}  // namespace tstruct
