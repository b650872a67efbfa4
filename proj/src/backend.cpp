#include "tstruct/backend.hpp"

#include <map>
#include <set>
#include <sstream>
#include <stdexcept>

namespace tstruct {

namespace {
const std::vector<std::pair<std::string, Mutation>>& mutation_table() {
  static const std::vector<std::pair<std::string, Mutation>> table = {
      {"none", Mutation::none},
      {"drop-extension-closure", Mutation::drop_extension_closure},
      {"skip-kernel-condition", Mutation::skip_kernel_condition},
      {"xi-skip-perp", Mutation::xi_skip_perp},
      {"psi-skip-quotients", Mutation::psi_skip_quotients},
      {"theta-off-by-one", Mutation::theta_off_by_one},
  };
  return table;
}
}  // namespace

Mutation parse_mutation(const std::string& name) {
  for (const auto& [n, m] : mutation_table())
    if (n == name) return m;
  throw std::invalid_argument("unknown mutation '" + name + "'");
}

std::string to_string(Mutation m) {
  for (const auto& [n, mm] : mutation_table())
    if (mm == m) return n;
  return "none";
}

const std::vector<std::string>& mutation_names() {
  static const std::vector<std::string> names = [] {
    std::vector<std::string> out;
    for (const auto& [n, m] : mutation_table())
      if (m != Mutation::none) out.push_back(n);
    return out;
  }();
  return names;
}

// One-step closure tables. For a source indecomposable a and a support mask
// S, coker[a][S] is the union of cokernel supports of maps a -> B over
// objects B with support inside S (summand-bounded); likewise for the other
// tables. Masks are closed downward by a subset-sum transform, so a query is
// a single lookup.
struct FiniteBackend::Tables {
  std::vector<std::vector<IndecSet>> coker;  // [source][target support]
  std::vector<std::vector<IndecSet>> ker;    // [target][source support]
  std::vector<std::vector<IndecSet>> ext;    // [quotient][sub support]
  std::vector<IndecSet> quot;                // [support]
  std::vector<IndecSet> sub;                 // [support]
};

FiniteBackend::FiniteBackend(BackendOptions opts) : opts_(opts) {}
FiniteBackend::~FiniteBackend() = default;

namespace {
void subset_transform(std::vector<IndecSet>& t, int n) {
  for (int i = 0; i < n; ++i)
    for (std::size_t m = 0; m < t.size(); ++m)
      if (m >> i & 1u) t[m] |= t[m ^ (std::size_t{1} << i)];
}
}  // namespace

const FiniteBackend::Tables& FiniteBackend::tables() const {
  std::call_once(tables_once_, [this] {
    const int n = size();
    if (n > 20) throw std::runtime_error("closure tables need at most 20 indecomposables");
    const std::size_t masks = std::size_t{1} << n;
    auto t = std::make_unique<Tables>();
    t->coker.assign(n, std::vector<IndecSet>(masks));
    t->ker.assign(n, std::vector<IndecSet>(masks));
    t->ext.assign(n, std::vector<IndecSet>(masks));
    const auto objs = objects_within(everything(), opts_.summand_bound);
    for (int a = 0; a < n; ++a) {
      const Obj single{a};
      for (const Obj& b : objs) {
        const auto mask = b.support().bits();
        for (const auto& p : all_morphism_parts(single, b)) t->coker[a][mask] |= p.cokernel.support();
        for (const auto& p : all_morphism_parts(b, single)) t->ker[a][mask] |= p.kernel.support();
        for (const Obj& m : middle_terms(single, b)) t->ext[a][mask] |= m.support();
      }
      subset_transform(t->coker[a], n);
      subset_transform(t->ker[a], n);
      subset_transform(t->ext[a], n);
    }
    t->quot.assign(masks, IndecSet{});
    t->sub.assign(masks, IndecSet{});
    for (std::size_t m = 0; m < masks; ++m)
      for (int a = 0; a < n; ++a) {
        t->quot[m] |= t->coker[a][m];
        t->sub[m] |= t->ker[a][m];
      }
    tables_ = std::move(t);
  });
  return *tables_;
}

const std::vector<std::vector<IndecSet>>& FiniteBackend::mono_targets() const {
  std::call_once(mono_once_, [this] {
    const int n = size();
    const auto objs = objects_within(everything(), opts_.copy_bound);
    std::vector<std::vector<IndecSet>> out(n);
    for (int w = 0; w < n; ++w) {
      std::vector<IndecSet> supports;
      for (const Obj& t : objs) {
        if (t.is_zero()) continue;
        const IndecSet s = t.support();
        bool dominated = false;
        for (IndecSet known : supports) dominated = dominated || known.subset_of(s);
        if (dominated) continue;
        if (has_monomorphism(Obj{w}, t)) {
          std::erase_if(supports, [&](IndecSet k) { return s.subset_of(k); });
          supports.push_back(s);
        }
      }
      std::sort(supports.begin(), supports.end());
      out[w] = std::move(supports);
    }
    mono_targets_ = std::move(out);
  });
  return mono_targets_;
}

int FiniteBackend::hom_dim(const Obj& a, const Obj& b) const {
  int s = 0;
  for (IndecId i : a.ids())
    for (IndecId j : b.ids()) s += hom_dim(i, j);
  return s;
}

int FiniteBackend::ext_dim(const Obj& a, const Obj& b) const {
  int s = 0;
  for (IndecId i : a.ids())
    for (IndecId j : b.ids()) s += ext_dim(i, j);
  return s;
}

std::vector<int> FiniteBackend::dimension_vector(const Obj& a) const {
  std::vector<int> out;
  if (size() > 0) out.assign(dimension_vector(IndecId{0}).size(), 0);
  for (IndecId i : a.ids()) {
    const auto d = dimension_vector(i);
    for (std::size_t v = 0; v < d.size(); ++v) out[v] += d[v];
  }
  return out;
}

int FiniteBackend::total_dim(const Obj& a) const {
  int s = 0;
  for (IndecId i : a.ids())
    for (int d : dimension_vector(i)) s += d;
  return s;
}

Morphism FiniteBackend::identity(const Obj& a) const {
  // Handles are coordinates in a computed basis, so the identity is not
  // addressable directly; return the first automorphism in counter order.
  Morphism f{a, a, std::vector<int>(hom_basis_size(a, a), 0)};
  const int q = field_order();
  const std::size_t len = f.coords.size();
  long long total = 1;
  for (std::size_t i = 0; i < len; ++i) total *= q;
  for (long long code = 0; code < total; ++code) {
    long long c = code;
    for (std::size_t i = 0; i < len; ++i) {
      f.coords[i] = static_cast<int>(c % q);
      c /= q;
    }
    const auto p = morphism_parts(f);
    if (p.kernel.is_zero() && p.cokernel.is_zero()) return f;
  }
  throw std::logic_error("no automorphism found");
}

Morphism FiniteBackend::zero_morphism(const Obj& a, const Obj& b) const {
  return Morphism{a, b, std::vector<int>(hom_basis_size(a, b), 0)};
}

std::string FiniteBackend::describe(const Obj& a) const {
  if (a.is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  for (IndecId i : a.ids()) {
    os << (first ? "" : "+") << label(i);
    first = false;
  }
  return os.str();
}

std::string FiniteBackend::describe(IndecSet s) const {
  std::ostringstream os;
  os << '{';
  bool first = true;
  for (IndecId i : s.ids()) {
    os << (first ? "" : ",") << label(i);
    first = false;
  }
  os << '}';
  return os.str();
}

IndecSet FiniteBackend::cokernels(IndecSet from, IndecSet to) const {
  const auto& t = tables();
  IndecSet out;
  for (IndecId a : from.ids()) out |= t.coker[a][to.bits()];
  return out;
}

IndecSet FiniteBackend::kernels(IndecSet from, IndecSet to) const {
  const auto& t = tables();
  IndecSet out;
  for (IndecId e : to.ids()) out |= t.ker[e][from.bits()];
  return out;
}

IndecSet FiniteBackend::images(IndecSet from, IndecSet to) const {
  IndecSet out;
  const auto sources = objects_within(from, opts_.summand_bound);
  const auto targets = objects_within(to, opts_.summand_bound);
  for (const Obj& a : sources)
    for (const Obj& b : targets)
      for (const auto& p : all_morphism_parts(a, b)) out |= p.image.support();
  return out;
}

IndecSet FiniteBackend::quotients(IndecSet s) const { return tables().quot[s.bits()]; }
IndecSet FiniteBackend::subobjects(IndecSet s) const { return tables().sub[s.bits()]; }

IndecSet FiniteBackend::extensions(IndecSet s) const {
  const auto& t = tables();
  IndecSet out;
  for (IndecId x : s.ids()) out |= t.ext[x][s.bits()];
  return out;
}

IndecSet FiniteBackend::closure(IndecSet seed, unsigned rules) const {
  IndecSet cur = seed;
  while (true) {
    IndecSet next = cur;
    if (rules & rule_cokernels) next |= cokernels(cur, cur);
    if (rules & rule_kernels) next |= kernels(cur, cur);
    if (rules & rule_quotients) next |= quotients(cur);
    if (rules & rule_subobjects) next |= subobjects(cur);
    if (rules & rule_extensions) next |= extensions(cur);
    if (rules & rule_images) next |= images(cur, cur);
    if (next == cur) return cur;
    cur = next;
  }
}

bool FiniteBackend::is_extension_closed(IndecSet s) const {
  if (opts_.mutation == Mutation::drop_extension_closure) return true;
  return extensions(s).subset_of(s);
}

bool FiniteBackend::is_narrow(IndecSet s) const {
  return is_extension_closed(s) && cokernels(s, s).subset_of(s);
}

bool FiniteBackend::is_wide(IndecSet s) const { return is_narrow(s) && kernels(s, s).subset_of(s); }

bool FiniteBackend::is_nullity(IndecSet s) const {
  return quotients(s).subset_of(s) && extensions(s).subset_of(s);
}

bool FiniteBackend::is_nullity_in(IndecSet s, IndecSet w) const {
  return (quotients(s) & w).subset_of(s) && extensions(s).subset_of(s);
}

SubcatFlags FiniteBackend::classify(IndecSet s) const {
  SubcatFlags f;
  f.narrow = is_narrow(s);
  f.wide = f.narrow && kernels(s, s).subset_of(s);
  f.nullity = is_nullity(s);
  f.torsion = f.nullity;
  return f;
}

bool FiniteBackend::is_tilting_in(IndecSet n, IndecSet w) const {
  if (!n.subset_of(w)) throw std::invalid_argument("tilting test needs N inside W");
  const auto& targets = mono_targets();
  for (IndecId x : w.ids()) {
    bool ok = false;
    for (IndecSet s : targets[x]) ok = ok || s.subset_of(n);
    if (!ok) return false;
  }
  return true;
}

IndecSet FiniteBackend::perp(IndecSet s, Side side, PerpDegrees degrees) const {
  IndecSet out;
  for (IndecId x = 0; x < size(); ++x) {
    bool ok = true;
    for (IndecId y : s.ids()) {
      const int h = side == Side::left ? hom_dim(x, y) : hom_dim(y, x);
      const int e = side == Side::left ? ext_dim(x, y) : ext_dim(y, x);
      if (h != 0 || (degrees == PerpDegrees::all && e != 0)) ok = false;
    }
    if (ok) out.insert(x);
  }
  return out;
}

std::pair<Obj, Obj> FiniteBackend::torsion_decompose(const Obj& a, IndecSet t) const {
  if (!is_torsion_class(t)) throw std::invalid_argument("not a torsion class: " + describe(t));
  return trace_split(a, t);
}

IndecSet FiniteBackend::ext_injectives(IndecSet c) const {
  if (!is_narrow(c)) throw std::invalid_argument("ext-injectives need a narrow subcategory");
  IndecSet out;
  for (IndecId i : c.ids()) {
    bool ok = true;
    for (IndecId x : c.ids()) ok = ok && ext_dim(x, i) == 0;
    if (ok) out.insert(i);
  }
  return out;
}

IndecSet FiniteBackend::split_injectives(IndecSet c) const {
  IndecSet out;
  const auto objs = objects_within(c, opts_.summand_bound);
  for (IndecId i : c.ids()) {
    bool ok = true;
    for (const Obj& m : objs) {
      if (!every_mono_splits(i, m)) {
        ok = false;
        break;
      }
    }
    if (ok) out.insert(i);
  }
  return out;
}

std::vector<IndecSet> FiniteBackend::enumerate_subcats(unsigned flags) const {
  const int n = size();
  if (n > 14) throw std::runtime_error("too many indecomposables to enumerate subcategories (limit 14)");
  std::vector<IndecSet> out;
  for (std::uint64_t m = 0; m < (std::uint64_t{1} << n); ++m) {
    const IndecSet s(m);
    if ((classify(s).mask() & flags) == flags) out.push_back(s);
  }
  return out;
}

}  // namespace tstruct
