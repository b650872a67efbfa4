#include "tstruct/dedekind.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace tstruct {

namespace {

bool is_prime(int p) {
  if (p < 2) return false;
  for (int d = 2; d * d <= p; ++d)
    if (p % d == 0) return false;
  return true;
}

std::vector<int> normalized(std::vector<int> ps) {
  std::sort(ps.begin(), ps.end());
  ps.erase(std::unique(ps.begin(), ps.end()), ps.end());
  return ps;
}

bool includes(const std::vector<int>& big, const std::vector<int>& small) {
  return std::includes(big.begin(), big.end(), small.begin(), small.end());
}

bool disjoint(const std::vector<int>& a, const std::vector<int>& b) {
  return std::none_of(a.begin(), a.end(), [&](int p) { return std::binary_search(b.begin(), b.end(), p); });
}

std::string list(const std::vector<int>& ps) {
  std::ostringstream os;
  os << "{";
  for (std::size_t i = 0; i < ps.size(); ++i) os << (i ? "," : "") << ps[i];
  os << "}";
  return os.str();
}

std::string bound_str(int n) {
  if (n == minus_infinity) return "-inf";
  if (n == plus_infinity) return "+inf";
  return std::to_string(n);
}

}  // namespace

PrimeSet::PrimeSet(std::vector<int> ps) : primes(normalized(std::move(ps))) {
  if (primes.empty()) throw std::invalid_argument("prime set is empty");
  if (primes.size() > 16) throw std::invalid_argument("at most 16 primes");
  for (int p : primes)
    if (!is_prime(p)) throw std::invalid_argument(std::to_string(p) + " is not prime");
}

bool PrimeSet::contains(int p) const { return std::binary_search(primes.begin(), primes.end(), p); }

std::vector<std::vector<int>> PrimeSet::subsets() const {
  std::vector<std::vector<int>> out;
  for (unsigned m = 0; m < (1u << primes.size()); ++m) {
    std::vector<int> s;
    for (std::size_t i = 0; i < primes.size(); ++i)
      if (m >> i & 1u) s.push_back(primes[i]);
    out.push_back(s);
  }
  return out;
}

FgGroup FgGroup::free(int r) {
  if (r < 0) throw std::invalid_argument("negative rank");
  FgGroup x;
  x.rank = r;
  return x;
}

FgGroup FgGroup::cyclic(int p, int e) {
  if (e <= 0) throw std::invalid_argument("exponent must be positive");
  FgGroup x;
  x.torsion[p] = {e};
  return x;
}

std::vector<int> FgGroup::support() const {
  std::vector<int> out;
  for (const auto& [p, parts] : torsion)
    if (!parts.empty()) out.push_back(p);
  return out;
}

FgGroup operator+(const FgGroup& a, const FgGroup& b) {
  FgGroup x = a;
  x.rank += b.rank;
  for (const auto& [p, parts] : b.torsion) {
    auto& mine = x.torsion[p];
    mine.insert(mine.end(), parts.begin(), parts.end());
    std::sort(mine.begin(), mine.end(), std::greater<>());
  }
  return x;
}

std::string describe(const FgGroup& x) {
  if (x.is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  if (x.rank > 0) {
    os << "Z";
    if (x.rank > 1) os << "^" << x.rank;
    first = false;
  }
  for (const auto& [p, parts] : x.torsion)
    for (int e : parts) {
      if (!first) os << " + ";
      first = false;
      os << "Z/" << p;
      if (e > 1) os << "^" << e;
    }
  return os.str();
}

DedSubcat DedSubcat::coprime(std::vector<int> ps) {
  ps = normalized(std::move(ps));
  if (ps.empty()) return everything();
  return {DedTag::coprime, ps};
}

DedSubcat DedSubcat::finite(std::vector<int> ps) {
  ps = normalized(std::move(ps));
  if (ps.empty()) return zero();
  return {DedTag::finite, ps};
}

std::string describe(const DedSubcat& c) {
  switch (c.tag) {
    case DedTag::zero:
      return "0";
    case DedTag::everything:
      return "mod Z";
    case DedTag::coprime:
      return "coprime" + list(c.primes);
    case DedTag::finite:
      return "finite" + list(c.primes);
  }
  return "?";
}

bool ded_membership(const PrimeSet& s, const FgGroup& x, const DedSubcat& c) {
  const auto supp = x.support();
  for (int p : supp)
    if (!s.contains(p)) throw std::invalid_argument("torsion at " + std::to_string(p) + " outside the prime set");
  switch (c.tag) {
    case DedTag::zero:
      return x.is_zero();
    case DedTag::everything:
      return true;
    case DedTag::coprime:
      return disjoint(supp, c.primes);
    case DedTag::finite:
      return x.is_finite() && includes(c.primes, supp);
  }
  return false;
}

bool ded_subset(const DedSubcat& a, const DedSubcat& b) {
  if (a.tag == DedTag::zero || b.tag == DedTag::everything) return true;
  switch (a.tag) {
    case DedTag::coprime:
      return b.tag == DedTag::coprime && includes(a.primes, b.primes);
    case DedTag::finite:
      return (b.tag == DedTag::finite && includes(b.primes, a.primes)) ||
             (b.tag == DedTag::coprime && disjoint(a.primes, b.primes));
    default:
      return false;
  }
}

std::vector<DedSubcat> ded_torsionfree_classes(const PrimeSet& s) {
  std::vector<DedSubcat> out;
  for (const auto& sub : s.subsets()) out.push_back(DedSubcat::coprime(sub));
  out.push_back(DedSubcat::zero());
  return out;
}

bool is_torsionfree_class(const DedSubcat& c) { return c.tag != DedTag::finite; }

std::string describe(const DedSeq& seq) {
  std::ostringstream os;
  os << "below " << describe(seq.below) << "; ";
  for (int k = seq.lo; k <= seq.hi; ++k) os << k << ": " << describe(seq.at(k)) << "; ";
  os << "above " << describe(seq.above);
  return os.str();
}

std::string describe(const CoNarrowForm& f) {
  return "mod Z below " + bound_str(f.n) + ", " + describe(f.cls) + " at " + bound_str(f.n) + ", 0 above";
}

DedClassification ded_classify_sequence(const DedSeq& seq) {
  const int first = seq.lo - 1;
  const int m = seq.hi - seq.lo + 3;
  std::vector<DedSubcat> v;
  for (int i = 0; i < m; ++i) v.push_back(seq.at(first + i));
  auto invalid = [](std::string reason, int k) {
    DedClassification c;
    c.reason = std::move(reason);
    c.degree = k;
    return c;
  };
  for (int i = 0; i < m; ++i)
    if (!is_torsionfree_class(v[i])) return invalid("not a torsion-free class", first + i);

  DedClassification out;
  int i = 0;
  while (i < m && v[i].tag == DedTag::everything) ++i;
  if (i == m) {
    out.form = CoNarrowForm{DedSubcat::everything(), plus_infinity};
    return out;
  }
  const int n = first + i;
  CoNarrowForm f;
  if (v[i].tag == DedTag::zero) {
    f = {DedSubcat::everything(), i == 0 ? minus_infinity : n - 1};
  } else {
    if (i == 0 || i == m - 1) return invalid("middle class repeats in a tail", first + i);
    f = {v[i], n};
    ++i;
  }
  for (; i < m; ++i)
    if (v[i].tag != DedTag::zero) return invalid("nonzero above the middle class", first + i);
  out.form = f;
  return out;
}

bool ded_is_aisle(const DedSeq& seq) { return ded_classify_sequence(seq).form.has_value(); }

DedSeq to_sequence(const CoNarrowForm& f, int lo, int hi) {
  if (hi < lo) throw std::invalid_argument("empty window");
  const bool infinite = f.n == minus_infinity || f.n == plus_infinity;
  if (!infinite) {
    if (!is_torsionfree_class(f.cls) || f.cls.tag == DedTag::zero)
      throw std::invalid_argument("middle class must be a nonzero torsion-free class");
    const int bottom = f.cls.tag == DedTag::everything ? lo - 1 : lo;
    if (f.n < bottom || f.n > hi) throw std::invalid_argument("degree " + std::to_string(f.n) + " outside the window");
  }
  auto value = [&](int k) {
    if (k < f.n) return DedSubcat::everything();
    if (k == f.n) return f.cls;
    return DedSubcat::zero();
  };
  DedSeq s;
  s.lo = lo;
  s.hi = hi;
  s.below = value(lo - 1);
  s.above = value(hi + 1);
  for (int k = lo; k <= hi; ++k) s.entries.push_back(value(k));
  return s;
}

std::vector<CoNarrowForm> enumerate_conarrow_forms(const PrimeSet& s, int lo, int hi) {
  if (hi < lo) throw std::invalid_argument("empty window");
  std::vector<CoNarrowForm> out{{DedSubcat::everything(), minus_infinity}};
  for (const auto& c : ded_torsionfree_classes(s)) {
    if (c.tag == DedTag::zero) continue;
    for (int n = c.tag == DedTag::everything ? lo - 1 : lo; n <= hi; ++n) out.push_back({c, n});
  }
  out.push_back({DedSubcat::everything(), plus_infinity});
  return out;
}

DedWitnesses ded_witness_model(const PrimeSet& s) {
  DedWitnesses w;
  std::map<FgGroup, int> id;
  auto add = [&](FgGroup x) {
    id[x] = static_cast<int>(w.objects.size());
    w.objects.push_back(std::move(x));
  };
  add(FgGroup{});
  add(FgGroup::free(1));
  for (int p : s.primes) {
    add(FgGroup::cyclic(p, 1));
    add(FgGroup::cyclic(p, 2));
  }
  auto& arrows = w.model.arrows;
  auto arrow = [&](const FgGroup& a, const FgGroup& b, const FgGroup& k, const FgGroup& c) {
    arrows.push_back({id.at(a), id.at(b), id.at(k), id.at(c)});
  };
  const FgGroup zero, z = FgGroup::free(1);
  for (const auto& x : w.objects) {
    arrow(x, x, zero, zero);
    for (const auto& y : w.objects) arrow(x, y, x, y);
  }
  for (int p : s.primes) {
    const FgGroup c1 = FgGroup::cyclic(p, 1), c2 = FgGroup::cyclic(p, 2);
    arrow(z, z, zero, c1);
    arrow(z, z, zero, c2);
    arrow(z, c1, z, zero);
    arrow(z, c2, z, zero);
    arrow(c1, c2, zero, c1);
    arrow(c2, c1, c1, zero);
    arrow(c2, c2, c1, c1);
    w.model.extensions.push_back({id.at(z), id.at(z), id.at(c1)});
    w.model.extensions.push_back({id.at(z), id.at(z), id.at(c2)});
    w.model.extensions.push_back({id.at(c1), id.at(c2), id.at(c1)});
  }
  w.model.object_count = static_cast<int>(w.objects.size());
  auto objects = w.objects;
  w.model.contains = [s, objects](const DedSubcat& c, int i) { return ded_membership(s, objects[i], c); };
  w.model.name = [objects](int i) { return describe(objects[i]); };
  return w;
}

}  // namespace tstruct
