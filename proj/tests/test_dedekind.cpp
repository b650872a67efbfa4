#include "doctest.h"

#include "tstruct/dedekind.hpp"

#include <algorithm>
#include <set>

using namespace tstruct;

namespace {

// Rank <= 2; per prime, torsion partitions with at most two parts, each <= 2.
std::vector<FgGroup> family(const PrimeSet& s) {
  const std::vector<std::vector<int>> parts{{}, {1}, {2}, {1, 1}, {2, 1}, {2, 2}};
  std::vector<FgGroup> out;
  for (int r = 0; r <= 2; ++r) out.push_back(FgGroup::free(r));
  for (int p : s.primes) {
    std::vector<FgGroup> next;
    for (const auto& x : out)
      for (const auto& part : parts) {
        FgGroup y = x;
        if (!part.empty()) y.torsion[p] = part;
        next.push_back(y);
      }
    out = next;
  }
  std::sort(out.begin(), out.end());
  return out;
}

bool partition_inside(const std::vector<int>& small, const std::vector<int>& big) {
  if (small.size() > big.size()) return false;
  for (std::size_t i = 0; i < small.size(); ++i)
    if (small[i] > big[i]) return false;
  return true;
}

// Subgroups of Z^r + T are Z^r' + T' with r' <= r and T' a subgroup type of T.
bool is_subgroup_type(const FgGroup& a, const FgGroup& b) {
  if (a.rank > b.rank) return false;
  for (const auto& [p, part] : a.torsion) {
    auto it = b.torsion.find(p);
    if (!partition_inside(part, it == b.torsion.end() ? std::vector<int>{} : it->second)) return false;
  }
  return true;
}

bool hom_nonzero(const FgGroup& x, const FgGroup& y) {
  if (x.rank > 0 && !y.is_zero()) return true;
  for (const auto& [p, part] : x.torsion)
    if (y.torsion.count(p)) return true;
  return false;
}

using Members = std::vector<char>;

// Closure under subgroups and the generating extensions inside the family.
Members close(const std::vector<FgGroup>& fam, const PrimeSet& s, Members in) {
  auto index = [&](const FgGroup& x) -> int {
    auto it = std::lower_bound(fam.begin(), fam.end(), x);
    return it != fam.end() && *it == x ? static_cast<int>(it - fam.begin()) : -1;
  };
  bool changed = true;
  auto put = [&](const FgGroup& x) {
    const int i = index(x);
    if (i >= 0 && !in[i]) {
      in[i] = 1;
      changed = true;
    }
  };
  put(FgGroup{});
  while (changed) {
    changed = false;
    for (std::size_t i = 0; i < fam.size(); ++i) {
      if (!in[i]) continue;
      for (std::size_t j = 0; j < fam.size(); ++j)
        if (is_subgroup_type(fam[j], fam[i])) put(fam[j]);
      for (std::size_t j = 0; j < fam.size(); ++j) {
        if (!in[j]) continue;
        put(fam[i] + fam[j]);
        // Z/p^a on Z/p^b inside Z/p^(a+b).
        for (int p : s.primes)
          if (fam[i] == FgGroup::cyclic(p, 1) && fam[j] == FgGroup::cyclic(p, 1)) put(FgGroup::cyclic(p, 2));
      }
    }
  }
  return in;
}

}  // namespace

TEST_CASE("prime sets") {
  CHECK(PrimeSet({3, 2, 3}).primes == std::vector<int>{2, 3});
  CHECK_THROWS(PrimeSet({4}));
  CHECK_THROWS(PrimeSet({}));
  CHECK(PrimeSet({2, 3}).subsets().size() == 4);
}

TEST_CASE("group basics") {
  const FgGroup x = FgGroup::free(1) + FgGroup::cyclic(3) + FgGroup::cyclic(2, 2);
  CHECK(describe(x) == "Z + Z/2^2 + Z/3");
  CHECK(x.support() == std::vector<int>{2, 3});
  CHECK(describe(FgGroup{}) == "0");
}

TEST_CASE("membership examples") {
  const PrimeSet s({2, 3});
  CHECK(ded_membership(s, FgGroup::free(1) + FgGroup::cyclic(3), DedSubcat::coprime({2})));
  CHECK_FALSE(ded_membership(s, FgGroup::cyclic(2), DedSubcat::coprime({2})));
  CHECK(ded_membership(s, FgGroup{}, DedSubcat::zero()));
  CHECK_FALSE(ded_membership(s, FgGroup::free(1), DedSubcat::zero()));
  CHECK(ded_membership(s, FgGroup::cyclic(2, 2), DedSubcat::finite({2})));
  CHECK_FALSE(ded_membership(s, FgGroup::free(1), DedSubcat::finite({2, 3})));
  CHECK_THROWS(ded_membership(s, FgGroup::cyclic(5), DedSubcat::everything()));
}

TEST_CASE("torsion-free classes") {
  const PrimeSet s({2, 3});
  const auto cls = ded_torsionfree_classes(s);
  CHECK(cls.size() == 5);
  CHECK(ded_torsionfree_classes(PrimeSet({2})).size() == 3);
  CHECK(ded_torsionfree_classes(PrimeSet({2, 3, 5})).size() == 9);
  // Larger prime sets give smaller classes.
  CHECK(ded_subset(DedSubcat::coprime({2, 3}), DedSubcat::coprime({2})));
  CHECK_FALSE(ded_subset(DedSubcat::coprime({2}), DedSubcat::coprime({2, 3})));
  for (const auto& c : cls)
    if (c.tag != DedTag::zero) CHECK(ded_membership(s, FgGroup::free(1), c));
}

TEST_CASE("inclusion agrees with membership") {
  const PrimeSet s({2, 3});
  const auto fam = family(s);
  std::vector<DedSubcat> all = ded_torsionfree_classes(s);
  for (const auto& ps : s.subsets())
    if (!ps.empty()) all.push_back(DedSubcat::finite(ps));
  for (const auto& a : all)
    for (const auto& b : all) {
      bool inside = true;
      for (const auto& x : fam)
        if (ded_membership(s, x, a) && !ded_membership(s, x, b)) inside = false;
      INFO(describe(a), " vs ", describe(b));
      CHECK(ded_subset(a, b) == inside);
    }
}

TEST_CASE("brute-force torsion-free classes") {
  for (const auto& primes : {std::vector<int>{2}, std::vector<int>{2, 3}}) {
    const PrimeSet s(primes);
    const auto fam = family(s);
    const std::size_t n = fam.size();
    // Every subgroup- and extension-closed set is the closure of its members,
    // so growing closures one generator at a time reaches them all.
    std::set<Members> closed{close(fam, s, Members(n, 0))};
    std::vector<Members> todo(closed.begin(), closed.end());
    while (!todo.empty()) {
      const Members c = todo.back();
      todo.pop_back();
      for (std::size_t i = 0; i < n; ++i) {
        if (c[i]) continue;
        Members d = c;
        d[i] = 1;
        d = close(fam, s, d);
        if (closed.insert(d).second) todo.push_back(d);
      }
    }
    // Finite groups on a nonempty prime set are closed too, but they are not
    // the torsion-free part of a torsion pair.
    CHECK(closed.size() == 2 * s.subsets().size());
    std::set<Members> perp_closed;
    for (const auto& c : closed) {
      Members left(n, 0), back(n, 0);
      for (std::size_t i = 0; i < n; ++i) {
        left[i] = 1;
        for (std::size_t j = 0; j < n; ++j)
          if (c[j] && hom_nonzero(fam[i], fam[j])) left[i] = 0;
      }
      for (std::size_t j = 0; j < n; ++j) {
        back[j] = 1;
        for (std::size_t i = 0; i < n; ++i)
          if (left[i] && hom_nonzero(fam[i], fam[j])) back[j] = 0;
      }
      if (back == c) perp_closed.insert(c);
    }
    std::set<Members> expected;
    for (const auto& cls : ded_torsionfree_classes(s)) {
      Members m(n, 0);
      for (std::size_t i = 0; i < n; ++i) m[i] = ded_membership(s, fam[i], cls);
      expected.insert(m);
    }
    CHECK(expected.size() == ded_torsionfree_classes(s).size());
    CHECK(perp_closed == expected);
    Members finite2(n, 0);
    for (std::size_t i = 0; i < n; ++i) finite2[i] = ded_membership(s, fam[i], DedSubcat::finite({2}));
    CHECK(closed.count(finite2) == 1);
    CHECK(perp_closed.count(finite2) == 0);
  }
}

TEST_CASE("classify examples") {
  const auto all = DedSubcat::everything(), z = DedSubcat::zero();
  DedSeq s;
  s.lo = 0;
  s.hi = 0;
  s.below = all;
  s.entries = {DedSubcat::coprime({2})};
  s.above = z;
  auto c = ded_classify_sequence(s);
  REQUIRE(c.form);
  CHECK(c.form->cls == DedSubcat::coprime({2}));
  CHECK(c.form->n == 0);
  CHECK(ded_is_aisle(s));

  s.entries = {all};
  s.above = all;
  c = ded_classify_sequence(s);
  REQUIRE(c.form);
  CHECK(c.form->n == plus_infinity);

  s.entries = {z};
  c = ded_classify_sequence(s);
  CHECK_FALSE(c.form);
  CHECK(c.reason == "nonzero above the middle class");

  s.entries = {all};
  s.above = z;
  c = ded_classify_sequence(s);
  REQUIRE(c.form);
  CHECK(c.form->cls == all);
  CHECK(c.form->n == 0);

  s.below = z;
  s.entries = {z};
  c = ded_classify_sequence(s);
  REQUIRE(c.form);
  CHECK(c.form->n == minus_infinity);

  s.below = all;
  s.entries = {DedSubcat::coprime({2, 3})};
  s.above = DedSubcat::coprime({2, 3});
  CHECK_FALSE(ded_is_aisle(s));
}

TEST_CASE("finite groups pass the co-narrow validator but give no aisle") {
  const PrimeSet s({2, 3});
  const auto w = ded_witness_model(s);
  DedSeq seq;
  seq.lo = 0;
  seq.hi = 1;
  seq.below = DedSubcat::everything();
  seq.entries = {DedSubcat::finite({2, 3}), DedSubcat::finite({2, 3})};
  seq.above = DedSubcat::finite({2, 3});
  CHECK(check_with_witnesses(opposite(w.model), reversed(seq)).ok());
  const auto c = ded_classify_sequence(seq);
  CHECK_FALSE(c.form);
  CHECK(c.reason == "not a torsion-free class");
  CHECK_FALSE(ded_is_aisle(seq));
}

TEST_CASE("classifier agrees with the co-narrow validator on torsion-free classes") {
  const PrimeSet s({2, 3});
  const auto cls = ded_torsionfree_classes(s);
  const auto w = ded_witness_model(s);
  const auto op = opposite(w.model);
  long long valid = 0;
  for (const auto& a : cls)
    for (const auto& b : cls)
      for (const auto& c : cls)
        for (const auto& d : cls) {
          DedSeq seq;
          seq.lo = 0;
          seq.hi = 1;
          seq.below = a;
          seq.entries = {b, c};
          seq.above = d;
          const auto r = ded_classify_sequence(seq);
          INFO(describe(seq));
          CHECK(r.form.has_value() == check_with_witnesses(op, reversed(seq)).ok());
          if (r.form) {
            ++valid;
            CHECK(to_sequence(*r.form, 0, 1).same_as(seq));
          }
        }
  CHECK(valid == static_cast<long long>(enumerate_conarrow_forms(s, 0, 1).size()));
}

TEST_CASE("forms round trip") {
  const PrimeSet s({2});
  const auto forms = enumerate_conarrow_forms(s, 0, 0);
  CHECK(forms.size() == 5);
  for (const auto& f : enumerate_conarrow_forms(PrimeSet({2, 3}), -1, 2)) {
    const auto c = ded_classify_sequence(to_sequence(f, -1, 2));
    REQUIRE(c.form);
    CHECK(*c.form == f);
  }
  CHECK_THROWS(to_sequence({DedSubcat::zero(), 0}, 0, 1));
  CHECK_THROWS(to_sequence({DedSubcat::coprime({2}), 3}, 0, 1));
  CHECK_THROWS(to_sequence({DedSubcat::finite({2}), 0}, 0, 1));
}
