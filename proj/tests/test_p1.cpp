#include "doctest.h"

#include "tstruct/p1.hpp"

#include <algorithm>
#include <cmath>
#include <set>

using namespace tstruct;

namespace {

// Binary forms of degree m over GF(2), coefficients of x^m .. y^m.
std::vector<std::vector<int>> forms(int m) {
  std::vector<std::vector<int>> out;
  for (int bits = 0; bits < (1 << (m + 1)); ++bits) {
    std::vector<int> c(m + 1);
    for (int i = 0; i <= m; ++i) c[i] = bits >> i & 1;
    out.push_back(c);
  }
  return out;
}

int det_mod2(std::vector<std::vector<int>> a) {
  const int n = static_cast<int>(a.size());
  for (int c = 0, r = 0; c < n; ++c, ++r) {
    int p = r;
    while (p < n && a[p][c] == 0) ++p;
    if (p == n) return 0;
    std::swap(a[p], a[r]);
    for (int i = r + 1; i < n; ++i)
      if (a[i][c])
        for (int j = c; j < n; ++j) a[i][j] ^= a[r][j];
  }
  return 1;
}

// Sylvester resultant of two degree-m binary forms over GF(2).
int resultant(const std::vector<int>& f, const std::vector<int>& g) {
  const int m = static_cast<int>(f.size()) - 1;
  if (m == 0) return f[0] | g[0];
  std::vector<std::vector<int>> s(2 * m, std::vector<int>(2 * m, 0));
  for (int i = 0; i < m; ++i)
    for (int j = 0; j <= m; ++j) {
      s[i][i + j] = f[j];
      s[m + i][i + j] = g[j];
    }
  return det_mod2(s);
}

// O(d) is a quotient of O(n)^2 iff two sections of O(d - n) have no common zero.
bool line_generated_by(int d, int n) {
  const int m = d - n;
  if (m < 0) return false;
  for (const auto& f : forms(m))
    for (const auto& g : forms(m))
      if (resultant(f, g)) return true;
  return false;
}

// Torsion is always a quotient of O(n); only line summands matter.
bool gen_oracle(const SheafObj& x, int n) {
  return std::all_of(x.line_degrees.begin(), x.line_degrees.end(), [&](int d) { return line_generated_by(d, n); });
}

// Rank <= 2, degrees in [-r, r], torsion length <= 2.
std::vector<SheafObj> test_sheaves(int points, int r) {
  std::vector<SheafObj> lines{SheafObj{}};
  for (int a = -r; a <= r; ++a) {
    lines.push_back(SheafObj::line(a));
    for (int b = a; b <= r; ++b) lines.push_back(SheafObj::line(a) + SheafObj::line(b));
  }
  std::vector<SheafObj> tors{SheafObj{}};
  for (int p = 0; p < points; ++p) {
    tors.push_back(SheafObj::skyscraper(p));
    tors.push_back(SheafObj::skyscraper(p, 2));
    tors.push_back(SheafObj::skyscraper(p) + SheafObj::skyscraper(p));
    for (int q = p + 1; q < points; ++q) tors.push_back(SheafObj::skyscraper(p) + SheafObj::skyscraper(q));
  }
  std::vector<SheafObj> out;
  for (const auto& l : lines)
    for (const auto& t : tors) out.push_back(l + t);
  return out;
}

// Hom and Ext dimensions between line bundles and skyscrapers on the line.
std::pair<int, int> hom_ext(const SheafObj& x, const SheafObj& y) {
  if (x.rank() == 1 && y.rank() == 1) {
    const int a = x.line_degrees[0], b = y.line_degrees[0];
    return {std::max(0, b - a + 1), std::max(0, a - b - 1)};
  }
  if (x.rank() == 1) return {1, 0};
  if (y.rank() == 1) return {0, 1};
  return {1, 1};
}

P1Seq seq_of(int lo, P1Narrow below, std::vector<P1Narrow> entries, P1Narrow above) {
  P1Seq s;
  s.lo = lo;
  s.hi = lo + static_cast<int>(entries.size()) - 1;
  s.below = below;
  s.entries = std::move(entries);
  s.above = above;
  return s;
}

constexpr PointMask P = 1, Q = 2;

}  // namespace

TEST_CASE("sheaf basics") {
  const SheafObj x = SheafObj::line(3) + SheafObj::line(-1) + SheafObj::skyscraper(1, 2);
  CHECK(x.rank() == 2);
  CHECK(x.degree() == 4);
  CHECK(x.support() == Q);
  CHECK(x.line_degrees == std::vector<int>{-1, 3});
  CHECK(describe(x) == "O(-1) + O(3) + O/m^2(P1)");
  CHECK(describe(SheafObj{}) == "0");
  CHECK_THROWS(SheafObj::skyscraper(0, 0));
}

TEST_CASE("line quotient oracle agrees with the degree rule") {
  for (int n = -2; n <= 2; ++n)
    for (int d = n - 2; d <= n + 3; ++d) CHECK(line_generated_by(d, n) == (d >= n));
  for (const auto& x : test_sheaves(2, 2))
    for (int n = -2; n <= 2; ++n) CHECK(p1_membership(x, P1Narrow::gen(n)) == gen_oracle(x, n));
}

TEST_CASE("membership examples") {
  CHECK(p1_membership(SheafObj::line(3), P1Narrow::gen(2)));
  CHECK_FALSE(p1_membership(SheafObj::skyscraper(0), P1Narrow::tor(Q)));
  CHECK_FALSE(p1_membership(SheafObj::line(1) + SheafObj::skyscraper(0), P1Narrow::gen(2)));
  CHECK(p1_membership(SheafObj::skyscraper(0) + SheafObj::skyscraper(1, 2), P1Narrow::tor(P | Q)));
  CHECK(p1_membership(SheafObj::line(2) + SheafObj::line(2), P1Narrow::line(2)));
  CHECK_FALSE(p1_membership(SheafObj::line(2) + SheafObj::skyscraper(0), P1Narrow::line(2)));
  CHECK(p1_membership(SheafObj{}, P1Narrow::zero()));
  CHECK_FALSE(p1_membership(SheafObj::skyscraper(0), P1Narrow::zero()));
  CHECK(P1Narrow::tor(0) == P1Narrow::zero());
}

TEST_CASE("wide closure") {
  CHECK(p1_wide_closure(P1Narrow::gen(0)) == P1Narrow::all());
  CHECK(p1_wide_closure(P1Narrow::zero()) == P1Narrow::zero());
  CHECK(p1_wide_closure(P1Narrow::tor(P | Q)) == P1Narrow::tor(P | Q));
  CHECK(p1_wide_closure(P1Narrow::line(4)) == P1Narrow::line(4));
  // The closure is closed under kernels and cokernels of the test maps.
  const auto w = p1_witness_model(2, -1, 1);
  for (const auto& s : enumerate_p1_narrow(2, -1, 1)) {
    const auto c = p1_wide_closure(s);
    for (const auto& a : w.model.arrows)
      if (w.model.contains(c, a.source) && w.model.contains(c, a.target)) {
        CHECK(w.model.contains(c, a.kernel));
        CHECK(w.model.contains(c, a.cokernel));
      }
  }
}

TEST_CASE("narrow subcategory count") {
  CHECK(enumerate_p1_narrow(3, -2, 2).size() == 19);
  CHECK(enumerate_p1_narrow(1, 0, 0).size() == 5);
  CHECK_THROWS(enumerate_p1_narrow(0, 0, 0));
}

TEST_CASE("narrowness audit") {
  const int points = 3;
  for (const auto& s : enumerate_p1_narrow(points, -2, 2))
    for (int n = -4; n <= 4; ++n)
      for (int p = 0; p < points; ++p) {
        const SheafObj a = SheafObj::line(n), b = SheafObj::line(n + 1), c = SheafObj::skyscraper(p);
        INFO(describe(s), " at n=", n);
        if (p1_membership(a, s) && p1_membership(b, s)) CHECK(p1_membership(c, s));
        if (p1_membership(a, s) && p1_membership(c, s)) CHECK(p1_membership(b, s));
      }
}

TEST_CASE("inclusion agrees with membership on test sheaves") {
  const auto sheaves = test_sheaves(2, 3);
  const auto subs = enumerate_p1_narrow(2, -1, 1);
  for (const auto& a : subs)
    for (const auto& b : subs) {
      bool inside = true;
      for (const auto& x : sheaves)
        if (p1_membership(x, a) && !p1_membership(x, b)) inside = false;
      INFO(describe(a), " vs ", describe(b));
      CHECK(p1_subset(a, b) == inside);
    }
}

TEST_CASE("classify examples") {
  const auto z = P1Narrow::zero(), all = P1Narrow::all();
  auto c = classify_p1_sequence(seq_of(0, z, {P1Narrow::tor(P)}, all));
  REQUIRE(c.form);
  CHECK(c.form->form == P1Form::I);
  CHECK(c.form->l1 == 0);
  CHECK(c.form->l2 == 1);
  CHECK(c.form->steps == std::vector<std::pair<int, PointMask>>{{0, P}});
  CHECK(p1_is_aisle(*c.form));

  c = classify_p1_sequence(seq_of(0, z, {P1Narrow::line(2), P1Narrow::line(2), P1Narrow::gen(2)}, all));
  REQUIRE(c.form);
  CHECK(c.form->form == P1Form::II);
  CHECK(c.form->l1 == 0);
  CHECK(c.form->l2 == 2);
  CHECK(c.form->n == 2);

  c = classify_p1_sequence(seq_of(0, z, {P1Narrow::line(1), P1Narrow::line(2)}, P1Narrow::line(2)));
  CHECK_FALSE(c.form);
  CHECK(c.reason == "two distinct line levels");
  CHECK(c.degree == 1);

  c = classify_p1_sequence(seq_of(0, z, {P1Narrow::tor(P), P1Narrow::tor(P | Q)}, all));
  REQUIRE(c.form);
  CHECK(c.form->steps == std::vector<std::pair<int, PointMask>>{{0, P}, {1, P | Q}});
  CHECK_FALSE(p1_is_aisle(*c.form));

  c = classify_p1_sequence(seq_of(0, z, {z}, all));
  REQUIRE(c.form);
  CHECK(c.form->form == P1Form::IV);
  CHECK(c.form->l1 == 1);

  c = classify_p1_sequence(seq_of(0, all, {all}, all));
  REQUIRE(c.form);
  CHECK(c.form->l1 == minus_infinity);

  c = classify_p1_sequence(seq_of(0, z, {z}, z));
  REQUIRE(c.form);
  CHECK(c.form->l1 == plus_infinity);

  c = classify_p1_sequence(seq_of(0, z, {P1Narrow::gen(-1)}, all));
  REQUIRE(c.form);
  CHECK(c.form->form == P1Form::III);
  CHECK(c.form->n == -1);

  c = classify_p1_sequence(seq_of(0, z, {P1Narrow::line(0)}, all));
  CHECK_FALSE(c.form);
  c = classify_p1_sequence(seq_of(0, z, {P1Narrow::gen(0)}, P1Narrow::gen(0)));
  CHECK_FALSE(c.form);
  c = classify_p1_sequence(seq_of(0, z, {all}, P1Narrow::tor(P)));
  CHECK_FALSE(c.form);
}

TEST_CASE("aisle rule") {
  CHECK(p1_is_aisle({P1Form::IV, 0, 0, 0, {}}));
  CHECK(p1_is_aisle({P1Form::II, 0, 3, 1, {}}));
  CHECK(p1_is_aisle({P1Form::III, 2, 0, 1, {}}));
  CHECK(p1_is_aisle({P1Form::I, 0, 1, 0, {{0, P}}}));
  CHECK_FALSE(p1_is_aisle({P1Form::I, 0, 2, 0, {{0, P}, {1, P | Q}}}));
  CHECK_FALSE(p1_is_aisle({P1Form::I, 0, 2, 0, {{0, P}}}));
  CHECK_FALSE(p1_is_aisle({P1Form::I, minus_infinity, 1, 0, {{minus_infinity, P}}}));
  CHECK_FALSE(p1_is_aisle({P1Form::I, 0, plus_infinity, 0, {{0, P}}}));
}

TEST_CASE("euler form matches hom minus ext") {
  CHECK(euler_form({1, 0}, {1, 1}, 0) == 2);
  CHECK(euler_form({0, 1}, {1, 0}, 0) == -1);
  for (int r = 0; r <= 2; ++r)
    for (int d = -2; d <= 2; ++d) CHECK(euler_form({r, d}, {r, d}, 1) == 0);
  std::vector<SheafObj> xs{SheafObj::skyscraper(0)};
  for (int d = -3; d <= 3; ++d) xs.push_back(SheafObj::line(d));
  for (const auto& x : xs)
    for (const auto& y : xs) {
      const auto [h, e] = hom_ext(x, y);
      CHECK(euler_form({x.rank(), x.degree()}, {y.rank(), y.degree()}, 0) == h - e);
    }
  CHECK_THROWS(euler_form({1, 0}, {1, 0}, -1));
}

TEST_CASE("classifier agrees with the witness validator") {
  const int points = 2;
  const auto subs = enumerate_p1_narrow(points, -1, 1);
  const auto w = p1_witness_model(points, -1, 1);
  long long valid = 0;
  for (const auto& a : subs)
    for (const auto& b : subs)
      for (const auto& c : subs)
        for (const auto& d : subs) {
          const P1Seq s = seq_of(0, a, {b, c}, d);
          const auto cls = classify_p1_sequence(s);
          const bool ok = check_with_witnesses(w.model, s).ok();
          INFO(describe(s), " reason: ", cls.reason);
          CHECK(cls.form.has_value() == ok);
          if (cls.form) {
            ++valid;
            CHECK(to_sequence(*cls.form, 0, 1).same_as(s));
          }
        }
  CHECK(valid > 0);
}

TEST_CASE("forms round trip and are monotone") {
  for (int points = 1; points <= 2; ++points) {
    const auto forms = enumerate_p1_forms(points, -1, 1, -1, 1);
    const auto sheaves = test_sheaves(points, 2);
    std::set<std::string> seen;
    for (const auto& f : forms) {
      const P1Seq s = to_sequence(f, -1, 1);
      seen.insert(describe(s));
      const auto c = classify_p1_sequence(s);
      REQUIRE(c.form);
      CHECK(*c.form == f);
      for (int k = -2; k <= 2; ++k)
        for (const auto& x : sheaves)
          if (p1_membership(x, s.at(k))) CHECK(p1_membership(x, s.at(k + 1)));
    }
    CHECK(seen.size() == forms.size());
  }
}

TEST_CASE("form count matches the closed formula") {
  const int points = 2, lo = -1, hi = 1, levels = 3;
  const int w = hi - lo + 1;
  auto chains = [&](int len) {
    return static_cast<long long>(std::pow(len + 1, points) - std::pow(len, points));
  };
  // Type I over finite and infinite endpoints; position counts include a
  // block for each infinite tail.
  long long type1 = 0;
  for (int a = lo; a <= hi + 1; ++a)
    for (int b = a + 1; b <= hi + 1; ++b) type1 += chains(b - a);
  for (int b = lo; b <= hi + 1; ++b) type1 += chains(1 + b - lo);
  for (int a = lo; a <= hi + 1; ++a) type1 += chains(hi + 1 - a + 1);
  type1 += chains(w + 2);
  // Type II: starts in {-inf} and [lo, hi+1], ends in [lo, hi] and +inf.
  long long type2 = 0;
  for (int a = lo; a <= hi + 1; ++a)
    for (int b = a + 1; b <= hi; ++b) type2 += levels;
  type2 += w * levels;             // start at -inf, finite end
  type2 += (w + 2) * levels;       // +inf end
  const long long type3 = w * levels, type4 = w + 3;
  const auto forms = enumerate_p1_forms(points, -1, 1, lo, hi);
  CHECK(static_cast<long long>(forms.size()) == type1 + type2 + type3 + type4);
}

TEST_CASE("torsion followed by line bundles is never a valid sequence") {
  const auto w = p1_witness_model(2, -1, 1);
  for (PointMask p : {P, Q, P | Q})
    for (int n = -1; n <= 1; ++n)
      for (const auto& next : {P1Narrow::line(n), P1Narrow::gen(n)}) {
        const P1Seq s = seq_of(0, P1Narrow::zero(), {P1Narrow::tor(p), next}, P1Narrow::all());
        CHECK_FALSE(classify_p1_sequence(s).form);
        CHECK_FALSE(check_with_witnesses(w.model, s).ok());
        // Promoting the later degree to everything repairs it.
        const P1Seq fixed = seq_of(0, P1Narrow::zero(), {P1Narrow::tor(p), P1Narrow::all()}, P1Narrow::all());
        CHECK(classify_p1_sequence(fixed).form);
      }
}

TEST_CASE("forms outside the window are rejected") {
  CHECK_THROWS(to_sequence({P1Form::IV, 5, 0, 0, {}}, 0, 2));
  CHECK_THROWS(to_sequence({P1Form::III, 3, 0, 0, {}}, 0, 2));
  CHECK_NOTHROW(to_sequence({P1Form::IV, 3, 0, 0, {}}, 0, 2));
}
