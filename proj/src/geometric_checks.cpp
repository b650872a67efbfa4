#include "tstruct/geometric_checks.hpp"

#include "tstruct/parallel.hpp"

#include <algorithm>
#include <cstdlib>
#include <set>

namespace tstruct {

namespace {

bool finite_bound(int l) { return l != minus_infinity && l != plus_infinity; }

// Rank <= 2 with degrees in [lo, hi], torsion of length <= 2.
std::vector<SheafObj> test_sheaves(int points, int lo, int hi) {
  std::vector<SheafObj> lines{SheafObj{}};
  for (int a = lo; a <= hi; ++a) {
    lines.push_back(SheafObj::line(a));
    for (int b = a; b <= hi; ++b) lines.push_back(SheafObj::line(a) + SheafObj::line(b));
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

std::vector<FgGroup> test_groups(const PrimeSet& s) {
  std::vector<FgGroup> out{FgGroup{}, FgGroup::free(1)};
  for (int p : s.primes) {
    out.push_back(FgGroup::cyclic(p));
    out.push_back(FgGroup::cyclic(p, 2));
    out.push_back(FgGroup::free(1) + FgGroup::cyclic(p));
  }
  return out;
}

CheckResult merge_parts(std::string name, std::string anchor, const std::vector<CheckResult>& parts) {
  CheckResult r{std::move(name), std::move(anchor)};
  for (const auto& p : parts) {
    r.cases += p.cases;
    if (p.failures > 0 && r.failures == 0) r.first_witness = p.first_witness;
    r.failures += p.failures;
  }
  return r;
}

template <class S>
BasicSubcatSeq<S> two_degree_seq(int lo, const S& a, const S& b, const S& c, const S& d) {
  BasicSubcatSeq<S> s;
  s.lo = lo;
  s.hi = lo + 1;
  s.below = a;
  s.entries = {b, c};
  s.above = d;
  return s;
}

}  // namespace

CheckResult check_p1_narrow_list(const P1VerifyOptions& o) {
  CheckResult r{"narrow subcategories of the line are distinct", "p1-narrow-list"};
  const auto subs = enumerate_p1_narrow(o.points, o.deg_lo, o.deg_hi);
  const long long want = 1 + ((1LL << o.points) - 1) + 2LL * (o.deg_hi - o.deg_lo + 1) + 1;
  ++r.cases;
  if (static_cast<long long>(subs.size()) != want)
    r.fail(std::to_string(subs.size()) + " narrow subcategories, expected " + std::to_string(want));
  const auto sheaves = test_sheaves(o.points, o.deg_lo - 1, o.deg_hi + 1);
  std::set<std::vector<char>> seen;
  for (const auto& s : subs) {
    std::vector<char> v;
    for (const auto& x : sheaves) v.push_back(p1_membership(x, s));
    ++r.cases;
    if (!seen.insert(v).second) r.fail(describe(s) + " repeats an earlier subcategory");
  }
  return r;
}

CheckResult check_p1_narrowness_audit(const P1VerifyOptions& o) {
  CheckResult r{"closed under O(n) -> O(n+1) -> k(P)", "p1-narrowness-audit"};
  for (const auto& s : enumerate_p1_narrow(o.points, o.deg_lo, o.deg_hi))
    for (int n = o.deg_lo - 2; n <= o.deg_hi + 2; ++n)
      for (int p = 0; p < o.points; ++p) {
        const SheafObj a = SheafObj::line(n), b = SheafObj::line(n + 1), c = SheafObj::skyscraper(p);
        ++r.cases;
        const bool ina = p1_membership(a, s), inb = p1_membership(b, s), inc = p1_membership(c, s);
        if (ina && inb && !inc) r.fail(describe(s) + " misses the cokernel k(P" + std::to_string(p) + ")");
        if (ina && inc && !inb) r.fail(describe(s) + " misses the extension O(" + std::to_string(n + 1) + ")");
      }
  return r;
}

CheckResult check_p1_wide_closure(const P1VerifyOptions& o) {
  CheckResult r{"wide closure is closed under kernels and cokernels", "p1-wide-closure"};
  const auto w = p1_witness_model(o.points, o.deg_lo, o.deg_hi);
  for (const auto& s : enumerate_p1_narrow(o.points, o.deg_lo, o.deg_hi)) {
    const auto c = p1_wide_closure(s);
    ++r.cases;
    if (!p1_subset(s, c)) r.fail(describe(c) + " does not contain " + describe(s));
    for (const auto& a : w.model.arrows)
      if (w.model.contains(c, a.source) && w.model.contains(c, a.target) &&
          !(w.model.contains(c, a.kernel) && w.model.contains(c, a.cokernel))) {
        r.fail(describe(c) + " not wide at " + w.model.name(a.source) + " -> " + w.model.name(a.target));
        break;
      }
  }
  return r;
}

CheckResult check_p1_classifier(const P1VerifyOptions& o) {
  const auto subs = enumerate_p1_narrow(o.points, o.deg_lo, o.deg_hi);
  const auto w = p1_witness_model(o.points, o.deg_lo, o.deg_hi);
  auto parts = parallel_map(subs.size(), o.jobs, [&](std::size_t i) {
    CheckResult r;
    for (const auto& b : subs)
      for (const auto& c : subs)
        for (const auto& d : subs) {
          const P1Seq s = two_degree_seq(o.lo, subs[i], b, c, d);
          const auto cls = classify_p1_sequence(s);
          const bool valid = check_with_witnesses(w.model, s).ok();
          ++r.cases;
          if (cls.form.has_value() != valid)
            r.fail((valid ? "valid sequence not classified: " : "invalid sequence classified: ") + describe(s));
          else if (cls.form && !to_sequence(*cls.form, s.lo, s.hi).same_as(s))
            r.fail("form " + describe(*cls.form) + " does not rebuild " + describe(s));
        }
    return r;
  });
  return merge_parts("every valid sequence has exactly one form", "p1-sequence-forms", parts);
}

CheckResult check_p1_roundtrip(const P1VerifyOptions& o) {
  CheckResult r{"forms rebuild and classify back", "p1-form-roundtrip"};
  const auto w = p1_witness_model(o.points, o.deg_lo, o.deg_hi);
  std::set<std::string> seen;
  for (const auto& f : enumerate_p1_forms(o.points, o.deg_lo, o.deg_hi, o.lo, o.hi)) {
    const P1Seq s = to_sequence(f, o.lo, o.hi);
    ++r.cases;
    const auto c = classify_p1_sequence(s);
    if (!c.form || !(*c.form == f)) r.fail(describe(f) + " classifies as " + (c.form ? describe(*c.form) : c.reason));
    if (!check_with_witnesses(w.model, s).ok()) r.fail(describe(f) + " fails the witness validator");
    if (!seen.insert(describe(s)).second) r.fail(describe(f) + " repeats a sequence");
  }
  return r;
}

CheckResult check_p1_monotone(const P1VerifyOptions& o) {
  CheckResult r{"induced sequences grow under membership", "p1-monotone"};
  const int radius = std::max({std::abs(o.deg_lo), std::abs(o.deg_hi), 2});
  const auto sheaves = test_sheaves(o.points, -radius, radius);
  for (const auto& f : enumerate_p1_forms(o.points, o.deg_lo, o.deg_hi, o.lo, o.hi)) {
    const P1Seq s = to_sequence(f, o.lo, o.hi);
    ++r.cases;
    bool ok = true;
    for (int k = o.lo - 1; k <= o.hi + 1 && ok; ++k)
      for (const auto& x : sheaves)
        if (p1_membership(x, s.at(k)) && !p1_membership(x, s.at(k + 1))) {
          r.fail(describe(x) + " leaves " + describe(f) + " at k=" + std::to_string(k));
          ok = false;
          break;
        }
  }
  return r;
}

CheckResult check_p1_torsion_line(const P1VerifyOptions& o) {
  CheckResult r{"torsion then line bundles forces everything", "p1-torsion-line"};
  const auto w = p1_witness_model(o.points, o.deg_lo, o.deg_hi);
  for (PointMask p = 1; p < (PointMask{1} << o.points); ++p)
    for (int n = o.deg_lo; n <= o.deg_hi; ++n)
      for (const auto& next : {P1Narrow::line(n), P1Narrow::gen(n)}) {
        const P1Seq s = two_degree_seq(o.lo, P1Narrow::zero(), P1Narrow::tor(p), next, P1Narrow::all());
        ++r.cases;
        if (classify_p1_sequence(s).form) r.fail("classified " + describe(s));
        if (check_with_witnesses(w.model, s).ok()) r.fail("witness validator accepts " + describe(s));
      }
  return r;
}

CheckResult check_p1_aisle_rule(const P1VerifyOptions& o) {
  CheckResult r{"aisles reject torsion on more than one degree", "p1-aisle-condition"};
  long long rejected = 0, kept_torsion = 0;
  for (const auto& f : enumerate_p1_forms(o.points, o.deg_lo, o.deg_hi, o.lo, o.hi)) {
    ++r.cases;
    const bool one_step = finite_bound(f.l1) && finite_bound(f.l2) && f.l2 == f.l1 + 1;
    const bool want = f.form != P1Form::I || one_step;
    if (p1_is_aisle(f) != want) r.fail(describe(f) + (want ? " rejected" : " accepted"));
    if (f.form == P1Form::I) (one_step ? kept_torsion : rejected) += 1;
  }
  ++r.cases;
  if (o.hi > o.lo && (rejected == 0 || kept_torsion == 0)) r.fail("window exercises only one side of the rule");
  return r;
}

std::vector<CheckResult> verify_p1_suite(const P1VerifyOptions& o) {
  return {check_p1_narrow_list(o), check_p1_narrowness_audit(o), check_p1_wide_closure(o), check_p1_classifier(o),
          check_p1_roundtrip(o),   check_p1_monotone(o),          check_p1_torsion_line(o), check_p1_aisle_rule(o)};
}

CheckResult check_ded_class_count(const DedVerifyOptions& o) {
  CheckResult r{"torsion-free class count", "dedekind-class-census"};
  const PrimeSet s(o.primes);
  const auto cls = ded_torsionfree_classes(s);
  const auto groups = test_groups(s);
  ++r.cases;
  if (cls.size() != (std::size_t{1} << s.primes.size()) + 1)
    r.fail(std::to_string(cls.size()) + " classes for " + std::to_string(s.primes.size()) + " primes");
  std::set<std::vector<char>> seen;
  for (const auto& c : cls) {
    std::vector<char> v;
    for (const auto& x : groups) v.push_back(ded_membership(s, x, c));
    ++r.cases;
    if (!seen.insert(v).second) r.fail(describe(c) + " repeats an earlier class");
  }
  return r;
}

CheckResult check_ded_order_reversal(const DedVerifyOptions& o) {
  CheckResult r{"classes reverse inclusion of prime sets", "dedekind-order-reversal"};
  const PrimeSet s(o.primes);
  const auto groups = test_groups(s);
  const auto subs = s.subsets();
  for (const auto& p : subs)
    for (const auto& q : subs) {
      bool inside = true;
      for (const auto& x : groups)
        if (ded_membership(s, x, DedSubcat::coprime(q)) && !ded_membership(s, x, DedSubcat::coprime(p))) inside = false;
      const bool sub = std::includes(q.begin(), q.end(), p.begin(), p.end());
      ++r.cases;
      if (inside != sub)
        r.fail(describe(DedSubcat::coprime(q)) + (inside ? " inside " : " not inside ") + describe(DedSubcat::coprime(p)));
    }
  return r;
}

CheckResult check_ded_contains_ring(const DedVerifyOptions& o) {
  CheckResult r{"every nonzero class contains Z", "dedekind-contains-ring"};
  const PrimeSet s(o.primes);
  for (const auto& c : ded_torsionfree_classes(s)) {
    if (c.tag == DedTag::zero) continue;
    ++r.cases;
    if (!ded_membership(s, FgGroup::free(1), c)) r.fail(describe(c));
  }
  return r;
}

CheckResult check_ded_classifier(const DedVerifyOptions& o) {
  const PrimeSet s(o.primes);
  const auto cls = ded_torsionfree_classes(s);
  const auto op = opposite(ded_witness_model(s).model);
  auto parts = parallel_map(cls.size(), o.jobs, [&](std::size_t i) {
    CheckResult r;
    for (const auto& b : cls)
      for (const auto& c : cls)
        for (const auto& d : cls) {
          const DedSeq seq = two_degree_seq(o.lo, cls[i], b, c, d);
          const auto got = ded_classify_sequence(seq);
          const bool valid = check_with_witnesses(op, reversed(seq)).ok();
          ++r.cases;
          if (got.form.has_value() != valid)
            r.fail((valid ? "co-narrow sequence not classified: " : "classified but not co-narrow: ") + describe(seq));
        }
    return r;
  });
  return merge_parts("co-narrow sequences of torsion-free classes have the three-zone shape", "dedekind-conarrow-forms",
                     parts);
}

CheckResult check_ded_roundtrip(const DedVerifyOptions& o) {
  CheckResult r{"forms rebuild and classify back", "dedekind-form-roundtrip"};
  const PrimeSet s(o.primes);
  for (const auto& f : enumerate_conarrow_forms(s, o.lo, o.hi)) {
    ++r.cases;
    const auto c = ded_classify_sequence(to_sequence(f, o.lo, o.hi));
    if (!c.form || !(*c.form == f)) r.fail(describe(f) + " classifies as " + (c.form ? describe(*c.form) : c.reason));
  }
  return r;
}

CheckResult check_ded_finite_groups(const DedVerifyOptions& o) {
  CheckResult r{"finite groups pass the dual validator but give no aisle", "dedekind-finite-groups"};
  const PrimeSet s(o.primes);
  const auto op = opposite(ded_witness_model(s).model);
  DedSeq seq;
  seq.lo = o.lo;
  seq.hi = o.lo;
  seq.below = DedSubcat::everything();
  seq.entries = {DedSubcat::finite(s.primes)};
  seq.above = DedSubcat::finite(s.primes);
  ++r.cases;
  if (!check_with_witnesses(op, reversed(seq)).ok()) r.fail("dual validator rejects " + describe(seq));
  ++r.cases;
  if (ded_is_aisle(seq)) r.fail("accepted as an aisle: " + describe(seq));
  return r;
}

std::vector<CheckResult> verify_dedekind_suite(const DedVerifyOptions& o) {
  return {check_ded_class_count(o), check_ded_order_reversal(o), check_ded_contains_ring(o),
          check_ded_classifier(o),  check_ded_roundtrip(o),      check_ded_finite_groups(o)};
}

}  // namespace tstruct
