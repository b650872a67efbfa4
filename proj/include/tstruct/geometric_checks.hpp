#pragma once

#include "tstruct/dedekind.hpp"
#include "tstruct/p1.hpp"
#include "tstruct/tstruct.hpp"

namespace tstruct {

struct P1VerifyOptions {
  int points = 3;
  int deg_lo = -2;  // line levels
  int deg_hi = 2;
  int lo = -1;  // sequence window
  int hi = 1;
  int jobs = 1;
};

CheckResult check_p1_narrow_list(const P1VerifyOptions& o);
CheckResult check_p1_narrowness_audit(const P1VerifyOptions& o);
CheckResult check_p1_wide_closure(const P1VerifyOptions& o);
// Every sequence on a two-degree window with tails, against the witness
// validator.
CheckResult check_p1_classifier(const P1VerifyOptions& o);
CheckResult check_p1_roundtrip(const P1VerifyOptions& o);
CheckResult check_p1_monotone(const P1VerifyOptions& o);
CheckResult check_p1_torsion_line(const P1VerifyOptions& o);
CheckResult check_p1_aisle_rule(const P1VerifyOptions& o);
std::vector<CheckResult> verify_p1_suite(const P1VerifyOptions& o);

struct DedVerifyOptions {
  std::vector<int> primes{2, 3};
  int lo = -1;
  int hi = 1;
  int jobs = 1;
};

CheckResult check_ded_class_count(const DedVerifyOptions& o);
CheckResult check_ded_order_reversal(const DedVerifyOptions& o);
CheckResult check_ded_contains_ring(const DedVerifyOptions& o);
CheckResult check_ded_classifier(const DedVerifyOptions& o);
CheckResult check_ded_roundtrip(const DedVerifyOptions& o);
CheckResult check_ded_finite_groups(const DedVerifyOptions& o);
std::vector<CheckResult> verify_dedekind_suite(const DedVerifyOptions& o);

}  // namespace tstruct
