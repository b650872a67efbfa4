#pragma once

#include "tstruct/derived.hpp"

#include <compare>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace tstruct {

// Coherent sheaves on the projective line over a finite set of abstract
// closed points 0..N-1. Point subsets are bitmasks.
using PointMask = std::uint32_t;

std::string describe_points(PointMask p);

struct SheafObj {
  std::vector<int> line_degrees;            // sorted
  std::map<int, std::vector<int>> torsion;  // point -> partition, parts descending

  static SheafObj line(int d);
  // O_P / m^length
  static SheafObj skyscraper(int point, int length = 1);

  int rank() const { return static_cast<int>(line_degrees.size()); }
  int degree() const;
  bool is_torsion() const { return line_degrees.empty(); }
  bool is_zero() const { return line_degrees.empty() && torsion.empty(); }
  PointMask support() const;

  friend SheafObj operator+(const SheafObj& a, const SheafObj& b);
  friend bool operator==(const SheafObj&, const SheafObj&) = default;
  friend auto operator<=>(const SheafObj&, const SheafObj&) = default;
};

std::string describe(const SheafObj& x);

enum class P1Tag { zero, tor, line, gen, all };

// Narrow subcategories: 0, torsion sheaves on a nonempty point set, add O(n),
// quotients of sums of O(n), everything.
struct P1Narrow {
  P1Tag tag = P1Tag::zero;
  PointMask points = 0;  // tor only
  int n = 0;             // line and gen only

  static P1Narrow zero() { return {}; }
  static P1Narrow tor(PointMask p);
  static P1Narrow line(int n) { return {P1Tag::line, 0, n}; }
  static P1Narrow gen(int n) { return {P1Tag::gen, 0, n}; }
  static P1Narrow all() { return {P1Tag::all, 0, 0}; }

  friend bool operator==(const P1Narrow&, const P1Narrow&) = default;
  friend auto operator<=>(const P1Narrow&, const P1Narrow&) = default;
};

std::string describe(const P1Narrow& s);

// Wide subcategories carry the same tags minus gen.
using P1Wide = P1Narrow;

bool p1_membership(const SheafObj& x, const P1Narrow& s);
P1Wide p1_wide_closure(const P1Narrow& s);
// Inclusion of subcategories, decided on tags.
bool p1_subset(const P1Narrow& a, const P1Narrow& b);

// Zero, every nonempty torsion support, line and gen for each level in
// [deg_lo, deg_hi], everything.
std::vector<P1Narrow> enumerate_p1_narrow(int points, int deg_lo, int deg_hi);

using P1Seq = BasicSubcatSeq<P1Narrow>;
std::string describe(const P1Seq& seq);

enum class P1Form { I, II, III, IV };
std::string to_string(P1Form f);

// Breakpoints may be minus_infinity / plus_infinity.
//   I:   0 below l1, torsion on steps[..] on [l1, l2), everything from l2
//   II:  0 below l1, add O(n) on [l1, l2), quotients of O(n) at l2, everything above
//   III: 0 below l1, quotients of O(n) at l1, everything above
//   IV:  0 below l1, everything from l1
struct P1SeqForm {
  P1Form form = P1Form::IV;
  int l1 = 0;
  int l2 = 0;
  int n = 0;
  // Type I: (first degree, support), degrees and supports strictly
  // increasing; the first degree is l1.
  std::vector<std::pair<int, PointMask>> steps;

  friend bool operator==(const P1SeqForm&, const P1SeqForm&) = default;
};

std::string describe(const P1SeqForm& f);

struct P1Classification {
  std::optional<P1SeqForm> form;
  std::string reason;  // set when invalid
  int degree = 0;
};

P1Classification classify_p1_sequence(const P1Seq& seq);
bool p1_is_aisle(const P1SeqForm& f);

// Explicit sequence on [lo, hi]. Throws std::invalid_argument when a finite
// breakpoint lies outside [lo, hi + 1].
P1Seq to_sequence(const P1SeqForm& f, int lo, int hi);

// Every form with finite breakpoints in [lo, hi + 1], line levels in
// [deg_lo, deg_hi], plus the infinite variants. Deterministic order.
std::vector<P1SeqForm> enumerate_p1_forms(int points, int deg_lo, int deg_hi, int lo, int hi);

// (rank, degree) pairs on a curve of genus g.
int euler_form(std::pair<int, int> x, std::pair<int, int> y, int genus);

// Test sheaves and the maps and extensions between them, for the generic
// witness validator.
struct P1Witnesses {
  std::vector<SheafObj> objects;
  WitnessModel<P1Narrow> model;
};
P1Witnesses p1_witness_model(int points, int deg_lo, int deg_hi);

}  // namespace tstruct
