#pragma once

#include "tstruct/derived.hpp"

#include <compare>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace tstruct {

// Finitely generated abelian groups with torsion on a fixed finite set of
// primes. Prime subsets are sorted vectors.
struct PrimeSet {
  std::vector<int> primes;

  // Sorts and deduplicates; throws on non-primes or an empty list.
  explicit PrimeSet(std::vector<int> ps);
  bool contains(int p) const;
  // All subsets, in order of their bitmask over `primes`.
  std::vector<std::vector<int>> subsets() const;
};

struct FgGroup {
  int rank = 0;
  std::map<int, std::vector<int>> torsion;  // prime -> exponents, descending

  static FgGroup free(int r);
  // Z / p^e
  static FgGroup cyclic(int p, int e = 1);

  bool is_zero() const { return rank == 0 && torsion.empty(); }
  bool is_finite() const { return rank == 0; }
  std::vector<int> support() const;

  friend FgGroup operator+(const FgGroup& a, const FgGroup& b);
  friend bool operator==(const FgGroup&, const FgGroup&) = default;
  friend auto operator<=>(const FgGroup&, const FgGroup&) = default;
};

std::string describe(const FgGroup& x);

enum class DedTag {
  zero,
  everything,
  coprime,  // torsion prime to every listed prime; listed primes nonempty
  finite,   // finite groups supported on the listed primes; not torsion-free
};

struct DedSubcat {
  DedTag tag = DedTag::zero;
  std::vector<int> primes;

  static DedSubcat zero() { return {}; }
  static DedSubcat everything() { return {DedTag::everything, {}}; }
  // Empty list gives everything.
  static DedSubcat coprime(std::vector<int> ps);
  static DedSubcat finite(std::vector<int> ps);

  friend bool operator==(const DedSubcat&, const DedSubcat&) = default;
  friend auto operator<=>(const DedSubcat&, const DedSubcat&) = default;
};

std::string describe(const DedSubcat& c);

// Throws std::invalid_argument when x has torsion outside s.
bool ded_membership(const PrimeSet& s, const FgGroup& x, const DedSubcat& c);
bool ded_subset(const DedSubcat& a, const DedSubcat& b);

// Torsion-free classes: everything, coprime(P) for nonempty P, zero.
std::vector<DedSubcat> ded_torsionfree_classes(const PrimeSet& s);
bool is_torsionfree_class(const DedSubcat& c);

using DedSeq = BasicSubcatSeq<DedSubcat>;
std::string describe(const DedSeq& seq);

// Everything below n, the class at n, zero above. n may be infinite, in
// which case the class is ignored and set to everything.
struct CoNarrowForm {
  DedSubcat cls = DedSubcat::everything();
  int n = 0;
  friend bool operator==(const CoNarrowForm&, const CoNarrowForm&) = default;
};

std::string describe(const CoNarrowForm& f);

struct DedClassification {
  std::optional<CoNarrowForm> form;
  std::string reason;
  int degree = 0;
};

DedClassification ded_classify_sequence(const DedSeq& seq);
bool ded_is_aisle(const DedSeq& seq);

// Throws when n lies outside [lo, hi] ([lo - 1, hi] for everything) or the
// class is zero.
DedSeq to_sequence(const CoNarrowForm& f, int lo, int hi);
// Every form representable on [lo, hi], infinite ones included.
std::vector<CoNarrowForm> enumerate_conarrow_forms(const PrimeSet& s, int lo, int hi);

// Cyclic groups of order p and p^2, Z, and the maps and extensions between
// them. Co-narrow conditions are checked through opposite().
struct DedWitnesses {
  std::vector<FgGroup> objects;
  WitnessModel<DedSubcat> model;
};
DedWitnesses ded_witness_model(const PrimeSet& s);

}  // namespace tstruct
