#pragma once

#include <algorithm>
#include <bit>
#include <cstdint>
#include <initializer_list>
#include <string>
#include <vector>

namespace tstruct {

using IndecId = int;

// Additively closed full subcategory of a finite backend, stored as the set
// of indecomposables it contains (at most 64).
class IndecSet {
 public:
  constexpr IndecSet() = default;
  constexpr explicit IndecSet(std::uint64_t bits) : bits_(bits) {}
  IndecSet(std::initializer_list<IndecId> ids) {
    for (IndecId i : ids) insert(i);
  }
  static IndecSet from_ids(const std::vector<IndecId>& ids) {
    IndecSet s;
    for (IndecId i : ids) s.insert(i);
    return s;
  }
  static constexpr IndecSet all(int n) {
    return IndecSet(n >= 64 ? ~std::uint64_t{0} : ((std::uint64_t{1} << n) - 1));
  }

  constexpr std::uint64_t bits() const { return bits_; }
  constexpr bool contains(IndecId i) const { return (bits_ >> i) & 1u; }
  constexpr bool empty() const { return bits_ == 0; }
  int size() const { return std::popcount(bits_); }
  void insert(IndecId i) { bits_ |= std::uint64_t{1} << i; }
  void erase(IndecId i) { bits_ &= ~(std::uint64_t{1} << i); }
  constexpr bool subset_of(IndecSet o) const { return (bits_ & ~o.bits_) == 0; }

  std::vector<IndecId> ids() const {
    std::vector<IndecId> out;
    for (std::uint64_t b = bits_; b; b &= b - 1) out.push_back(std::countr_zero(b));
    return out;
  }

  friend constexpr IndecSet operator|(IndecSet a, IndecSet b) { return IndecSet(a.bits_ | b.bits_); }
  friend constexpr IndecSet operator&(IndecSet a, IndecSet b) { return IndecSet(a.bits_ & b.bits_); }
  friend constexpr IndecSet operator-(IndecSet a, IndecSet b) { return IndecSet(a.bits_ & ~b.bits_); }
  IndecSet& operator|=(IndecSet b) { bits_ |= b.bits_; return *this; }
  IndecSet& operator&=(IndecSet b) { bits_ &= b.bits_; return *this; }
  friend constexpr bool operator==(IndecSet a, IndecSet b) = default;
  friend constexpr auto operator<=>(IndecSet a, IndecSet b) { return a.bits_ <=> b.bits_; }

 private:
  std::uint64_t bits_ = 0;
};

// Finite direct sum of indecomposables, kept as a sorted multiset.
class Obj {
 public:
  Obj() = default;
  Obj(std::initializer_list<IndecId> ids) : ids_(ids) { std::sort(ids_.begin(), ids_.end()); }
  explicit Obj(std::vector<IndecId> ids) : ids_(std::move(ids)) { std::sort(ids_.begin(), ids_.end()); }
  static Obj from_counts(const std::vector<int>& counts) {
    std::vector<IndecId> ids;
    for (std::size_t i = 0; i < counts.size(); ++i)
      for (int c = 0; c < counts[i]; ++c) ids.push_back(static_cast<IndecId>(i));
    return Obj(std::move(ids));
  }

  const std::vector<IndecId>& ids() const { return ids_; }
  bool is_zero() const { return ids_.empty(); }
  int summands() const { return static_cast<int>(ids_.size()); }
  IndecSet support() const { return IndecSet::from_ids(ids_); }
  std::vector<int> counts(int n) const {
    std::vector<int> c(n, 0);
    for (IndecId i : ids_) ++c[i];
    return c;
  }

  friend Obj operator+(const Obj& a, const Obj& b) {
    std::vector<IndecId> ids;
    ids.reserve(a.ids_.size() + b.ids_.size());
    std::merge(a.ids_.begin(), a.ids_.end(), b.ids_.begin(), b.ids_.end(), std::back_inserter(ids));
    Obj o;
    o.ids_ = std::move(ids);
    return o;
  }
  friend bool operator==(const Obj&, const Obj&) = default;
  friend auto operator<=>(const Obj& a, const Obj& b) {
    if (a.ids_.size() != b.ids_.size()) return a.ids_.size() <=> b.ids_.size();
    return a.ids_ <=> b.ids_;
  }

 private:
  std::vector<IndecId> ids_;
};

// All objects with support in `s` and at most `max_summands` summands,
// ordered by summand count then lexicographically.
inline std::vector<Obj> objects_within(IndecSet s, int max_summands) {
  std::vector<Obj> out{Obj{}};
  const auto ids = s.ids();
  std::vector<IndecId> cur;
  auto rec = [&](auto&& self, std::size_t start, int left) -> void {
    for (std::size_t i = start; i < ids.size(); ++i) {
      cur.push_back(ids[i]);
      out.emplace_back(cur);
      if (left > 1) self(self, i, left - 1);
      cur.pop_back();
    }
  };
  if (max_summands > 0) rec(rec, 0, max_summands);
  std::stable_sort(out.begin(), out.end());
  return out;
}

}  // namespace tstruct
