#pragma once

#include "tstruct/backend.hpp"

#include <stdexcept>
#include <vector>

// Locates indecomposables by dimension vector.
inline tstruct::IndecId find_indec(const tstruct::FiniteBackend& b, const std::vector<int>& dims) {
  for (tstruct::IndecId i = 0; i < b.size(); ++i)
    if (b.dimension_vector(i) == dims) return i;
  throw std::logic_error("no indecomposable with the requested dimension vector");
}

// A2 = (1 -> 2): simples S1, S2 and the projective-injective P1.
struct A2 {
  explicit A2(const tstruct::FiniteBackend& b)
      : s1(find_indec(b, {1, 0})), s2(find_indec(b, {0, 1})), p1(find_indec(b, {1, 1})) {}
  tstruct::IndecId s1, s2, p1;
  tstruct::IndecSet set(std::initializer_list<tstruct::IndecId> ids) const { return tstruct::IndecSet(ids); }
};
