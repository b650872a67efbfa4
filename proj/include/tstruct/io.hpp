#pragma once

#include "tstruct/dedekind.hpp"
#include "tstruct/p1.hpp"
#include "tstruct/quiver.hpp"
#include "tstruct/tstruct.hpp"

#include "json.hpp"

#include <stdexcept>
#include <string>

namespace tstruct {

using json = nlohmann::json;

struct ParseError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

json read_json_file(const std::string& path);

// {"vertices": n, "arrows": [[s, t], ...], "field": q, "dim_bound": [...]}
QuiverSpec quiver_from_json(const json& j);
json to_json(const QuiverSpec& spec);

// Finite integers, or "-inf" / "+inf".
json bound_to_json(int l);
int bound_from_json(const json& j);

// Sorted id list.
json to_json(IndecSet s);
IndecSet indec_set_from_json(const json& j, int size);

// "0", "coh", {"tor": [points]}, {"line": n}, {"gen": n}
json to_json(const P1Narrow& s);
P1Narrow p1_narrow_from_json(const json& j, int points);
json to_json(const P1SeqForm& f);

// "0", "mod Z", {"coprime": [primes]}, {"finite": [primes]}
json to_json(const DedSubcat& c);
DedSubcat ded_subcat_from_json(const json& j, const PrimeSet& s);
json to_json(const CoNarrowForm& f);

json to_json(const RefinedTSeq& r);
json to_json(const CheckResult& c);

// {"lo": .., "hi": .., "below": .., "entries": [..], "above": ..}
template <class S, class Fn>
json seq_to_json(const BasicSubcatSeq<S>& seq, Fn&& entry) {
  json entries = json::array();
  for (const auto& e : seq.entries) entries.push_back(entry(e));
  return {{"lo", seq.lo}, {"hi", seq.hi}, {"below", entry(seq.below)}, {"entries", entries}, {"above", entry(seq.above)}};
}

template <class S, class Fn>
BasicSubcatSeq<S> seq_from_json(const json& j, Fn&& entry) {
  if (!j.is_object()) throw ParseError("sequence must be an object");
  for (const char* key : {"lo", "below", "entries", "above"})
    if (!j.contains(key)) throw ParseError(std::string("sequence is missing \"") + key + "\"");
  if (!j.at("entries").is_array()) throw ParseError("\"entries\" must be an array");
  BasicSubcatSeq<S> s;
  s.lo = j.at("lo").get<int>();
  for (const auto& e : j.at("entries")) s.entries.push_back(entry(e));
  s.hi = s.lo + static_cast<int>(s.entries.size()) - 1;
  if (j.contains("hi") && j.at("hi").get<int>() != s.hi) throw ParseError("\"hi\" does not match the entry count");
  s.below = entry(j.at("below"));
  s.above = entry(j.at("above"));
  return s;
}

}  // namespace tstruct
