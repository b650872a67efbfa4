#include "tstruct/io.hpp"

#include <fstream>

namespace tstruct {

json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open " + path);
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw ParseError(path + ": " + e.what());
  }
}

QuiverSpec quiver_from_json(const json& j) {
  try {
    QuiverSpec spec;
    spec.vertices = j.at("vertices").get<int>();
    for (const auto& a : j.at("arrows")) {
      if (!a.is_array() || a.size() != 2) throw ParseError("arrows are [source, target] pairs");
      spec.arrows.emplace_back(a[0].get<int>(), a[1].get<int>());
    }
    spec.field = j.value("field", 2);
    spec.dim_bound = j.contains("dim_bound") ? j.at("dim_bound").get<std::vector<int>>()
                                             : std::vector<int>(static_cast<std::size_t>(std::max(spec.vertices, 0)), 2);
    spec.name = j.value("name", std::string("quiver"));
    validate(spec);
    return spec;
  } catch (const json::exception& e) {
    throw ParseError(std::string("quiver file: ") + e.what());
  } catch (const std::invalid_argument& e) {
    throw ParseError(std::string("quiver file: ") + e.what());
  }
}

json to_json(const QuiverSpec& spec) {
  json arrows = json::array();
  for (auto [s, t] : spec.arrows) arrows.push_back({s, t});
  return {{"vertices", spec.vertices}, {"arrows", arrows}, {"field", spec.field}, {"dim_bound", spec.dim_bound}};
}

json bound_to_json(int l) {
  if (l == minus_infinity) return "-inf";
  if (l == plus_infinity) return "+inf";
  return l;
}

int bound_from_json(const json& j) {
  if (j.is_number_integer()) return j.get<int>();
  if (j == "-inf") return minus_infinity;
  if (j == "+inf") return plus_infinity;
  throw ParseError("bound must be an integer, \"-inf\" or \"+inf\"");
}

json to_json(IndecSet s) { return s.ids(); }

IndecSet indec_set_from_json(const json& j, int size) {
  if (!j.is_array()) throw ParseError("subcategory must be a list of indecomposable ids");
  IndecSet s;
  for (const auto& v : j) {
    if (!v.is_number_integer()) throw ParseError("indecomposable ids are integers");
    const int i = v.get<int>();
    if (i < 0 || i >= size) throw ParseError("indecomposable id " + std::to_string(i) + " out of range");
    s.insert(i);
  }
  return s;
}

namespace {

std::vector<int> int_list(const json& j, const char* what) {
  if (!j.is_array()) throw ParseError(std::string(what) + " must be a list");
  std::vector<int> out;
  for (const auto& v : j) {
    if (!v.is_number_integer()) throw ParseError(std::string(what) + " must hold integers");
    out.push_back(v.get<int>());
  }
  return out;
}

// The single key of a one-entry object.
std::string only_key(const json& j) {
  if (!j.is_object() || j.size() != 1) throw ParseError("tag must be a string or a one-key object: " + j.dump());
  return j.begin().key();
}

}  // namespace

json to_json(const P1Narrow& s) {
  switch (s.tag) {
    case P1Tag::zero:
      return "0";
    case P1Tag::all:
      return "coh";
    case P1Tag::tor: {
      std::vector<int> pts;
      for (int p = 0; p < 32; ++p)
        if (s.points >> p & 1u) pts.push_back(p);
      return {{"tor", pts}};
    }
    case P1Tag::line:
      return {{"line", s.n}};
    case P1Tag::gen:
      return {{"gen", s.n}};
  }
  return nullptr;
}

P1Narrow p1_narrow_from_json(const json& j, int points) {
  if (j == "0") return P1Narrow::zero();
  if (j == "coh") return P1Narrow::all();
  const std::string key = only_key(j);
  const json& v = j.begin().value();
  if (key == "tor") {
    PointMask m = 0;
    for (int p : int_list(v, "tor")) {
      if (p < 0 || p >= points) throw ParseError("point " + std::to_string(p) + " out of range");
      m |= PointMask{1} << p;
    }
    if (m == 0) throw ParseError("tor needs a nonempty point set");
    return P1Narrow::tor(m);
  }
  if (!v.is_number_integer()) throw ParseError(key + " needs an integer level");
  if (key == "line") return P1Narrow::line(v.get<int>());
  if (key == "gen") return P1Narrow::gen(v.get<int>());
  throw ParseError("unknown tag " + key);
}

json to_json(const P1SeqForm& f) {
  json j{{"type", to_string(f.form)}, {"l1", bound_to_json(f.l1)}};
  if (f.form == P1Form::I || f.form == P1Form::II) j["l2"] = bound_to_json(f.l2);
  if (f.form == P1Form::II || f.form == P1Form::III) j["n"] = f.n;
  if (f.form == P1Form::I) {
    json steps = json::array();
    for (const auto& [k, mask] : f.steps) steps.push_back({bound_to_json(k), to_json(P1Narrow::tor(mask))["tor"]});
    j["supports"] = steps;
  }
  return j;
}

json to_json(const DedSubcat& c) {
  switch (c.tag) {
    case DedTag::zero:
      return "0";
    case DedTag::everything:
      return "mod Z";
    case DedTag::coprime:
      return {{"coprime", c.primes}};
    case DedTag::finite:
      return {{"finite", c.primes}};
  }
  return nullptr;
}

DedSubcat ded_subcat_from_json(const json& j, const PrimeSet& s) {
  if (j == "0") return DedSubcat::zero();
  if (j == "mod Z") return DedSubcat::everything();
  const std::string key = only_key(j);
  const auto ps = int_list(j.begin().value(), key.c_str());
  for (int p : ps)
    if (!s.contains(p)) throw ParseError("prime " + std::to_string(p) + " is not in the prime set");
  if (key == "coprime") return DedSubcat::coprime(ps);
  if (key == "finite") return DedSubcat::finite(ps);
  throw ParseError("unknown tag " + key);
}

json to_json(const CoNarrowForm& f) { return {{"class", to_json(f.cls)}, {"n", bound_to_json(f.n)}}; }

json to_json(const RefinedTSeq& r) {
  json f = json::array(), tf = json::array();
  for (const auto& s : r.f) f.push_back(to_json(s));
  for (const auto& s : r.tf) tf.push_back(to_json(s));
  return {{"lo", r.lo}, {"hi", r.hi}, {"f_below", to_json(r.f_below)}, {"f", f}, {"tf", tf}, {"f_above", to_json(r.f_above)}};
}

json to_json(const CheckResult& c) {
  return {{"name", c.name},
          {"anchor", c.anchor},
          {"cases", c.cases},
          {"failures", c.failures},
          {"passed", c.passed()},
          {"first_witness", c.first_witness}};
}

}  // namespace tstruct
