#include "tstruct/p1.hpp"

#include <algorithm>
#include <bit>
#include <sstream>
#include <stdexcept>

namespace tstruct {

std::string describe_points(PointMask p) {
  std::ostringstream os;
  os << "{";
  bool first = true;
  for (int i = 0; i < 32; ++i)
    if (p >> i & 1u) {
      os << (first ? "" : ",") << "P" << i;
      first = false;
    }
  os << "}";
  return os.str();
}

SheafObj SheafObj::line(int d) {
  SheafObj x;
  x.line_degrees = {d};
  return x;
}

SheafObj SheafObj::skyscraper(int point, int length) {
  if (length <= 0) throw std::invalid_argument("torsion length must be positive");
  SheafObj x;
  x.torsion[point] = {length};
  return x;
}

int SheafObj::degree() const {
  int d = 0;
  for (int v : line_degrees) d += v;
  for (const auto& [p, parts] : torsion)
    for (int a : parts) d += a;
  return d;
}

PointMask SheafObj::support() const {
  PointMask m = 0;
  for (const auto& [p, parts] : torsion)
    if (!parts.empty()) m |= PointMask{1} << p;
  return m;
}

SheafObj operator+(const SheafObj& a, const SheafObj& b) {
  SheafObj x = a;
  x.line_degrees.insert(x.line_degrees.end(), b.line_degrees.begin(), b.line_degrees.end());
  std::sort(x.line_degrees.begin(), x.line_degrees.end());
  for (const auto& [p, parts] : b.torsion) {
    auto& mine = x.torsion[p];
    mine.insert(mine.end(), parts.begin(), parts.end());
    std::sort(mine.begin(), mine.end(), std::greater<>());
  }
  return x;
}

std::string describe(const SheafObj& x) {
  if (x.is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  auto sep = [&] {
    if (!first) os << " + ";
    first = false;
  };
  for (int d : x.line_degrees) {
    sep();
    os << "O(" << d << ")";
  }
  for (const auto& [p, parts] : x.torsion)
    for (int a : parts) {
      sep();
      if (a == 1)
        os << "k(P" << p << ")";
      else
        os << "O/m^" << a << "(P" << p << ")";
    }
  return os.str();
}

P1Narrow P1Narrow::tor(PointMask p) {
  if (p == 0) return zero();
  return {P1Tag::tor, p, 0};
}

std::string describe(const P1Narrow& s) {
  switch (s.tag) {
    case P1Tag::zero:
      return "0";
    case P1Tag::tor:
      return "tor" + describe_points(s.points);
    case P1Tag::line:
      return "add O(" + std::to_string(s.n) + ")";
    case P1Tag::gen:
      return "gen O(" + std::to_string(s.n) + ")";
    case P1Tag::all:
      return "coh";
  }
  return "?";
}

bool p1_membership(const SheafObj& x, const P1Narrow& s) {
  switch (s.tag) {
    case P1Tag::zero:
      return x.is_zero();
    case P1Tag::tor:
      return x.is_torsion() && (x.support() & ~s.points) == 0;
    case P1Tag::line:
      return x.torsion.empty() && std::all_of(x.line_degrees.begin(), x.line_degrees.end(),
                                              [&](int d) { return d == s.n; });
    case P1Tag::gen:
      return std::all_of(x.line_degrees.begin(), x.line_degrees.end(), [&](int d) { return d >= s.n; });
    case P1Tag::all:
      return true;
  }
  return false;
}

P1Wide p1_wide_closure(const P1Narrow& s) { return s.tag == P1Tag::gen ? P1Narrow::all() : s; }

bool p1_subset(const P1Narrow& a, const P1Narrow& b) {
  if (a.tag == P1Tag::zero || b.tag == P1Tag::all) return true;
  switch (a.tag) {
    case P1Tag::tor:
      return (b.tag == P1Tag::tor && (a.points & ~b.points) == 0) || b.tag == P1Tag::gen;
    case P1Tag::line:
      return (b.tag == P1Tag::line && b.n == a.n) || (b.tag == P1Tag::gen && b.n <= a.n);
    case P1Tag::gen:
      return b.tag == P1Tag::gen && b.n <= a.n;
    default:
      return false;
  }
}

std::vector<P1Narrow> enumerate_p1_narrow(int points, int deg_lo, int deg_hi) {
  if (points < 1 || points > 16) throw std::invalid_argument("point count must be in [1, 16]");
  if (deg_hi < deg_lo) throw std::invalid_argument("empty degree range");
  std::vector<P1Narrow> out{P1Narrow::zero()};
  for (PointMask p = 1; p < (PointMask{1} << points); ++p) out.push_back(P1Narrow::tor(p));
  for (int n = deg_lo; n <= deg_hi; ++n) out.push_back(P1Narrow::line(n));
  for (int n = deg_lo; n <= deg_hi; ++n) out.push_back(P1Narrow::gen(n));
  out.push_back(P1Narrow::all());
  return out;
}

std::string describe(const P1Seq& seq) {
  std::ostringstream os;
  os << "below " << describe(seq.below) << "; ";
  for (int k = seq.lo; k <= seq.hi; ++k) os << k << ": " << describe(seq.at(k)) << "; ";
  os << "above " << describe(seq.above);
  return os.str();
}

std::string to_string(P1Form f) {
  const char* names[] = {"I", "II", "III", "IV"};
  return names[static_cast<int>(f)];
}

namespace {

std::string bound_str(int l) {
  if (l == minus_infinity) return "-inf";
  if (l == plus_infinity) return "+inf";
  return std::to_string(l);
}

bool finite(int l) { return l != minus_infinity && l != plus_infinity; }

}  // namespace

std::string describe(const P1SeqForm& f) {
  std::ostringstream os;
  os << "type " << to_string(f.form) << " l1=" << bound_str(f.l1);
  switch (f.form) {
    case P1Form::I:
      os << " l2=" << bound_str(f.l2) << " supports";
      for (const auto& [k, p] : f.steps) os << " " << bound_str(k) << ":" << describe_points(p);
      break;
    case P1Form::II:
      os << " l2=" << bound_str(f.l2) << " n=" << f.n;
      break;
    case P1Form::III:
      os << " n=" << f.n;
      break;
    case P1Form::IV:
      break;
  }
  return os.str();
}

P1Classification classify_p1_sequence(const P1Seq& seq) {
  // Positions lo-1 .. hi+1; the ends stand for the constant tails.
  const int first = seq.lo - 1;
  const int m = seq.hi - seq.lo + 3;
  std::vector<P1Narrow> v;
  for (int i = 0; i < m; ++i) v.push_back(seq.at(first + i));
  auto degree = [&](int i) { return first + i; };
  auto start = [&](int i) { return i == 0 ? minus_infinity : degree(i); };
  auto has = [&](P1Tag t) { return std::any_of(v.begin(), v.end(), [&](const P1Narrow& s) { return s.tag == t; }); };
  auto invalid = [](std::string reason, int k) {
    P1Classification c;
    c.reason = std::move(reason);
    c.degree = k;
    return c;
  };

  if (has(P1Tag::tor) && (has(P1Tag::line) || has(P1Tag::gen)))
    for (int i = 0; i + 1 < m; ++i)
      if (v[i].tag == P1Tag::tor && (v[i + 1].tag == P1Tag::line || v[i + 1].tag == P1Tag::gen))
        return invalid("torsion at k-1 and line bundles at k force N(k) = coh", degree(i + 1));
  std::optional<int> level;
  int gens = 0;
  for (int i = 0; i < m; ++i) {
    if (v[i].tag == P1Tag::line) {
      if (level && *level != v[i].n) return invalid("two distinct line levels", degree(i));
      level = v[i].n;
    }
    if (v[i].tag == P1Tag::gen) {
      // A tail counts for infinitely many degrees.
      gens += (i == 0 || i == m - 1) ? 2 : 1;
      if (gens > 1) return invalid("quotients of a line bundle in more than one degree", degree(i));
    }
  }
  for (int i = 0; i < m; ++i)
    if (v[i].tag == P1Tag::gen && level && v[i].n != *level)
      return invalid("quotient category not generated by the line level", degree(i));
  for (int i = 0; i + 1 < m; ++i)
    if (v[i].tag == P1Tag::line && v[i + 1].tag == P1Tag::all)
      return invalid("quotients of the line level must precede coh", degree(i + 1));
  for (int i = 0; i + 1 < m; ++i)
    if (!p1_subset(v[i], v[i + 1]))
      return invalid("N(k) not inside N(k+1) at k=" + std::to_string(degree(i)), degree(i));

  auto first_with = [&](P1Tag t) -> std::optional<int> {
    for (int i = 0; i < m; ++i)
      if (v[i].tag == t) return i;
    return std::nullopt;
  };
  P1SeqForm f;
  P1Classification out;
  if (auto i = first_with(P1Tag::tor)) {
    f.form = P1Form::I;
    f.l1 = start(*i);
    const auto a = first_with(P1Tag::all);
    f.l2 = a ? degree(*a) : plus_infinity;
    PointMask prev = 0;
    for (int j = *i; j < m && v[j].tag == P1Tag::tor; ++j)
      if (v[j].points != prev) {
        f.steps.push_back({j == *i ? f.l1 : degree(j), v[j].points});
        prev = v[j].points;
      }
  } else if (auto i = first_with(P1Tag::line)) {
    f.form = P1Form::II;
    f.l1 = start(*i);
    f.n = v[*i].n;
    const auto g = first_with(P1Tag::gen);
    f.l2 = g ? degree(*g) : plus_infinity;
  } else if (auto i = first_with(P1Tag::gen)) {
    f.form = P1Form::III;
    f.l1 = degree(*i);
    f.n = v[*i].n;
  } else {
    f.form = P1Form::IV;
    const auto a = first_with(P1Tag::all);
    f.l1 = a ? start(*a) : plus_infinity;
  }
  out.form = f;
  return out;
}

bool p1_is_aisle(const P1SeqForm& f) {
  if (f.form != P1Form::I) return true;
  return finite(f.l1) && finite(f.l2) && f.l2 == f.l1 + 1;
}

P1Seq to_sequence(const P1SeqForm& f, int lo, int hi) {
  if (hi < lo) throw std::invalid_argument("empty window");
  auto inside = [&](int l, int top) {
    if (finite(l) && (l < lo || l > top))
      throw std::invalid_argument("breakpoint " + std::to_string(l) + " outside the window");
  };
  auto value = [&](int k) -> P1Narrow {
    switch (f.form) {
      case P1Form::I: {
        if (k < f.l1) return P1Narrow::zero();
        if (k >= f.l2) return P1Narrow::all();
        PointMask p = 0;
        for (const auto& [d, mask] : f.steps)
          if (d <= k) p = mask;
        return P1Narrow::tor(p);
      }
      case P1Form::II:
        if (k < f.l1) return P1Narrow::zero();
        if (k < f.l2) return P1Narrow::line(f.n);
        return k == f.l2 ? P1Narrow::gen(f.n) : P1Narrow::all();
      case P1Form::III:
        if (k < f.l1) return P1Narrow::zero();
        return k == f.l1 ? P1Narrow::gen(f.n) : P1Narrow::all();
      case P1Form::IV:
        return k < f.l1 ? P1Narrow::zero() : P1Narrow::all();
    }
    return P1Narrow::zero();
  };
  switch (f.form) {
    case P1Form::I:
      inside(f.l1, hi + 1);
      inside(f.l2, hi + 1);
      for (const auto& [d, mask] : f.steps) inside(d, hi + 1);
      break;
    case P1Form::II:
      inside(f.l1, hi + 1);
      inside(f.l2, hi);
      break;
    case P1Form::III:
      inside(f.l1, hi);
      break;
    case P1Form::IV:
      inside(f.l1, hi + 1);
      break;
  }
  P1Seq s;
  s.lo = lo;
  s.hi = hi;
  s.below = value(lo - 1);
  s.above = value(hi + 1);
  for (int k = lo; k <= hi; ++k) s.entries.push_back(value(k));
  return s;
}

std::vector<P1SeqForm> enumerate_p1_forms(int points, int deg_lo, int deg_hi, int lo, int hi) {
  if (points < 1 || points > 16) throw std::invalid_argument("point count must be in [1, 16]");
  if (deg_hi < deg_lo) throw std::invalid_argument("empty degree range");
  if (hi < lo) throw std::invalid_argument("empty window");
  std::vector<int> starts{minus_infinity}, ends;
  for (int k = lo; k <= hi + 1; ++k) starts.push_back(k);
  for (int k = lo; k <= hi + 1; ++k) ends.push_back(k);
  ends.push_back(plus_infinity);
  const PointMask full = (PointMask{1} << points) - 1;

  std::vector<P1SeqForm> out;
  for (int l1 : starts)
    for (int l2 : ends) {
      if (!(l1 < l2)) continue;
      // One position per tail block and per window degree in [l1, l2).
      std::vector<int> pos;
      if (l1 == minus_infinity) pos.push_back(minus_infinity);
      for (int k = std::max(l1 == minus_infinity ? lo : l1, lo); k <= std::min(l2 == plus_infinity ? hi : l2 - 1, hi);
           ++k)
        pos.push_back(k);
      if (l2 == plus_infinity) pos.push_back(hi + 1);
      std::vector<PointMask> chain(pos.size());
      auto rec = [&](auto&& self, std::size_t i, PointMask prev) -> void {
        if (i == pos.size()) {
          P1SeqForm f;
          f.form = P1Form::I;
          f.l1 = l1;
          f.l2 = l2;
          PointMask last = 0;
          for (std::size_t j = 0; j < pos.size(); ++j)
            if (chain[j] != last) {
              f.steps.push_back({j == 0 ? l1 : pos[j], chain[j]});
              last = chain[j];
            }
          out.push_back(f);
          return;
        }
        for (PointMask p = 1; p <= full; ++p) {
          if ((prev & ~p) != 0) continue;
          chain[i] = p;
          self(self, i + 1, p);
        }
      };
      rec(rec, 0, 0);
    }
  for (int l1 : starts)
    for (int l2 : ends) {
      if (!(l1 < l2) || l2 == hi + 1) continue;
      for (int n = deg_lo; n <= deg_hi; ++n) out.push_back({P1Form::II, l1, l2, n, {}});
    }
  for (int l = lo; l <= hi; ++l)
    for (int n = deg_lo; n <= deg_hi; ++n) out.push_back({P1Form::III, l, 0, n, {}});
  for (int l : starts) out.push_back({P1Form::IV, l, 0, 0, {}});
  out.push_back({P1Form::IV, plus_infinity, 0, 0, {}});
  return out;
}

int euler_form(std::pair<int, int> x, std::pair<int, int> y, int genus) {
  if (genus < 0) throw std::invalid_argument("genus must be nonnegative");
  const auto [rx, dx] = x;
  const auto [ry, dy] = y;
  return rx * ry * (1 - genus) + rx * dy - dx * ry;
}

P1Witnesses p1_witness_model(int points, int deg_lo, int deg_hi) {
  P1Witnesses w;
  std::map<SheafObj, int> id;
  auto add = [&](SheafObj x) {
    id[x] = static_cast<int>(w.objects.size());
    w.objects.push_back(std::move(x));
  };
  add(SheafObj{});
  for (int d = deg_lo - 2; d <= deg_hi + 2; ++d) add(SheafObj::line(d));
  for (int p = 0; p < points; ++p) {
    add(SheafObj::skyscraper(p, 1));
    add(SheafObj::skyscraper(p, 2));
  }
  auto known = [&](const SheafObj& x) { return id.count(x) > 0; };
  auto& arrows = w.model.arrows;
  auto& exts = w.model.extensions;
  auto arrow = [&](const SheafObj& s, const SheafObj& t, const SheafObj& k, const SheafObj& c) {
    if (known(s) && known(t) && known(k) && known(c)) arrows.push_back({id[s], id[t], id[k], id[c]});
  };
  auto extension = [&](const SheafObj& a, const SheafObj& b, const SheafObj& c) {
    if (known(a) && known(b) && known(c)) exts.push_back({id[a], id[b], id[c]});
  };
  const SheafObj zero;
  for (const auto& x : w.objects) {
    arrow(x, x, zero, zero);
    for (const auto& y : w.objects) arrow(x, y, x, y);
  }
  for (int d = deg_lo - 2; d <= deg_hi + 2; ++d)
    for (int p = 0; p < points; ++p) {
      const SheafObj o = SheafObj::line(d), k1 = SheafObj::skyscraper(p, 1), k2 = SheafObj::skyscraper(p, 2);
      arrow(o, SheafObj::line(d + 1), zero, k1);
      arrow(o, SheafObj::line(d + 2), zero, k2);
      arrow(o, k1, SheafObj::line(d - 1), zero);
      arrow(o, k2, SheafObj::line(d - 2), zero);
      extension(o, SheafObj::line(d + 1), k1);
      extension(o, SheafObj::line(d + 2), k2);
    }
  for (int p = 0; p < points; ++p) {
    const SheafObj k1 = SheafObj::skyscraper(p, 1), k2 = SheafObj::skyscraper(p, 2);
    arrow(k1, k2, zero, k1);
    arrow(k2, k1, k1, zero);
    extension(k1, k2, k1);
  }
  w.model.object_count = static_cast<int>(w.objects.size());
  auto objects = w.objects;
  w.model.contains = [objects](const P1Narrow& s, int i) { return p1_membership(objects[i], s); };
  w.model.name = [objects](int i) { return describe(objects[i]); };
  return w;
}

}  // namespace tstruct
