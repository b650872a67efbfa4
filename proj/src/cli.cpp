#include "tstruct/cli.hpp"

#include "tstruct/geometric_checks.hpp"
#include "tstruct/io.hpp"
#include "tstruct/parallel.hpp"

#include "CLI11.hpp"

#include <algorithm>
#include <iomanip>
#include <memory>
#include <optional>
#include <sstream>

namespace tstruct {

namespace {

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct RunConfig {
  std::string backend;
  std::string window;
  std::optional<int> field;
  int points = 3;
  std::string degrees;
  std::string primes = "2,3";
  std::string format = "json";
  int jobs = 1;
  std::string mutate = "none";
  std::string input;
  bool subcats = false;
  bool aisles_only = false;
};

std::pair<int, int> parse_range(const std::string& text, const char* flag) {
  const auto colon = text.find(':');
  if (colon == std::string::npos) throw UsageError(std::string(flag) + " expects lo:hi, got \"" + text + "\"");
  int lo = 0, hi = 0;
  try {
    std::size_t used = 0;
    lo = std::stoi(text.substr(0, colon), &used);
    if (used != colon) throw std::invalid_argument("trailing characters");
    const std::string rest = text.substr(colon + 1);
    hi = std::stoi(rest, &used);
    if (used != rest.size()) throw std::invalid_argument("trailing characters");
  } catch (const std::logic_error&) {
    throw UsageError(std::string(flag) + " expects integers lo:hi, got \"" + text + "\"");
  }
  if (hi < lo) throw UsageError(std::string(flag) + " " + text + " is empty");
  return {lo, hi};
}

std::vector<int> parse_primes(const std::string& text) {
  std::vector<int> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      std::size_t used = 0;
      out.push_back(std::stoi(item, &used));
      if (used != item.size()) throw std::invalid_argument("trailing characters");
    } catch (const std::logic_error&) {
      throw UsageError("--primes expects a comma separated list, got \"" + text + "\"");
    }
  }
  try {
    return PrimeSet(out).primes;
  } catch (const std::invalid_argument& e) {
    throw UsageError(std::string("--primes: ") + e.what());
  }
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string q = "\"";
  for (char c : s) q += c == '"' ? std::string("\"\"") : std::string(1, c);
  return q + "\"";
}

using Row = std::vector<std::string>;

void print_rows(std::ostream& out, const std::string& format, const Row& header, const std::vector<Row>& rows) {
  if (format == "csv") {
    for (std::size_t i = 0; i < header.size(); ++i) out << (i ? "," : "") << csv_field(header[i]);
    out << "\n";
    for (const auto& r : rows) {
      for (std::size_t i = 0; i < r.size(); ++i) out << (i ? "," : "") << csv_field(r[i]);
      out << "\n";
    }
    return;
  }
  std::vector<std::size_t> width(header.size());
  for (std::size_t i = 0; i < header.size(); ++i) width[i] = header[i].size();
  for (const auto& r : rows)
    for (std::size_t i = 0; i < r.size(); ++i) width[i] = std::max(width[i], r[i].size());
  auto line = [&](const Row& r) {
    std::string s;
    for (std::size_t i = 0; i < r.size(); ++i) {
      std::string cell = r[i];
      if (i + 1 < r.size()) cell.resize(width[i], ' ');
      s += (i ? "  " : "") + cell;
    }
    out << s << "\n";
  };
  line(header);
  Row rule;
  for (auto w : width) rule.push_back(std::string(w, '-'));
  line(rule);
  for (const auto& r : rows) line(r);
}

std::string window_str(int lo, int hi) { return std::to_string(lo) + ":" + std::to_string(hi); }

std::string yes_no(bool b) { return b ? "true" : "false"; }

std::string format_violation(const Violation& v) {
  const std::string at = " at k=" + std::to_string(v.degree);
  if (v.condition == "monotone") return "N(k) ⊄ N(k+1)" + at + ": " + v.witness;
  return v.condition + at + ": " + v.witness;
}

json violation_list(const std::vector<Violation>& vs) {
  json out = json::array();
  for (const auto& v : vs) out.push_back(format_violation(v));
  return out;
}

// Backend selection ---------------------------------------------------------

enum class Kind { quiver, p1, dedekind };

struct Selected {
  Kind kind = Kind::quiver;
  std::string label;
  QuiverSpec spec;
};

Selected select_backend(const RunConfig& cfg) {
  Selected s;
  s.label = cfg.backend;
  if (cfg.backend == "p1") {
    s.kind = Kind::p1;
  } else if (cfg.backend == "dedekind") {
    s.kind = Kind::dedekind;
  } else if (cfg.backend.rfind("quiver:", 0) == 0) {
    s.kind = Kind::quiver;
    s.spec = quiver_from_json(read_json_file(cfg.backend.substr(7)));
    if (cfg.field) {
      s.spec.field = *cfg.field;
      try {
        validate(s.spec);
      } catch (const std::invalid_argument& e) {
        throw UsageError(std::string("--field: ") + e.what());
      }
    }
  } else {
    throw UsageError("--backend must be quiver:FILE, p1 or dedekind");
  }
  if (s.kind != Kind::quiver && cfg.mutate != "none") throw UsageError("--mutate applies to quiver backends only");
  return s;
}

std::unique_ptr<FiniteBackend> make_quiver(const Selected& s, const RunConfig& cfg) {
  BackendOptions opts;
  try {
    opts.mutation = parse_mutation(cfg.mutate);
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
  return build_quiver_backend(s.spec, opts);
}

struct Levels {
  int lo, hi;
};

Levels degree_levels(const RunConfig& cfg, int lo, int hi) {
  if (cfg.degrees.empty()) return {lo, hi};
  auto [a, b] = parse_range(cfg.degrees, "--degrees");
  return {a, b};
}

// enumerate -------------------------------------------------------------------

int cmd_enumerate(const RunConfig& cfg, std::ostream& out) {
  const Selected sel = select_backend(cfg);
  auto [lo, hi] = parse_range(cfg.window.empty() ? "0:1" : cfg.window, "--window");
  const json window = {lo, hi};
  json records = json::array();
  std::vector<Row> rows;
  Row header{"backend", "window", "form", "parameters", "is_aisle"};

  if (sel.kind == Kind::quiver) {
    auto b = make_quiver(sel, cfg);
    if (cfg.subcats) {
      header = {"backend", "subcategory", "ids", "narrow", "wide", "torsion"};
      for (IndecSet s : b->enumerate_subcats(flag_narrow)) {
        const auto f = b->classify(s);
        records.push_back({{"backend", sel.label},
                           {"subcategory", to_json(s)},
                           {"label", b->describe(s)},
                           {"flags", {{"narrow", f.narrow}, {"wide", f.wide}, {"torsion", f.torsion}}}});
        rows.push_back({sel.label, b->describe(s), to_json(s).dump(), yes_no(f.narrow), yes_no(f.wide),
                        yes_no(f.torsion)});
      }
    } else {
      const auto seqs = enumerate_narrow_sequences(*b, lo, hi, EnumMode::nondegenerate);
      auto recs = parallel_map(seqs.size(), cfg.jobs, [&](std::size_t i) {
        const SubcatSeq& u = seqs[i];
        const RefinedTSeq r = xi(*b, u);
        const bool narrow = is_narrow_sequence(*b, u);
        const bool round = validate_refined(*b, r).ok() && psi(*b, r).same_as(u);
        return json{{"backend", sel.label},
                    {"window", window},
                    {"sequence", seq_to_json(u, [](IndecSet s) { return to_json(s); })},
                    {"refined", to_json(r)},
                    {"checks", {{"narrow-sequence", narrow}, {"reduced-roundtrip", round}}}};
      });
      for (std::size_t i = 0; i < seqs.size(); ++i) {
        records.push_back(recs[i]);
        rows.push_back({sel.label, window_str(lo, hi), "narrow", describe(*b, seqs[i]), "true"});
      }
    }
  } else if (sel.kind == Kind::p1) {
    const auto lv = degree_levels(cfg, lo, hi);
    if (cfg.subcats) {
      header = {"backend", "subcategory", "wide_closure"};
      for (const auto& s : enumerate_p1_narrow(cfg.points, lv.lo, lv.hi)) {
        records.push_back({{"backend", "p1"}, {"subcategory", to_json(s)}, {"wide_closure", to_json(p1_wide_closure(s))}});
        rows.push_back({"p1", describe(s), describe(p1_wide_closure(s))});
      }
    } else {
      for (const auto& f : enumerate_p1_forms(cfg.points, lv.lo, lv.hi, lo, hi)) {
        const bool aisle = p1_is_aisle(f);
        if (cfg.aisles_only && !aisle) continue;
        records.push_back({{"backend", "p1"},
                           {"window", window},
                           {"form", to_json(f)},
                           {"sequence", seq_to_json(to_sequence(f, lo, hi), [](const P1Narrow& s) { return to_json(s); })},
                           {"is_aisle", aisle},
                           {"checks", {{"p1-sequence-forms", classify_p1_sequence(to_sequence(f, lo, hi)).form == f}}}});
        rows.push_back({"p1", window_str(lo, hi), to_string(f.form), describe(f), yes_no(aisle)});
      }
    }
  } else {
    const PrimeSet ps(parse_primes(cfg.primes));
    if (cfg.subcats) {
      header = {"backend", "class"};
      for (const auto& c : ded_torsionfree_classes(ps)) {
        records.push_back({{"backend", "dedekind"}, {"class", to_json(c)}});
        rows.push_back({"dedekind", describe(c)});
      }
    } else {
      for (const auto& f : enumerate_conarrow_forms(ps, lo, hi)) {
        const auto seq = to_sequence(f, lo, hi);
        const bool degenerate = f.n == minus_infinity || f.n == plus_infinity;
        records.push_back({{"backend", "dedekind"},
                           {"window", window},
                           {"form", to_json(f)},
                           {"degenerate", degenerate},
                           {"sequence", seq_to_json(seq, [](const DedSubcat& c) { return to_json(c); })},
                           {"is_aisle", ded_is_aisle(seq)},
                           {"checks", {{"dedekind-conarrow-forms", ded_classify_sequence(seq).form == f}}}});
        rows.push_back({"dedekind", window_str(lo, hi), degenerate ? "degenerate" : "co-narrow", describe(f),
                        yes_no(ded_is_aisle(seq))});
      }
    }
  }
  if (cfg.format == "json")
    out << json{{"records", records}}.dump(2) << "\n";
  else
    print_rows(out, cfg.format, header, rows);
  return exit_ok;
}

// verify ----------------------------------------------------------------------

int cmd_verify(const RunConfig& cfg, std::ostream& out) {
  const Selected sel = select_backend(cfg);
  auto [lo, hi] = parse_range(cfg.window.empty() ? "0:2" : cfg.window, "--window");
  std::vector<CheckResult> checks;
  if (sel.kind == Kind::quiver) {
    auto b = make_quiver(sel, cfg);
    VerifyOptions o;
    o.lo = lo;
    o.hi = hi;
    o.jobs = cfg.jobs;
    checks = verify_quiver_suite(*b, sel.spec, o);
    if (sel.spec.vertices == 1) checks.push_back(check_bad_preaisle(*b));
  } else if (sel.kind == Kind::p1) {
    const auto lv = degree_levels(cfg, -2, 2);
    P1VerifyOptions o;
    o.points = cfg.points;
    o.deg_lo = lv.lo;
    o.deg_hi = lv.hi;
    o.lo = lo;
    o.hi = hi;
    o.jobs = cfg.jobs;
    checks = verify_p1_suite(o);
  } else {
    DedVerifyOptions o;
    o.primes = parse_primes(cfg.primes);
    o.lo = lo;
    o.hi = hi;
    o.jobs = cfg.jobs;
    checks = verify_dedekind_suite(o);
  }
  const bool passed = std::all_of(checks.begin(), checks.end(), [](const CheckResult& c) { return c.passed(); });
  if (cfg.format == "json") {
    json list = json::array();
    for (const auto& c : checks) list.push_back(to_json(c));
    out << json{{"backend", sel.label}, {"window", {lo, hi}}, {"mutation", cfg.mutate}, {"checks", list}, {"passed", passed}}
               .dump(2)
        << "\n";
  } else {
    std::vector<Row> rows;
    for (const auto& c : checks)
      rows.push_back({c.passed() ? "pass" : "FAIL", c.name, c.anchor, std::to_string(c.cases),
                      std::to_string(c.failures), c.first_witness});
    print_rows(out, cfg.format, {"status", "check", "anchor", "cases", "failures", "first_witness"}, rows);
  }
  return passed ? exit_ok : exit_failed;
}

// classify --------------------------------------------------------------------

int cmd_classify(const RunConfig& cfg, std::ostream& out) {
  if (cfg.input.empty()) throw UsageError("classify needs --input FILE");
  const Selected sel = select_backend(cfg);
  json doc = read_json_file(cfg.input);
  const json& sj = doc.contains("sequence") ? doc.at("sequence") : doc;
  json verdict{{"backend", sel.label}};
  try {
    if (sel.kind == Kind::quiver) {
      auto b = make_quiver(sel, cfg);
      const int n = b->size();
      const auto seq = seq_from_json<IndecSet>(sj, [n](const json& e) { return indec_set_from_json(e, n); });
      const auto rep = check_narrow_sequence(*b, seq);
      verdict["anchor"] = "narrow-preaisle-bijection";
      verdict["valid_narrow_sequence"] = rep.ok();
      verdict["is_aisle"] = rep.ok();
      verdict["form"] = rep.ok() ? json{{"refined", to_json(xi(*b, seq))}} : json(nullptr);
      verdict["violations"] = violation_list(rep.violations);
    } else if (sel.kind == Kind::p1) {
      const int points = cfg.points;
      const auto seq = seq_from_json<P1Narrow>(sj, [points](const json& e) { return p1_narrow_from_json(e, points); });
      int dlo = seq.lo, dhi = seq.hi;
      for (int k = seq.lo - 1; k <= seq.hi + 1; ++k) {
        const auto& s = seq.at(k);
        if (s.tag == P1Tag::line || s.tag == P1Tag::gen) {
          dlo = std::min(dlo, s.n);
          dhi = std::max(dhi, s.n);
        }
      }
      const auto w = p1_witness_model(points, dlo, dhi);
      const auto rep = check_with_witnesses(w.model, seq);
      const auto cls = classify_p1_sequence(seq);
      verdict["anchor"] = "p1-sequence-forms";
      verdict["valid_narrow_sequence"] = rep.ok();
      verdict["form"] = cls.form ? to_json(*cls.form) : json(nullptr);
      verdict["is_aisle"] = cls.form && p1_is_aisle(*cls.form);
      json vs = violation_list(rep.violations);
      if (!cls.form) vs.push_back(cls.reason + " at k=" + std::to_string(cls.degree));
      verdict["violations"] = vs;
    } else {
      const PrimeSet ps(parse_primes(cfg.primes));
      const auto seq = seq_from_json<DedSubcat>(sj, [&ps](const json& e) { return ded_subcat_from_json(e, ps); });
      // Co-narrow conditions are the narrow ones in the opposite category.
      auto rep = check_with_witnesses(opposite(ded_witness_model(ps).model), reversed(seq));
      for (auto& v : rep.violations) v.degree = -v.degree;
      std::reverse(rep.violations.begin(), rep.violations.end());
      const auto cls = ded_classify_sequence(seq);
      verdict["anchor"] = "dedekind-conarrow-forms";
      verdict["valid_narrow_sequence"] = rep.ok();
      verdict["form"] = cls.form ? to_json(*cls.form) : json(nullptr);
      verdict["is_aisle"] = cls.form.has_value();
      json vs = json::array();
      for (const auto& v : rep.violations) {
        // The opposite category turns N(k) ⊆ N(k+1) into N(k) ⊇ N(k+1).
        if (v.condition == "monotone")
          vs.push_back("N(k+1) ⊄ N(k) at k=" + std::to_string(v.degree) + ": " + v.witness);
        else
          vs.push_back("dual " + v.condition + " at k=" + std::to_string(v.degree) + ": " + v.witness);
      }
      if (!cls.form) vs.push_back(cls.reason + " at k=" + std::to_string(cls.degree));
      verdict["violations"] = vs;
    }
  } catch (const json::exception& e) {
    throw ParseError(cfg.input + ": " + e.what());
  }
  if (cfg.format == "json") {
    out << verdict.dump(2) << "\n";
  } else {
    std::string vs;
    for (const auto& v : verdict["violations"]) vs += (vs.empty() ? "" : "; ") + v.get<std::string>();
    print_rows(out, cfg.format, {"backend", "valid_narrow_sequence", "form", "is_aisle", "violations"},
               {{sel.label, yes_no(verdict["valid_narrow_sequence"]), verdict["form"].dump(),
                 yes_no(verdict["is_aisle"]), vs}});
  }
  return exit_ok;
}

void add_common(CLI::App* sub, RunConfig& cfg) {
  sub->add_option("--backend", cfg.backend, "quiver:FILE, p1 or dedekind")->required();
  sub->add_option("--window", cfg.window, "sequence window lo:hi");
  sub->add_option("--field", cfg.field, "field order for quiver backends");
  sub->add_option("--points", cfg.points, "number of points on the line")->check(CLI::Range(1, 16));
  sub->add_option("--degrees", cfg.degrees, "line bundle levels a:b");
  sub->add_option("--primes", cfg.primes, "comma separated primes");
  sub->add_option("--format", cfg.format, "json, csv or table")->check(CLI::IsMember({"json", "csv", "table"}));
  sub->add_option("--jobs", cfg.jobs, "worker threads")->check(CLI::Range(1, 256));
}

void print_error(std::ostream& err, const std::string& kind, const std::string& message) {
  err << json{{"error", kind}, {"message", message}}.dump() << "\n";
}

}  // namespace

int run_cli(std::vector<std::string> args, std::ostream& out, std::ostream& err) {
  CLI::App app{"t-structures on hereditary categories", "tstruct"};
  app.require_subcommand(1);
  RunConfig cfg;
  auto* en = app.add_subcommand("enumerate", "list aisles or subcategories");
  add_common(en, cfg);
  en->add_flag("--subcats", cfg.subcats, "list subcategories instead of sequences");
  en->add_flag("--aisles", cfg.aisles_only, "keep aisles only");
  auto* ve = app.add_subcommand("verify", "run the invariant checks");
  add_common(ve, cfg);
  ve->add_option("--mutate", cfg.mutate, "inject a fault into the quiver backend");
  auto* cl = app.add_subcommand("classify", "classify a sequence file");
  add_common(cl, cfg);
  cl->add_option("--input", cfg.input, "sequence JSON file")->required();

  std::reverse(args.begin(), args.end());
  try {
    app.parse(args);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return exit_ok;
  } catch (const CLI::ParseError& e) {
    print_error(err, "usage", e.what());
    return exit_usage;
  }
  try {
    if (*en) return cmd_enumerate(cfg, out);
    if (*ve) return cmd_verify(cfg, out);
    return cmd_classify(cfg, out);
  } catch (const UsageError& e) {
    print_error(err, "usage", e.what());
    return exit_usage;
  } catch (const ParseError& e) {
    print_error(err, "parse", e.what());
    return exit_usage;
  } catch (const std::invalid_argument& e) {
    print_error(err, "usage", e.what());
    return exit_usage;
  } catch (const std::exception& e) {
    print_error(err, "runtime", e.what());
    return exit_failed;
  }
}

}  // namespace tstruct
