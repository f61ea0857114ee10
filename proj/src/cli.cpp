#include "hlmax/cli.hpp"

#include "hlmax/constants.hpp"
#include "hlmax/document.hpp"
#include "hlmax/lattice.hpp"
#include "hlmax/maxop.hpp"
#include "hlmax/verify.hpp"

#include <CLI11.hpp>
#include <json.hpp>
#include <omp.h>

#include <fstream>
#include <memory>
#include <ostream>

namespace hlmax {

namespace {

using ojson = nlohmann::ordered_json;

struct Options {
  int threads = 0;
  int digits = 12;

  std::int64_t count_dim = 0, count_radius = 0;
  bool count_enumerate = false;

  std::string input, output, geometry, json_path;
  std::int64_t box = 0;

  std::string kind;
  std::int64_t const_dim = 0, terms = 0;

  std::string epsilon = "1/1000", suite;
  std::int64_t rmax = 1 << 14;
  std::uint64_t seed = 7;

  std::string family;
  std::int64_t scan_radius = 5, scan_box = 1000, scan_dim = 0, scan_terms = 1000;
};

// Writes to the named file, or to `fallback` when the name is empty or "-".
class Sink {
 public:
  Sink(const std::string& path, std::ostream& fallback) : stream_(&fallback) {
    if (!path.empty() && path != "-") {
      file_ = std::make_unique<std::ofstream>(path, std::ios::binary);
      if (!*file_) throw DocumentError("cannot write '" + path + "'");
      stream_ = file_.get();
    }
  }
  std::ostream& operator*() { return *stream_; }

 private:
  std::unique_ptr<std::ofstream> file_;
  std::ostream* stream_;
};

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string q = "\"";
  for (char c : s) {
    if (c == '"') q += '"';
    q += c;
  }
  return q + "\"";
}

BallSpec spec_for(const std::string& geometry, int dim) {
  BallSpec spec{parse_geometry(geometry), dim};
  spec.validate();
  return spec;
}

int cmd_count(const Options& o, std::ostream& out) {
  if (o.count_dim < 1 || o.count_radius < 0) throw std::invalid_argument("count needs --dim >= 1 and --radius >= 0");
  out << to_string(l1_ball_count(static_cast<int>(o.count_dim), o.count_radius)) << "\n";
  if (o.count_enumerate) {
    for (const auto& p : l1_ball_points(static_cast<int>(o.count_dim), o.count_radius)) out << p.to_string() << "\n";
  }
  return kExitOk;
}

int cmd_maxfn(const Options& o, std::ostream& out) {
  const GridFunction f = read_document(o.input);
  const BallSpec spec = spec_for(o.geometry, f.dim());
  if (o.box < 0) throw std::invalid_argument("--box must be >= 0");
  const auto grid = evaluate_on_box(f, spec, Box::cube(f.dim(), o.box));
  Sink sink(o.output, out);
  auto& os = *sink;
  for (int i = 1; i <= f.dim(); ++i) os << "x" << i << ",";
  os << "value,decimal\n";
  for (std::size_t i = 0; i < grid.values.size(); ++i) {
    const LatticePoint p = grid.point_at(i);
    for (int k = 0; k < p.dim(); ++k) os << p[k] << ",";
    os << to_string(grid.values[i]) << "," << to_decimal(grid.values[i], o.digits) << "\n";
  }
  return kExitOk;
}

int cmd_constant(const Options& o, std::ostream& out) {
  const ConstantKind kind = parse_constant_kind(o.kind);
  if (o.const_dim < 1) throw std::invalid_argument("--dim must be >= 1");
  if (o.terms < 0) throw std::invalid_argument("--terms must be >= 0");
  const int d = static_cast<int>(o.const_dim);
  out << "kind: " << constant_kind_name(kind) << "\n" << "dim: " << d << "\n" << "terms: " << o.terms << "\n";
  if (kind == ConstantKind::CenteredL1 && d == 1) {
    const Rational c = centered_constant_1d();
    out << "enclosure: [" << to_string(c) << ", " << to_string(c) << "]\n"
        << "lower: " << to_decimal(c, o.digits) << "\n"
        << "upper: " << to_decimal(c, o.digits) << "\n"
        << "width: 0\n"
        << "tail: the one-dimensional centered constant is exactly 2; no series is involved\n";
    return kExitOk;
  }
  const auto e = constant_enclosure(d, o.terms, kind);
  out << "enclosure: [" << to_string(e.lower) << ", " << to_string(e.upper) << "]\n"
      << "lower: " << to_decimal(e.lower, o.digits) << "\n"
      << "upper: " << to_decimal(e.upper, o.digits) << "\n"
      << "width: " << to_string(e.width()) << "\n"
      << "tail: " << e.certificate << "\n";
  return kExitOk;
}

ojson trace_json(const std::vector<std::pair<std::int64_t, Rational>>& trace) {
  auto arr = ojson::array();
  for (const auto& [R, v] : trace) arr.push_back(ojson{{"R", R}, {"variation", to_string(v)}});
  return arr;
}

int cmd_verify_input(const Options& o, std::ostream& out, std::ostream& err) {
  const GridFunction f = read_document(o.input);
  const BallSpec spec = spec_for(o.geometry, f.dim());
  const Rational eps = parse_rational(o.epsilon);
  if (eps <= 0) throw std::invalid_argument("--epsilon must be > 0");
  if (f.is_zero()) throw std::invalid_argument("verify needs a nonzero function");

  const auto rec = verify_inequality(f, spec, eps, o.rmax);
  const bool stop_converged = rec.stop == VariationReport::Stop::Converged;
  bool ok = rec.gap >= 0;

  out << "geometry: " << geometry_name(spec.geometry) << " (d=" << spec.dim << ")\n"
      << "support: " << rec.support << "\n"
      << "l1 norm: " << to_string(rec.l1) << "\n";
  for (const auto& [R, v] : rec.trace) out << "  R=" << R << "  variation " << to_decimal(v, o.digits) << "\n";
  out << "stopped: " << (stop_converged ? "converged" : "radius limit") << " at R=" << rec.radius << "\n"
      << "truncated variation (lower bound): " << to_string(rec.ratio * rec.l1) << "\n"
      << "ratio: " << to_string(rec.ratio) << " = " << to_decimal(rec.ratio, o.digits) << "\n"
      << "bound: " << to_string(rec.bound) << " = " << to_decimal(rec.bound, o.digits) << "\n"
      << "gap: " << to_decimal(rec.gap, o.digits) << "\n";

  ojson summary;
  summary["geometry"] = std::string(geometry_name(spec.geometry));
  summary["dim"] = spec.dim;
  summary["support"] = rec.support;
  summary["l1"] = to_string(rec.l1);
  summary["ratio"] = to_string(rec.ratio);
  summary["bound"] = to_string(rec.bound);
  summary["gap"] = to_string(rec.gap);
  summary["gap_decimal"] = to_decimal(rec.gap, o.digits);
  summary["is_delta"] = rec.is_delta;
  summary["stop"] = stop_converged ? "converged" : "radius_limit";
  summary["trace"] = trace_json(rec.trace);

  if (spec.geometry == Geometry::UncenteredInterval) {
    const auto chain = verify_uncentered_var_bound_1d(f, eps, o.rmax);
    out << "Var M~f (lower bound) <= Var f: " << to_string(chain.var_maxfn) << " <= " << to_string(chain.var_f)
        << (chain.maxfn_below_var ? "  ok" : "  VIOLATED") << "\n"
        << "Var f <= 2 ||f||_1: " << to_string(chain.var_f) << " <= " << to_string(chain.two_l1)
        << (chain.var_below_two_l1 ? "  ok" : "  VIOLATED") << "\n";
    summary["chain"] = ojson{{"var_maxfn", to_string(chain.var_maxfn)},
                             {"var_f", to_string(chain.var_f)},
                             {"two_l1", to_string(chain.two_l1)},
                             {"holds", chain.holds()}};
    ok = ok && chain.holds();
  }
  if (!rec.is_delta) {
    out << "uniqueness: " << (rec.gap > 0 ? "consistent (strict gap at this truncation)" : "no strict gap observed")
        << "\n";
  }
  summary["pass"] = ok;
  out << "result: " << (ok ? "PASS" : "FAIL") << "\n";

  if (!o.json_path.empty()) {
    Sink sink(o.json_path, out);
    *sink << summary.dump(2) << "\n";
  }
  if (!ok) {
    err << "violation; instance for replay:\n" << write_document(f);
    return kExitViolation;
  }
  return kExitOk;
}

int cmd_verify_suite(const Options& o, std::ostream& out, std::ostream& err) {
  const auto res = run_suite(o.suite, o.seed);
  for (const auto& c : res.checks) out << (c.passed ? "PASS " : "FAIL ") << c.name << ": " << c.detail << "\n";
  out << "suite " << res.suite << ": " << (res.passed() ? "PASS" : "FAIL") << "\n";
  if (!o.json_path.empty()) {
    ojson summary;
    summary["suite"] = res.suite;
    summary["seed"] = o.seed;
    auto arr = ojson::array();
    for (const auto& c : res.checks) arr.push_back(ojson{{"name", c.name}, {"passed", c.passed}, {"detail", c.detail}});
    summary["checks"] = std::move(arr);
    summary["violations"] = res.violations;
    summary["pass"] = res.passed();
    Sink sink(o.json_path, out);
    *sink << summary.dump(2) << "\n";
  }
  if (!res.passed()) {
    for (const auto& v : res.violations) err << "violation: " << v << "\n";
    return kExitViolation;
  }
  return kExitOk;
}

int cmd_scan(const Options& o, std::ostream& out, std::ostream& err) {
  const Geometry g = parse_geometry(o.geometry);
  const bool interval = g == Geometry::CenteredInterval || g == Geometry::UncenteredInterval;
  const int dim = static_cast<int>(o.scan_dim > 0 ? o.scan_dim : (interval ? 1 : 2));
  const BallSpec spec = spec_for(o.geometry, dim);
  TwoPointFamily fam;
  if (o.family == "two-point") {
    if (o.scan_radius < 0) throw std::invalid_argument("--radius must be >= 0");
    fam.max_distance = o.scan_radius;
    fam.ratios = TwoPointFamily::default_ratios();
  } else if (o.family == "delta") {
    fam.max_distance = 0;
  } else {
    throw std::invalid_argument("unknown family '" + o.family + "' (expected two-point or delta)");
  }
  if (o.scan_box < 0) throw std::invalid_argument("--box must be >= 0");
  const auto res = scan_extremizers(spec, fam, o.scan_box, o.scan_terms);

  Sink sink(o.output, out);
  auto& os = *sink;
  os << "rank,support,support_size,l1,ratio,bound,gap,gap_decimal,is_delta\n";
  for (std::size_t i = 0; i < res.records.size(); ++i) {
    const auto& r = res.records[i];
    os << (i + 1) << "," << csv_field(r.support) << "," << r.support_size << "," << to_string(r.l1) << ","
       << to_string(r.ratio) << "," << to_string(r.bound) << "," << to_string(r.gap) << ","
       << to_decimal(r.gap, o.digits) << "," << (r.is_delta ? "true" : "false") << "\n";
  }
  err << "records: " << res.records.size() << "; sharpness margin (smallest non-delta gap): "
      << (res.records.size() > 1 ? to_decimal(res.margin, o.digits) : std::string("n/a"))
      << "; deltas on top: " << (res.deltas_on_top ? "yes" : "no") << "\n";
  if (!res.no_negative_gap || !res.all_non_delta_positive) return kExitViolation;
  return kExitOk;
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  Options o;
  CLI::App app{"Exact discrete Hardy-Littlewood maximal functions and their sharp variation bounds", "hlmax"};
  app.require_subcommand(1);
  app.fallthrough();
  app.add_option("--threads", o.threads, "Worker threads for parallel kernels (0: runtime default)")
      ->check(CLI::NonNegativeNumber);
  app.add_option("--digits", o.digits, "Digits after the decimal point in decimal renderings")
      ->check(CLI::Range(0, 200));

  auto* count = app.add_subcommand("count", "Lattice points in the l1 ball of radius K in Z^D");
  count->add_option("--dim", o.count_dim, "Dimension D")->required();
  count->add_option("--radius", o.count_radius, "Radius K")->required();
  count->add_flag("--enumerate", o.count_enumerate, "Also list the points");

  auto* maxfn = app.add_subcommand("maxfn", "Evaluate a maximal function on [-R, R]^d");
  maxfn->add_option("--input", o.input, "Grid function document (JSON)")->required();
  maxfn->add_option("--geometry", o.geometry, "centered1d | uncentered1d | l1 | cube")->required();
  maxfn->add_option("--box", o.box, "Box radius R")->required();
  maxfn->add_option("--output", o.output, "CSV output file (default stdout)");

  auto* constant = app.add_subcommand("constant", "Certified enclosure of a sharp constant");
  constant->add_option("--kind", o.kind, "centered | uncentered")->required();
  constant->add_option("--dim", o.const_dim, "Dimension")->required();
  constant->add_option("--terms", o.terms, "Series terms K")->required();

  auto* verify = app.add_subcommand("verify", "Check the variation inequality for an input, or run a suite");
  auto* in_opt = verify->add_option("--input", o.input, "Grid function document (JSON)");
  auto* geo_opt = verify->add_option("--geometry", o.geometry, "centered1d | uncentered1d | l1 | cube");
  verify->add_option("--epsilon", o.epsilon, "Stop when successive doublings differ by less (rational)");
  verify->add_option("--rmax", o.rmax, "Largest truncation radius");
  auto* suite_opt = verify->add_option("--suite", o.suite, "lemmas | sharpness | oracle");
  verify->add_option("--seed", o.seed, "Seed for the oracle suite");
  verify->add_option("--json", o.json_path, "Write the JSON summary here ('-' for stdout)");
  suite_opt->excludes(in_opt)->excludes(geo_opt);
  in_opt->needs(geo_opt);

  auto* scan = app.add_subcommand("scan", "Two-point extremizer scan sorted by gap");
  scan->add_option("--geometry", o.geometry, "centered1d | uncentered1d | l1 | cube")->required();
  scan->add_option("--family", o.family, "two-point | delta")->required();
  scan->add_option("--radius", o.scan_radius, "Largest l1 distance between the two points");
  scan->add_option("--box", o.scan_box, "Truncation radius");
  scan->add_option("--dim", o.scan_dim, "Dimension for l1 / cube (default 2)");
  scan->add_option("--terms", o.scan_terms, "Series terms behind the bound");
  scan->add_option("--output", o.output, "CSV output file (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  if (o.threads > 0) omp_set_num_threads(o.threads);

  try {
    if (count->parsed()) return cmd_count(o, out);
    if (maxfn->parsed()) return cmd_maxfn(o, out);
    if (constant->parsed()) return cmd_constant(o, out);
    if (verify->parsed()) {
      if (!o.suite.empty()) return cmd_verify_suite(o, out, err);
      if (o.input.empty()) throw std::invalid_argument("verify needs --input with --geometry, or --suite");
      return cmd_verify_input(o, out, err);
    }
    if (scan->parsed()) return cmd_scan(o, out, err);
  } catch (const EnumerationCapExceeded& e) {
    err << "error: " << e.what() << "\n";
    return kExitCapExceeded;
  } catch (const DimensionMismatch& e) {
    err << "error: " << e.what() << "\n";
    return kExitDimension;
  } catch (const DocumentError& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::out_of_range& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  return kExitUsage;
}

}  // namespace hlmax
