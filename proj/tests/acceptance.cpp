// Acceptance battery: one PASS/FAIL line per criterion; exit status 1 if any fails.

#include "hlmax/constants.hpp"
#include "hlmax/lattice.hpp"
#include "hlmax/maxop.hpp"
#include "hlmax/varanalysis.hpp"
#include "hlmax/verify.hpp"

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <sys/wait.h>

using namespace hlmax;

namespace {

// Tolerances and sizes, pinned.
constexpr double kLogConcavitySeconds = 60.0;
constexpr std::int64_t kDeltaR = 10000;
constexpr int kRandomCount = 500;
constexpr std::int64_t kRandomSupport = 20;
constexpr std::int64_t kCubeDeltaR = 200;
constexpr std::int64_t kEnclosureTerms = 10000;
constexpr std::int64_t kByDistanceK = 40;
constexpr std::size_t kOracleInstances = 100;
constexpr std::int64_t kScanDistance = 5;
constexpr std::int64_t kScanR = 1000;

struct Outcome {
  bool pass;
  std::string detail;
};

int failures = 0;

void criterion(int id, const std::string& title, const std::function<Outcome()>& body) {
  const auto t0 = std::chrono::steady_clock::now();
  Outcome o;
  try {
    o = body();
  } catch (const std::exception& e) {
    o = {false, std::string("exception: ") + e.what()};
  }
  const double s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  if (!o.pass) ++failures;
  std::printf("%s %2d %s: %s [%.1fs]\n", o.pass ? "PASS" : "FAIL", id, title.c_str(), o.detail.c_str(), s);
  std::fflush(stdout);
}

// Counts |x|_1 <= k by scanning the cube; shares nothing with the recurrence.
std::int64_t scan_count(int d, std::int64_t k) {
  std::vector<std::int64_t> x(static_cast<std::size_t>(d), -k);
  std::int64_t n = 0;
  while (true) {
    std::int64_t s = 0;
    for (auto v : x) s += v < 0 ? -v : v;
    if (s <= k) ++n;
    int i = 0;
    while (i < d && x[static_cast<std::size_t>(i)] == k) x[static_cast<std::size_t>(i++)] = -k;
    if (i == d) return n;
    ++x[static_cast<std::size_t>(i)];
  }
}

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  return std::string((std::istreambuf_iterator<char>(in)), {});
}

}  // namespace

int main() {
  criterion(1, "log-concavity d<=6 k<=2000", [] {
    const auto t0 = std::chrono::steady_clock::now();
    std::size_t bad = 0;
    for (int d = 1; d <= 6; ++d) bad += check_log_concavity(d, 2000).size();
    const double s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return Outcome{bad == 0 && s < kLogConcavitySeconds, std::to_string(bad) + " violations"};
  });

  criterion(2, "gap monotonicity d<=4 k<=500", [] {
    std::size_t bad = 0;
    for (int d = 1; d <= 4; ++d) bad += check_gap_monotonicity(d, 500).size();
    return Outcome{bad == 0, std::to_string(bad) + " violations"};
  });

  criterion(3, "counting cross-check", [] {
    std::size_t bad = 0;
    for (int d = 1; d <= 4; ++d) {
      ShellTable t(d, 12);
      for (std::int64_t k = 0; k <= 12; ++k)
        if (t.count(k) != scan_count(d, k)) ++bad;
    }
    ShellTable one(1, 10000);
    for (std::int64_t k = 0; k <= 10000; ++k)
      if (one.count(k) != 2 * k + 1) ++bad;
    ShellTable two(2, 1000);
    for (std::int64_t k = 0; k <= 1000; ++k)
      if (two.count(k) != k * k + (k + 1) * (k + 1)) ++bad;
    return Outcome{bad == 0, std::to_string(bad) + " mismatches"};
  });

  criterion(4, "centered 1-D delta at R=10^4", [] {
    const Rational v = truncated_variation_maxfn(GridFunction::delta(LatticePoint{0}),
                                                 {Geometry::CenteredInterval, 1}, kDeltaR);
    const Rational want = 2 * (1 - Rational(1, 2 * kDeltaR + 1));
    const bool ok = v == want && v <= 2 && 2 - v < Rational(1, 10000);
    return Outcome{ok, "Var = " + to_string(v)};
  });

  std::vector<GridFunction> corpus;
  for (int i = 0; i < kRandomCount; ++i)
    corpus.push_back(random_gridfn(static_cast<std::uint64_t>(i), 1, kRandomSupport, 1 + static_cast<std::size_t>(i % 8), 20));

  criterion(5, "centered 1-D inequality, 500 random", [&] {
    int bad = 0;
    Rational worst = 2;
    for (const auto& f : corpus) {
      auto rec = verify_inequality(f, {Geometry::CenteredInterval, 1}, Rational(1, 1000000), 1 << 14);
      const bool ok = f.support_size() >= 2 ? rec.gap > 0 : rec.gap >= 0;
      if (!ok) ++bad;
      if (f.support_size() >= 2 && rec.gap < worst) worst = rec.gap;
    }
    return Outcome{bad == 0, std::to_string(bad) + " failures; smallest multi-point gap " + to_decimal(worst, 6)};
  });

  criterion(6, "uncentered 1-D chain, same corpus", [&] {
    int bad = 0;
    for (const auto& f : corpus)
      if (!verify_uncentered_var_bound_1d(f, Rational(1, 1000000)).holds()) ++bad;
    return Outcome{bad == 0, std::to_string(bad) + " failures"};
  });

  criterion(7, "uncentered cube d=2", [] {
    bool ok = true;
    for (std::int64_t K : {1, 10, 1000}) ok = ok && uncentered_constant_partial(2, K) == 12 - Rational(8, K + 1);
    const Rational v = truncated_variation_maxfn(GridFunction::delta(LatticePoint{0, 0}),
                                                 {Geometry::UncenteredCube, 2}, kCubeDeltaR);
    ok = ok && v > 12 - Rational(1, 5) && v < 12;
    const auto one = constant_enclosure(1, 10, ConstantKind::UncenteredCube);
    ok = ok && one.lower == 2 && one.upper == 2;
    return Outcome{ok, "Var at R=200 = " + to_decimal(v, 6) + "; C(1) = [" + to_string(one.lower) + ", " +
                           to_string(one.upper) + "]"};
  });

  criterion(8, "centered l1 d=2 enclosure and per-distance sums", [] {
    const auto e = constant_enclosure(2, kEnclosureTerms, ConstantKind::CenteredL1);
    bool ok = e.width() <= Rational(1, 1000);
    auto by = delta_line_variation_by_distance({Geometry::CenteredL1, 2}, kByDistanceK);
    Rational cum = 0;
    int bad = 0;
    for (std::int64_t k = 0; k <= kByDistanceK; ++k) {
      cum += by[static_cast<std::size_t>(k)];
      if (cum != centered_constant_partial(2, k)) ++bad;
    }
    ok = ok && bad == 0;
    return Outcome{ok, "width " + to_decimal(e.width(), 6) + ", [" + to_decimal(e.lower, 6) + ", " +
                           to_decimal(e.upper, 6) + "], " + std::to_string(bad) + " term mismatches"};
  });

  criterion(9, "oracle equivalence, 100 per geometry", [] {
    std::ostringstream d;
    bool ok = true;
    for (auto g : {Geometry::CenteredInterval, Geometry::UncenteredInterval, Geometry::CenteredL1,
                   Geometry::UncenteredCube}) {
      const int dim = g == Geometry::CenteredInterval || g == Geometry::UncenteredInterval ? 1 : 2;
      auto r = oracle_equivalence({g, dim}, 7, kOracleInstances);
      ok = ok && r.instances == kOracleInstances && r.all_agree();
      d << geometry_name(g) << " " << r.value_agreements << "/" << r.points << " ";
    }
    return Outcome{ok, d.str()};
  });

  criterion(10, "two-point uniqueness scan at R=10^3", [] {
    TwoPointFamily fam;
    fam.max_distance = kScanDistance;
    fam.ratios = TwoPointFamily::default_ratios();
    std::ostringstream d;
    bool ok = fam.ratios.size() == 9;
    for (BallSpec spec : {BallSpec{Geometry::CenteredInterval, 1}, BallSpec{Geometry::CenteredL1, 2},
                          BallSpec{Geometry::UncenteredCube, 2}}) {
      auto s = scan_extremizers(spec, fam, kScanR);
      ok = ok && s.all_non_delta_positive && s.no_negative_gap;
      d << geometry_name(spec.geometry) << " margin " << to_decimal(s.margin, 6) << " (" << s.records.size()
        << ") ";
    }
    return Outcome{ok, d.str()};
  });

  criterion(11, "byte-identical CLI output", [] {
    const auto dir = std::filesystem::temp_directory_path() / "hlmax_acceptance";
    std::filesystem::create_directories(dir);
    const std::string doc = (dir / "f.json").string();
    std::ofstream(doc) << R"({"dim": 2, "support": [{"point": [0, 0], "value": "1"}, {"point": [2, -1], "value": "3/7"}]})";
    bool ok = true;
    std::string out[2];
    for (int run = 0; run < 2; ++run) {
      const auto p = dir / ("run" + std::to_string(run));
      std::filesystem::create_directories(p);
      const std::string bin = HLMAX_BINARY;
      const std::string cmds[] = {
          bin + " --threads " + std::to_string(run + 1) + " maxfn --input " + doc + " --geometry cube --box 12 --output " +
              (p / "maxfn.csv").string(),
          bin + " scan --geometry l1 --family two-point --radius 3 --box 40 --output " + (p / "scan.csv").string() +
              " 2>/dev/null",
          bin + " verify --suite oracle --seed 7 --json " + (p / "oracle.json").string() + " >/dev/null",
          bin + " verify --input " + doc + " --geometry l1 --epsilon 1/100 --rmax 64 --json " +
              (p / "verify.json").string() + " >/dev/null",
      };
      for (const auto& c : cmds) ok = ok && WEXITSTATUS(std::system(c.c_str())) == 0;
      for (const char* f : {"maxfn.csv", "scan.csv", "oracle.json", "verify.json"}) out[run] += slurp(p / f) + '\x1e';
    }
    ok = ok && !out[0].empty() && out[0] == out[1];
    return Outcome{ok, std::to_string(out[0].size()) + " bytes compared"};
  });

  std::printf("%s: %d failing\n", failures ? "FAIL" : "PASS", failures);
  return failures ? 1 : 0;
}
