// Acceptance runner: one PASS/FAIL line per criterion, exit status 1 if any fails.

#include <chrono>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "numrad/block_bounds.hpp"
#include "numrad/generators.hpp"
#include "numrad/harness.hpp"
#include "numrad/io.hpp"
#include "numrad/product_bounds.hpp"
#include "numrad/radius.hpp"
#include "numrad/scalar_bounds.hpp"
#include "oracles.hpp"

using namespace numrad;
namespace fs = std::filesystem;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

struct Options {
  std::string cli;
  std::string config;
  fs::path workdir;
};

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

std::string fixed(double v, int digits = 3) {
  std::ostringstream s;
  s.setf(std::ios::fixed);
  s.precision(digits);
  s << v;
  return s.str();
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// Runs `numrad sweep` and returns its exit status and wall time.
std::pair<int, double> run_sweep(const Options& o, const std::string& config, const fs::path& report,
                                 const fs::path& csv) {
  const std::string cmd = "\"" + o.cli + "\" sweep --config \"" + config + "\" --report \"" + report.string() +
                          "\" --csv \"" + csv.string() + "\" > \"" + (report.string() + ".log") + "\" 2>&1";
  const auto t0 = Clock::now();
  const int status = std::system(cmd.c_str());
  return {status, seconds_since(t0)};
}

bool within(double v, double target, double tol) { return std::abs(v - target) <= tol; }

bool holds_within(const BoundRecord& r, double tol) { return r.lhs <= r.rhs + tol; }

// ---------------------------------------------------------------------------------------------

Outcome sharp_case() {
  const auto t0 = Clock::now();
  ComplexMatrix j(2, 2);
  j(0, 1) = 1.0;
  OperatorProfile p(j);
  const double w = numerical_radius(j).value;
  const BoundRecord k = kittaneh2003(p);
  const auto [lower, upper] = kittaneh2005(p);
  const auto [first, second] = yamazaki(p);
  const double aluthge_w = p.aluthge_radius();
  const double elapsed = seconds_since(t0);

  const bool ok = within(w, 0.5, 1e-9) && within(k.rhs, 0.5, 1e-9) && within(k.lhs, k.rhs, 1e-9) &&
                  within(lower.lhs, 0.25, 1e-9) && within(lower.rhs, 0.25, 1e-9) && within(first.rhs, 0.5, 1e-9) &&
                  within(aluthge_w, 0.0, 1e-9) && elapsed < 1.0;
  return {ok, "w=" + format_real(w) + " eq1.2_rhs=" + format_real(k.rhs) + " eq1.3_lower=" + format_real(lower.lhs) +
                  " yamazaki_first=" + format_real(first.rhs) + " time=" + fixed(elapsed) + "s"};
}

Outcome oracle_equivalence() {
  const auto t0 = Clock::now();
  const GeneratorKind kinds[] = {GeneratorKind::ginibre, GeneratorKind::nilpotent_shift, GeneratorKind::normal,
                                 GeneratorKind::ginibre, GeneratorKind::hermitian};
  double worst = 0.0;
  std::size_t bad = 0;
  for (std::size_t i = 0; i < 200; ++i) {
    const std::size_t n = 1 + i % 6;
    const GeneratorSpec spec{kinds[i % 5], n, {}, 0xACCE55 + i, 1.0};
    const ComplexMatrix t = std::get<ComplexMatrix>(generate(spec));
    const double gap = std::abs(numerical_radius(t).value - oracle::dense_grid_radius(t, 1'000'000));
    worst = std::max(worst, gap);
    if (gap > 1e-7) ++bad;
  }
  const double elapsed = seconds_since(t0);
  return {bad == 0 && elapsed < 120.0,
          "200 matrices, max |w - grid| = " + format_real(worst) + ", mismatches=" + std::to_string(bad) +
              " time=" + fixed(elapsed, 1) + "s"};
}

Outcome full_suite(const Options& o, const fs::path& report, double& sweep_seconds) {
  const auto [status, elapsed] = run_sweep(o, o.config, report, o.workdir / "tightness.csv");
  sweep_seconds = elapsed;
  if (!fs::exists(report)) return {false, "sweep produced no report (exit " + std::to_string(status) + ")"};
  const Json r = read_json_file(report.string());
  const std::size_t trials_per = r["config"]["trials_per_bound"].get<std::size_t>();
  std::vector<std::string> offenders;
  std::size_t bounds = 0;
  for (const Json& b : r["bounds"]) {
    ++bounds;
    const std::string id = b["bound_id"];
    if (id == expected_violation_id) continue;
    const auto u = b["unexpected_violations"].get<std::size_t>();
    if (u > 0) offenders.push_back(id + ":" + std::to_string(u) + "/" + std::to_string(b["trials"].get<std::size_t>()));
  }
  const auto errors = r["summary"]["errors"].get<std::size_t>();
  const bool ok = offenders.empty() && errors == 0 && trials_per >= 500 && elapsed < 600.0;
  std::string detail = std::to_string(bounds) + " bounds, " + std::to_string(trials_per) +
                       " trials each, errors=" + std::to_string(errors) + " time=" + fixed(elapsed, 1) + "s";
  if (!offenders.empty()) {
    detail += ", unexpected violations in";
    for (const auto& s : offenders) detail += " " + s;
  }
  return {ok, detail};
}

Outcome typo_detection(const Options& o) {
  const fs::path cfg = fs::path(o.config).parent_path() / "hermitian_scaled.json";
  const fs::path report = o.workdir / "hermitian_scaled_report.json";
  run_sweep(o, cfg.string(), report, o.workdir / "hermitian_scaled.csv");
  if (!fs::exists(report)) return {false, "sweep produced no report"};
  const Json r = read_json_file(report.string());
  std::size_t printed_violations = 0, fixed_violations = 0, printed_trials = 0, fixed_trials = 0;
  for (const Json& b : r["bounds"]) {
    const std::size_t v = b["expected_violations"].get<std::size_t>() + b["unexpected_violations"].get<std::size_t>();
    if (b["bound_id"] == "eq1.5.as_printed") {
      printed_violations = v;
      printed_trials = b["trials"];
    }
    if (b["bound_id"] == "eq1.5.squared_norm") {
      fixed_violations = v;
      fixed_trials = b["trials"];
    }
  }
  return {printed_violations >= 1 && fixed_violations == 0 && fixed_trials > 0,
          "as_printed " + std::to_string(printed_violations) + "/" + std::to_string(printed_trials) +
              " violated, squared_norm " + std::to_string(fixed_violations) + "/" + std::to_string(fixed_trials)};
}

Outcome block_hierarchy() {
  const SchemeId schemes[] = {SchemeId::t1, SchemeId::t2, SchemeId::t3, SchemeId::a,
                              SchemeId::b,  SchemeId::c,  SchemeId::d};
  std::map<std::string, std::size_t> failures;
  std::map<std::string, double> worst_excess;
  double worst_t3_slack = 0.0, worst_closed_gap = 0.0;
  SplitMix64 shape_rng(0xB10C);
  for (std::size_t i = 0; i < 500; ++i) {
    const auto k = static_cast<std::size_t>(shape_rng.uniform_int(1, 3));
    std::vector<std::size_t> sizes{k, k};
    if (i % 2 == 1) sizes = {k, static_cast<std::size_t>(shape_rng.uniform_int(1, 3)), k};
    const GeneratorSpec spec{GeneratorKind::block_partition, 0, sizes, 0x5EED0000 + i, 1.0};
    BlockPartition p = std::get<BlockPartition>(generate(spec));
    const double tol = default_tolerance(operator_norm(p.assemble()));
    const double e = shape_rng.uniform();
    for (SchemeId s : schemes) {
      const BoundRecord r = block_bound(p, {s, PowerFunction(e), PowerFunction(1.0 - e)}, tol);
      if (!holds_within(r, 1e-8)) {
        ++failures[r.bound_id];
        worst_excess[r.bound_id] = std::max(worst_excess[r.bound_id], r.lhs - r.rhs);
      }
    }
    if (sizes.size() == 2) worst_closed_gap = std::max(worst_closed_gap, closed_form_pinch_gap(p, tol));

    for (std::size_t a = 0; a < p.count(); ++a)
      for (std::size_t b = 0; b < p.count(); ++b)
        if (a != b) p.blocks[a][b] = ComplexMatrix(sizes[a], sizes[b]);
    const BoundRecord t3 = block_bound(p, {SchemeId::t3, std::nullopt, std::nullopt}, tol);
    worst_t3_slack = std::max(worst_t3_slack, std::abs(t3.slack));
  }
  const bool ok = failures.empty() && worst_t3_slack <= 2e-9 && worst_closed_gap <= 1e-10;
  std::string detail = "500 partitions, t3 diagonal slack=" + format_real(worst_t3_slack) +
                       ", closed-form gap=" + format_real(worst_closed_gap);
  if (failures.empty()) {
    detail += ", all schemes hold";
  } else {
    detail += ", failing schemes:";
    for (const auto& [id, n] : failures) detail += " " + id + "=" + std::to_string(n) + "/500(max excess " + format_real(worst_excess[id]) + ")";
  }
  return {ok, detail};
}

Outcome chain_orderings(const Options& o) {
  // Every single-operator and intertwined instance the default sweep draws for these bounds.
  const SuiteConfig c = parse_suite_config(read_json_file(o.config));
  const auto specs = expand_generators(c);
  std::vector<GeneratorSpec> singles, intertwined;
  for (const auto& s : specs) {
    if (arity_of(s.kind) == Arity::single) singles.push_back(s);
    if (s.kind == GeneratorKind::intertwined_pair) intertwined.push_back(s);
  }
  std::size_t checked = 0, bad = 0;
  auto per = [&](std::size_t m) { return m == 0 ? 0 : (c.trials_per_bound + m - 1) / m; };
  for (const auto& base : singles)
    for (std::size_t k = 0; k < per(singles.size()); ++k) {
      GeneratorSpec s = base;
      s.seed += k;
      OperatorProfile p(std::get<ComplexMatrix>(generate(s)));
      const auto [first, second] = yamazaki(p);
      const BoundRecord kit = kittaneh2003(p);
      ++checked;
      if (!holds_within(first, 1e-8) || !holds_within(second, 1e-8) || !(kit.rhs <= p.norm() + 1e-8)) ++bad;
    }
  for (const auto& base : intertwined)
    for (std::size_t k = 0; k < per(intertwined.size()); ++k) {
      GeneratorSpec s = base;
      s.seed += k;
      const auto pr = std::get<MatrixPair>(generate(s));
      SplitMix64 rng(s.seed);
      const double e = rng.uniform();
      const auto [first, second] = thm1_bounds({pr.a, pr.b, PowerFunction(e), PowerFunction(1.0 - e), 1.0, std::nullopt});
      ++checked;
      if (!holds_within(second, 1e-8)) ++bad;
    }
  return {bad == 0, std::to_string(checked) + " instances, " + std::to_string(bad) + " out of order"};
}

Outcome lemma_suites() {
  constexpr std::size_t N = 1000;
  std::map<std::string, std::size_t> bad;
  auto tally = [&](const std::string& name, bool ok) { bad[name] += ok ? 0 : 1; };
  auto spec = [](GeneratorKind k, std::size_t i, std::uint64_t salt) {
    return GeneratorSpec{k, 2 + i % 7, {}, salt * 100000 + i, 1.0};
  };

  for (std::size_t i = 0; i < N; ++i) {
    SplitMix64 rng(0x1E44A000 + i);
    {
      const ComplexMatrix a = std::get<ComplexMatrix>(generate(spec(GeneratorKind::ginibre, i, 1)));
      const std::size_t n = a.rows();
      tally("eq2.4", holds(mixed_schwarz_gap(a, rng.complex_normal_vector(n), rng.complex_normal_vector(n), rng.uniform())));
      const Vector x = rng.complex_normal_vector(n), y = rng.complex_normal_vector(n);
      tally("buzano.key", holds(buzano_key_check(x, y, rng.unit_vector(n))));
      const ComplexMatrix b = std::get<ComplexMatrix>(generate(spec(GeneratorKind::ginibre, i, 2)));
      tally("fact3", holds(spectral_radius_product_estimate(a, b)));
    }
    {
      const auto pr = std::get<MatrixPair>(generate(spec(GeneratorKind::intertwined_pair, i, 3)));
      const std::size_t n = pr.a.rows();
      const double e = rng.uniform();
      const BoundRecord r = kittaneh_fg_gap(pr.a, pr.b, rng.complex_normal_vector(n), rng.complex_normal_vector(n),
                                            PowerFunction(e), PowerFunction(1.0 - e));
      tally("lem5", r.preconditions_met && holds(r));
    }
    {
      const ComplexMatrix a = std::get<ComplexMatrix>(generate(spec(GeneratorKind::positive, i, 4)));
      const std::size_t n = a.rows();
      for (double p : {2.0, 3.0, 4.0}) {
        const auto [refined, outer] = refined_cauchy_schwarz(a, rng.complex_normal_vector(n), rng.complex_normal_vector(n), p);
        tally("lem7", holds(refined) && holds(outer));
      }
    }
    {
      const auto pr = std::get<MatrixPair>(generate(spec(GeneratorKind::contraction_pair, i, 5)));
      tally("fact1", holds(norm_sum_estimate(pr.a, pr.b)));
      tally("fact2", holds(fact2_check(pr.a, pr.b)));
    }
    {
      // [[A, C^*], [C, B]] with C = B^{1/2} K A^{1/2}: positive exactly when ‖K‖ ≤ 1.
      const std::size_t n = 1 + i % 4, m = 1 + (i / 4) % 4;
      auto definite = [&](std::size_t d) {
        const ComplexMatrix g = std::get<ComplexMatrix>(generate({GeneratorKind::ginibre, d, {}, rng.next(), 1.0}));
        return gram(g) + 0.1 * ComplexMatrix::identity(d);
      };
      const ComplexMatrix a = definite(n), b = definite(m);
      ComplexMatrix k(m, n);
      for (std::size_t r = 0; r < m; ++r)
        for (std::size_t s = 0; s < n; ++s) k(r, s) = rng.complex_normal();
      const bool should_be_positive = i % 2 == 0;
      const double sigma = should_be_positive ? rng.uniform(0.2, 0.95) : rng.uniform(1.05, 3.0);
      k = (sigma / operator_norm(k)) * k;
      const ComplexMatrix c = positive_power(b, 0.5) * k * positive_power(a, 0.5);
      const BlockPositivity bp = block_positivity_check(a, b, c, rng.next());

      bool ok = bp.positive == should_be_positive && bp.consistent();
      if (should_be_positive) {
        ok = ok && bp.schwarz_all_samples;
      } else {
        // Witness from the top singular pair of K: x = A^{-1/2} v, y = B^{-1/2} u.
        auto inv_sqrt = [](const ComplexMatrix& p) {
          const HermitianEigen e = hermitian_eigen(p);
          std::vector<double> d(e.values.size());
          for (std::size_t q = 0; q < d.size(); ++q) d[q] = 1.0 / std::sqrt(e.values[q]);
          return e.vectors * ComplexMatrix::diagonal(std::span<const double>(d)) * e.vectors.adjoint();
        };
        const HermitianEigen kk = hermitian_eigen(gram(k));
        const Vector v = kk.vectors.column(n - 1);
        const Vector u = normalized(k * v);
        const Vector x = inv_sqrt(a) * v, y = inv_sqrt(b) * u;
        const double lhs = std::norm(inner(c * x, y));
        const double rhs = quadratic_form(a, x).real() * quadratic_form(b, y).real();
        ok = ok && lhs > rhs * (1.0 + 1e-6);
      }
      tally("lem4", ok);
    }
  }
  std::string detail;
  bool ok = true;
  for (const auto& [name, n] : bad) {
    detail += (detail.empty() ? "" : ", ") + name + "=" + std::to_string(n);
    ok = ok && n == 0;
  }
  return {ok, std::to_string(N) + " instances per suite, violations: " + detail};
}

Outcome determinism(const Options& o, const fs::path& first_report, double first_seconds) {
  const fs::path second = o.workdir / "report_rerun.json";
  const auto [status, elapsed] = run_sweep(o, o.config, second, o.workdir / "tightness_rerun.csv");
  if (!fs::exists(first_report) || !fs::exists(second)) return {false, "missing report (exit " + std::to_string(status) + ")"};
  const std::string a = slurp(first_report), b = slurp(second);
  const bool same = !a.empty() && a == b;
  return {same, std::to_string(a.size()) + " bytes, " + (same ? "identical" : "different") + ", runs " +
                    fixed(first_seconds, 1) + "s and " + fixed(elapsed, 1) + "s"};
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"numrad acceptance criteria"};
  Options o;
  std::string workdir = "acceptance";
  std::vector<int> only;
  app.add_option("--cli", o.cli, "path to the numrad executable")->required();
  app.add_option("--config", o.config, "default suite config")->required();
  app.add_option("--workdir", workdir, "directory for sweep reports");
  app.add_option("--only", only, "run only these criteria");
  CLI11_PARSE(app, argc, argv);
  o.workdir = workdir;
  fs::create_directories(o.workdir);

  const std::set<int> selected(only.begin(), only.end());
  auto want = [&](int c) { return selected.empty() || selected.count(c) > 0; };

  const fs::path report = o.workdir / "report.json";
  double sweep_seconds = 0.0;
  const std::vector<std::pair<int, std::function<Outcome()>>> criteria{
      {1, [] { return sharp_case(); }},
      {2, [] { return oracle_equivalence(); }},
      {3, [&] { return full_suite(o, report, sweep_seconds); }},
      {4, [&] { return typo_detection(o); }},
      {5, [] { return block_hierarchy(); }},
      {6, [&] { return chain_orderings(o); }},
      {7, [] { return lemma_suites(); }},
      {8, [&] {
         if (!want(3)) full_suite(o, report, sweep_seconds);
         return determinism(o, report, sweep_seconds);
       }},
  };

  bool all = true;
  for (const auto& [id, run] : criteria) {
    if (!want(id)) continue;
    Outcome out;
    try {
      out = run();
    } catch (const std::exception& e) {
      out = {false, std::string("exception: ") + e.what()};
    }
    all = all && out.pass;
    std::cout << "criterion " << id << ": " << (out.pass ? "PASS" : "FAIL") << " (" << out.detail << ")" << std::endl;
  }
  return all ? 0 : 1;
}
