// numrad: command-line front end for the numerical radius workbench.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "numrad/block_bounds.hpp"
#include "numrad/harness.hpp"
#include "numrad/io.hpp"
#include "numrad/linalg.hpp"
#include "numrad/product_bounds.hpp"
#include "numrad/radius.hpp"
#include "numrad/rng.hpp"
#include "numrad/scalar_bounds.hpp"

using namespace numrad;

namespace {

struct CheckParams {
  double alpha = 0.5;
  double beta = 2.0;
  double p = 2.0;
  double a = 1.0;
  double b = 1.0;
  std::uint64_t seed = 1;
};

Vector vector_from_json(const Json& j) {
  Vector v;
  for (const Json& z : j) {
    if (!z.is_array() || z.size() != 2) throw Error(ErrorCode::ParseError, "vector entries must be [re, im]");
    v.emplace_back(z[0].get<double>(), z[1].get<double>());
  }
  return v;
}

// Reads "x", "y", "e" from the input file when present, else draws seeded vectors.
Vector vector_or_random(const Json& in, const char* key, std::size_t n, SplitMix64& rng, bool unit) {
  if (in.contains(key)) return vector_from_json(in.at(key));
  return unit ? rng.unit_vector(n) : rng.complex_normal_vector(n);
}

const ComplexMatrix& need(const std::optional<ComplexMatrix>& m, const char* what) {
  if (!m) throw Error(ErrorCode::ArityMismatch, std::string("input file needs ") + what);
  return *m;
}

std::vector<BoundRecord> evaluate(const std::string& id, const Json& in, const CheckParams& prm) {
  std::optional<ComplexMatrix> t, a, b;
  if (in.contains("rows")) t = matrix_from_json(in);
  if (in.contains("matrix")) t = matrix_from_json(in.at("matrix"));
  if (in.contains("A")) a = matrix_from_json(in.at("A"));
  if (in.contains("B")) b = matrix_from_json(in.at("B"));
  if (!a && t) a = t;
  SplitMix64 rng(prm.seed);
  const PowerFunction f(prm.alpha), g(1.0 - prm.alpha);

  auto pick = [&](std::vector<BoundRecord> recs) {
    std::vector<BoundRecord> out;
    for (auto& r : recs)
      if (r.bound_id == id) out.push_back(std::move(r));
    return out;
  };

  if (id == "eq1.1.lower" || id == "eq1.1.upper") {
    auto [lo, up] = eq11_sandwich(need(t, "a matrix"));
    return pick({lo, up});
  }
  if (id == "eq1.2") return {kittaneh2003(need(t, "a matrix"))};
  if (id == "eq1.3.lower" || id == "eq1.3.upper") {
    auto [lo, up] = kittaneh2005(need(t, "a matrix"));
    return pick({lo, up});
  }
  if (id == "eq1.4.first" || id == "eq1.4.second") {
    auto [r1, r2] = yamazaki(need(t, "a matrix"));
    return pick({r1, r2});
  }
  if (id == "eq1.5.as_printed") return {dragomir(need(t, "a matrix"), DragomirVariant::as_printed)};
  if (id == "eq1.5.squared_norm") return {dragomir(need(t, "a matrix"), DragomirVariant::squared_norm)};
  if (id == "eq2.4") {
    const auto& m = need(a, "a matrix");
    const Vector x = vector_or_random(in, "x", m.rows(), rng, false);
    const Vector y = vector_or_random(in, "y", m.rows(), rng, false);
    return {mixed_schwarz_gap(m, x, y, prm.alpha)};
  }
  if (id == "buzano.key") {
    const std::size_t n = t ? t->rows() : vector_from_json(in.at("x")).size();
    const Vector x = vector_or_random(in, "x", n, rng, false);
    const Vector y = vector_or_random(in, "y", n, rng, false);
    const Vector e = vector_or_random(in, "e", n, rng, true);
    return {buzano_key_check(x, y, e)};
  }
  if (id == "pmi") return power_mean_checks(prm.a, prm.b, prm.alpha, prm.p);
  if (id == "young") return power_young_checks(prm.a, prm.b, prm.beta / (prm.beta - 1.0), prm.beta, prm.p);
  if (id == "mccarty") {
    const auto& m = need(a, "a positive matrix");
    return {mccarty_check(m, vector_or_random(in, "x", m.rows(), rng, true), prm.p)};
  }
  if (id == "lem7.refined" || id == "lem7.outer") {
    const auto& m = need(a, "a positive matrix");
    auto [r1, r2] = refined_cauchy_schwarz(m, vector_or_random(in, "x", m.rows(), rng, true),
                                           vector_or_random(in, "y", m.rows(), rng, true), prm.p);
    return pick({r1, r2});
  }
  if (id == "cor5") return {cor5_bound(need(t ? t : a, "a matrix"), prm.p)};
  if (id == "lem4.positivity") {
    const auto& m = need(t ? t : a, "a matrix");
    return {block_positivity_record(
        block_positivity_check(absolute_value(m), absolute_value(m.adjoint()), m, prm.seed))};
  }

  const auto& ma = need(a, "\"A\"");
  const auto& mb = need(b, "\"B\"");
  if (id == "lem5") {
    const Vector x = vector_or_random(in, "x", ma.rows(), rng, false);
    const Vector y = vector_or_random(in, "y", ma.rows(), rng, false);
    return {kittaneh_fg_gap(ma, mb, x, y, f, g)};
  }
  if (id == "fact1") return {norm_sum_estimate(ma, mb)};
  if (id == "fact2") return {fact2_check(ma, mb)};
  if (id == "fact3") return {spectral_radius_product_estimate(ma, mb)};
  if (id == "eq2.1.first" || id == "eq2.1.second") {
    auto [r1, r2] = thm1_bounds({ma, mb, f, g, 1.0, std::nullopt});
    return pick({r1, r2});
  }
  if (id == "eq3.2") {
    auto [r1, r2] = cor1_alpha_bounds(ma, mb, prm.alpha);
    return {r1, r2};
  }
  if (id == "eq3.3") return {cor2_bound(ma, mb)};
  const HolderPair holder(prm.beta / (prm.beta - 1.0), prm.beta);
  if (id == "eq3.4.first" || id == "eq3.4.second" || id == "eq3.5") {
    auto [r1, r2, r3] = thm2_bounds({ma, mb, f, g, prm.p, holder});
    return pick({r1, r2, r3});
  }
  if (id == "eq3.6") return {thm3_bound(ma, mb, f, g, prm.p, holder)};
  if (id == "thm4") return {thm4_bound(ma, mb, prm.p)};
  group_of(id);  // throws UnknownBoundId for unknown ids
  throw Error(ErrorCode::ArityMismatch, "bound '" + id + "' runs on partitions; use the block subcommand");
}

int run_compute(const std::string& path, const std::string& what, std::optional<double> tol) {
  const ComplexMatrix t = matrix_from_json(read_json_file(path));
  Json out;
  if (what == "w") {
    const RadiusEstimate e = tol ? numerical_radius(t, *tol) : numerical_radius(t);
    out = {{"quantity", "w"},
           {"value", e.value},
           {"certified_error", e.certified_error},
           {"argmax_angle", e.argmax_angle},
           {"iterations", e.iterations}};
  } else if (what == "r") {
    out = {{"quantity", "r"}, {"value", spectral_radius(t)}};
  } else if (what == "norm") {
    out = {{"quantity", "norm"}, {"value", operator_norm(t)}};
  } else if (what == "ell") {
    out = {{"quantity", "ell"}, {"value", min_gauge(t)}};
  } else if (what == "aluthge") {
    out = {{"quantity", "aluthge"}, {"matrix", to_json(aluthge(t))}};
  } else {
    throw Error(ErrorCode::InvalidParameters, "unknown quantity '" + what + "'");
  }
  std::cout << out.dump(2) << '\n';
  return 0;
}

int run_check(const std::string& path, const std::string& bound, const CheckParams& prm) {
  const Json in = read_json_file(path);
  Json out = Json::array();
  for (const auto& r : evaluate(bound, in, prm)) out.push_back(to_json(r));
  std::cout << (out.size() == 1 ? out[0] : out).dump(2) << '\n';
  return 0;
}

int run_block(const std::string& path, const std::string& scheme_name, double alpha, std::optional<double> tol) {
  const BlockPartition p = partition_from_json(read_json_file(path));
  const double t = tol ? *tol : default_tolerance(operator_norm(p.assemble()));
  const PinchScheme scheme{parse_scheme(scheme_name), PowerFunction(alpha), PowerFunction(1.0 - alpha)};
  const Json out{{"scheme", scheme_name}, {"pinch", to_json(pinch(p, scheme, t))}, {"record", to_json(block_bound(p, scheme, t))}};
  std::cout << out.dump(2) << '\n';
  return 0;
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw Error(ErrorCode::ParseError, "cannot write " + path);
  f << text;
}

int run_sweep(const std::string& config_path, std::optional<std::string> report_path,
              std::optional<std::string> csv_path) {
  SuiteConfig cfg = parse_suite_config(read_json_file(config_path));
  if (const char* env = std::getenv("NUMRAD_SEED"); env && *env) {
    try {
      cfg.seed = std::stoull(env);
    } catch (const std::exception&) {
      throw Error(ErrorCode::ParseError, "NUMRAD_SEED must be an unsigned integer");
    }
  }
  if (report_path) cfg.report_path = *report_path;
  if (csv_path) cfg.csv_path = *csv_path;

  const SweepReport report = run_suite(cfg);
  write_file(cfg.report_path, to_json(report).dump(2) + "\n");
  write_file(cfg.csv_path, tightness_csv(tightness_table(report)));

  std::size_t trials = 0, expected = 0;
  for (const auto& b : report.bounds) {
    trials += b.trials;
    expected += b.expected_violations;
    if (b.unexpected_violations > 0 || b.errors > 0)
      std::cerr << b.bound_id << ": " << b.unexpected_violations << " unexpected violations, " << b.errors
                << " errors\n";
  }
  std::cout << "bounds " << report.bounds.size() << ", trials " << trials << ", expected violations " << expected
            << ", unexpected violations " << report.total_unexpected() << ", errors " << report.total_errors()
            << "\nreport: " << cfg.report_path << "\ntightness: " << cfg.csv_path << '\n';
  return report.total_unexpected() == 0 ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Numerical radius workbench"};
  app.require_subcommand(1);

  std::string path, what = "w", bound, scheme, config;
  std::optional<double> tol;
  std::optional<std::string> report_path, csv_path;
  CheckParams prm;
  double block_alpha = 0.5;

  auto* compute = app.add_subcommand("compute", "w, r, norm, ell or the Aluthge transform of a matrix");
  compute->add_option("matrix", path, "matrix JSON file")->required();
  compute->add_option("--what", what, "w | r | norm | ell | aluthge");
  compute->add_option("--tol", tol, "numerical radius tolerance");

  auto* check = app.add_subcommand("check", "evaluate one bound on a matrix or pair file");
  check->add_option("input", path, "matrix or {\"A\", \"B\"} JSON file")->required();
  check->add_option("--bound", bound, "bound id")->required();
  check->add_option("--alpha", prm.alpha, "f exponent / mixing weight (default 0.5)");
  check->add_option("--beta", prm.beta, "Holder beta; alpha = beta/(beta-1) (default 2)");
  check->add_option("--p", prm.p, "power p (default 2)");
  check->add_option("--a", prm.a, "scalar a for pmi/young");
  check->add_option("--b", prm.b, "scalar b for pmi/young");
  check->add_option("--seed", prm.seed, "seed for vectors not given in the input file");

  auto* sweep = app.add_subcommand("sweep", "run a randomized suite; exit 0 iff no unexpected violations");
  sweep->add_option("--config", config, "suite JSON")->required();
  sweep->add_option("--report", report_path, "report JSON path (overrides config)");
  sweep->add_option("--csv", csv_path, "tightness CSV path (overrides config)");

  auto* block = app.add_subcommand("block", "pinch a block partition and bound its numerical radius");
  block->add_option("partition", path, "partition JSON file")->required();
  block->add_option("--scheme", scheme, "t1 | t2 | t3 | a | b | c | d")->required();
  block->add_option("--alpha", block_alpha, "f = t^alpha, g = t^(1-alpha) for schemes c, d");
  block->add_option("--tol", tol, "numerical radius tolerance");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*compute) return run_compute(path, what, tol);
    if (*check) return run_check(path, bound, prm);
    if (*sweep) return run_sweep(config, report_path, csv_path);
    if (*block) return run_block(path, scheme, block_alpha, tol);
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
  return 0;
}
