// hyperfield - exact transition-function checks, line-element transformation
// reports, and radial null geodesic runs from one binary.
//
// Exit status: 0 all checks passed, 1 a check failed, 2 usage or
// precondition error.

#include "CLI11.hpp"

#include <cstdlib>
#include <iostream>
#include <string>

#include "hyperfield/commands.hpp"

namespace {

double parse_range_part(const std::string& text, const char* which) {
  try {
    std::size_t used = 0;
    const double value = std::stod(text, &used);
    if (used != text.size()) throw std::invalid_argument("trailing characters");
    return value;
  } catch (const std::exception&) {
    throw std::invalid_argument(std::string("invalid range ") + which + ": " + text);
  }
}

void parse_range(const std::string& text, std::optional<double>& lo, std::optional<double>& hi) {
  const std::size_t colon = text.find(':');
  if (colon == std::string::npos)
    throw std::invalid_argument("range must be lo:hi, got: " + text);
  lo = parse_range_part(text.substr(0, colon), "lower bound");
  hi = parse_range_part(text.substr(colon + 1), "upper bound");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"hypercontinuous transition functions and Schwarzschild line elements"};
  app.require_subcommand(1);
  app.set_config("--config", "", "read options from a key = value file");

  std::string G = "1", M = "1", c = "1";
  std::string window = "4";
  int max_terms = 32;
  std::string out_dir = "out";
  std::string format = "csv";
  std::uint64_t seed = 0;
  app.add_option("--G", G, "gravitational constant (exact rational)")->capture_default_str();
  app.add_option("--M", M, "mass (exact rational)")->capture_default_str();
  app.add_option("--c", c, "speed of light (exact rational)")->capture_default_str();
  app.add_option("--window", window, "truncation window (exact rational > 0)")
      ->capture_default_str();
  app.add_option("--max-terms", max_terms, "series term cap")->capture_default_str();
  app.add_option("--out", out_dir, "output directory")->capture_default_str();
  app.add_option("--format", format, "sample table format")
      ->check(CLI::IsMember({"csv", "json"}))
      ->capture_default_str();
  app.add_option("--seed", seed, "sampling seed (HF_SEED env overrides)")->capture_default_str();

  CLI::App* transition = app.add_subcommand(
      "transition", "junction continuity and sup-bound checks for H_a, plus a sample table");
  transition->fallthrough();
  std::string a = "1";
  long sup_samples = 100001;
  long table_samples = 501;
  std::string range;
  double float_rel_tol = 1e-12;
  transition->add_option("--a", a, "transition parameter a > 0 (exact rational)")
      ->capture_default_str();
  transition->add_option("--samples", sup_samples, "points for the sup-bound scan")
      ->capture_default_str();
  transition->add_option("--table-samples", table_samples, "rows in the emitted sample table")
      ->capture_default_str();
  transition->add_option("--range", range, "scan range lo:hi (default -8a:4a)");
  transition->add_option("--float-tol", float_rel_tol, "relative tolerance for float junctions")
      ->capture_default_str();
  bool check_bound = true;
  transition->add_flag("--check-bound,!--no-check-bound", check_bound,
                       "run the sup-bound scan and gate the exit status on it");

  CLI::App* transform = app.add_subcommand(
      "transform", "transform the line element at radius R and standardize by regime");
  transform->fallthrough();
  std::string R = "4", dR_order = "3", sin_theta = "1/2";
  transform->add_option("--R", R, "radius (exact rational > 0)")->capture_default_str();
  transform->add_option("--dr-order", dR_order, "dR = e^order in the infinitesimal checks")
      ->capture_default_str();
  transform->add_option("--sin-theta", sin_theta, "value of sin(theta) (exact rational)")
      ->capture_default_str();

  CLI::App* geodesic =
      app.add_subcommand("geodesic", "integrate a radial null ray and classify the outcome");
  geodesic->fallthrough();
  std::string chart = "u", direction = "in";
  double from = 4;
  std::optional<double> to;
  hf::IntegratorConfig integrator;
  geodesic->add_option("--chart", chart, "coordinate chart")
      ->check(CLI::IsMember({"t", "u"}))
      ->capture_default_str();
  geodesic->add_option("--dir", direction, "ray direction")
      ->check(CLI::IsMember({"in", "out"}))
      ->capture_default_str();
  geodesic->add_option("--from", from, "start radius")->capture_default_str();
  geodesic->add_option("--to", to, "target radius (default: half the Schwarzschild radius)");
  geodesic->add_option("--rel-tol", integrator.rel_tol, "per-step relative error target")
      ->capture_default_str();
  geodesic->add_option("--initial-step", integrator.initial_step, "first |dR| attempted")
      ->capture_default_str();
  geodesic->add_option("--min-step", integrator.min_step, "step floor; below it = blow-up")
      ->capture_default_str();
  geodesic->add_option("--ceiling", integrator.coordinate_ceiling, "|T| ceiling; above it = blow-up")
      ->capture_default_str();
  geodesic->add_option("--max-steps", integrator.max_steps, "step budget")->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;  // help/version exit cleanly; parse errors are usage errors
  }

  try {
    if (const char* env_seed = std::getenv("HF_SEED")) {
      char* end = nullptr;
      const unsigned long long parsed = std::strtoull(env_seed, &end, 10);
      if (end == env_seed || *end != '\0')
        throw std::invalid_argument(std::string("HF_SEED is not an integer: ") + env_seed);
      seed = parsed;
    }

    hf::RunConfig config;
    config.constants = hf::PhysicalConstants(hf::Rational::parse(G), hf::Rational::parse(M),
                                             hf::Rational::parse(c));
    config.policy = hf::TruncationPolicy(hf::Rational::parse(window), max_terms);
    config.out_dir = out_dir;
    config.sample_format = format == "csv" ? hf::OutputFormat::Csv : hf::OutputFormat::Json;
    config.seed = seed;

    bool pass = false;
    if (transition->parsed()) {
      hf::TransitionArgs args;
      args.a = hf::Rational::parse(a);
      args.sup_samples = sup_samples;
      args.table_samples = table_samples;
      args.float_rel_tol = float_rel_tol;
      args.check_bound = check_bound;
      if (!range.empty()) parse_range(range, args.lo, args.hi);
      pass = hf::run_transition(config, args);
      std::cout << "transition a=" << args.a.to_string() << ": "
                << (pass ? "PASS" : "FAIL") << "\n";
    } else if (transform->parsed()) {
      hf::TransformArgs args;
      args.R = hf::Rational::parse(R);
      args.dR_order = hf::Rational::parse(dR_order);
      args.sin_theta = hf::Rational::parse(sin_theta);
      const hf::Regime regime = hf::regime_classify(config.constants, args.R);
      pass = hf::run_transform(config, args);
      std::cout << "transform R=" << args.R.to_string() << " (" << hf::to_string(regime)
                << "): " << (pass ? "PASS" : "FAIL") << "\n";
    } else if (geodesic->parsed()) {
      hf::GeodesicArgs args;
      args.chart = chart == "t" ? hf::Chart::T : hf::Chart::U;
      args.direction = direction == "in" ? hf::RayDirection::Ingoing : hf::RayDirection::Outgoing;
      args.from = from;
      args.to = to;
      args.integrator = integrator;
      pass = hf::run_geodesic(config, args);
      std::cout << "geodesic chart=" << chart << " dir=" << direction << ": "
                << (pass ? "PASS" : "FAIL") << "\n";
    }
    return pass ? 0 : 1;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
