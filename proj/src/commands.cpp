#include "hyperfield/commands.hpp"

#include <nlohmann/json.hpp>

#include <algorithm>
#include <fstream>
#include <sstream>
#include <utility>
#include <vector>

#include "hyperfield/scan.hpp"

namespace hf {

namespace {

using nlohmann::json;

void write_file(const std::filesystem::path& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open for writing: " + path.string());
  out << content;
  if (!out) throw std::runtime_error("write failed: " + path.string());
}

std::filesystem::path prepare_out_dir(const RunConfig& config) {
  std::filesystem::create_directories(config.out_dir);
  return config.out_dir;
}

json constants_json(const PhysicalConstants& consts) {
  return {{"G", consts.G.to_string()}, {"M", consts.M.to_string()}, {"c", consts.c.to_string()}};
}

json policy_json(const TruncationPolicy& policy) {
  return {{"window", policy.window.to_string()}, {"max_terms", policy.max_terms}};
}

json junction_exact_json(const JunctionReport& r) {
  return {{"pass", r.pass},
          {"value_left_at_zero", r.value_left_at_zero.to_string()},
          {"value_right_at_zero", r.value_right_at_zero.to_string()},
          {"value_left_at_2a", r.value_left_at_2a.to_string()},
          {"value_right_at_2a", r.value_right_at_2a.to_string()},
          {"deriv_left_at_zero", r.deriv_left_at_zero.to_string()},
          {"deriv_right_at_zero", r.deriv_right_at_zero.to_string()},
          {"deriv_left_at_2a", r.deriv_left_at_2a.to_string()},
          {"deriv_right_at_2a", r.deriv_right_at_2a.to_string()}};
}

json junction_float_json(const JunctionReportF& r) {
  return {{"pass", r.pass},
          {"rel_tol", r.rel_tol},
          {"value_left_at_zero", r.value_left_at_zero},
          {"value_right_at_zero", r.value_right_at_zero},
          {"value_left_at_2a", r.value_left_at_2a},
          {"value_right_at_2a", r.value_right_at_2a},
          {"deriv_left_at_zero", r.deriv_left_at_zero},
          {"deriv_right_at_zero", r.deriv_right_at_zero},
          {"deriv_left_at_2a", r.deriv_left_at_2a},
          {"deriv_right_at_2a", r.deriv_right_at_2a}};
}

std::string csv_samples(const std::vector<scan::SampleRow>& rows) {
  std::ostringstream out;
  out.precision(17);
  out << "x,h,hp,branch\n";
  for (const scan::SampleRow& row : rows)
    out << row.x << ',' << row.h << ',' << row.hp << ',' << to_string(row.branch) << '\n';
  return out.str();
}

std::string json_samples(const std::vector<scan::SampleRow>& rows) {
  json arr = json::array();
  for (const scan::SampleRow& row : rows)
    arr.push_back(
        {{"x", row.x}, {"h", row.h}, {"hp", row.hp}, {"branch", to_string(row.branch)}});
  json doc = {{"schema_version", 1}, {"samples", std::move(arr)}};
  return doc.dump(2) + "\n";
}

}  // namespace

std::string to_string(OutputFormat format) { return format == OutputFormat::Csv ? "csv" : "json"; }

bool run_transition(const RunConfig& config, const TransitionArgs& args) {
  const TransitionSpec<Rational> exact_spec(args.a);
  const TransitionSpec<double> float_spec(args.a.to_double());
  const double lo = args.lo.value_or(-8.0 * float_spec.a);
  const double hi = args.hi.value_or(4.0 * float_spec.a);
  if (!(lo < hi)) throw std::invalid_argument("transition: scan range is empty");

  const JunctionReport exact = junction_report(exact_spec);
  const JunctionReportF floated = junction_report_float(float_spec, args.float_rel_tol);
  bool pass = exact.pass && floated.pass;

  json report = {
      {"schema_version", 1},
      {"command", "transition"},
      {"a", args.a.to_string()},
      {"seed", config.seed},
      {"junction_exact", junction_exact_json(exact)},
      {"junction_float", junction_float_json(floated)},
  };

  if (args.check_bound) {
    const SupBoundReport sup = sup_bound_check(float_spec, args.sup_samples, lo, hi);
    const scan::MaxAbsResult random_max =
        scan::max_abs_random(float_spec, lo, hi, args.sup_samples, config.seed);
    const bool random_pass = random_max.value <= sup.bound;
    pass = pass && sup.pass && random_pass;
    report["sup_bound"] = {{"pass", sup.pass && random_pass},
                           {"samples", sup.samples},
                           {"range", {sup.sample_lo, sup.sample_hi}},
                           {"max_sampled", sup.max_sampled},
                           {"argmax_sampled", sup.argmax_sampled},
                           {"random_max", random_max.value},
                           {"random_argmax", random_max.arg},
                           {"extremum_arg", sup.extremum_arg},
                           {"extremum_value", sup.extremum_value},
                           {"bound", sup.bound}};
  }
  report["pass"] = pass;

  const std::filesystem::path dir = prepare_out_dir(config);
  const std::vector<scan::SampleRow> rows =
      scan::transition_table(float_spec, lo, hi, args.table_samples);
  if (config.sample_format == OutputFormat::Csv)
    write_file(dir / "transition_samples.csv", csv_samples(rows));
  else
    write_file(dir / "transition_samples.json", json_samples(rows));

  write_file(dir / "transition_report.json", report.dump(2) + "\n");
  return pass;
}

bool run_transform(const RunConfig& config, const TransformArgs& args) {
  const PhysicalConstants& consts = config.constants;
  const Regime regime = regime_classify(consts, args.R);
  const Rational lambda = lambda_of_R(consts, args.R);

  const LineElement original = schwarzschild_element();
  const LineElement transformed = transform_u_substitution(original);
  const LineElement standardized = standardize_element(transformed, regime);

  // Coefficient series of the transformed element over the ideal point.
  const EvalContext<LCNumber> ideal = ideal_point(consts, args.R, args.sin_theta, config.policy);
  const ElementValues<LCNumber> series = eval_element(transformed, ideal);

  // Standardized values against the regime's reference element.
  const EvalContext<Rational> exact = exact_point(consts, args.R, args.sin_theta, config.policy);
  const ElementValues<Rational> std_values = eval_element(standardized, exact);
  const LineElement reference =
      regime == Regime::Exterior ? schwarzschild_element() : eddington_finkelstein_element();
  const ElementValues<Rational> ref_values = eval_element(reference, exact);
  const bool matches_reference =
      std_values.tt == ref_values.tt && std_values.tr == ref_values.tr &&
      std_values.rr == ref_values.rr && std_values.thth == ref_values.thth &&
      std_values.phph == ref_values.phph;

  // The b-term must vanish exactly wherever f_M takes its 1/(lambda - eps)
  // branch, i.e. anywhere at or inside the horizon.
  const bool b_applicable = regime != Regime::Exterior;
  const bool b_zero = series.rr.is_zero();

  const StandardizationReport st_rep =
      standardization_report(consts, args.R, args.dR_order, config.policy);
  bool fm_pass = false;
  switch (regime) {
    case Regime::Interior:
      fm_pass = st_rep.st_fm && *st_rep.st_fm == Rational(1) / (consts.c * lambda);
      break;
    case Regime::Horizon:
      fm_pass = !st_rep.st_fm && st_rep.st_fm_dR && st_rep.st_fm_dR->is_zero();
      break;
    case Regime::Exterior:
      fm_pass = st_rep.st_fm && st_rep.st_fm->is_zero();
      break;
  }

  // The paper's lambda panel: standard points in all three branch ranges
  // plus monad members around 0.
  const TransitionSpec<LCNumber> ideal_spec = ideal_transition(config.policy);
  const LCNumber eps = LCNumber::epsilon(Rational(1), config.policy);
  const std::vector<LCNumber> panel = {
      LCNumber::from_real(Rational(-2), config.policy),
      LCNumber::from_real(Rational(-1), config.policy),
      LCNumber(config.policy),
      eps,
      LCNumber::from_real(Rational(3), config.policy) * eps,
      LCNumber::from_real(Rational(1), config.policy),
      LCNumber::from_real(Rational(5), config.policy),
  };
  const InfinitesimalProductReport products =
      infinitesimal_product_check(ideal_spec, panel, args.dR_order, consts.c);
  const bool products_pass =
      products.all_infinitesimal &&
      (!products.worst_leading_exponent ||
       *products.worst_leading_exponent >= args.dR_order - Rational(1));

  const bool pass =
      matches_reference && (!b_applicable || b_zero) && fm_pass && products_pass;

  json product_lines = json::array();
  for (const InfinitesimalProductLine& line : products.lines)
    product_lines.push_back(
        {{"lambda", line.lambda},
         {"leading_exponent",
          line.leading_exponent ? json(line.leading_exponent->to_string()) : json(nullptr)},
         {"infinitesimal", line.infinitesimal}});

  json report = {
      {"schema_version", 1},
      {"command", "transform"},
      {"constants", constants_json(consts)},
      {"policy", policy_json(config.policy)},
      {"R", args.R.to_string()},
      {"lambda", lambda.to_string()},
      {"regime", to_string(regime)},
      {"sin_theta", args.sin_theta.to_string()},
      {"transformed",
       {{"chart", to_string(transformed.chart)},
        {"tt", to_prefix(transformed.tt)},
        {"tr", to_prefix(transformed.tr)},
        {"rr", to_prefix(transformed.rr)},
        {"thth", to_prefix(transformed.thth)},
        {"phph", to_prefix(transformed.phph)}}},
      {"series",
       {{"tt", series.tt.to_string()},
        {"tr", series.tr.to_string()},
        {"rr", series.rr.to_string()},
        {"thth", series.thth.to_string()},
        {"phph", series.phph.to_string()}}},
      {"b_term",
       {{"series", series.rr.to_string()},
        {"applicable", b_applicable},
        {"is_zero", b_zero}}},
      {"standardized",
       {{"tt", std_values.tt.to_string()},
        {"tr", std_values.tr.to_string()},
        {"rr", std_values.rr.to_string()},
        {"thth", std_values.thth.to_string()},
        {"phph", std_values.phph.to_string()},
        {"matches_reference", matches_reference},
        {"reference", regime == Regime::Exterior ? "schwarzschild" : "eddington-finkelstein"}}},
      {"f_m",
       {{"raw", st_rep.fm_raw.to_string()},
        {"st", st_rep.st_fm ? json(st_rep.st_fm->to_string()) : json(nullptr)},
        {"unlimited", !st_rep.st_fm.has_value()},
        {"dR_order", args.dR_order.to_string()},
        {"f_m_dR", st_rep.fm_dR.to_string()},
        {"st_f_m_dR", st_rep.st_fm_dR ? json(st_rep.st_fm_dR->to_string()) : json(nullptr)},
        {"pass", fm_pass}}},
      {"infinitesimal_products",
       {{"dR_order", products.dR_order.to_string()},
        {"all_infinitesimal", products.all_infinitesimal},
        {"worst_leading_exponent", products.worst_leading_exponent
                                       ? json(products.worst_leading_exponent->to_string())
                                       : json(nullptr)},
        {"lines", std::move(product_lines)},
        {"pass", products_pass}}},
      {"pass", pass},
  };

  const std::filesystem::path dir = prepare_out_dir(config);
  write_file(dir / "transform_report.json", report.dump(2) + "\n");
  write_file(dir / "element.json", element_to_json(transformed, consts) + "\n");
  return pass;
}

bool run_geodesic(const RunConfig& config, const GeodesicArgs& args) {
  const PhysicalConstants& consts = config.constants;
  const double horizon = consts.schwarzschild_radius().to_double();
  const double R_stop = args.to.value_or(horizon / 2.0);
  if (!(args.from > 0.0) || !(R_stop > 0.0))
    throw std::invalid_argument("geodesic: radii must be > 0");

  const Trajectory traj = integrate_radial_null(args.chart, args.direction, consts, args.from,
                                                0.0, R_stop, args.integrator);

  const bool pole_chart = !(args.chart == Chart::U && args.direction == RayDirection::Ingoing);
  const bool meets_horizon =
      std::min(args.from, R_stop) <= horizon && horizon <= std::max(args.from, R_stop);
  const TrajectoryStatus expected = pole_chart && meets_horizon ? TrajectoryStatus::BlowUp
                                                                : TrajectoryStatus::ReachedEnd;
  const bool pass = traj.status == expected;

  const std::filesystem::path dir = prepare_out_dir(config);
  std::ostringstream csv;
  write_trajectory_csv(csv, traj);
  write_file(dir / "trajectory.csv", csv.str());

  const TrajectoryPoint& last = traj.points.back();
  json report = {
      {"schema_version", 1},
      {"command", "geodesic"},
      {"constants", constants_json(consts)},
      {"chart", to_string(args.chart)},
      {"direction", to_string(args.direction)},
      {"R_start", args.from},
      {"R_stop", R_stop},
      {"horizon", horizon},
      {"status", to_string(traj.status)},
      {"expected_status", to_string(expected)},
      {"points", traj.points.size()},
      {"R_end", last.R},
      {"T_end", last.T},
      {"delta_T", last.T - traj.points.front().T},
      {"total_error_estimate", traj.total_error_estimate},
      {"pass", pass},
  };
  write_file(dir / "geodesic_report.json", report.dump(2) + "\n");
  return pass;
}

}  // namespace hf
