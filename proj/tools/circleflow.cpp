#include <CLI11.hpp>
#include <cmath>
#include <filesystem>
#include <iostream>
#include <json.hpp>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "circleflow/errors.hpp"
#include "circleflow/extremals.hpp"
#include "circleflow/factor_spec.hpp"
#include "circleflow/flows.hpp"
#include "circleflow/functionals.hpp"
#include "circleflow/geometry.hpp"
#include "circleflow/io.hpp"
#include "circleflow/optimize.hpp"
#include "circleflow/verify.hpp"

namespace fs = std::filesystem;
using nlohmann::json;
using namespace circleflow;

namespace {

constexpr int kSchemaVersion = 1;

enum Exit { kOk = 0, kVerifyFailed = 1, kBadInput = 2, kPositivity = 3, kNoConvergence = 4,
            kBlowup = 5 };

struct RunConfig {
  int n = 256;
  std::uint64_t seed = 1;
  std::optional<double> tol;
  std::string out = "circleflow_out";
};

void add_common(CLI::App* app, RunConfig& cfg) {
  app->add_option("--n", cfg.n, "grid size (even, >= 16)")->capture_default_str();
  app->add_option("--seed", cfg.seed, "random seed")->capture_default_str();
  app->add_option("--tol", cfg.tol, "tolerance (command specific)");
  app->add_option("--out", cfg.out, "output directory")->capture_default_str();
}

void validate(const RunConfig& cfg) {
  if (cfg.n < 16 || cfg.n % 2 != 0) throw InvalidArgument("--n must be even and >= 16");
  if (cfg.tol && !(*cfg.tol > 0.0)) throw InvalidArgument("--tol must be positive");
}

json header(const std::string& command, const RunConfig& cfg) {
  return {{"schema_version", kSchemaVersion}, {"command", command}, {"n", cfg.n},
          {"seed", cfg.seed}};
}

std::vector<double> nodes(int n) {
  std::vector<double> t(static_cast<std::size_t>(n));
  for (int j = 0; j < n; ++j) t[j] = kTwoPi * j / n;
  return t;
}

void write_field(const fs::path& path, const std::string& meta, const PeriodicFunction& f) {
  const auto v = f.values();
  write_csv(path, meta, {"theta", "value"}, {nodes(f.size()), std::vector<double>(v.begin(), v.end())});
}

PeriodicFunction start_factor(const std::string& spec, const RunConfig& cfg) {
  if (spec == "random") {
    std::mt19937_64 rng(cfg.seed);
    return random_positive_factor(cfg.n, rng);
  }
  return parse_factor(spec, cfg.n);
}

Convention parse_convention(const std::string& s) {
  if (s == "POW4") return Convention::Pow4;
  if (s == "POW43") return Convention::Pow43;
  throw InvalidArgument("unknown convention '" + s + "' (POW4 or POW43)");
}

std::optional<Family> family_of(FunctionalKind k) {
  switch (k) {
    case FunctionalKind::J_BS: return Family::BS;
    case FunctionalKind::Y_YAMABE: return Family::YAM;
    case FunctionalKind::F_Q: return Family::QEXT;
    case FunctionalKind::F_SYMQ: return Family::SYMQ_CONJ;
    case FunctionalKind::TOTAL_Q: return std::nullopt;
  }
  return std::nullopt;
}

json fit_json(const FamilyFit& f) {
  return {{"family", std::string(to_string(f.params.family))}, {"c", f.params.c},
          {"lambda", f.params.lambda}, {"alpha_rad", f.params.alpha},
          {"sup_error", f.sup_error}, {"iterations", f.iterations}};
}

// ---- curvature -------------------------------------------------------------

struct CurvatureArgs {
  std::string factor;
  std::string convention = "POW4";
  std::string quantity = "R";
  double alpha = 1.0;
};

int cmd_curvature(const RunConfig& cfg, const CurvatureArgs& a) {
  const ConformalMetric g(parse_factor(a.factor, cfg.n), parse_convention(a.convention));
  const auto r = [&] {
    if (a.quantity == "R") return alpha_scalar_curvature(g, a.alpha);
    if (a.quantity == "Q") return Q_curvature(g);
    if (a.quantity == "Q_A") return symmetric_Q_curvature(g);
    if (a.quantity == "Q_ALPHA") return general_Q_curvature(g, a.alpha);
    throw InvalidArgument("unknown quantity '" + a.quantity + "' (R, Q, Q_A, Q_ALPHA)");
  }();
  const fs::path out(cfg.out);
  write_field(out / "curvature.csv",
              "quantity=" + a.quantity + " convention=" + a.convention +
                  " alpha=" + format_double(a.alpha) + " n=" + std::to_string(cfg.n),
              r.field);
  auto j = header("curvature", cfg);
  j["factor"] = a.factor;
  j["convention"] = a.convention;
  j["quantity"] = a.quantity;
  j["alpha"] = a.alpha;
  j["mean"] = r.mean;
  j["total"] = r.total;
  j["length"] = r.length;
  j["field_min"] = r.field.min();
  j["field_max"] = r.field.max();
  write_json(out / "summary.json", j);
  std::cout << "mean " << format_double(r.mean) << " total " << format_double(r.total)
            << " length " << format_double(r.length) << '\n';
  return kOk;
}

// ---- verify ----------------------------------------------------------------

class Checklist {
 public:
  void add(const std::string& name, double residual, double tol, bool hard = true) {
    const bool pass = std::isfinite(residual) && residual <= tol;
    if (hard && !pass) ok_ = false;
    items_.push_back({{"name", name}, {"residual", residual}, {"tolerance", tol},
                      {"pass", pass}, {"hard", hard}});
  }
  bool ok() const { return ok_; }
  const json& items() const { return items_; }

 private:
  json items_ = json::array();
  bool ok_ = true;
};

Convention convention_for(CovariantOperator op) {
  return op == CovariantOperator::L_ALPHA ? Convention::Pow4 : Convention::Pow43;
}

void suite_covariance(const RunConfig& cfg, bool corrupt, Checklist& list) {
  const double tol = cfg.tol.value_or(1e-7);
  std::mt19937_64 rng(cfg.seed);
  std::uniform_real_distribution<double> alpha_dist(0.5, 5.0);
  for (auto op : {CovariantOperator::L_ALPHA, CovariantOperator::P_SYM, CovariantOperator::P_STD,
                  CovariantOperator::P_ALPHA}) {
    double worst_curv = 0.0, worst_op = 0.0, worst_cocycle = 0.0;
    for (int i = 0; i < 20; ++i) {
      CovarianceCase c{ConformalMetric(random_positive_factor(cfg.n, rng), convention_for(op)),
                       random_positive_factor(cfg.n, rng), random_trig_polynomial(cfg.n, rng), op,
                       alpha_dist(rng)};
      if (corrupt) c.weight_offset = 1e-3;
      const auto r = covariance_residual(c);
      worst_curv = std::max(worst_curv, r.curvature);
      worst_op = std::max(worst_op, r.op);
      worst_cocycle = std::max(worst_cocycle, cocycle_residual(c.base, c.phi,
                                                               random_positive_factor(cfg.n, rng),
                                                               op, c.alpha));
    }
    const std::string name(to_string(op));
    list.add(name + ".curvature", worst_curv, tol);
    list.add(name + ".operator", worst_op, tol);
    list.add(name + ".cocycle", worst_cocycle, tol);
  }
  std::mt19937_64 shift_rng(cfg.seed + 1);
  list.add("P.shift_linearity", shift_linearity_check(random_trig_polynomial(cfg.n, shift_rng), 2.0),
           tol);
}

void suite_identities(const RunConfig& cfg, Checklist& list) {
  const double tol = cfg.tol.value_or(1e-7);
  std::mt19937_64 rng(cfg.seed);
  for (double a : {1.0, 4.0, 2.5}) {
    double pointwise = 0.0, integral = 0.0, divergence = 0.0;
    for (int i = 0; i < 20; ++i) {
      const ConformalMetric g(random_positive_factor(cfg.n, rng), Convention::Pow43);
      const auto t = total_Q_identity(g, a);
      pointwise = std::max(pointwise, t.pointwise);
      integral = std::max(integral, std::abs(t.lhs - t.rhs) / std::max(1.0, std::abs(t.rhs)));
      divergence = std::max(divergence, std::abs(t.divergence) / std::max(1.0, std::abs(t.rhs)));
    }
    const std::string tag = "alpha=" + format_double(a);
    list.add("Q_alpha_pointwise." + tag, pointwise, tol);
    list.add("total_Q_integral." + tag, integral, tol);
    list.add("laplacian_divergence." + tag, divergence, tol);
  }
  const int n = std::max(cfg.n, 512);
  for (auto f : {Family::BS, Family::YAM, Family::QEXT, Family::SYMQ_CONJ}) {
    double worst = 0.0;
    for (double l : {0.5, 2.0, 3.0}) {
      worst = std::max(worst, el_residual(sample(ExtremalParams{1.0, l, 0.7, f}, n), f).residual);
    }
    list.add("euler_lagrange." + std::string(to_string(f)), worst, 1e-6);
  }
  double greens = 0.0;
  for (double l : {1.0, 2.0, 3.0}) {
    const auto u = sample(ExtremalParams{1.0, l, 0.3, Family::QEXT}, n);
    greens = std::max(greens, greens_residual(u, el_residual(u, Family::QEXT).tau));
  }
  list.add("greens_representation.QEXT", greens, 1e-6);
}

void suite_inequalities(const RunConfig& cfg, int samples, Checklist& list, json& extra) {
  const double slack = cfg.tol.value_or(1e-6);
  const double pi2 = kPi * kPi;
  std::mt19937_64 rng(cfg.seed);
  double y_gap = 0.0, q_gap = 0.0, j_gap = 0.0, symq_min = INFINITY, fourier = 0.0;
  for (int i = 0; i < samples; ++i) {
    const auto u = random_positive_factor(cfg.n, rng);
    y_gap = std::max(y_gap, (-pi2 - evaluate(FunctionalKind::Y_YAMABE, u)) / pi2);
    q_gap = std::max(q_gap, (9 * pi2 * pi2 - evaluate(FunctionalKind::F_Q, u)) / (9 * pi2 * pi2));
    const auto j = project_to_constraints(FunctionalKind::J_BS, u);
    j_gap = std::max(j_gap, (-4 * pi2 - evaluate(FunctionalKind::J_BS, j)) / (4 * pi2));
    const auto s = project_to_constraints(FunctionalKind::F_SYMQ, u);
    symq_min = std::min(symq_min, evaluate(FunctionalKind::F_SYMQ, s));
    auto coeffs = to_coeffs(u);
    coeffs.a[0] = coeffs.b[0] = 0.0;
    const auto b = fourier_lower_bound(from_coeffs(coeffs));
    fourier = std::max(fourier, (b.rhs - b.lhs) / std::max(1.0, b.rhs));
  }
  list.add("Y_YAMABE >= -pi^2", std::max(0.0, y_gap), slack);
  list.add("F_Q >= 9 pi^4", std::max(0.0, q_gap), slack);
  list.add("J_BS >= -4 pi^2 on H1_s", std::max(0.0, j_gap), slack);
  // positivity of the infimum estimate is the hard bar; 144 pi^4 is evidence
  list.add("F_SYMQ > 0 on H2_s", symq_min > 0.0 ? 0.0 : 1.0, 0.5);
  const double conj = 144 * pi2 * pi2;
  list.add("F_SYMQ >= 144 pi^4 (conjecture)", std::max(0.0, (conj - symq_min) / conj), slack, false);
  list.add("fourier coercivity without first harmonics", std::max(0.0, fourier), 1e-12);
  extra["samples"] = samples;
  extra["F_SYMQ_min"] = symq_min;
  extra["F_SYMQ_min_over_144pi4"] = symq_min / conj;
}

int cmd_verify(const RunConfig& cfg, const std::string& suite, bool corrupt, int samples) {
  Checklist list;
  json extra = json::object();
  if (suite == "covariance") {
    suite_covariance(cfg, corrupt, list);
  } else if (suite == "identities") {
    suite_identities(cfg, list);
  } else if (suite == "inequalities") {
    if (samples < 1) throw InvalidArgument("--samples must be positive");
    suite_inequalities(cfg, samples, list, extra);
  } else {
    throw InvalidArgument("unknown suite '" + suite + "' (covariance, identities, inequalities)");
  }
  auto j = header("verify", cfg);
  j["suite"] = suite;
  j["corrupt"] = corrupt;
  j["checks"] = list.items();
  j["pass"] = list.ok();
  for (auto& [k, v] : extra.items()) j[k] = v;
  write_json(fs::path(cfg.out) / ("verify_" + suite + ".json"), j);
  for (const auto& c : list.items()) {
    std::cout << (c["pass"].get<bool>() ? "ok   " : "FAIL ") << c["name"].get<std::string>() << ' '
              << format_double(c["residual"].get<double>()) << '\n';
  }
  return list.ok() ? kOk : kVerifyFailed;
}

// ---- minimize --------------------------------------------------------------

struct MinimizeArgs {
  std::string kind;
  std::string start = "random";
  int max_iterations = 100000;
  bool log_descent = false;
};

int cmd_minimize(const RunConfig& cfg, const MinimizeArgs& a) {
  const auto kind = functional_kind_from_string(a.kind);
  MinimizeOptions opts;
  opts.max_iterations = a.max_iterations;
  opts.log_descent = a.log_descent;
  if (cfg.tol) opts.gradient_tol = *cfg.tol;
  const auto res = minimize(kind, start_factor(a.start, cfg), opts);
  const fs::path out(cfg.out);
  write_field(out / "minimizer.csv", "kind=" + a.kind + " n=" + std::to_string(cfg.n),
              res.minimizer);

  std::vector<std::string> names{"iteration", "value", "grad_norm"};
  const std::size_t nc = res.constraint_residuals.size();
  for (std::size_t i = 0; i < nc; ++i) names.push_back("constraint_" + std::to_string(i + 1));
  std::vector<std::vector<double>> cols(names.size());
  for (const auto& h : res.history) {
    cols[0].push_back(h.iteration);
    cols[1].push_back(h.value);
    cols[2].push_back(h.grad_norm);
    for (std::size_t i = 0; i < nc; ++i) cols[3 + i].push_back(h.constraints[i]);
  }
  write_csv(out / "history.csv", "kind=" + a.kind, names, cols);

  const double ref = reference_constant(kind);
  auto j = header("minimize", cfg);
  j["kind"] = a.kind;
  j["start"] = a.start;
  j["value"] = res.value;
  j["reference"] = ref;
  j["relative_gap"] = (res.value - ref) / std::abs(ref);
  j["iterations"] = res.iterations;
  j["converged"] = res.converged;
  j["positivity_events"] = res.positivity_events;
  j["constraint_residuals"] = res.constraint_residuals;
  if (const auto fam = family_of(kind)) j["fit_family"] = fit_json(fit_family(res.minimizer, *fam));
  if (nc > 0) {
    const auto m = multiplier_estimates(kind, res.minimizer);
    j["multipliers"] = m.multipliers;
    j["multiplier_relative"] = m.relative;
  }
  write_json(out / "summary.json", j);
  std::cout << "value " << format_double(res.value) << " reference " << format_double(ref)
            << " iterations " << res.iterations << '\n';
  return kOk;
}

// ---- flow ------------------------------------------------------------------

struct FlowArgs {
  std::string kind;
  std::string start = "random";
  double t_end = 10.0;
  double dt0 = 1e-3;
  double dt_max = 5e-2;
  int record_every = 1;
};

int cmd_flow(const RunConfig& cfg, const FlowArgs& a) {
  const auto kind = flow_kind_from_string(a.kind);
  EvolveOptions opts;
  opts.dt0 = a.dt0;
  opts.dt_max = a.dt_max;
  opts.record_every = a.record_every;
  if (cfg.tol) opts.stationarity_tol = *cfg.tol;
  const auto s = evolve(kind, start_factor(a.start, cfg), a.t_end, opts);
  const fs::path out(cfg.out);

  std::vector<double> t, mean, length, functional;
  for (const auto& h : s.history) {
    t.push_back(h.t);
    mean.push_back(h.mean);
    length.push_back(h.length);
    functional.push_back(h.functional);
  }
  write_csv(out / "trajectory.csv", "kind=" + a.kind, {"t", "mean", "length", "functional"},
            {t, mean, length, functional});
  write_field(out / "final_factor.csv", "kind=" + a.kind + " t=" + format_double(s.t),
              s.metric.factor());
  write_plot_data(out / "mean_curvature.dat", t, mean);

  const auto report = monotonicity_report(kind, s);
  auto j = header("flow", cfg);
  j["kind"] = a.kind;
  j["start"] = a.start;
  j["t_final"] = s.t;
  j["stationary"] = s.stationary;
  j["functional_bound"] = report.functional_bound;
  json verdicts = json::array();
  for (const auto& v : report.verdicts) {
    verdicts.push_back({{"quantity", v.quantity}, {"expected_direction", v.expected_direction},
                        {"worst_violation", v.worst_violation}, {"pass", v.pass}});
  }
  j["verdicts"] = verdicts;
  j["pass"] = report.all_pass();
  if (kind == FlowKind::YAMABE) j["fit_family"] = fit_json(fit_family(s.metric.factor(), Family::YAM));
  if (kind == FlowKind::AFFINE) j["fit_family"] = fit_json(fit_family(s.metric.factor(), Family::BS));
  write_json(out / "monotonicity.json", j);
  for (const auto& v : report.verdicts) {
    std::cout << (v.pass ? "ok   " : "FAIL ") << v.quantity << " worst violation "
              << format_double(v.worst_violation) << '\n';
  }
  return kOk;
}

// ---- extremal --------------------------------------------------------------

int cmd_extremal(const RunConfig& cfg, const std::string& family, const ExtremalParams& p0) {
  ExtremalParams p = p0;
  p.family = family_from_string(family);
  const auto u = sample(p, cfg.n);
  const fs::path out(cfg.out);
  write_field(out / "factor.csv",
              "family=" + family + " c=" + format_double(p.c) + " lambda=" +
                  format_double(p.lambda) + " alpha=" + format_double(p.alpha),
              u);
  const auto kind = functional_for(p.family);
  const auto el = el_residual(u, p.family);
  auto j = header("extremal", cfg);
  j["family"] = family;
  j["c"] = p.c;
  j["lambda"] = p.lambda;
  j["alpha_rad"] = p.alpha;
  j["functional"] = std::string(to_string(kind));
  j["value"] = evaluate(kind, u);
  j["reference"] = reference_constant(kind);
  j["el_multiplier"] = el.tau;
  j["el_residual"] = el.residual;
  if (p.family == Family::QEXT) {
    j["greens_residual"] = greens_residual(u, el.tau);
    j["Q_curvature_mean"] = Q_curvature(ConformalMetric(u, Convention::Pow43)).mean;
  }
  if (p.family == Family::BS) {
    const auto h = half_angle_check(u);
    j["half_angle_cubic_residual"] = h.cubic.residual;
    j["half_angle_quadratic_residual"] = h.quadratic.residual;
  }
  write_json(out / "summary.json", j);
  std::cout << to_string(kind) << ' ' << format_double(j["value"].get<double>()) << " el_residual "
            << format_double(el.residual) << '\n';
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"circleflow: conformal curvature operators, sharp inequalities and flows on S^1"};
  app.require_subcommand(1);
  RunConfig cfg;

  CurvatureArgs curv;
  auto* c = app.add_subcommand("curvature", "curvature field of a conformal factor");
  add_common(c, cfg);
  c->add_option("--factor", curv.factor, "conformal factor spec")->required();
  c->add_option("--convention", curv.convention, "POW4 or POW43")->capture_default_str();
  c->add_option("--quantity", curv.quantity, "R, Q, Q_A or Q_ALPHA")->capture_default_str();
  c->add_option("--alpha", curv.alpha, "alpha for R and Q_ALPHA")->capture_default_str();

  std::string suite;
  bool corrupt = false;
  int samples = 200;
  auto* v = app.add_subcommand("verify", "residual suites");
  add_common(v, cfg);
  v->add_option("--suite", suite, "covariance, identities or inequalities")->required();
  v->add_flag("--corrupt", corrupt, "perturb the conformal weight (negative control)");
  v->add_option("--samples", samples, "ensemble size for inequalities")->capture_default_str();

  MinimizeArgs mini;
  auto* m = app.add_subcommand("minimize", "minimize a functional");
  add_common(m, cfg);
  m->add_option("--kind", mini.kind, "J_BS, Y_YAMABE, F_SYMQ, F_Q or TOTAL_Q")->required();
  m->add_option("--start", mini.start, "start factor spec or 'random'")->capture_default_str();
  m->add_option("--max-iter", mini.max_iterations)->capture_default_str();
  m->add_flag("--log-descent", mini.log_descent, "multiplicative updates");

  FlowArgs flow;
  auto* f = app.add_subcommand("flow", "run a normalized curvature flow");
  add_common(f, cfg);
  f->add_option("--kind", flow.kind, "AFFINE, YAMABE, SYM_Q or Q_FLOW")->required();
  f->add_option("--start", flow.start, "start factor spec or 'random'")->capture_default_str();
  f->add_option("--t-end", flow.t_end)->capture_default_str();
  f->add_option("--dt0", flow.dt0)->capture_default_str();
  f->add_option("--dt-max", flow.dt_max)->capture_default_str();
  f->add_option("--record-every", flow.record_every)->capture_default_str();

  std::string family;
  ExtremalParams ext;
  auto* e = app.add_subcommand("extremal", "sample and check an extremal family member");
  add_common(e, cfg);
  e->add_option("--family", family, "BS, YAM, QEXT or SYMQ_CONJ")->required();
  e->add_option("--c", ext.c)->capture_default_str();
  e->add_option("--lambda", ext.lambda)->capture_default_str();
  e->add_option("--alpha", ext.alpha, "rotation angle (radians)")->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& err) {
    const int rc = app.exit(err);
    return rc == 0 ? kOk : kBadInput;
  }

  try {
    validate(cfg);
    if (c->parsed()) return cmd_curvature(cfg, curv);
    if (v->parsed()) return cmd_verify(cfg, suite, corrupt, samples);
    if (m->parsed()) return cmd_minimize(cfg, mini);
    if (f->parsed()) return cmd_flow(cfg, flow);
    if (e->parsed()) return cmd_extremal(cfg, family, ext);
  } catch (const PositivityViolation& err) {
    std::cerr << "positivity violation: " << err.what() << '\n';
    return kPositivity;
  } catch (const ConvergenceFailure& err) {
    std::cerr << "no convergence: " << err.what() << '\n';
    return kNoConvergence;
  } catch (const BlowupSuspected& err) {
    std::cerr << "blow-up suspected: " << err.what() << '\n';
    return kBlowup;
  } catch (const InvalidArgument& err) {
    std::cerr << "invalid input: " << err.what() << '\n';
    return kBadInput;
  } catch (const ConventionMismatch& err) {
    std::cerr << "invalid input: " << err.what() << '\n';
    return kBadInput;
  } catch (const std::exception& err) {
    std::cerr << "error: " << err.what() << '\n';
    return kBadInput;
  }
  return kBadInput;
}
