#include "cli.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <mutex>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "CLI11.hpp"

#include "entbound/entbound.hpp"
#include "entbound/io.hpp"

namespace entbound::cli {
namespace {

using json = io::json;

struct Globals {
  std::uint64_t seed = 7;
  std::string output;
  std::string format;  // empty: csv for sweep, json elsewhere
  std::string certify = "auto";
};

/// Runs body(0..count-1) on a small thread pool. Callers write results into
/// index-addressed slots, so output order does not depend on scheduling.
template <class Body>
void parallel_for(std::size_t count, Body body) {
  const std::size_t workers = std::min<std::size_t>(count, std::max(1u, std::thread::hardware_concurrency()));
  if (workers <= 1) {
    for (std::size_t i = 0; i < count; ++i) body(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr error;
  std::mutex error_mutex;
  {
    std::vector<std::jthread> pool;
    for (std::size_t w = 0; w < workers; ++w) {
      pool.emplace_back([&] {
        for (std::size_t i = next++; i < count; i = next++) {
          try {
            body(i);
          } catch (...) {
            std::lock_guard lock(error_mutex);
            if (!error) error = std::current_exception();
          }
        }
      });
    }
  }
  if (error) std::rethrow_exception(error);
}

struct StateArgs {
  std::string family;
  std::string state_path;
  Index d = 2;
  std::optional<double> fidelity;
  std::optional<double> werner_w;
};

struct ResolvedState {
  DensityOperator rho;
  std::optional<Family> family;
  std::string label;
};

LambdaSupPolicy parse_policy(const std::string& text) {
  LambdaSupPolicy p;
  if (text == "auto") {
    p.mode = LambdaSupMode::automatic;
  } else if (text == "closed") {
    p.mode = LambdaSupMode::closed;
  } else if (text == "heuristic") {
    p.mode = LambdaSupMode::heuristic;
  } else if (text.rfind("net:", 0) == 0) {
    p.mode = LambdaSupMode::net;
    try {
      std::size_t used = 0;
      p.net_eps = std::stod(text.substr(4), &used);
      if (used != text.size() - 4) throw std::invalid_argument("trailing characters");
    } catch (const std::exception&) {
      throw ParseError("--certify-lambda-sup: cannot parse epsilon in \"" + text + "\"");
    }
    if (!(p.net_eps > 0.0)) throw ParseError("--certify-lambda-sup: epsilon must be positive");
  } else {
    throw ParseError("--certify-lambda-sup: expected closed, net:<eps>, heuristic or auto");
  }
  return p;
}

double require_param(const std::optional<double>& v, const char* flag, const std::string& family) {
  if (!v) throw ParseError("family " + family + " requires " + flag);
  return *v;
}

ResolvedState resolve_state(const StateArgs& a) {
  if (!a.state_path.empty() && !a.family.empty()) throw ParseError("give either --family or --state, not both");
  if (!a.state_path.empty()) {
    return {io::density_from_json(io::load_json_file(a.state_path)), std::nullopt, a.state_path};
  }
  const std::string& f = a.family;
  const std::string dims = "(d=" + std::to_string(a.d) + ")";
  if (f == "isotropic") {
    Family fam{FamilyKind::isotropic, a.d, require_param(a.fidelity, "--F", f)};
    return {family_state(fam), fam, "isotropic" + dims};
  }
  if (f == "werner") {
    Family fam{FamilyKind::werner, a.d, require_param(a.werner_w, "--W", f)};
    return {family_state(fam), fam, "werner" + dims};
  }
  if (f == "mixture") {
    Family fam{FamilyKind::antisym_phi_mixture, a.d, require_param(a.fidelity, "--F", f)};
    return {family_state(fam), fam, "mixture" + dims};
  }
  if (f == "werner-w1") {
    Family fam{FamilyKind::werner, a.d, 1.0};
    return {family_state(fam), fam, "werner-w1" + dims};
  }
  if (f == "bell") return {max_entangled(a.d).density(), std::nullopt, "bell" + dims};
  if (f == "maximally-mixed") return {maximally_mixed(a.d, a.d), std::nullopt, "maximally-mixed" + dims};
  if (f.empty()) throw ParseError("one of --family or --state is required");
  throw ParseError("unknown family \"" + f + "\"");
}

Subspace resolve_projector(const std::string& name, const DensityOperator& rho) {
  if (name == "phi-plus") return phi_plus_subspace(rho.dim_a(), rho.dim_b());
  if (name == "antisym") {
    if (rho.dim_a() != rho.dim_b()) throw DimensionError("antisym projector needs dim_a == dim_b");
    return antisym_subspace(rho.dim_a());
  }
  if (name == "support") return support_subspace(rho);
  if (name.rfind("file:", 0) == 0) {
    Subspace v = io::subspace_from_json(io::load_json_file(name.substr(5)));
    if (v.dim_a() != rho.dim_a() || v.dim_b() != rho.dim_b()) {
      throw DimensionError("subspace file dimensions do not match the state");
    }
    return v;
  }
  throw ParseError("unknown projector \"" + name + "\"");
}

std::vector<std::string> split(const std::string& text, char sep) {
  std::vector<std::string> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, sep))
    if (!item.empty()) out.push_back(item);
  return out;
}

json lambda_json(const LambdaSup& ls) {
  json j;
  j["value"] = ls.value;
  j["status"] = to_string(ls.status);
  j["used_in_bounds"] = ls.for_bounds();
  if (ls.interval) j["interval"] = json::array({ls.interval->first, ls.interval->second});
  j["method"] = ls.method;
  if (ls.net_points > 0) j["net_points"] = ls.net_points;
  return j;
}

json report_json(const BoundReport& r) {
  json j;
  j["expectation"] = r.expectation;
  j["lambda_sup"] = lambda_json(r.lambda_sup);
  j["delta"] = r.delta;
  j["cren_margin"] = r.cren_margin;
  j["cren_lower"] = r.cren_lower;
  j["concurrence_lower"] = r.concurrence_lower;
  j["certified"] = r.certified;
  j["entanglement_detected"] = r.certified && r.delta > 0.0;
  if (r.baseline_ppt_realign) j["baseline_ppt_realign"] = *r.baseline_ppt_realign;
  if (r.sharp) {
    json s;
    s["sharp"] = r.sharp->sharp;
    s["generic"] = r.sharp->generic;
    s["winner"] = to_string(r.sharp->winner);
    s["overlap"] = r.sharp->overlap;
    s["lambda_max"] = r.sharp->lambda_max;
    s["concurrence_phi"] = r.sharp->concurrence_phi;
    j["sharp_concurrence"] = s;
  }
  if (r.optimized) {
    json o;
    o["fully_entangled_fraction"] = r.optimized->fraction.value;
    o["cren_lower"] = r.optimized->cren_lower;
    o["concurrence_lower"] = r.optimized->concurrence_lower;
    o["heuristic"] = r.optimized->heuristic;
    j["optimized"] = o;
  }
  j["notes"] = r.notes;
  return j;
}

class Sink {
 public:
  Sink(const std::string& path, std::ostream& fallback) {
    if (!path.empty()) {
      file_.open(path);
      if (!file_) throw Error("cannot write " + path);
    }
    stream_ = path.empty() ? &fallback : &file_;
  }
  std::ostream& stream() { return *stream_; }

 private:
  std::ofstream file_;
  std::ostream* stream_;
};

std::string csv_number(double x) {
  std::ostringstream os;
  os << std::setprecision(12) << x;
  return os.str();
}

std::optional<double> family_exact_cren(const std::optional<Family>& f) {
  if (!f) return std::nullopt;
  try {
    return cren_exact_family(*f).value;
  } catch (const UnsupportedError&) {
    return std::nullopt;
  }
}

double ensemble_upper(const ResolvedState& s) {
  if (s.family) return cren_upper_from_ensemble(family_ensemble(*s.family)).value;
  return cren_upper_from_ensemble(eigen_ensemble(s.rho)).value;
}

// ---------------------------------------------------------------- bound

struct BoundArgs {
  StateArgs state;
  std::string projector = "phi-plus";
  bool optimize = false;
};

int cmd_bound(const Globals& g, const BoundArgs& a, std::ostream& out) {
  const ResolvedState s = resolve_state(a.state);
  const Subspace v = resolve_projector(a.projector, s.rho);
  BoundReportOptions opts;
  opts.lambda_policy = parse_policy(g.certify);
  opts.lambda_policy.seesaw.seed = g.seed;
  opts.optimize = a.optimize;
  opts.seesaw.seed = g.seed;
  const BoundReport r = bound_report(s.rho, v, opts);
  const double upper = ensemble_upper(s);

  Sink sink(g.output, out);
  if (g.format == "csv") {
    sink.stream() << "expectation,delta,cren_lower,conc_lower,cren_upper,baseline\n"
                  << csv_number(r.expectation) << ',' << csv_number(r.delta) << ',' << csv_number(r.cren_lower) << ','
                  << csv_number(r.concurrence_lower) << ',' << csv_number(upper) << ','
                  << csv_number(r.baseline_ppt_realign.value_or(0.0)) << '\n';
    return kOk;
  }
  json j;
  j["state"] = s.label;
  j["dims"] = json::array({s.rho.dim_a(), s.rho.dim_b()});
  j["projector"] = a.projector;
  j["subspace_dim"] = v.dim();
  j["report"] = report_json(r);
  j["cren_upper_ensemble"] = upper;
  if (auto exact = family_exact_cren(s.family)) j["cren_exact"] = *exact;
  sink.stream() << j.dump(2) << '\n';
  return kOk;
}

// ---------------------------------------------------------------- sweep

struct SweepArgs {
  std::string family;
  Index d = 2;
  std::string param;
  double start = 0.0;
  double stop = 1.0;
  int steps = 101;
  std::string projector;
};

int cmd_sweep(const Globals& g, const SweepArgs& a, std::ostream& out) {
  FamilyKind kind{};
  std::string natural_param = "F";
  std::string default_projector;
  if (a.family == "isotropic") {
    kind = FamilyKind::isotropic;
    default_projector = "phi-plus";
  } else if (a.family == "werner") {
    kind = FamilyKind::werner;
    natural_param = "W";
    default_projector = "antisym";
  } else if (a.family == "mixture") {
    kind = FamilyKind::antisym_phi_mixture;
    default_projector = "antisym,phi-plus";
  } else {
    throw ParseError("sweep: unknown family \"" + a.family + "\" (isotropic, werner, mixture)");
  }
  if (!a.param.empty() && a.param != natural_param) {
    throw ParseError("sweep: family " + a.family + " is parameterized by " + natural_param);
  }
  if (a.steps < 2) throw DomainError("sweep: steps must be >= 2");
  if (!(a.start >= 0.0 && a.stop <= 1.0 && a.start <= a.stop)) throw DomainError("sweep: grid must lie in [0, 1]");

  const auto projector_names = split(a.projector.empty() ? default_projector : a.projector, ',');
  if (projector_names.empty()) throw ParseError("sweep: empty projector list");
  const DensityOperator probe = family_state({kind, a.d, a.start});
  std::vector<Subspace> subspaces;
  std::vector<LambdaSup> lambdas;
  LambdaSupPolicy policy = parse_policy(g.certify);
  policy.seesaw.seed = g.seed;
  for (const auto& name : projector_names) {
    if (name == "support") throw ParseError("sweep: the support projector depends on the state; use it with `bound`");
    subspaces.push_back(resolve_projector(name, probe));
    lambdas.push_back(resolve_lambda_sup(subspaces.back(), policy));
  }

  struct Row {
    double param, expectation, delta, cren, conc, upper, baseline;
  };
  std::vector<Row> rows(static_cast<std::size_t>(a.steps));
  parallel_for(rows.size(), [&](std::size_t i) {
    const double t = a.start + (a.stop - a.start) * static_cast<double>(i) / static_cast<double>(a.steps - 1);
    const Family fam{kind, a.d, std::min(t, 1.0)};
    const DensityOperator rho = family_state(fam);
    Row row{fam.param, 0, 0, -1, 0, 0, 0};
    for (std::size_t p = 0; p < subspaces.size(); ++p) {
      const double e = projector_expectation(rho, subspaces[p]);
      const double lam = lambdas[p].for_bounds();
      const double cren = cren_lower_value(e, lam);
      if (cren > row.cren) {
        row.expectation = e;
        row.delta = e - lam;
        row.cren = cren;
      }
      row.conc = std::max(row.conc, concurrence_lower_value(e, lam, rho.dim_a()));
    }
    row.upper = cren_upper_from_ensemble(family_ensemble(fam)).value;
    row.baseline = baseline_ppt_realignment(rho);
    rows[i] = row;
  });

  Sink sink(g.output, out);
  if (g.format == "json") {
    json arr = json::array();
    for (const auto& r : rows) {
      json j;
      j["param"] = r.param;
      j["expectation"] = r.expectation;
      j["delta"] = r.delta;
      j["cren_lower"] = r.cren;
      j["conc_lower"] = r.conc;
      j["cren_upper"] = r.upper;
      j["baseline"] = r.baseline;
      arr.push_back(j);
    }
    sink.stream() << arr.dump(2) << '\n';
    return kOk;
  }
  sink.stream() << "param,expectation,delta,cren_lower,conc_lower,cren_upper,baseline\n";
  for (const auto& r : rows) {
    sink.stream() << csv_number(r.param) << ',' << csv_number(r.expectation) << ',' << csv_number(r.delta) << ','
                  << csv_number(r.cren) << ',' << csv_number(r.conc) << ',' << csv_number(r.upper) << ','
                  << csv_number(r.baseline) << '\n';
  }
  return kOk;
}

// ---------------------------------------------------------------- robustness

struct RobustnessArgs {
  StateArgs state;
  std::string projector = "support";
  std::string noise = "maximally-mixed";
};

DensityOperator resolve_noise(const std::string& spec, const DensityOperator& rho, std::uint64_t seed) {
  if (spec == "maximally-mixed") return maximally_mixed(rho.dim_a(), rho.dim_b());
  if (spec == "random" || spec.rfind("random:", 0) == 0) {
    Index rank = rho.side();
    if (spec.size() > 7) {
      try {
        rank = std::stol(spec.substr(7));
      } catch (const std::exception&) {
        throw ParseError("--noise: cannot parse rank in \"" + spec + "\"");
      }
    }
    return random_density(rho.dim_a(), rho.dim_b(), rank, seed);
  }
  if (spec.rfind("file:", 0) == 0) {
    DensityOperator m = io::density_from_json(io::load_json_file(spec.substr(5)));
    if (m.dim_a() != rho.dim_a() || m.dim_b() != rho.dim_b()) throw DimensionError("noise state dimensions do not match");
    return m;
  }
  throw ParseError("unknown noise spec \"" + spec + "\" (maximally-mixed, random[:rank], file:<path>)");
}

int cmd_robustness(const Globals& g, const RobustnessArgs& a, std::ostream& out) {
  const ResolvedState s = resolve_state(a.state);
  const Subspace v = resolve_projector(a.projector, s.rho);
  LambdaSupPolicy policy = parse_policy(g.certify);
  policy.seesaw.seed = g.seed;
  const LambdaSup ls = resolve_lambda_sup(v, policy);
  const DensityOperator noise = resolve_noise(a.noise, s.rho, g.seed);
  const PerturbationGate gate = perturbation_gate(s.rho, v, ls);
  const MixingThreshold t = mixing_threshold(s.rho, v, noise, ls);

  json j;
  j["state"] = s.label;
  j["projector"] = a.projector;
  j["noise"] = a.noise;
  j["lambda_sup"] = lambda_json(ls);
  j["delta"] = t.delta;
  j["k"] = t.k;
  j["noise_kyfan"] = t.noise_kyfan;
  j["p_max"] = t.p_max;
  j["support_case"] = t.support_case;
  if (t.support_case) j["p_max_support_formula"] = std::min(1.0, (1.0 - t.lambda_sup) / t.noise_kyfan);
  j["verified"] = t.verified;
  json gj;
  gj["k"] = gate.k;
  gj["threshold"] = gate.threshold;
  gj["delta_cap"] = gate.delta_cap;
  j["perturbation_gate"] = gj;
  Sink sink(g.output, out);
  sink.stream() << j.dump(2) << '\n';
  return kOk;
}

// ---------------------------------------------------------------- audit

struct AuditArgs {
  std::string shapes = "2x2,2x3,3x3";
  int samples = 1000;
};

struct SuiteResult {
  std::string name;
  long trials = 0;
  long failures = 0;
  json first_failure;
};

int cmd_audit(const Globals& g, const AuditArgs& a, std::ostream& out) {
  if (a.samples < 1) throw DomainError("audit: samples must be >= 1");
  std::vector<std::pair<Index, Index>> shapes;
  for (const auto& token : split(a.shapes, ',')) {
    const auto parts = split(token, 'x');
    Index m = 0;
    Index n = 0;
    try {
      if (parts.size() != 2) throw std::invalid_argument(token);
      m = std::stol(parts[0]);
      n = std::stol(parts[1]);
    } catch (const std::exception&) {
      throw ParseError("audit: cannot parse shape \"" + token + "\" (expected MxN)");
    }
    if (m < 2 || n < m) throw DimensionError("audit: shape " + token + " needs 2 <= M <= N");
    shapes.emplace_back(m, n);
  }

  SuiteResult trace_ineq{"von_neumann_trace_inequality", 0, 0, {}};
  SuiteResult soundness{"pure_state_bound_soundness", 0, 0, {}};
  SuiteResult containment{"noise_overlap_containment", 0, 0, {}};

  // One slot per (shape, sample); a slot holds the failure detail of each
  // suite, if any. Merged in index order so the first failure is stable.
  struct Outcome {
    std::optional<json> trace_ineq, soundness, containment;
  };
  const auto per_shape = static_cast<std::size_t>(a.samples);
  std::vector<Outcome> outcomes(shapes.size() * per_shape);
  parallel_for(outcomes.size(), [&](std::size_t slot) {
    const std::size_t si = slot / per_shape;
    const std::uint64_t idx = slot % per_shape;
    const auto [m, n] = shapes[si];
    const std::string shape = std::to_string(m) + "x" + std::to_string(n);
    Outcome& o = outcomes[slot];
    {
      const std::uint64_t seed = derive_seed(g.seed, 100 + si, idx);
      Rng rng(seed);
      const ComplexMatrix x = gaussian_matrix(m, n, rng);
      const ComplexMatrix y = gaussian_matrix(m, n, rng);
      const double lhs = std::abs((x.adjoint() * y).trace());
      const double rhs = singular_values(x).dot(singular_values(y));
      if (lhs > rhs + 1e-10) o.trace_ineq = json{{"shape", shape}, {"seed", seed}, {"lhs", lhs}, {"rhs", rhs}};
    }
    {
      const std::uint64_t seed = derive_seed(g.seed, 200 + si, idx);
      const PureState psi = random_pure(m, n, seed);
      const PureState phi = random_pure(m, n, seed ^ 0xa5a5a5a5ULL);
      const DensityOperator rho = psi.density();
      const Subspace v = Subspace::span_of(phi);
      const LambdaSup ls = *lambda_sup_closed_form(v);
      const double n_exact = negativity_pure_schmidt(psi);
      const double c_exact = concurrence_pure(psi);
      const double cren = cren_lower(rho, v, ls);
      const double conc = concurrence_lower(rho, v, ls);
      const double sharp = concurrence_lower_sharp(rho, phi).sharp;
      if (cren > n_exact + 1e-9 || conc > c_exact + 1e-9 || sharp > c_exact + 1e-9) {
        o.soundness = json{{"shape", shape}, {"seed", seed}, {"cren_lower", cren}, {"negativity", n_exact},
                           {"concurrence_lower", conc}, {"sharp", sharp}, {"concurrence", c_exact},
                           {"state", io::state_to_json(psi)}, {"phi", io::state_to_json(phi)}};
      }
    }
    {
      const std::uint64_t seed = derive_seed(g.seed, 300 + si, idx);
      Rng rng(seed);
      const Index side = m * n;
      const Index rank = 1 + static_cast<Index>(rng() % static_cast<std::uint64_t>(side));
      const Index l = 1 + static_cast<Index>(rng() % static_cast<std::uint64_t>(side - 1));
      const DensityOperator noise = random_density(m, n, rank, seed ^ 0x1111ULL);
      const Subspace v = random_subspace(m, n, l, seed ^ 0x2222ULL);
      const OverlapInterval iv = noise_overlap_bounds(noise, v);
      const double t = projector_expectation(noise, v);
      if (t < iv.lo - 1e-10 || t > iv.hi + 1e-10) {
        o.containment = json{{"shape", shape}, {"seed", seed}, {"overlap", t}, {"lo", iv.lo}, {"hi", iv.hi},
                             {"state", io::state_to_json(noise)}, {"subspace", io::subspace_to_json(v)}};
      }
    }
  });

  auto merge = [](SuiteResult& s, std::optional<json>& detail) {
    ++s.trials;
    if (!detail) return;
    if (s.failures++ == 0) s.first_failure = std::move(*detail);
  };
  for (auto& o : outcomes) {
    merge(trace_ineq, o.trace_ineq);
    merge(soundness, o.soundness);
    merge(containment, o.containment);
  }

  json j;
  j["seed"] = g.seed;
  j["samples"] = a.samples;
  j["shapes"] = a.shapes;
  json suites = json::array();
  bool passed = true;
  for (const SuiteResult* s : {&trace_ineq, &soundness, &containment}) {
    json sj;
    sj["name"] = s->name;
    sj["trials"] = s->trials;
    sj["failures"] = s->failures;
    if (s->failures > 0) {
      sj["first_failure"] = s->first_failure;
      passed = false;
    }
    suites.push_back(sj);
  }
  j["suites"] = suites;
  j["passed"] = passed;
  Sink sink(g.output, out);
  sink.stream() << j.dump(2) << '\n';
  return passed ? kOk : kAuditFailure;
}

void add_state_options(CLI::App* cmd, StateArgs& s) {
  cmd->add_option("--family", s.family, "isotropic, werner, mixture, bell, werner-w1, maximally-mixed");
  cmd->add_option("--state", s.state_path, "state JSON file");
  cmd->add_option("--d", s.d, "local dimension of a named family")->check(CLI::Range(2, 64));
  cmd->add_option("--F", s.fidelity, "fidelity parameter (isotropic, mixture)");
  cmd->add_option("--W", s.werner_w, "Werner parameter");
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Entanglement lower bounds from projector expectation values", "entbound"};
  app.require_subcommand(1);
  app.fallthrough();
  Globals g;
  app.add_option("--seed", g.seed, "seed for randomized steps");
  app.add_option("--output", g.output, "write the report to this file instead of stdout");
  app.add_option("--format", g.format, "json or csv")->check(CLI::IsMember({"json", "csv"}));
  app.add_option("--certify-lambda-sup", g.certify, "closed, net:<eps>, heuristic (default: auto)");

  BoundArgs bound_args;
  auto* bound = app.add_subcommand("bound", "lower bounds for one state");
  add_state_options(bound, bound_args.state);
  bound->add_option("--projector", bound_args.projector, "phi-plus, antisym, support or file:<path>");
  bound->add_flag("--optimize", bound_args.optimize, "also optimize over local unitaries");

  SweepArgs sweep_args;
  auto* sweep = app.add_subcommand("sweep", "bounds along a one-parameter family");
  sweep->add_option("--family", sweep_args.family, "isotropic, werner or mixture")->required();
  sweep->add_option("--d", sweep_args.d, "local dimension")->check(CLI::Range(2, 64));
  sweep->add_option("--param", sweep_args.param, "swept parameter (F or W)");
  sweep->add_option("--start", sweep_args.start);
  sweep->add_option("--stop", sweep_args.stop);
  sweep->add_option("--steps", sweep_args.steps);
  sweep->add_option("--projector", sweep_args.projector, "comma-separated projector list; bounds take the best");

  RobustnessArgs rob_args;
  auto* robustness = app.add_subcommand("robustness", "mixing threshold and perturbation gate");
  add_state_options(robustness, rob_args.state);
  robustness->add_option("--projector", rob_args.projector, "phi-plus, antisym, support or file:<path>");
  robustness->add_option("--noise", rob_args.noise, "maximally-mixed, random[:rank] or file:<path>");

  AuditArgs audit_args;
  auto* audit = app.add_subcommand("audit", "randomized property suites");
  audit->add_option("--shapes", audit_args.shapes, "comma-separated MxN list");
  audit->add_option("--samples", audit_args.samples, "samples per shape and suite");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kParseError;
  }

  try {
    if (bound->parsed()) return cmd_bound(g, bound_args, out);
    if (sweep->parsed()) return cmd_sweep(g, sweep_args, out);
    if (robustness->parsed()) return cmd_robustness(g, rob_args, out);
    if (audit->parsed()) return cmd_audit(g, audit_args, out);
  } catch (const ParseError& e) {
    err << "parse error: " << e.what() << '\n';
    return kParseError;
  } catch (const DimensionError& e) {
    err << "dimension error: " << e.what() << '\n';
    return kDimensionError;
  } catch (const Error& e) {
    err << "validation error: " << e.what() << '\n';
    return kValidationError;
  }
  return kParseError;
}

}  // namespace entbound::cli
