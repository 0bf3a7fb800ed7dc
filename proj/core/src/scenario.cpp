#include "majdyn/scenario.hpp"

#include <chrono>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <numbers>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

#include "majdyn/chain_verifier.hpp"
#include "majdyn/csv_io.hpp"
#include "majdyn/errors.hpp"
#include "majdyn/fpe.hpp"
#include "majdyn/generators.hpp"
#include "majdyn/mixing.hpp"
#include "majdyn/quantum.hpp"
#include "majdyn/rng.hpp"

namespace majdyn::scenario {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

constexpr double kPi = std::numbers::pi;

/// All selectable test functions: the standard battery plus the identity.
Battery full_bank() {
  Battery bank = standard_battery();
  const Battery icx = icx_battery();
  bank.members.insert(bank.members.begin(), *icx.find("linear"));
  return bank;
}

Battery select_battery(const std::vector<std::string>& ids, bool weak) {
  if (ids.empty()) return weak ? icx_battery() : standard_battery();
  return full_bank().subset(ids);
}

std::vector<double> linspace(double lo, double hi, int n) {
  std::vector<double> v(n);
  for (int i = 0; i < n; ++i) {
    v[i] = lo + (hi - lo) * static_cast<double>(i) / (n - 1);
  }
  return v;
}

Density builtin_init(const std::string& name, Grid grid) {
  if (name == "cosine") {
    return Density::sampled(
        grid, [](double x) { return 1.0 + std::cos(kPi * x); });
  }
  if (name == "bump") {
    return Density::sampled(
        grid, [](double x) { return 1.0 - 0.5 * std::cos(2.0 * kPi * x); });
  }
  if (name == "uniform") return Density::uniform(grid);
  throw std::invalid_argument("unknown builtin init '" + name + "'");
}

Density load_init(const std::string& init, int grid_n) {
  if (init.rfind("builtin:", 0) == 0) {
    return builtin_init(init.substr(8), Grid(grid_n));
  }
  return io::read_density(init);
}

void verdict_line(const std::string& name, bool ok, const std::string& detail) {
  std::cout << name << ": " << (ok ? "PASS" : "FAIL");
  if (!detail.empty()) std::cout << " (" << detail << ")";
  std::cout << "\n";
}

void write_summary_json(const fs::path& path, const ChainReport& r,
                        bool requested_ok, const Trajectory& traj) {
  json j;
  j["source"] = to_string(traj.source());
  j["snapshots"] = traj.size();
  auto put = [&](const char* key, const std::optional<bool>& v) {
    if (v) j[key] = *v;
  };
  put("chain_holds", r.chain_holds);
  put("weak_chain_holds", r.weak_chain_holds);
  put("msl_holds", r.msl_holds);
  put("sl_holds", r.sl_holds);
  if (r.sandwich) {
    j["sandwich"] = {{"strict_holds", r.sandwich->strict_holds},
                     {"weak_holds", r.sandwich->weak_holds},
                     {"asymptotic_surrogate", r.sandwich->asymptotic_surrogate},
                     {"max_residual", r.sandwich->max_residual}};
  }
  j["violations"] = r.violations().size();
  j["internally_consistent"] = r.internally_consistent;
  j["requested_ok"] = requested_ok;
  std::ofstream out(path);
  out << j.dump(2) << '\n';
}

void print_report_lines(const ChainReport& r, bool weak_mode) {
  std::size_t n_viol = 0;
  std::size_t n_stationary = 0;
  for (const auto& rec : r.violations()) {
    (rec.check == "stationary" ? n_stationary : n_viol) += 1;
  }
  if (r.chain_holds) {
    verdict_line("chain", *r.chain_holds,
                 weak_mode && !*r.chain_holds ? "expected for decaying mass"
                                              : "");
  }
  if (r.weak_chain_holds) verdict_line("weak-chain", *r.weak_chain_holds, "");
  if (r.msl_holds) verdict_line("msl", *r.msl_holds, "");
  if (r.sl_holds) verdict_line("sl", *r.sl_holds, "");
  if (r.sandwich) {
    std::ostringstream d;
    d << (r.sandwich->asymptotic_surrogate ? "asymptotic surrogate, " : "")
      << "max residual " << r.sandwich->max_residual;
    verdict_line(weak_mode ? "sandwich-weak" : "sandwich",
                 weak_mode ? r.sandwich->weak_holds : r.sandwich->strict_holds,
                 d.str());
  }
  if (n_viol > 0) {
    std::cout << "order violations recorded: " << n_viol << "\n";
  }
  if (n_stationary > 0) {
    std::cout << "stationary residuals above tolerance: " << n_stationary
              << " (informational; the run may end before stationarity)\n";
  }
  if (!r.internally_consistent) {
    std::cout << "warning: internal consistency check failed (chain => msl)\n";
  }
}

std::vector<io::LambdaRow> fpe_lambda_rows(const Trajectory& traj,
                                           const Battery& battery,
                                           const FpeModel& model) {
  std::vector<io::LambdaRow> rows;
  for (const auto& snap : traj.snapshots()) {
    for (const auto& phi : battery.members) {
      io::LambdaRow row{snap.t, phi.id, lambda_phi(snap.p, phi), {}};
      if (phi.differentiable && !model.has_drift()) {
        row.lambda_prime = lambda_prime_rhs(snap.p, model, phi);
      }
      rows.push_back(std::move(row));
    }
  }
  return rows;
}

std::vector<io::LambdaRow> quantum_lambda_rows(const Trajectory& traj,
                                               const Battery& battery,
                                               const QuantumMode& mode) {
  std::vector<io::LambdaRow> rows;
  for (const auto& snap : traj.snapshots()) {
    for (const auto& phi : battery.members) {
      io::LambdaRow row{snap.t, phi.id, lambda_phi(snap.p, phi), {}};
      if (phi.differentiable) {
        row.lambda_prime = quantum_lambda_prime(mode, snap.t, phi);
      }
      rows.push_back(std::move(row));
    }
  }
  return rows;
}

}  // namespace

fs::path default_output_dir() {
  if (const char* env = std::getenv("MAJDYN_OUT")) return fs::path(env);
  return fs::path("majdyn-out");
}

bool run_fpe(const FpeParams& prm) {
  const FpeModel model = make_fpe_model(prm.model, prm.d_coef, prm.nu);
  const Density p0 = load_init(prm.init, prm.grid);
  FpeRunConfig cfg;
  cfg.dt = prm.dt;
  cfg.t_end = prm.t_end;
  cfg.safety = prm.safety;
  cfg.snapshot_times =
      prm.snapshots.empty() ? linspace(0.0, prm.t_end, 20) : prm.snapshots;

  const Trajectory traj = fpe_evolve(p0, model, cfg);
  fs::create_directories(prm.out_dir);
  io::save_trajectory(traj, prm.out_dir);
  const Battery battery = select_battery(prm.battery_ids, false);
  io::write_lambda_csv(prm.out_dir / "lambda.csv",
                       fpe_lambda_rows(traj, battery, model));
  std::cout << "wrote " << traj.size() << " snapshots to " << prm.out_dir.string()
            << "\n";
  if (!prm.verify) return true;

  VerifyOptions opts;
  opts.seed = prm.seed;
  ResidualFn residual;
  if (!model.has_drift()) {
    residual = [model](const Density& p, const ConvexTestFn& phi) {
      return lambda_prime_rhs(p, model, phi);
    };
  }
  const FullVerdict v = verify_all(traj, battery, opts, {}, residual);
  io::write_report_csv(prm.out_dir / "report.csv", v.report);
  write_summary_json(prm.out_dir / "summary.json", v.report, v.requested_ok,
                     traj);
  print_report_lines(v.report, false);
  return v.requested_ok && v.report.internally_consistent;
}

bool run_quantum(const QuantumParams& prm) {
  const Grid grid(prm.grid);
  QuantumMode mode = [&] {
    if (prm.mode == "gauss") {
      return QuantumMode::gaussian(grid, 0.1, prm.epsilon, prm.gamma,
                                   prm.hbar);
    }
    int k = 1;
    if (prm.mode.rfind("sine:", 0) == 0) {
      k = std::stoi(prm.mode.substr(5));
    } else if (prm.mode != "sine") {
      throw std::invalid_argument("unknown quantum mode '" + prm.mode + "'");
    }
    return QuantumMode::sine(grid, k, prm.epsilon, prm.gamma, prm.hbar);
  }();

  const std::vector<double> times =
      prm.snapshots.empty() ? linspace(0.0, 5.0, 20) : prm.snapshots;
  const Trajectory traj = quantum_trajectory(mode, times);
  fs::create_directories(prm.out_dir);
  io::save_trajectory(traj, prm.out_dir);

  const bool weak = prm.gamma < 0.0;
  const Battery battery = select_battery(prm.battery_ids, weak);
  io::write_lambda_csv(prm.out_dir / "lambda.csv",
                       quantum_lambda_rows(traj, battery, mode));

  bool bounds_ok = true;
  if (weak) {
    std::vector<io::BoundRow> rows;
    bool norm_correction_matters = false;
    for (const auto& snap : traj.snapshots()) {
      for (const auto& phi : icx_battery().members) {
        if (!phi.differentiable) continue;
        const BoundCheck b = nonhermitian_bound_check(mode, snap.t, phi);
        rows.push_back({snap.t, phi.id, b.lhs, b.rhs, b.holds});
        bounds_ok = bounds_ok && b.holds;
        if (std::abs(b.rhs - b.rhs_bare) >
            1e-9 * std::max(1.0, std::abs(b.rhs_bare))) {
          norm_correction_matters = true;
        }
      }
    }
    io::write_bound_csv(prm.out_dir / "bound.csv", rows);
    verdict_line("decay-bound", bounds_ok, "norm-corrected rhs");
    if (norm_correction_matters) {
      std::cout << "note: the bare bound (2*gamma/hbar)*phi'(0) differs from "
                   "the norm-corrected one at t > 0 (mass has decayed)\n";
    }
  }
  if (!prm.verify) return bounds_ok;

  VerifyOptions opts;
  opts.seed = prm.seed;
  opts.weak = weak;
  const double t_last = traj[traj.size() - 1].t;
  ResidualFn residual = [mode, t_last](const Density&,
                                       const ConvexTestFn& phi) {
    return quantum_lambda_prime(mode, t_last, phi);
  };
  const FullVerdict v = verify_all(traj, battery, opts, {}, residual);
  io::write_report_csv(prm.out_dir / "report.csv", v.report);
  write_summary_json(prm.out_dir / "summary.json", v.report, v.requested_ok,
                     traj);
  print_report_lines(v.report, weak);
  return v.requested_ok && bounds_ok && v.report.internally_consistent;
}

bool run_mixing(const MixingParams& prm) {
  MapSystem sys = make_map(prm.map, prm.seed);
  sys.invariant_density_estimate = estimate_invariant_density(
      sys, prm.hist_transient, prm.hist_samples, Grid(prm.hist_grid));

  std::vector<std::string> obs_ids = prm.observables;
  if (obs_ids.empty()) {
    obs_ids = sys.name == "rotation"
                  ? std::vector<std::string>{"cos1", "sin1"}
                  : std::vector<std::string>{"centered_x", "sin1"};
  }
  std::vector<Observable> obs;
  obs.reserve(obs_ids.size());
  for (const auto& id : obs_ids) {
    obs.push_back(make_observable(id, Grid(prm.obs_grid)));
  }

  const MixingReport report =
      mixing_verdict(sys, obs, prm.n_max, prm.tol, prm.points);

  fs::create_directories(prm.out_dir);
  io::write_density(prm.out_dir / "invariant_density.csv",
                    *sys.invariant_density_estimate);
  io::write_correlations_csv(prm.out_dir / "correlations.csv", report);

  for (const auto& pair : report.pairs) {
    std::ostringstream d;
    if (pair.consistent) {
      d << "n_settle=" << pair.n_settle << ", worst tail err "
        << pair.worst_tail_abs_err;
      std::cout << pair.pair_id << ": Mixing-consistent (" << d.str() << ")\n";
    } else {
      d << "violating n=" << pair.violating_n << ", worst tail err "
        << pair.worst_tail_abs_err;
      std::cout << pair.pair_id << ": Not-mixing-evidence (" << d.str()
                << ")\n";
    }
  }
  std::cout << "map=" << sys.name << " tol=" << report.tol
            << " tail_window=" << report.tail_window << "\n";
  return true;
}

bool run_verify(const VerifyParams& prm) {
  const Trajectory traj = io::load_trajectory(prm.input);
  const Battery battery = select_battery(prm.battery_ids, prm.weak);
  VerifyOptions opts;
  opts.tol_compare = prm.tol_compare;
  opts.tol_lambda = prm.tol_lambda;
  opts.long_range_pairs = prm.long_range_pairs;
  opts.full_pairwise = prm.full_pairwise;
  opts.weak = prm.weak;
  opts.seed = prm.seed;
  const FullVerdict v = verify_all(traj, battery, opts);
  fs::create_directories(prm.out_dir);
  io::write_report_csv(prm.out_dir / "report.csv", v.report);
  write_summary_json(prm.out_dir / "summary.json", v.report, v.requested_ok,
                     traj);
  print_report_lines(v.report, prm.weak);
  return v.requested_ok && v.report.internally_consistent;
}

bool run_check(const CheckParams& prm) {
  const Density f = io::read_density(prm.f_csv);
  const Density g = io::read_density(prm.g_csv);
  const Verdict v = prm.weak ? compare_weak(f, g, prm.tol)
                             : compare_continuous(f, g, prm.tol);
  std::cout << "relation: " << to_string(v.relation) << "\n";
  switch (v.relation) {
    case Relation::MajorizedBy:
      std::cout << "  f is majorized by g (f is the more spread out)\n";
      break;
    case Relation::Majorizes:
      std::cout << "  f majorizes g\n";
      break;
    case Relation::Equivalent:
      std::cout << "  equal decreasing rearrangements within tolerance\n";
      break;
    case Relation::Incomparable:
      std::cout << "  witness: " << v.witness->describe() << "\n";
      break;
  }
  std::cout << "  mass(f) - mass(g) = " << io::format_double(v.mass_difference)
            << "\n";
  return true;
}

bool DemoResult::all_pass() const {
  for (const auto& c : checks) {
    if (!c.pass) return false;
  }
  return true;
}

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

struct DemoContext {
  fs::path out;
  std::uint64_t seed;
  DemoResult result;

  void check(const std::string& name, bool pass, const std::string& detail) {
    result.checks.push_back({name, pass, detail});
    verdict_line(name, pass, detail);
  }
};

std::string fmt(double v) { return io::format_double(v); }

void demo_order_batches(DemoContext& ctx) {
  const auto start = Clock::now();
  // Sandwich: uniform below, all mass in one slot above.
  std::mt19937_64 rng(ctx.seed + 1);
  int bad = 0;
  for (int it = 0; it < 1000; ++it) {
    const int n = 2 + static_cast<int>(uniform_index(rng, 15));
    const std::int64_t total = static_cast<std::int64_t>(n) * 65536;
    const auto p = random_integer_composition(rng, n, total);
    const std::vector<double> uniform(n, 65536.0);
    std::vector<double> delta(n, 0.0);
    delta[0] = static_cast<double>(total);
    const auto lo = compare_discrete(uniform, p).relation;
    const auto hi = compare_discrete(p, delta).relation;
    const bool ok =
        (lo == Relation::MajorizedBy || lo == Relation::Equivalent) &&
        (hi == Relation::MajorizedBy || hi == Relation::Equivalent);
    bad += ok ? 0 : 1;
  }
  int bad_cont = 0;
  const Grid grid256(256);
  const Density uniform256 = Density::uniform(grid256);
  const Density delta256 = Density::delta(grid256, 100);
  for (int it = 0; it < 200; ++it) {
    const Density p = random_probability_density(rng, grid256);
    const auto lo = compare_continuous(uniform256, p).relation;
    const auto hi = compare_continuous(p, delta256).relation;
    const bool ok =
        (lo == Relation::MajorizedBy || lo == Relation::Equivalent) &&
        (hi == Relation::MajorizedBy || hi == Relation::Equivalent);
    bad_cont += ok ? 0 : 1;
  }
  ctx.check("sandwich-bounds", bad + bad_cont == 0,
            "1000 vectors + 200 densities, " + fmt(seconds_since(start)) +
                " s");

  // Order axioms: reflexivity and transitivity along averaging chains.
  std::mt19937_64 rng2(ctx.seed + 2);
  int refl_bad = 0;
  for (int it = 0; it < 250; ++it) {
    const Density p = random_probability_density(rng2, Grid(128));
    if (compare_continuous(p, p).relation != Relation::Equivalent) ++refl_bad;
    const auto x = random_integer_vector(rng2, 12, 0, 1 << 20);
    if (compare_discrete(x, x).relation != Relation::Equivalent) ++refl_bad;
  }
  int trans_bad = 0;
  for (int it = 0; it < 150; ++it) {
    const auto z = random_integer_vector(rng2, 16, 0, 1 << 20);
    const auto y = robin_hood_chain(rng2, z, 32);
    const auto x = robin_hood_chain(rng2, y, 32);
    const auto xy = compare_discrete(x, y).relation;
    const auto yz = compare_discrete(y, z).relation;
    const auto xz = compare_discrete(x, z).relation;
    const bool premises =
        (xy == Relation::MajorizedBy || xy == Relation::Equivalent) &&
        (yz == Relation::MajorizedBy || yz == Relation::Equivalent);
    const bool conclusion =
        xz == Relation::MajorizedBy || xz == Relation::Equivalent;
    if (!premises || !conclusion) ++trans_bad;
  }
  const Grid grid64(64);
  for (int it = 0; it < 150; ++it) {
    const Density z = random_step_density(rng2, grid64, 0, 1 << 20);
    std::vector<double> yv(z.values().begin(), z.values().end());
    yv = robin_hood_chain(rng2, std::move(yv), 128);
    std::vector<double> xv = robin_hood_chain(rng2, yv, 128);
    const Density y(grid64, std::move(yv));
    const Density x(grid64, std::move(xv));
    const auto xy = compare_continuous(x, y).relation;
    const auto yz = compare_continuous(y, z).relation;
    const auto xz = compare_continuous(x, z).relation;
    const bool ok =
        (xy == Relation::MajorizedBy || xy == Relation::Equivalent) &&
        (yz == Relation::MajorizedBy || yz == Relation::Equivalent) &&
        (xz == Relation::MajorizedBy || xz == Relation::Equivalent);
    if (!ok) ++trans_bad;
  }
  ctx.check("order-axioms", refl_bad + trans_bad == 0,
            "500 reflexive, 300 transitive triples");

  // Battery-oracle agreement on mixed-family pairs.
  std::mt19937_64 rng3(ctx.seed + 3);
  const auto oracle_start = Clock::now();
  int disagreements = 0;
  for (int it = 0; it < 500; ++it) {
    const DensityPair pair = random_comparison_pair(rng3, grid256);
    const Relation lhs = compare_continuous(pair.f, pair.g).relation;
    const Relation rhs = compare_by_battery(pair.f, pair.g, 200).relation;
    bool agree = false;
    switch (lhs) {
      case Relation::MajorizedBy:
        agree = rhs == Relation::MajorizedBy || rhs == Relation::Equivalent;
        break;
      case Relation::Majorizes:
        agree = rhs == Relation::Majorizes || rhs == Relation::Equivalent;
        break;
      case Relation::Equivalent:
        agree = rhs == Relation::Equivalent;
        break;
      case Relation::Incomparable:
        agree = rhs == Relation::Incomparable;
        break;
    }
    if (!agree) ++disagreements;
  }
  ctx.check("oracle-agreement", disagreements == 0,
            "500 pairs, 200-threshold hinge battery, " +
                fmt(seconds_since(oracle_start)) + " s");
}

void demo_heat(DemoContext& ctx) {
  const auto start = Clock::now();
  const FpeModel model = linear_model(1.0);
  const Grid grid(512);
  const Density p0 = builtin_init("cosine", grid);
  FpeRunConfig cfg;
  cfg.t_end = 0.2;
  cfg.snapshot_times = {0.0, 0.01, 0.05, 0.2};
  const Trajectory traj = fpe_evolve(p0, model, cfg);

  const Battery battery = standard_battery();
  const fs::path dir = ctx.out / "heat";
  io::save_trajectory(traj, dir);
  io::write_lambda_csv(dir / "lambda.csv",
                       fpe_lambda_rows(traj, battery, model));

  // The x^2 certificate follows 1 + (1/2) e^{-2 pi^2 t} for the cosine mode.
  const ConvexTestFn& x2 = *battery.find("x2");
  double worst_rel = 0.0;
  for (const auto& snap : traj.snapshots()) {
    const double expected = 1.0 + 0.5 * std::exp(-2.0 * kPi * kPi * snap.t);
    worst_rel = std::max(
        worst_rel, std::abs(lambda_phi(snap.p, x2) - expected) / expected);
  }
  ctx.check("heat-lambda-law", worst_rel <= 0.01,
            "max rel err " + fmt(worst_rel));

  const double lp0 = lambda_prime_rhs(traj[0].p, model, x2);
  const double target = -kPi * kPi;
  ctx.check("heat-dissipation-rate",
            std::abs(lp0 - target) <= 0.02 * std::abs(target),
            "lambda'(0) = " + fmt(lp0) + " vs -pi^2");

  VerifyOptions opts;
  opts.seed = ctx.seed;
  ResidualFn residual = [model](const Density& p, const ConvexTestFn& phi) {
    return lambda_prime_rhs(p, model, phi);
  };
  const FullVerdict v = verify_all(traj, battery, opts, {}, residual);
  io::write_report_csv(dir / "report.csv", v.report);
  write_summary_json(dir / "summary.json", v.report, v.requested_ok, traj);
  ctx.check("heat-chain-msl",
            v.requested_ok && v.report.internally_consistent,
            fmt(seconds_since(start)) + " s");
}

void demo_porous(DemoContext& ctx) {
  const auto start = Clock::now();
  const FpeModel model = porous_model(1.0, 2.0);
  const Grid grid(256);
  const Density p0 = builtin_init("bump", grid);
  FpeRunConfig cfg;
  cfg.t_end = 0.15;
  cfg.snapshot_times = linspace(0.0, 0.15, 50);
  const Trajectory traj = fpe_evolve(p0, model, cfg);

  const Battery battery = standard_battery();
  const fs::path dir = ctx.out / "porous";
  io::save_trajectory(traj, dir);
  io::write_lambda_csv(dir / "lambda.csv",
                       fpe_lambda_rows(traj, battery, model));

  double drift = 0.0;
  for (const auto& snap : traj.snapshots()) {
    drift = std::max(drift, std::abs(snap.p.mass() - traj[0].p.mass()));
  }
  ctx.check("porous-mass", drift <= 1e-12, "max drift " + fmt(drift));

  VerifyOptions opts;
  opts.seed = ctx.seed;
  ResidualFn residual = [model](const Density& p, const ConvexTestFn& phi) {
    return lambda_prime_rhs(p, model, phi);
  };
  const FullVerdict v = verify_all(traj, battery, opts, {}, residual);
  io::write_report_csv(dir / "report.csv", v.report);
  write_summary_json(dir / "summary.json", v.report, v.requested_ok, traj);
  ctx.check("porous-chain-msl", v.requested_ok, "50 snapshots");

  const Density& last = traj[traj.size() - 1].p;
  const double dist = last.max_abs_diff(Density::uniform(grid));
  ctx.check("porous-uniform-limit", dist <= 1e-4,
            "max-norm distance " + fmt(dist));
  ctx.check("porous-infimum",
            v.report.sandwich && v.report.sandwich->strict_holds &&
                v.report.sandwich->max_residual <= 1e-8,
            "stationary residual " + fmt(v.report.sandwich->max_residual) +
                ", " + fmt(seconds_since(start)) + " s");
}

void demo_quantum_hermitian(DemoContext& ctx) {
  const Grid grid(512);
  const QuantumMode mode = QuantumMode::sine(grid, 1, 1.0, 0.0, 1.0);
  const auto times = linspace(0.0, 5.0, 20);
  const Trajectory traj = quantum_trajectory(mode, times);
  const Battery battery = standard_battery();
  const fs::path dir = ctx.out / "quantum-hermitian";
  io::save_trajectory(traj, dir);
  io::write_lambda_csv(dir / "lambda.csv",
                       quantum_lambda_rows(traj, battery, mode));

  const auto table = lambda_table(traj, battery);
  double worst = 0.0;
  for (std::size_t k = 1; k < table.size(); ++k) {
    for (std::size_t j = 0; j < table[k].size(); ++j) {
      worst = std::max(worst, std::abs(table[k][j] - table[0][j]));
    }
  }
  ctx.check("hermitian-flat", worst <= 1e-12, "max |dlambda| " + fmt(worst));

  bool all_equivalent = true;
  for (std::size_t i = 0; i < traj.size(); ++i) {
    for (std::size_t j = i + 1; j < traj.size(); ++j) {
      all_equivalent = all_equivalent &&
                       compare_continuous(traj[j].p, traj[i].p).relation ==
                           Relation::Equivalent;
    }
  }
  ctx.check("hermitian-equivalent", all_equivalent, "all snapshot pairs");
}

void demo_quantum_decay(DemoContext& ctx) {
  const Grid grid(512);
  const QuantumMode mode = QuantumMode::sine(grid, 1, 1.0, -0.1, 1.0);
  const auto times = linspace(0.0, 5.0, 20);
  const Trajectory traj = quantum_trajectory(mode, times);
  const Battery battery = icx_battery();
  const fs::path dir = ctx.out / "quantum-decay";
  io::save_trajectory(traj, dir);
  io::write_lambda_csv(dir / "lambda.csv",
                       quantum_lambda_rows(traj, battery, mode));

  double mass_err = 0.0;
  for (std::size_t k = 0; k < traj.size(); ++k) {
    mass_err = std::max(mass_err, std::abs(traj[k].p.mass() -
                                           std::exp(-0.2 * times[k])));
  }
  ctx.check("decay-mass-law", mass_err <= 1e-10, "max err " + fmt(mass_err));

  const double lp0 = quantum_lambda_prime(mode, 0.0, *battery.find("linear"));
  ctx.check("decay-lambda-prime", std::abs(lp0 + 0.2) <= 1e-13,
            "lambda'(0) = " + fmt(lp0));

  VerifyOptions opts;
  opts.seed = ctx.seed;
  opts.weak = true;
  ResidualFn residual = [mode, t_last = times.back()](const Density&,
                                                      const ConvexTestFn& phi) {
    return quantum_lambda_prime(mode, t_last, phi);
  };
  const FullVerdict v = verify_all(traj, battery, opts, {}, residual);
  io::write_report_csv(dir / "report.csv", v.report);
  write_summary_json(dir / "summary.json", v.report, v.requested_ok, traj);
  ctx.check("decay-weak-chain", v.requested_ok, "icx battery");

  bool mass_witness = v.report.chain_holds && !*v.report.chain_holds;
  if (mass_witness) {
    for (const auto& rec : v.report.records) {
      if (rec.check == "chain" && !rec.pass && rec.phi_id != "mass") {
        mass_witness = false;
      }
    }
  }
  ctx.check("decay-strict-fails-mass", mass_witness,
            "every strict failure cites the mass test");

  std::vector<io::BoundRow> rows;
  bool bounds_ok = true;
  for (const auto& snap : traj.snapshots()) {
    for (const auto& phi : battery.members) {
      if (!phi.differentiable) continue;
      const BoundCheck b = nonhermitian_bound_check(mode, snap.t, phi);
      rows.push_back({snap.t, phi.id, b.lhs, b.rhs, b.holds});
      bounds_ok = bounds_ok && b.holds;
    }
  }
  io::write_bound_csv(dir / "bound.csv", rows);
  ctx.check("decay-bound", bounds_ok, "norm-corrected rhs, all times");
}

void demo_mixing(DemoContext& ctx) {
  const auto start = Clock::now();
  MapSystem logistic = logistic_map(ctx.seed + 8);
  const Grid hist_grid(32);
  const Density f_star =
      estimate_invariant_density(logistic, 10'000, 20'000'000, hist_grid);
  logistic.invariant_density_estimate = f_star;

  double worst_sym = 0.0;
  const auto v = f_star.values();
  const int n = hist_grid.n_cells();
  for (int i = 0; i < n / 2; ++i) {
    const double a = v[i];
    const double b = v[n - 1 - i];
    worst_sym = std::max(worst_sym, std::abs(a - b) / (0.5 * (a + b)));
  }
  ctx.check("mixing-histogram-symmetry", worst_sym <= 0.02,
            "worst pair asymmetry " + fmt(worst_sym));
  ctx.check("mixing-histogram-shape", v[0] > 2.0 * v[n / 2],
            "edge/center ratio " + fmt(v[0] / v[n / 2]));

  const Grid obs_grid(2048);
  const std::vector<Observable> log_obs = {
      make_observable("centered_x", obs_grid),
      make_observable("sin1", obs_grid)};
  const MixingReport log_report =
      mixing_verdict(logistic, log_obs, 60, 0.02, 1'000'000);
  const fs::path dir = ctx.out / "mixing-logistic";
  fs::create_directories(dir);
  io::write_density(dir / "invariant_density.csv", f_star);
  io::write_correlations_csv(dir / "correlations.csv", log_report);
  int max_settle = -1;
  for (const auto& pair : log_report.pairs) {
    max_settle = std::max(max_settle, pair.n_settle);
  }
  ctx.check("mixing-logistic", log_report.all_consistent && max_settle <= 20,
            "all pairs settle by n=" + std::to_string(max_settle));

  MapSystem rotation = rotation_map((std::sqrt(5.0) - 1.0) / 2.0,
                                    ctx.seed + 9);
  rotation.invariant_density_estimate =
      estimate_invariant_density(rotation, 10'000, 1'000'000, hist_grid);
  const std::vector<Observable> rot_obs = {make_observable("cos1", obs_grid),
                                           make_observable("sin1", obs_grid)};
  const MixingReport rot_report =
      mixing_verdict(rotation, rot_obs, 60, 0.02, 1'000'000);
  const fs::path rdir = ctx.out / "mixing-rotation";
  fs::create_directories(rdir);
  io::write_density(rdir / "invariant_density.csv",
                    *rotation.invariant_density_estimate);
  io::write_correlations_csv(rdir / "correlations.csv", rot_report);
  bool none_consistent = true;
  double min_tail = 1e300;
  for (const auto& pair : rot_report.pairs) {
    none_consistent = none_consistent && !pair.consistent;
    min_tail = std::min(min_tail, pair.worst_tail_abs_err);
  }
  ctx.check("mixing-rotation", none_consistent && min_tail >= 0.1,
            "persistent |corr| >= " + fmt(min_tail) + ", " +
                fmt(seconds_since(start)) + " s");
}

void demo_msl_vs_sl(DemoContext& ctx) {
  // Concentrating step: the x^2 certificate rises while entropy also rises,
  // so the entropy law alone cannot see the violation.
  const Grid grid(4);
  Trajectory traj(TrajectorySource::file);
  traj.append(0.0, Density(grid, {1.6, 1.6, 0.4, 0.4}));
  traj.append(1.0, Density(grid, {2.08, 0.64, 0.64, 0.64}));
  const Battery battery = standard_battery();
  const ChainReport msl = verify_msl(traj, battery, 1e-8);

  const fs::path dir = ctx.out / "msl-vs-sl";
  io::save_trajectory(traj, dir);
  io::write_report_csv(dir / "report.csv", msl);

  bool x2_witness = false;
  for (const auto& rec : msl.records) {
    if (rec.check == "msl" && !rec.pass && rec.phi_id == "x2") {
      x2_witness = true;
    }
  }
  ctx.check("msl-vs-sl",
            msl.msl_holds && !*msl.msl_holds && msl.sl_holds &&
                *msl.sl_holds && x2_witness,
            "msl fails with x2 witness, sl holds");
}

}  // namespace

DemoResult run_demo(const fs::path& out_dir, std::uint64_t seed) {
  DemoContext ctx{out_dir, seed, {}};
  fs::create_directories(out_dir);
  demo_order_batches(ctx);
  demo_heat(ctx);
  demo_porous(ctx);
  demo_quantum_hermitian(ctx);
  demo_quantum_decay(ctx);
  demo_mixing(ctx);
  demo_msl_vs_sl(ctx);
  std::cout << (ctx.result.all_pass() ? "demo: all checks passed"
                                      : "demo: FAILURES present")
            << "\n";
  return ctx.result;
}

}  // namespace majdyn::scenario
