// Acceptance suite: each criterion prints one PASS/FAIL line and the
// binary exits nonzero on failure. Usage:
//   acceptance <1..10|all> [--cli <path-to-majdyn>]
// Criterion 10 drives the CLI itself, the rest run against the library.

#include <chrono>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <numbers>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "majdyn/chain_verifier.hpp"
#include "majdyn/csv_io.hpp"
#include "majdyn/fpe.hpp"
#include "majdyn/generators.hpp"
#include "majdyn/mixing.hpp"
#include "majdyn/quantum.hpp"
#include "majdyn/rng.hpp"

using namespace majdyn;
namespace fs = std::filesystem;

namespace {

constexpr double kPi = std::numbers::pi;

struct Outcome {
  bool ok;
  std::string detail;
};

using Clock = std::chrono::steady_clock;

double elapsed_s(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

std::string fmt(double v) {
  std::ostringstream os;
  os << v;
  return os.str();
}

bool ordered(Relation r) {
  return r == Relation::MajorizedBy || r == Relation::Equivalent;
}

// --- criterion 1: uniform ≺ p ≺ delta ------------------------------------

Outcome criterion_sandwich() {
  const auto start = Clock::now();
  std::mt19937_64 rng(1001);
  int bad = 0;
  for (int it = 0; it < 1000; ++it) {
    const int n = 2 + static_cast<int>(uniform_index(rng, 15));
    // Probability vectors represented exactly: integer compositions of
    // n * 2^16, with the uniform vector at 2^16 per slot. Majorization is
    // invariant under the common scale.
    const std::int64_t total = static_cast<std::int64_t>(n) << 16;
    const auto p = random_integer_composition(rng, n, total);
    const std::vector<double> uniform(n, 65536.0);
    std::vector<double> delta(n, 0.0);
    delta[0] = static_cast<double>(total);
    if (!ordered(compare_discrete(uniform, p).relation)) ++bad;
    if (!ordered(compare_discrete(p, delta).relation)) ++bad;
  }
  const Grid g(256);
  const Density uniform = Density::uniform(g);
  const Density delta = Density::delta(g, 31);
  for (int it = 0; it < 200; ++it) {
    const Density p = random_probability_density(rng, g);
    if (!ordered(compare_continuous(uniform, p, 1e-9).relation)) ++bad;
    if (!ordered(compare_continuous(p, delta, 1e-9).relation)) ++bad;
  }
  const double secs = elapsed_s(start);
  return {bad == 0 && secs < 5.0,
          "1000 vectors + 200 densities, " + std::to_string(bad) +
              " violations, " + fmt(secs) + " s (< 5 s)"};
}

// --- criterion 2: order axioms --------------------------------------------

Outcome criterion_axioms() {
  std::mt19937_64 rng(1002);
  int bad = 0;
  for (int it = 0; it < 500; ++it) {
    const Density p = random_probability_density(rng, Grid(96));
    if (compare_continuous(p, p).relation != Relation::Equivalent) ++bad;
  }
  for (int it = 0; it < 150; ++it) {
    const auto z = random_integer_vector(rng, 14, 0, 1 << 20);
    const auto y = robin_hood_chain(rng, z, 28);
    const auto x = robin_hood_chain(rng, y, 28);
    if (!ordered(compare_discrete(x, y).relation) ||
        !ordered(compare_discrete(y, z).relation) ||
        !ordered(compare_discrete(x, z).relation)) {
      ++bad;
    }
  }
  const Grid g(64);
  for (int it = 0; it < 150; ++it) {
    const Density z = random_step_density(rng, g, 0, 1 << 20);
    std::vector<double> yv(z.values().begin(), z.values().end());
    yv = robin_hood_chain(rng, std::move(yv), 128);
    std::vector<double> xv = robin_hood_chain(rng, yv, 128);
    const Density y(g, std::move(yv));
    const Density x(g, std::move(xv));
    if (!ordered(compare_continuous(x, y).relation) ||
        !ordered(compare_continuous(y, z).relation) ||
        !ordered(compare_continuous(x, z).relation)) {
      ++bad;
    }
  }
  return {bad == 0, "500 reflexive + 300 averaging triples, " +
                        std::to_string(bad) + " violations"};
}

// --- criterion 3: battery-oracle equivalence ------------------------------

Outcome criterion_oracle() {
  const auto start = Clock::now();
  std::mt19937_64 rng(1003);
  const Grid g(256);
  int disagreements = 0;
  for (int it = 0; it < 500; ++it) {
    const DensityPair pair = random_comparison_pair(rng, g);
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
  const double secs = elapsed_s(start);
  return {disagreements == 0 && secs < 30.0,
          "500 pairs, " + std::to_string(disagreements) +
              " disagreements, " + fmt(secs) + " s (< 30 s)"};
}

// --- criterion 4: heat-equation dissipation -------------------------------

Outcome criterion_heat() {
  const auto start = Clock::now();
  const Grid g(512);
  const Density p0 =
      Density::sampled(g, [](double x) { return 1.0 + std::cos(kPi * x); });
  const FpeModel model = linear_model(1.0);
  FpeRunConfig cfg;
  cfg.t_end = 0.2;
  cfg.snapshot_times = {0.0, 0.01, 0.05, 0.2};
  const Trajectory traj = fpe_evolve(p0, model, cfg);

  const Battery bank = standard_battery();
  const ConvexTestFn& x2 = *bank.find("x2");
  bool law_ok = true;
  for (const auto& snap : traj.snapshots()) {
    const double expected = 1.0 + 0.5 * std::exp(-2.0 * kPi * kPi * snap.t);
    law_ok = law_ok &&
             std::abs(lambda_phi(snap.p, x2) - expected) <= 0.01 * expected;
  }

  const ChainReport msl = verify_msl(traj, bank, 1e-8);
  const ChainReport chain = verify_chain(traj);
  const double rate0 = lambda_prime_rhs(traj[0].p, model, x2);
  const bool rate_ok = std::abs(rate0 + kPi * kPi) <= 0.02 * kPi * kPi;

  const double secs = elapsed_s(start);
  const bool ok = law_ok && *msl.msl_holds && *chain.chain_holds && rate_ok &&
                  secs < 60.0;
  return {ok, std::string("lambda law ") + (law_ok ? "ok" : "BAD") +
                  ", msl " + (*msl.msl_holds ? "ok" : "BAD") + ", chain " +
                  (*chain.chain_holds ? "ok" : "BAD") + ", rate(0) = " +
                  fmt(rate0) + " vs -pi^2, " + fmt(secs) + " s (< 60 s)"};
}

// --- criterion 5: porous-medium run certified to the infimum ---------------

Outcome criterion_porous() {
  const auto start = Clock::now();
  const Grid g(256);
  const Density p0 = Density::sampled(
      g, [](double x) { return 1.0 - 0.5 * std::cos(2.0 * kPi * x); });
  const FpeModel model = porous_model(1.0, 2.0);
  FpeRunConfig cfg;
  cfg.t_end = 0.15;
  for (int i = 0; i < 50; ++i) cfg.snapshot_times.push_back(0.15 * i / 49);
  const Trajectory traj = fpe_evolve(p0, model, cfg);

  double drift = 0.0;
  for (const auto& snap : traj.snapshots()) {
    drift = std::max(drift, std::abs(snap.p.mass() - traj[0].p.mass()));
  }

  const ChainReport chain = verify_chain(traj);
  const ChainReport msl = verify_msl(traj, standard_battery(), 1e-8);
  const ResidualFn residual = [model](const Density& p,
                                      const ConvexTestFn& phi) {
    return lambda_prime_rhs(p, model, phi);
  };
  const ChainReport sandwich =
      verify_sandwich(traj, {}, standard_battery(), 1e-9, residual, 1e-8);
  const double dist =
      traj[traj.size() - 1].p.max_abs_diff(Density::uniform(g));

  const double secs = elapsed_s(start);
  const bool ok = drift <= 1e-12 && *chain.chain_holds && *msl.msl_holds &&
                  dist <= 1e-4 && sandwich.sandwich->strict_holds &&
                  secs < 120.0;
  return {ok, "mass drift " + fmt(drift) + ", final |p-1| " + fmt(dist) +
                  ", infimum " +
                  (sandwich.sandwich->strict_holds ? "certified" : "BAD") +
                  ", " + fmt(secs) + " s (< 120 s)"};
}

// --- criterion 6: Hermitian mode is a frozen chain -------------------------

Outcome criterion_hermitian() {
  const QuantumMode mode = QuantumMode::sine(Grid(512), 1, 1.0, 0.0);
  std::vector<double> times;
  for (int i = 0; i < 20; ++i) times.push_back(5.0 * i / 19);
  const Trajectory traj = quantum_trajectory(mode, times);
  const auto table = lambda_table(traj, standard_battery());
  double worst = 0.0;
  for (std::size_t k = 0; k < table.size(); ++k) {
    for (std::size_t j = 0; j < table[k].size(); ++j) {
      worst = std::max(worst, std::abs(table[k][j] - table[0][j]));
    }
  }
  bool equivalent = true;
  for (std::size_t i = 0; i < traj.size(); ++i) {
    for (std::size_t j = i + 1; j < traj.size(); ++j) {
      equivalent = equivalent &&
                   compare_continuous(traj[j].p, traj[i].p).relation ==
                       Relation::Equivalent;
    }
  }
  return {worst <= 1e-12 && equivalent,
          "max |dlambda| = " + fmt(worst) + ", all pairs " +
              (equivalent ? "Equivalent" : "BAD")};
}

// --- criterion 7: decaying mode -------------------------------------------

Outcome criterion_decay() {
  const QuantumMode mode = QuantumMode::sine(Grid(512), 1, 1.0, -0.1, 1.0);
  std::vector<double> times;
  for (int i = 0; i < 20; ++i) times.push_back(5.0 * i / 19);
  const Trajectory traj = quantum_trajectory(mode, times);

  double mass_err = 0.0;
  for (std::size_t k = 0; k < traj.size(); ++k) {
    mass_err = std::max(
        mass_err, std::abs(traj[k].p.mass() - std::exp(-0.2 * times[k])));
  }

  const Battery icx = icx_battery();
  const double lp0 = quantum_lambda_prime(mode, 0.0, *icx.find("linear"));
  const bool rate_ok = std::abs(lp0 + 0.2) <= 1e-13;

  const ChainReport chain = verify_chain(traj);
  const ChainReport msl = verify_msl(traj, icx, 1e-8);
  bool strict_fails_on_mass = !*chain.chain_holds;
  for (const auto& rec : chain.records) {
    if (rec.check == "chain" && !rec.pass && rec.phi_id != "mass") {
      strict_fails_on_mass = false;
    }
  }

  bool bounds_ok = true;
  for (const auto& phi : icx.members) {
    if (!phi.differentiable) continue;
    bounds_ok = bounds_ok && nonhermitian_bound_check(mode, 0.0, phi).holds;
  }

  const bool ok = mass_err <= 1e-10 && rate_ok && *chain.weak_chain_holds &&
                  *msl.msl_holds && strict_fails_on_mass && bounds_ok;
  return {ok, "mass err " + fmt(mass_err) + ", lambda'(0) = " + fmt(lp0) +
                  ", weak chain " +
                  (*chain.weak_chain_holds ? "ok" : "BAD") +
                  ", strict fails on mass " +
                  (strict_fails_on_mass ? "ok" : "BAD") + ", bound " +
                  (bounds_ok ? "ok" : "BAD")};
}

// --- criterion 8: mixing diagnostics ---------------------------------------

Outcome criterion_mixing() {
  const auto start = Clock::now();
  MapSystem logistic = logistic_map(1008);
  const Grid hist_grid(32);
  const Density f_star =
      estimate_invariant_density(logistic, 10'000, 20'000'000, hist_grid);
  logistic.invariant_density_estimate = f_star;

  double worst_sym = 0.0;
  for (int i = 0; i < hist_grid.n_cells() / 2; ++i) {
    const double a = f_star.values()[i];
    const double b = f_star.values()[hist_grid.n_cells() - 1 - i];
    worst_sym = std::max(worst_sym, std::abs(a - b) / (0.5 * (a + b)));
  }

  const Grid og(2048);
  const std::vector<Observable> log_obs{make_observable("centered_x", og),
                                        make_observable("sin1", og)};
  const MixingReport log_report =
      mixing_verdict(logistic, log_obs, 60, 0.02, 1'000'000);
  int max_settle = -1;
  for (const auto& pair : log_report.pairs) {
    max_settle = std::max(max_settle, pair.n_settle);
  }
  const bool logistic_ok = log_report.all_consistent && max_settle <= 20;

  MapSystem rot = rotation_map((std::sqrt(5.0) - 1.0) / 2.0, 1008);
  rot.invariant_density_estimate =
      estimate_invariant_density(rot, 10'000, 1'000'000, hist_grid);
  const std::vector<Observable> rot_obs{make_observable("cos1", og),
                                        make_observable("sin1", og)};
  const MixingReport rot_report =
      mixing_verdict(rot, rot_obs, 60, 0.02, 1'000'000);
  bool rotation_ok = true;
  for (const auto& pair : rot_report.pairs) {
    rotation_ok =
        rotation_ok && !pair.consistent && pair.worst_tail_abs_err >= 0.1;
  }

  const double secs = elapsed_s(start);
  const bool ok =
      logistic_ok && rotation_ok && worst_sym <= 0.02 && secs < 60.0;
  return {ok, std::string("logistic settles by n=") +
                  std::to_string(max_settle) + ", rotation persistent " +
                  (rotation_ok ? "ok" : "BAD") + ", histogram asymmetry " +
                  fmt(worst_sym) + ", " + fmt(secs) + " s (< 60 s)"};
}

// --- criterion 9: majorized law strictly stronger than the entropy law -----

Outcome criterion_msl_vs_sl() {
  Trajectory traj(TrajectorySource::file);
  const Grid g(4);
  traj.append(0.0, Density(g, {1.6, 1.6, 0.4, 0.4}));
  traj.append(1.0, Density(g, {2.08, 0.64, 0.64, 0.64}));
  const ChainReport msl = verify_msl(traj, standard_battery(), 1e-8);
  bool x2_witness = false;
  for (const auto& rec : msl.violations()) {
    if (rec.check == "msl" && rec.phi_id == "x2") x2_witness = true;
  }
  const bool ok = msl.msl_holds && !*msl.msl_holds && msl.sl_holds &&
                  *msl.sl_holds && x2_witness;
  return {ok, std::string("msl_holds=false ") +
                  (!*msl.msl_holds ? "ok" : "BAD") + ", sl_holds=true " +
                  (*msl.sl_holds ? "ok" : "BAD") + ", x2 witness " +
                  (x2_witness ? "ok" : "BAD")};
}

// --- criterion 10: demo reproducibility ------------------------------------

bool same_bytes(const fs::path& a, const fs::path& b) {
  std::ifstream fa(a, std::ios::binary);
  std::ifstream fb(b, std::ios::binary);
  if (!fa || !fb) return false;
  const std::string da((std::istreambuf_iterator<char>(fa)),
                       std::istreambuf_iterator<char>());
  const std::string db((std::istreambuf_iterator<char>(fb)),
                       std::istreambuf_iterator<char>());
  return da == db;
}

Outcome criterion_reproducibility(const std::string& cli) {
  if (cli.empty()) {
    return {false, "no --cli <path> given"};
  }
  const fs::path base =
      fs::temp_directory_path() / "majdyn-acceptance-demo";
  const fs::path a = base / "a";
  const fs::path b = base / "b";
  fs::remove_all(base);
  for (const fs::path& dir : {a, b}) {
    const std::string cmd = "\"" + cli + "\" demo --out \"" + dir.string() +
                            "\" --seed 99 > /dev/null";
    if (std::system(cmd.c_str()) != 0) {
      return {false, "demo run failed: " + cmd};
    }
  }
  std::size_t n_files = 0;
  for (const auto& entry : fs::recursive_directory_iterator(a)) {
    if (!entry.is_regular_file()) continue;
    ++n_files;
    const fs::path rel = fs::relative(entry.path(), a);
    if (!same_bytes(entry.path(), b / rel)) {
      return {false, "differs: " + rel.string()};
    }
  }
  std::size_t n_files_b = 0;
  for (const auto& entry : fs::recursive_directory_iterator(b)) {
    if (entry.is_regular_file()) ++n_files_b;
  }
  fs::remove_all(base);
  return {n_files > 0 && n_files == n_files_b,
          std::to_string(n_files) + " files byte-identical across two runs"};
}

}  // namespace

int main(int argc, char** argv) {
  std::string which = "all";
  std::string cli;
  for (int i = 1; i < argc; ++i) {
    const std::string arg = argv[i];
    if (arg == "--cli" && i + 1 < argc) {
      cli = argv[++i];
    } else {
      which = arg;
    }
  }

  const std::vector<std::pair<std::string, std::function<Outcome()>>> all{
      {"sandwich bounds (uniform and delta)", criterion_sandwich},
      {"order axioms (reflexive, transitive)", criterion_axioms},
      {"battery-oracle equivalence", criterion_oracle},
      {"heat-equation dissipation", criterion_heat},
      {"porous-medium chain to the infimum", criterion_porous},
      {"Hermitian mode: frozen chain", criterion_hermitian},
      {"decaying mode: weak chain and bound", criterion_decay},
      {"mixing diagnostics", criterion_mixing},
      {"majorized law strictly stronger than entropy law",
       criterion_msl_vs_sl},
      {"demo reproducibility", [&] { return criterion_reproducibility(cli); }},
  };

  bool all_ok = true;
  for (std::size_t i = 0; i < all.size(); ++i) {
    const int num = static_cast<int>(i) + 1;
    if (which != "all" && which != std::to_string(num)) continue;
    const Outcome out = all[i].second();
    all_ok = all_ok && out.ok;
    std::cout << "criterion " << num << ": " << (out.ok ? "PASS" : "FAIL")
              << " — " << all[i].first << " (" << out.detail << ")\n";
  }
  return all_ok ? 0 : 1;
}
