// majdyn: majorization order diagnostics and ordered-chain certification
// for grid densities evolved by diffusion, quantum decay, and interval maps.

#include <exception>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "majdyn/scenario.hpp"

namespace {

constexpr const char* kVersion = "majdyn 0.1.0";

void add_common(CLI::App* sub, std::filesystem::path& out_dir,
                std::uint64_t& seed, const std::string& default_subdir) {
  out_dir = majdyn::scenario::default_output_dir() / default_subdir;
  sub->add_option("--out", out_dir, "Output directory for CSVs")
      ->capture_default_str();
  sub->add_option("--seed", seed, "RNG seed (overrides config)")
      ->capture_default_str();
  sub->set_config("--config")->configurable(false);
  sub->allow_config_extras(false);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "Majorization order on grid densities: compare distributions, evolve "
      "diffusive/quantum/map dynamics, and certify ordered chains and the "
      "majorized monotonicity laws along trajectories."};
  app.set_version_flag("--version", kVersion);
  app.require_subcommand(1);

  using namespace majdyn::scenario;

  // ---- check ----
  CheckParams check;
  auto* sub_check = app.add_subcommand(
      "check", "Compare two density CSVs under the majorization order");
  sub_check->add_option("f", check.f_csv, "First density CSV")->required();
  sub_check->add_option("g", check.g_csv, "Second density CSV")->required();
  sub_check->add_flag("--weak", check.weak,
                      "Weak majorization (no total-mass equality)");
  sub_check->add_option("--tol", check.tol, "Comparison tolerance")
      ->capture_default_str();

  // ---- evolve-fpe ----
  FpeParams fpe;
  auto* sub_fpe = app.add_subcommand(
      "evolve-fpe", "Evolve a density under generalized diffusion and "
                    "certify the ordered chain");
  sub_fpe->add_option("--model", fpe.model, "linear | porous")
      ->capture_default_str();
  sub_fpe->add_option("--d", fpe.d_coef, "Diffusion coefficient D > 0")
      ->capture_default_str();
  sub_fpe->add_option("--nu", fpe.nu, "Porous exponent nu >= 1")
      ->capture_default_str();
  sub_fpe->add_option("--grid", fpe.grid, "Number of cells")
      ->capture_default_str();
  sub_fpe->add_option("--t-end", fpe.t_end, "Final time")
      ->capture_default_str();
  sub_fpe->add_option("--snapshots", fpe.snapshots,
                      "Comma-separated snapshot times (default: 20 even)")
      ->delimiter(',');
  sub_fpe->add_option("--init", fpe.init,
                      "builtin:cosine | builtin:bump | builtin:uniform | CSV")
      ->capture_default_str();
  sub_fpe->add_option("--dt", fpe.dt, "Fixed step (0 = auto)")
      ->capture_default_str();
  sub_fpe->add_option("--safety", fpe.safety, "Stability safety factor (0,1]")
      ->capture_default_str();
  sub_fpe->add_option("--battery", fpe.battery_ids,
                      "Test-function ids (default: standard battery)")
      ->delimiter(',');
  sub_fpe->add_flag("!--no-verify", fpe.verify, "Skip chain certification");
  std::uint64_t fpe_seed = 1;
  add_common(sub_fpe, fpe.out_dir, fpe_seed, "fpe");

  // ---- evolve-quantum ----
  QuantumParams qu;
  auto* sub_qu = app.add_subcommand(
      "evolve-quantum",
      "Closed-form eigenmode evolution with complex energy; weak-chain "
      "certification for decaying modes");
  sub_qu->add_option("--mode", qu.mode, "sine:<k> | gauss")
      ->capture_default_str();
  sub_qu->add_option("--epsilon", qu.epsilon, "Real part of the energy")
      ->capture_default_str();
  sub_qu->add_option("--gamma", qu.gamma, "Imaginary part (decay when < 0)")
      ->capture_default_str();
  sub_qu->add_option("--hbar", qu.hbar, "hbar > 0")->capture_default_str();
  sub_qu->add_option("--grid", qu.grid, "Number of cells")
      ->capture_default_str();
  sub_qu->add_option("--snapshots", qu.snapshots,
                     "Comma-separated snapshot times")
      ->delimiter(',');
  sub_qu->add_option("--battery", qu.battery_ids,
                     "Test-function ids (default: standard, icx when "
                     "gamma < 0)")
      ->delimiter(',');
  sub_qu->add_flag("!--no-verify", qu.verify, "Skip chain certification");
  std::uint64_t qu_seed = 1;
  add_common(sub_qu, qu.out_dir, qu_seed, "quantum");

  // ---- mixing ----
  MixingParams mix;
  auto* sub_mix = app.add_subcommand(
      "mixing", "Correlation-decay diagnostics for interval maps");
  sub_mix->add_option("--map", mix.map,
                      "logistic | doubling | tent | rotation[:<alpha>]")
      ->capture_default_str();
  sub_mix->add_option("--n-max", mix.n_max, "Largest iterate")
      ->capture_default_str();
  sub_mix->add_option("--points", mix.points, "Quadrature nodes")
      ->capture_default_str();
  sub_mix->add_option("--tol", mix.tol, "Mixing band half-width")
      ->capture_default_str();
  sub_mix->add_option("--observables", mix.observables,
                      "Observable ids: one, centered_x, cos1, sin1")
      ->delimiter(',');
  sub_mix->add_option("--obs-grid", mix.obs_grid, "Observable sampling grid")
      ->capture_default_str();
  sub_mix->add_option("--hist-grid", mix.hist_grid,
                      "Invariant-density histogram cells")
      ->capture_default_str();
  sub_mix->add_option("--hist-samples", mix.hist_samples,
                      "Invariant-density orbit samples")
      ->capture_default_str();
  add_common(sub_mix, mix.out_dir, mix.seed, "mixing");

  // ---- verify-chain ----
  VerifyParams ver;
  auto* sub_ver = app.add_subcommand(
      "verify-chain", "Certify or refute the ordered-chain property of a "
                      "saved trajectory");
  sub_ver->add_option("--in", ver.input, "Trajectory directory or csv glob")
      ->required();
  sub_ver->add_option("--battery", ver.battery_ids, "Test-function ids")
      ->delimiter(',');
  sub_ver->add_option("--tol", ver.tol_compare, "Comparison tolerance")
      ->capture_default_str();
  sub_ver->add_option("--tol-lambda", ver.tol_lambda,
                      "Certificate-step tolerance")
      ->capture_default_str();
  sub_ver->add_option("--long-range-pairs", ver.long_range_pairs,
                      "Random non-adjacent pairs to spot-check")
      ->capture_default_str();
  sub_ver->add_flag("--full-pairwise", ver.full_pairwise,
                    "Check every snapshot pair");
  sub_ver->add_flag("--weak", ver.weak,
                    "Certify the weak chain (decaying mass)");
  add_common(sub_ver, ver.out_dir, ver.seed, "verify");

  // ---- demo ----
  std::filesystem::path demo_out;
  std::uint64_t demo_seed = 1;
  auto* sub_demo = app.add_subcommand(
      "demo", "Run the builtin verification suite and write all CSVs");
  add_common(sub_demo, demo_out, demo_seed, "demo");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*sub_check) return run_check(check) ? 0 : 2;
    if (*sub_fpe) {
      fpe.seed = fpe_seed;
      return run_fpe(fpe) ? 0 : 2;
    }
    if (*sub_qu) {
      qu.seed = qu_seed;
      return run_quantum(qu) ? 0 : 2;
    }
    if (*sub_mix) return run_mixing(mix) ? 0 : 2;
    if (*sub_ver) return run_verify(ver) ? 0 : 2;
    if (*sub_demo) return run_demo(demo_out, demo_seed).all_pass() ? 0 : 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 1;
}
