// Command-line front end: every subcommand reads a key = value config and
// writes CSV to --out (or stdout).

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>
#include <fmt/format.h>

#include "nhq/error.hpp"
#include "nhq/harness/config.hpp"
#include "nhq/harness/contours.hpp"
#include "nhq/harness/csv.hpp"
#include "nhq/harness/presets.hpp"
#include "nhq/harness/shots.hpp"
#include "nhq/harness/sweep.hpp"
#include "nhq/lindblad.hpp"
#include "nhq/propagator.hpp"

namespace {

using namespace nhq;
using namespace nhq::harness;

constexpr int kExitOk = 0;
constexpr int kExitConfig = 2;
constexpr int kExitNumerical = 3;
constexpr int kExitUnknownPreset = 4;

struct GlobalFlags {
  std::string config_path;
  std::string out;
  std::optional<std::uint64_t> seed;
  std::optional<std::string> engine;
};

Config resolve_config(const GlobalFlags& flags) {
  Config cfg = flags.config_path.empty() ? Config{} : load_config(flags.config_path);
  if (flags.engine) cfg.engine = parse_engine(*flags.engine);
  if (flags.seed) cfg.seed = *flags.seed;
  cfg.validate();
  return cfg;
}

EngineOptions engine_options(const Config& cfg) {
  return EngineOptions{cfg.engine, cfg.slices_tol, cfg.dt};
}

void emit(const std::string& out, const std::string& content) {
  if (out.empty() || out == "-") {
    std::cout << content;
    return;
  }
  std::ofstream f(out, std::ios::binary);
  if (!f) throw Error(ErrorCode::ConfigError, "cannot write " + out);
  f << content;
}

bool any_failed(const std::vector<SweepPoint>& points) {
  for (const auto& p : points) {
    if (p.error) return true;
  }
  return false;
}

int cmd_propagate(const GlobalFlags& flags) {
  const Config cfg = resolve_config(flags);
  const PathSpec spec = cfg.path_spec(cfg.tau_start);
  const Propagator p = propagate(spec, cfg.rates(), cfg.slices_tol);
  std::string csv =
      "tau_us,slices,est_error,g_ee_re,g_ee_im,g_ef_re,g_ef_im,g_fe_re,g_fe_im,g_ff_re,g_ff_im,"
      "h0_re,h0_im,hx_re,hx_im,hy_re,hy_im,hz_re,hz_im,h_sq_re,h_sq_im,pt_class,pt_margin,"
      "je_condition,branch_warning,exchange_residual,error_code\n";
  std::string row = fmt::format("{},{},{}", format_double(p.tau), p.slices, format_double(p.est_error));
  for (int r = 0; r < 2; ++r) {
    for (int c = 0; c < 2; ++c) {
      row += fmt::format(",{},{}", format_double(p.g(r, c).real()), format_double(p.g(r, c).imag()));
    }
  }
  const double residual = exchange_symmetry_residual(p.g);
  int code = kExitOk;
  try {
    const FloquetDecomp f = floquet(p);
    for (const Complex& h : {f.coeffs.h0, f.coeffs.hx, f.coeffs.hy, f.coeffs.hz, f.h_sq}) {
      row += fmt::format(",{},{}", format_double(h.real()), format_double(h.imag()));
    }
    row += fmt::format(",{},{},{},{},{},ok\n", pt_class_name(f.classification.kind),
                       format_double(f.classification.margin), je_condition(f) ? 1 : 0,
                       f.branch_warning ? 1 : 0, format_double(residual));
  } catch (const Error& e) {
    for (int k = 0; k < 10; ++k) row += ",nan";
    row += fmt::format(",na,nan,na,na,{},{}\n", format_double(residual), to_string(e.code()));
    code = kExitNumerical;
  }
  emit(flags.out, csv + row);
  return code;
}

int cmd_tpm(const GlobalFlags& flags) {
  const Config cfg = resolve_config(flags);
  const PathSpec spec = cfg.path_spec(cfg.tau_start);
  const TransitionMatrix tm = engine_transition(spec, cfg.rates(), engine_options(cfg));
  const WorkDistribution d = work_distribution(tm, cfg.prep());
  std::string csv = "tau_us,work,probability\n";
  for (std::size_t k = 0; k < 3; ++k) {
    csv += fmt::format("{},{},{}\n", format_double(spec.tau), format_double(d.support[k]),
                       format_double(d.probs[k]));
  }
  emit(flags.out, csv);
  return kExitOk;
}

int cmd_jarzynski(const GlobalFlags& flags) {
  const Config cfg = resolve_config(flags);
  const auto points = run_tau_sweep(cfg.path_spec(cfg.tau_start), cfg.rates(), cfg.prep(),
                                    {cfg.tau_start}, engine_options(cfg));
  emit(flags.out, tau_sweep_csv(points));
  return any_failed(points) ? kExitNumerical : kExitOk;
}

int cmd_sweep(const GlobalFlags& flags) {
  const Config cfg = resolve_config(flags);
  const auto points = run_tau_sweep(cfg.path_spec(cfg.tau_start), cfg.rates(), cfg.prep(),
                                    cfg.tau_grid(), engine_options(cfg));
  emit(flags.out, tau_sweep_csv(points));
  return any_failed(points) ? kExitNumerical : kExitOk;
}

int cmd_contours(const GlobalFlags& flags, int delta_points, const std::string& grid_out) {
  const Config cfg = resolve_config(flags);
  const auto deltas = linspace(0.0, cfg.delta_max, delta_points);
  const SweepGrid grid =
      run_grid_sweep(cfg.j_max, deltas, cfg.tau_grid(), cfg.rates(), cfg.prep(), engine_options(cfg));
  const ContourSet set =
      extract_contours(grid, delta2_evaluator(cfg.j_max, cfg.rates(), cfg.prep(), engine_options(cfg)));
  if (!grid_out.empty()) emit(grid_out, grid_csv(grid));
  emit(flags.out, contours_csv(set));
  return set.failed_cells.empty() ? kExitOk : kExitNumerical;
}

int cmd_shots(const GlobalFlags& flags) {
  Config cfg = resolve_config(flags);
  // Shot statistics always come from the qutrit oracle.
  if (cfg.engine == Engine::NonHermitian) cfg.engine = Engine::LindbladFull;
  const auto truth = oracle_readouts(cfg.path_spec(cfg.tau_start), cfg.rates(), cfg.dt);
  const ShotEnsemble ens = sample_shots(truth, cfg.prep(), cfg.shots, cfg.seed);
  emit(flags.out, shots_csv(ens));
  return kExitOk;
}

int cmd_lindblad_compare(const GlobalFlags& flags) {
  Config cfg = resolve_config(flags);
  if (cfg.engine == Engine::NonHermitian) cfg.engine = Engine::LindbladIdeal;
  const Rates rates = cfg.rates();
  std::string csv = "tau_us,nh_p_pp,nh_p_mm,oracle_p_pp,oracle_p_mm,max_abs_diff,error_code\n";
  bool failed = false;
  for (double tau : cfg.tau_grid()) {
    const PathSpec spec = cfg.path_spec(tau);
    try {
      const TransitionMatrix nh = transition_probs(propagate(spec, rates, cfg.slices_tol).g);
      const TransitionMatrix lo = oracle_transition_probs(spec, rates, cfg.dt);
      double diff = 0.0;
      for (int i = 0; i < 2; ++i) {
        for (int j = 0; j < 2; ++j) diff = std::max(diff, std::abs(nh.p[i][j] - lo.p[i][j]));
      }
      csv += fmt::format("{},{},{},{},{},{},ok\n", format_double(tau), format_double(nh.pp()),
                         format_double(nh.mm()), format_double(lo.pp()), format_double(lo.mm()),
                         format_double(diff));
    } catch (const Error& e) {
      failed = true;
      csv += fmt::format("{},nan,nan,nan,nan,nan,{}\n", format_double(tau), to_string(e.code()));
    }
  }
  emit(flags.out, csv);
  return failed ? kExitNumerical : kExitOk;
}

int cmd_figure(const GlobalFlags& flags, const std::string& name, double fig4d_j_min) {
  PresetOptions opts;
  if (flags.engine) opts.engine = parse_engine(*flags.engine);
  if (flags.seed) opts.seed = *flags.seed;
  opts.fig4d_j_min = fig4d_j_min;
  const auto files = figure_preset(name, opts);
  const std::filesystem::path dir = std::filesystem::path(flags.out.empty() ? std::string(".") : flags.out);
  std::filesystem::create_directories(dir);
  for (const CsvFile& f : files) {
    emit((dir / f.name).string(), f.content);
    std::cerr << "wrote " << (dir / f.name).string() << '\n';
  }
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Non-Hermitian qubit work statistics and Jarzynski-equality simulator"};
  app.require_subcommand(1);
  app.fallthrough();

  GlobalFlags flags;
  app.add_option("--config", flags.config_path, "key = value configuration file");
  app.add_option("--out", flags.out, "output CSV path (figure: output directory)");
  app.add_option("--seed", flags.seed, "RNG seed (overrides config)");
  app.add_option("--engine", flags.engine, "nonhermitian | lindblad_ideal | lindblad_full");

  auto* propagate_cmd = app.add_subcommand("propagate", "G(tau) and its Floquet decomposition at tau_start");
  auto* tpm_cmd = app.add_subcommand("tpm", "work distribution at tau_start");
  auto* je_cmd = app.add_subcommand("jarzynski", "<exp(-beta W)> at tau_start");
  auto* sweep_cmd = app.add_subcommand("sweep", "tau sweep over tau_start:tau_step:tau_stop");
  auto* contours_cmd = app.add_subcommand("contours", "<exp(-beta W)> = 1 contours of the delta2 path");
  int delta_points = 61;
  std::string grid_out;
  contours_cmd->add_option("--delta-points", delta_points, "delta_max samples on [0, delta_max]")
      ->check(CLI::Range(2, 100000));
  contours_cmd->add_option("--grid-out", grid_out, "also write the sampled grid here");
  auto* shots_cmd = app.add_subcommand("shots", "simulated single-shot readout statistics");
  auto* compare_cmd = app.add_subcommand("lindblad-compare", "non-Hermitian vs Lindblad transition matrices");
  auto* figure_cmd = app.add_subcommand("figure", "simulated curves of a figure panel");
  std::string preset;
  double fig4d_j_min = 3.74;
  figure_cmd->add_option("name", preset, "fig3a..fig5d")->required();
  figure_cmd->add_option("--fig4d-j-min", fig4d_j_min, "j_min of the fig4d path (assumed 3.74)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kExitOk : kExitConfig;
  }

  try {
    if (*propagate_cmd) return cmd_propagate(flags);
    if (*tpm_cmd) return cmd_tpm(flags);
    if (*je_cmd) return cmd_jarzynski(flags);
    if (*sweep_cmd) return cmd_sweep(flags);
    if (*contours_cmd) return cmd_contours(flags, delta_points, grid_out);
    if (*shots_cmd) return cmd_shots(flags);
    if (*compare_cmd) return cmd_lindblad_compare(flags);
    if (*figure_cmd) return cmd_figure(flags, preset, fig4d_j_min);
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    switch (e.code()) {
      case ErrorCode::ConfigError:
      case ErrorCode::InvalidArgument:
        return kExitConfig;
      case ErrorCode::UnknownPreset:
        return kExitUnknownPreset;
      default:
        return kExitNumerical;
    }
  }
  return kExitOk;
}
