#include "nhq/harness/csv.hpp"

#include <cmath>

#include <fmt/format.h>

namespace nhq::harness {

std::string format_double(double x) {
  if (std::isnan(x)) return "nan";
  return fmt::format("{:.17g}", x);
}

std::string_view pt_class_name(PtKind kind) {
  switch (kind) {
    case PtKind::RealSpectrum: return "real_spectrum";
    case PtKind::ImaginarySpectrum: return "imaginary_spectrum";
    case PtKind::NoAntilinearSymmetry: return "no_antilinear_symmetry";
  }
  return "na";
}

std::string tau_sweep_csv(const std::vector<SweepPoint>& points) {
  std::string out =
      "tau_us,p_pp,p_pm,p_mp,p_mm,exp_work_avg,deviation,mean_work,asym,pt_class,je_condition,"
      "error_code\n";
  for (const SweepPoint& pt : points) {
    out += fmt::format("{},{},{},{},{},{},{},{},{},{},{},{}\n", format_double(pt.tau),
                       format_double(pt.tm.pp()), format_double(pt.tm.pm()),
                       format_double(pt.tm.mp()), format_double(pt.tm.mm()),
                       format_double(pt.je.value), format_double(pt.je.deviation),
                       format_double(pt.je.mean_work), format_double(pt.je.asym),
                       pt.pt_class ? pt_class_name(*pt.pt_class) : "na",
                       pt.je_condition ? (*pt.je_condition ? "1" : "0") : "na",
                       pt.error ? to_string(*pt.error) : "ok");
  }
  return out;
}

std::string grid_csv(const SweepGrid& grid) {
  std::string out = "delta_max,tau_us,exp_work_avg\n";
  for (std::size_t i = 0; i < grid.deltas.size(); ++i) {
    for (std::size_t j = 0; j < grid.taus.size(); ++j) {
      out += fmt::format("{},{},{}\n", format_double(grid.deltas[i]), format_double(grid.taus[j]),
                         format_double(grid.values[i][j]));
    }
  }
  return out;
}

std::string contours_csv(const ContourSet& contours) {
  std::string out = "polyline,vertex,delta_max,tau_us,exp_work_avg,converged\n";
  for (std::size_t p = 0; p < contours.polylines.size(); ++p) {
    const Polyline& line = contours.polylines[p];
    for (std::size_t v = 0; v < line.size(); ++v) {
      out += fmt::format("{},{},{},{},{},{}\n", p, v, format_double(line[v].delta_max),
                         format_double(line[v].tau), format_double(line[v].value),
                         line[v].converged ? 1 : 0);
    }
  }
  return out;
}

std::string shots_csv(const ShotEnsemble& ens) {
  std::string out =
      "prep,n,n_g,n_plus,n_minus,discard_fraction,p_hat_pp,p_hat_mp,se_pp,se_mp\n";
  constexpr std::array<const char*, 2> names = {"+x", "-x"};
  for (std::size_t j = 0; j < 2; ++j) {
    const ShotCounts& c = ens.counts[j];
    out += fmt::format("{},{},{},{},{},{},{},{},{},{}\n", names[j], ens.n_per_prep, c.n_g,
                       c.n_plus, c.n_minus, format_double(ens.discard_per_prep[j]),
                       format_double(ens.p_hat.p[0][j]), format_double(ens.p_hat.p[1][j]),
                       format_double(ens.se[0][j]), format_double(ens.se[1][j]));
  }
  return out;
}

}  // namespace nhq::harness
