#include "nhq/harness/contours.hpp"

#include <array>
#include <cmath>
#include <map>
#include <optional>

namespace nhq::harness {

std::size_t ContourSet::vertex_count() const {
  std::size_t n = 0;
  for (const auto& p : polylines) n += p.size();
  return n;
}

ContourVertex bisect_level(const PointEvaluator& eval, double d0, double t0, double v0, double d1,
                           double t1, double v1, double contour_tol) {
  if (std::abs(v0 - 1.0) <= contour_tol) return {d0, t0, v0, true};
  if (std::abs(v1 - 1.0) <= contour_tol) return {d1, t1, v1, true};
  const bool low_positive = v0 >= 1.0;
  ContourVertex best{d0, t0, v0, false};
  for (int it = 0; it < kMaxBisections; ++it) {
    const double dm = 0.5 * (d0 + d1);
    const double tm = 0.5 * (t0 + t1);
    const double vm = eval(dm, tm);
    best = {dm, tm, vm, std::abs(vm - 1.0) <= contour_tol};
    if (best.converged) break;
    if ((vm >= 1.0) == low_positive) {
      d0 = dm;
      t0 = tm;
    } else {
      d1 = dm;
      t1 = tm;
    }
  }
  return best;
}

namespace {

// Edge ids: horizontal edges run along tau at fixed delta index i,
// vertical edges along delta at fixed tau index j.
struct EdgeKey {
  bool along_tau;
  std::size_t i;
  std::size_t j;
  auto operator<=>(const EdgeKey&) const = default;
};

}  // namespace

ContourSet extract_contours(const SweepGrid& grid, const PointEvaluator& eval, double contour_tol) {
  ContourSet out;
  const std::size_t rows = grid.deltas.size();
  const std::size_t cols = grid.taus.size();
  if (rows < 2 || cols < 2) return out;

  auto dev = [&](std::size_t i, std::size_t j) { return grid.values[i][j] - 1.0; };

  std::map<EdgeKey, ContourVertex> edge_vertex;
  auto vertex_on = [&](const EdgeKey& e) -> const ContourVertex& {
    auto it = edge_vertex.find(e);
    if (it != edge_vertex.end()) return it->second;
    const std::size_t i1 = e.along_tau ? e.i : e.i + 1;
    const std::size_t j1 = e.along_tau ? e.j + 1 : e.j;
    const ContourVertex v =
        bisect_level(eval, grid.deltas[e.i], grid.taus[e.j], grid.values[e.i][e.j],
                     grid.deltas[i1], grid.taus[j1], grid.values[i1][j1], contour_tol);
    return edge_vertex.emplace(e, v).first->second;
  };

  std::vector<std::pair<EdgeKey, EdgeKey>> segments;
  std::size_t tangent = 0;
  for (std::size_t i = 0; i + 1 < rows; ++i) {
    for (std::size_t j = 0; j + 1 < cols; ++j) {
      // Corners counter-clockwise: (i,j), (i,j+1), (i+1,j+1), (i+1,j).
      const std::array<double, 4> d = {dev(i, j), dev(i, j + 1), dev(i + 1, j + 1), dev(i + 1, j)};
      bool failed = false;
      int near = 0;
      for (double x : d) {
        if (std::isnan(x)) failed = true;
        if (std::abs(x) <= contour_tol) ++near;
      }
      if (failed) {
        out.failed_cells.emplace_back(i, j);
        continue;
      }
      if (near >= 2) {
        out.tangency_cells.emplace_back(i, j);
        ++tangent;
        continue;
      }
      // Edges in the same corner order: bottom, right, top, left.
      const std::array<EdgeKey, 4> edges = {EdgeKey{true, i, j}, EdgeKey{false, i, j + 1},
                                            EdgeKey{true, i + 1, j}, EdgeKey{false, i, j}};
      std::array<bool, 4> pos{};
      for (int k = 0; k < 4; ++k) pos[k] = d[k] >= 0.0;
      std::vector<int> crossed;
      for (int k = 0; k < 4; ++k) {
        if (pos[k] != pos[(k + 1) % 4]) crossed.push_back(k);
      }
      if (crossed.size() == 2) {
        segments.emplace_back(edges[crossed[0]], edges[crossed[1]]);
      } else if (crossed.size() == 4) {
        const double centre =
            eval(0.5 * (grid.deltas[i] + grid.deltas[i + 1]), 0.5 * (grid.taus[j] + grid.taus[j + 1])) - 1.0;
        // Join the edges around each corner whose sign differs from the centre.
        if ((centre >= 0.0) == pos[0]) {
          segments.emplace_back(edges[0], edges[1]);
          segments.emplace_back(edges[2], edges[3]);
        } else {
          segments.emplace_back(edges[3], edges[0]);
          segments.emplace_back(edges[1], edges[2]);
        }
      }
    }
  }
  out.all_cells_tangent = tangent == (rows - 1) * (cols - 1);

  // Chain segments into polylines through shared edges.
  std::map<EdgeKey, std::vector<std::size_t>> incident;
  for (std::size_t s = 0; s < segments.size(); ++s) {
    incident[segments[s].first].push_back(s);
    incident[segments[s].second].push_back(s);
  }
  std::vector<bool> used(segments.size(), false);
  auto walk = [&](std::size_t seg, EdgeKey from) {
    std::vector<EdgeKey> chain{from};
    while (true) {
      used[seg] = true;
      const EdgeKey next = segments[seg].first == from ? segments[seg].second : segments[seg].first;
      chain.push_back(next);
      std::optional<std::size_t> cont;
      for (std::size_t cand : incident[next]) {
        if (!used[cand]) cont = cand;
      }
      if (!cont) break;
      seg = *cont;
      from = next;
    }
    Polyline line;
    for (const EdgeKey& e : chain) line.push_back(vertex_on(e));
    out.polylines.push_back(std::move(line));
  };
  // Open chains start at edges with a single incident segment.
  for (const auto& [edge, segs] : incident) {
    if (segs.size() == 1 && !used[segs[0]]) walk(segs[0], edge);
  }
  for (std::size_t s = 0; s < segments.size(); ++s) {
    if (!used[s]) walk(s, segments[s].first);
  }
  return out;
}

PointEvaluator delta2_evaluator(double j_max, const Rates& rates, const GibbsPrep& prep,
                                const EngineOptions& opts) {
  return [=](double delta_max, double tau) {
    const PathSpec spec{DeltaFullSine{j_max, delta_max}, tau};
    return exp_work_avg(engine_transition(spec, rates, opts), prep).value;
  };
}

}  // namespace nhq::harness
