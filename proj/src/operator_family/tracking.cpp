#include "spectraflow/operator_family.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

namespace spectraflow::family {

namespace {

constexpr double kOverlapTie = 1e-9;

// Greedy maximal-overlap assignment. Returns next_of[i] = column of `next`
// matched to column i of `prev`.
std::vector<Eigen::Index> match_eigenvectors(const EigenSystem &prev, const EigenSystem &next,
                                             std::size_t step) {
  const Eigen::Index n = prev.values.size();
  const Mat overlap = (prev.vectors.transpose() * next.vectors).cwiseAbs();
  std::vector<Eigen::Index> next_of(n, -1);
  std::vector<bool> used(n, false);

  for (Eigen::Index round = 0; round < n; ++round) {
    double best = -1.0;
    for (Eigen::Index i = 0; i < n; ++i) {
      if (next_of[i] >= 0)
        continue;
      for (Eigen::Index j = 0; j < n; ++j)
        if (!used[j])
          best = std::max(best, overlap(i, j));
    }
    if (best < kMinBranchOverlap)
      throw Error("grid too coarse: eigenvector overlap " + std::to_string(best) +
                  " at step " + std::to_string(step));

    Eigen::Index bi = -1, bj = -1;
    double closest = std::numeric_limits<double>::infinity();
    for (Eigen::Index i = 0; i < n; ++i) {
      if (next_of[i] >= 0)
        continue;
      for (Eigen::Index j = 0; j < n; ++j) {
        if (used[j] || overlap(i, j) < best - kOverlapTie)
          continue;
        const double gap = std::abs(prev.values(i) - next.values(j));
        if (gap < closest) {
          closest = gap;
          bi = i;
          bj = j;
        }
      }
    }
    next_of[bi] = bj;
    used[bj] = true;
  }
  return next_of;
}

} // namespace

Branches track_branches(const OperatorFamily &fam, std::size_t samples) {
  if (samples < 2)
    throw Error("track_branches: need at least 2 samples");
  const auto systems = sample_eigensystems(fam, samples);
  const auto n = static_cast<std::size_t>(fam.dim());

  Branches out;
  out.grid = parameter_grid(samples);
  out.values.assign(n, std::vector<double>(samples + 1));

  // column[b] = eigen-column currently carrying branch b
  std::vector<Eigen::Index> column(n);
  std::iota(column.begin(), column.end(), 0);
  for (std::size_t b = 0; b < n; ++b)
    out.values[b][0] = systems[0].values(column[b]);

  for (std::size_t s = 0; s < samples; ++s) {
    const auto next_of = match_eigenvectors(systems[s], systems[s + 1], s);
    for (std::size_t b = 0; b < n; ++b) {
      column[b] = next_of[column[b]];
      out.values[b][s + 1] = systems[s + 1].values(column[b]);
    }
  }
  return out;
}

GrowthReport verify_growth_bound(const Branches &branches, const KatoConstants &k) {
  GrowthReport report;
  const auto &grid = branches.grid;
  for (const auto &branch : branches.values) {
    for (std::size_t a = 0; a < grid.size(); ++a) {
      for (std::size_t b = 0; b < grid.size(); ++b) {
        if (a == b)
          continue;
        const double l0 = branch[a];
        const double lhs = std::abs(branch[b] - l0);
        const double rhs = (1.0 + std::abs(l0)) * std::expm1(k.c * std::abs(grid[b] - grid[a]));
        ++report.pairs_checked;
        double ratio = 0.0;
        if (rhs > 0.0)
          ratio = lhs / rhs;
        else if (lhs > 0.0)
          ratio = std::numeric_limits<double>::infinity();
        report.max_ratio = std::max(report.max_ratio, ratio);
        if (lhs > rhs + 1e-9)
          ++report.violations;
      }
    }
  }
  return report;
}

ArsinhGrowthReport verify_arsinh_growth(const Branches &branches, const KatoConstants &k,
                                        double eps) {
  ArsinhGrowthReport report;
  report.eps = eps;
  report.delta = delta_for_epsilon(k, eps);
  const auto &grid = branches.grid;
  for (const auto &branch : branches.values) {
    for (std::size_t a = 0; a < grid.size(); ++a) {
      for (std::size_t b = 0; b < grid.size(); ++b) {
        if (a == b || std::abs(grid[b] - grid[a]) > report.delta)
          continue;
        ++report.pairs_checked;
        report.max_change =
            std::max(report.max_change, std::abs(arsinh(branch[b]) - arsinh(branch[a])));
      }
    }
  }
  report.holds = report.max_change < eps;
  return report;
}

PairingReport detect_paired_branches(const OperatorFamily &fam, std::size_t samples, double tol) {
  PairingReport report;
  const auto branches = track_branches(fam, samples);
  const std::size_t n = branches.branch_count();

  for (std::size_t s = 0; s < branches.grid.size(); ++s) {
    std::vector<double> level(n);
    for (std::size_t b = 0; b < n; ++b)
      level[b] = branches.values[b][s];
    std::sort(level.begin(), level.end());
    std::size_t start = 0;
    for (std::size_t i = 1; i <= n; ++i) {
      if (i == n || level[i] - level[i - 1] > tol) {
        if ((i - start) % 2 != 0) {
          report.failing_t = branches.grid[s];
          return report;
        }
        start = i;
      }
    }
  }
  report.precondition_ok = true;

  double best = std::numeric_limits<double>::infinity();
  for (std::size_t m = 1; m < n; ++m) {
    double sup = 0.0;
    for (std::size_t s = 0; s < branches.grid.size(); ++s)
      sup = std::max(sup, std::abs(branches.values[0][s] - branches.values[m][s]));
    if (sup < best) {
      best = sup;
      if (sup <= tol)
        report.partner = m;
    }
    if (report.partner)
      break;
  }
  report.sup_deviation = best;
  return report;
}

} // namespace spectraflow::family
