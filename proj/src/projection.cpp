#include "spectraflow/projection.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <numbers>
#include <sstream>

namespace spectraflow::projection {

namespace {

void check_interval(Interval iv) {
  if (!(iv.lo < iv.hi))
    throw Error("projection: interval must satisfy lo < hi");
}

void check_endpoints(const Vec &values, Interval iv) {
  for (Eigen::Index i = 0; i < values.size(); ++i) {
    const double l = values(i);
    if (std::abs(l - iv.lo) <= kEndpointTolerance || std::abs(l - iv.hi) <= kEndpointTolerance) {
      std::ostringstream msg;
      msg.precision(17);
      msg << "interval endpoint hits spectrum (eigenvalue " << l << ")";
      throw Error(msg.str());
    }
  }
}

} // namespace

double gap_margin(const Vec &eigenvalues, Interval interval) {
  double g = std::numeric_limits<double>::infinity();
  for (Eigen::Index i = 0; i < eigenvalues.size(); ++i)
    g = std::min({g, std::abs(eigenvalues(i) - interval.lo), std::abs(eigenvalues(i) - interval.hi)});
  return g;
}

IntervalProjector project_direct(const Mat &t, Interval interval) {
  check_interval(interval);
  const auto sys = family::eigen_decompose(t);
  check_endpoints(sys.values, interval);

  IntervalProjector out;
  out.interval = interval;
  out.gap_margin = gap_margin(sys.values, interval);
  out.p = Mat::Zero(t.rows(), t.cols());
  for (Eigen::Index i = 0; i < sys.values.size(); ++i) {
    if (sys.values(i) > interval.lo && sys.values(i) < interval.hi) {
      out.p.noalias() += sys.vectors.col(i) * sys.vectors.col(i).transpose();
      ++out.rank;
    }
  }
  return out;
}

IntervalProjector project_contour(const Mat &t, Interval interval, std::size_t nodes) {
  check_interval(interval);
  if (nodes < 8)
    throw Error("project_contour: need at least 8 quadrature nodes");
  if (symmetry_defect(t) > 1e-12)
    throw Error("project_contour: matrix is not symmetric");

  // Eigenvalues only gate the precondition; the projector comes from the resolvents.
  Eigen::SelfAdjointEigenSolver<Mat> values_only(t, Eigen::EigenvaluesOnly);
  check_endpoints(values_only.eigenvalues(), interval);

  const Eigen::Index n = t.rows();
  const double c = interval.center();
  const double r = interval.radius();
  const CMat tc = t.cast<std::complex<double>>();
  const CMat id = CMat::Identity(n, n);

  std::vector<CMat> terms(nodes);
  parallel_for(nodes, [&](std::size_t j) {
    const double theta = 2.0 * std::numbers::pi * static_cast<double>(j) / static_cast<double>(nodes);
    const std::complex<double> e = std::polar(1.0, theta);
    const std::complex<double> z = c + r * e;
    Eigen::PartialPivLU<CMat> lu(z * id - tc);
    if (!(lu.rcond() > 1e-14))
      throw Error("project_contour: singular resolvent at node " + std::to_string(j));
    // dz / (2 pi i) = r e^{i theta} d theta / (2 pi)
    terms[j] = lu.solve(id) * (r * e / static_cast<double>(nodes));
  });

  CMat sum = CMat::Zero(n, n);
  for (const auto &term : terms)
    sum += term;

  const double imag = sum.imag().cwiseAbs().maxCoeff();
  if (imag > 1e-8)
    throw Error("project_contour: imaginary part " + std::to_string(imag) + " does not vanish");

  IntervalProjector out;
  out.interval = interval;
  out.gap_margin = gap_margin(values_only.eigenvalues(), interval);
  out.p = sum.real();
  out.p = 0.5 * (out.p + out.p.transpose()).eval();
  out.rank = static_cast<Eigen::Index>(std::llround(out.p.trace()));
  return out;
}

ProjectorResiduals residuals(const IntervalProjector &p, const Mat &t) {
  ProjectorResiduals r;
  r.idempotence = (p.p * p.p - p.p).norm();
  r.symmetry = (p.p - p.p.transpose()).norm();
  r.commutation = (p.p * t - t * p.p).norm();
  r.trace = std::abs(p.p.trace() - static_cast<double>(p.rank));
  return r;
}

std::vector<IntervalProjector> constant_rank_loop(const family::OperatorFamily &fam,
                                                  Interval interval, std::size_t samples) {
  if (!fam.is_loop())
    throw Error("constant_rank_loop: family is not a loop");
  const auto grid = family::parameter_grid(samples);
  std::vector<IntervalProjector> out(grid.size());
  parallel_for(grid.size(), [&](std::size_t i) {
    try {
      out[i] = project_direct(fam.evaluate(grid[i]), interval);
    } catch (const Error &e) {
      throw Error("gap violation at sample " + std::to_string(i) + " (t = " +
                  std::to_string(grid[i]) + "): " + e.what());
    }
  });

  for (std::size_t i = 0; i < out.size(); ++i) {
    if (out[i].rank != out[0].rank)
      throw Error("rank change at sample " + std::to_string(i) + ": " +
                  std::to_string(out[0].rank) + " -> " + std::to_string(out[i].rank));
    if (i + 1 < out.size()) {
      const double step = operator_norm(out[i + 1].p - out[i].p);
      if (!(step < 1.0))
        throw Error("projector jump at sample " + std::to_string(i) + ": ||P_{i+1} - P_i|| = " +
                    std::to_string(step));
    }
  }
  return out;
}

} // namespace spectraflow::projection
