#include "spectraflow/operator_family.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace spectraflow::family {

std::string to_string(FamilyKind kind) {
  switch (kind) {
  case FamilyKind::ExplicitSamples:
    return "explicit-samples";
  case FamilyKind::LinearPencil:
    return "linear-pencil";
  case FamilyKind::RotatingEigenbundle:
    return "rotating-eigenbundle";
  case FamilyKind::SeededRandomPath:
    return "seeded-random-path";
  case FamilyKind::Polynomial:
    return "polynomial";
  case FamilyKind::Custom:
    return "custom";
  }
  return "unknown";
}

OperatorFamily::OperatorFamily(FamilyKind kind, Eigen::Index dim, Evaluator fn, bool is_loop)
    : kind_(kind), dim_(dim), fn_(std::move(fn)), is_loop_(is_loop) {
  if (dim_ <= 0)
    throw Error("operator family: dimension must be positive");
  if (is_loop_)
    check_loop_closure();
}

void OperatorFamily::check_loop_closure() const {
  const Mat a = evaluate(0.0);
  const Mat b = evaluate(1.0);
  const double scale = std::max(1.0, a.cwiseAbs().maxCoeff());
  if ((a - b).cwiseAbs().maxCoeff() > 1e-12 * scale)
    throw Error("operator family: declared loop does not close (T(1) != T(0))");
}

Mat OperatorFamily::evaluate(double t) const {
  Mat m = fn_(t);
  if (m.rows() != dim_ || m.cols() != dim_)
    throw Error("operator family: evaluator returned a matrix of the wrong size");
  if (symmetry_defect(m) > 1e-12)
    throw Error("operator family: T(" + std::to_string(t) + ") is not symmetric");
  return m;
}

OperatorFamily OperatorFamily::linear_pencil(Mat t0, Mat t1) {
  if (t0.rows() != t0.cols() || t0.rows() != t1.rows() || t0.cols() != t1.cols())
    throw Error("linear pencil: T0 and T1 must be square of equal size");
  if (t0.rows() == 0)
    throw Error("linear pencil: zero dimension");
  const Mat d = t1 - t0;
  OperatorFamily fam(
      FamilyKind::LinearPencil, t0.rows(), [t0, d](double t) -> Mat { return t0 + t * d; },
      false);
  fam.pencil_ = std::make_pair(t0, t1);
  fam.coefficients_ = std::vector<Mat>{t0, d};
  return fam;
}

OperatorFamily OperatorFamily::explicit_samples(std::vector<Mat> samples) {
  if (samples.size() < 2)
    throw Error("explicit samples: need at least two matrices");
  const Eigen::Index n = samples.front().rows();
  for (const auto &s : samples)
    if (s.rows() != n || s.cols() != n)
      throw Error("explicit samples: all samples must be square of equal size");
  const double scale = std::max(1.0, samples.front().cwiseAbs().maxCoeff());
  const bool loop =
      (samples.front() - samples.back()).cwiseAbs().maxCoeff() <= 1e-12 * scale;
  auto fn = [samples = std::move(samples)](double t) -> Mat {
    const double pos = std::clamp(t, 0.0, 1.0) * static_cast<double>(samples.size() - 1);
    const auto i = std::min(static_cast<std::size_t>(pos), samples.size() - 2);
    const double w = pos - static_cast<double>(i);
    return (1.0 - w) * samples[i] + w * samples[i + 1];
  };
  return OperatorFamily(FamilyKind::ExplicitSamples, n, std::move(fn), loop);
}

namespace {

Mat plane_rotation(Eigen::Index n, const RotationPlane &p, double angle) {
  Mat r = Mat::Identity(n, n);
  const double c = std::cos(angle);
  const double s = std::sin(angle);
  r(p.i, p.i) = c;
  r(p.j, p.j) = c;
  r(p.i, p.j) = -s;
  r(p.j, p.i) = s;
  return r;
}

} // namespace

OperatorFamily OperatorFamily::rotating_eigenbundle(Vec diagonal,
                                                    std::vector<RotationPlane> planes) {
  const Eigen::Index n = diagonal.size();
  if (n < 2)
    throw Error("rotating eigenbundle: dimension must be at least 2");
  for (const auto &p : planes)
    if (p.i < 0 || p.j < 0 || p.i >= n || p.j >= n || p.i == p.j)
      throw Error("rotating eigenbundle: invalid rotation plane");
  auto fn = [diagonal, planes](double t) -> Mat {
    const Eigen::Index n = diagonal.size();
    Mat r = Mat::Identity(n, n);
    for (const auto &p : planes)
      r = r * plane_rotation(n, p, p.turns * std::numbers::pi * t);
    Mat m = r * diagonal.asDiagonal() * r.transpose();
    return 0.5 * (m + m.transpose());
  };
  // R(1) acts as +-1 on every rotation plane, so conjugation closes up.
  return OperatorFamily(FamilyKind::RotatingEigenbundle, n, std::move(fn), true);
}

OperatorFamily OperatorFamily::polynomial(std::vector<Mat> coefficients, FamilyKind label) {
  if (coefficients.empty())
    throw Error("polynomial family: no coefficients");
  const Eigen::Index n = coefficients.front().rows();
  if (n == 0)
    throw Error("polynomial family: zero dimension");
  for (const auto &c : coefficients)
    if (c.rows() != n || c.cols() != n)
      throw Error("polynomial family: coefficient sizes differ");
  auto fn = [coefficients](double t) -> Mat {
    // Horner
    Mat acc = coefficients.back();
    for (auto it = coefficients.rbegin() + 1; it != coefficients.rend(); ++it)
      acc = acc * t + *it;
    return acc;
  };
  OperatorFamily fam(label, n, std::move(fn), false);
  fam.coefficients_ = std::move(coefficients);
  return fam;
}

OperatorFamily OperatorFamily::from_function(Eigen::Index dim, Evaluator fn, bool is_loop) {
  return OperatorFamily(FamilyKind::Custom, dim, std::move(fn), is_loop);
}

OperatorFamily OperatorFamily::doubled() const {
  const Eigen::Index n = dim_;
  auto inner = fn_;
  auto fn = [inner, n](double t) -> Mat {
    Mat out = Mat::Zero(2 * n, 2 * n);
    const Mat m = inner(t);
    out.topLeftCorner(n, n) = m;
    out.bottomRightCorner(n, n) = m;
    return out;
  };
  OperatorFamily fam(kind_, 2 * n, std::move(fn), is_loop_);
  if (coefficients_) {
    std::vector<Mat> doubled;
    for (const auto &c : *coefficients_) {
      Mat d = Mat::Zero(2 * n, 2 * n);
      d.topLeftCorner(n, n) = c;
      d.bottomRightCorner(n, n) = c;
      doubled.push_back(d);
    }
    fam.coefficients_ = std::move(doubled);
  }
  return fam;
}

OperatorFamily OperatorFamily::concatenated(const OperatorFamily &next) const {
  if (next.dim_ != dim_)
    throw Error("concatenation: dimension mismatch");
  const Mat end = evaluate(1.0);
  const Mat start = next.evaluate(0.0);
  const double scale = std::max(1.0, end.cwiseAbs().maxCoeff());
  if ((end - start).cwiseAbs().maxCoeff() > 1e-12 * scale)
    throw Error("concatenation: endpoint of the first path differs from start of the second");
  auto first = fn_;
  auto second = next.fn_;
  auto fn = [first, second](double t) -> Mat {
    return t <= 0.5 ? first(2.0 * t) : second(2.0 * t - 1.0);
  };
  const Mat a = evaluate(0.0);
  const Mat b = next.evaluate(1.0);
  const bool loop = (a - b).cwiseAbs().maxCoeff() <= 1e-12 * std::max(1.0, a.cwiseAbs().maxCoeff());
  return OperatorFamily(FamilyKind::Custom, dim_, std::move(fn), loop);
}

OperatorFamily OperatorFamily::rebased(double start) const {
  if (!is_loop_)
    throw Error("rebase: family is not a loop");
  auto inner = fn_;
  auto fn = [inner, start](double t) -> Mat {
    double s = start + t;
    s -= std::floor(s);
    // Keep t = 1 mapped to the basepoint itself, not to T(start) via floor.
    if (t >= 1.0)
      s = start - std::floor(start);
    return inner(s);
  };
  return OperatorFamily(FamilyKind::Custom, dim_, std::move(fn), true);
}

OperatorFamily OperatorFamily::repeated(int times) const {
  if (!is_loop_)
    throw Error("repeat: family is not a loop");
  if (times < 1)
    throw Error("repeat: times must be positive");
  auto inner = fn_;
  auto fn = [inner, times](double t) -> Mat {
    const double s = t * times;
    const double frac = s - std::floor(s);
    return inner(t >= 1.0 ? 1.0 : frac);
  };
  return OperatorFamily(FamilyKind::Custom, dim_, std::move(fn), true);
}

std::vector<double> parameter_grid(std::size_t samples) {
  if (samples < 1)
    throw Error("parameter grid: need at least one step");
  std::vector<double> grid(samples + 1);
  for (std::size_t i = 0; i <= samples; ++i)
    grid[i] = static_cast<double>(i) / static_cast<double>(samples);
  return grid;
}

} // namespace spectraflow::family
