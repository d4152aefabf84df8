#include "spectraflow/operator_family.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

namespace spectraflow::family {

namespace {

// Certified lower bound for inf_u (|u| + |D u|) / (|u| + |T0 u|).
//
// Triangle route: |T0 u| <= |D u| + t beta |u| gives
//   1 + |T0 u| <= (1 + |D u|)(1 + t beta)   (unit u).
// Quadratic route: a + b >= sqrt(a^2 + b^2) and c + d <= sqrt(2) sqrt(c^2 + d^2),
// so the ratio is at least sqrt(mu_min / 2) with mu_min the bottom of the
// generalized spectrum of (I + D^2, I + T0^2).
double graph_norm_lower_bound(const Mat &t0, const Mat &d, double t, double beta) {
  const Eigen::Index n = t0.rows();
  const Mat id = Mat::Identity(n, n);
  const double triangle = 1.0 / (1.0 + t * beta);

  const Mat a = id + d.transpose() * d;
  const Mat b = id + t0.transpose() * t0;
  Eigen::GeneralizedSelfAdjointEigenSolver<Mat> gen(a, b, Eigen::EigenvaluesOnly);
  double quadratic = 0.0;
  if (gen.info() == Eigen::Success)
    quadratic = std::sqrt(std::max(0.0, gen.eigenvalues()(0)) / 2.0);

  return std::max(triangle, quadratic);
}

} // namespace

KatoConstants kato_constants(const OperatorFamily &fam) {
  if (fam.dim() == 0)
    throw Error("kato_constants: zero dimension");
  if (fam.kind() != FamilyKind::LinearPencil || !fam.pencil())
    throw Error("kato_constants: family is not a linear pencil");

  const auto &[t0, t1] = *fam.pencil();
  const Mat e = t1 - t0;

  KatoConstants k;
  k.beta = operator_norm(e);
  k.alpha = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < kAlphaGridPoints; ++i) {
    const double t = static_cast<double>(i) / static_cast<double>(kAlphaGridPoints - 1);
    k.alpha = std::min(k.alpha, graph_norm_lower_bound(t0, t0 + t * e, t, k.beta));
  }
  k.c = k.beta / k.alpha;
  k.r_cut = 2.0;
  k.c0 = std::numbers::sqrt2;
  k.c1 = 0.25;
  k.c2 = std::min(1.0 / (k.r_cut + 1.0), 1.0 / (2.0 * k.c0));
  return k;
}

double delta_for_epsilon(const KatoConstants &k, double eps) {
  if (!(eps > 0.0))
    throw Error("delta_for_epsilon: eps must be positive");
  if (k.c == 0.0)
    return std::numeric_limits<double>::infinity();
  return std::log1p(std::min(k.c1, eps * k.c2)) / k.c;
}

} // namespace spectraflow::family
