#include "spectraflow/model_spectra.hpp"
#include "spectraflow/operator_family.hpp"
#include "support.hpp"

#include <doctest.h>

#include <cmath>
#include <limits>

using namespace spectraflow;
using family::OperatorFamily;

namespace {

OperatorFamily small_step_pencil(std::uint64_t seed, Eigen::Index n, double step) {
  return model::synthetic_family("linear-pencil", {{"dim", n}, {"step", step}}, seed);
}

} // namespace

TEST_CASE("constant pencil has zero growth constant") {
  const Mat t = Mat::Identity(3, 3);
  const auto k = family::kato_constants(OperatorFamily::linear_pencil(t, t));
  CHECK(k.beta == 0.0);
  CHECK(k.c == 0.0);
  CHECK(std::isinf(family::delta_for_epsilon(k, 0.1)));
}

TEST_CASE("fixed constants") {
  const auto k = family::kato_constants(small_step_pencil(1, 3, 0.3));
  // C0 is the supremum of (1 + |t|) / sqrt(1 + t^2): maximize on a fine grid.
  double sup = 0.0;
  for (int i = -200000; i <= 200000; ++i) {
    const double t = i * 1e-4;
    sup = std::max(sup, (1.0 + std::abs(t)) / std::sqrt(1.0 + t * t));
  }
  CHECK(k.c0 == doctest::Approx(sup).epsilon(1e-9));
  CHECK(k.c0 == doctest::Approx(1.41421356).epsilon(1e-8));
  CHECK(k.c1 == 0.25);
  CHECK(k.r_cut == 2.0);
  CHECK(k.c2 == doctest::Approx(std::min(1.0 / 3.0, 1.0 / (2.0 * k.c0))));
  CHECK(k.c == doctest::Approx(k.beta / k.alpha));
  CHECK(k.beta == doctest::Approx(0.3));
}

TEST_CASE("pencils with a step below 1/2 have alpha at least 1/2") {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const auto k = family::kato_constants(small_step_pencil(seed, 6, 0.49));
    CHECK(k.alpha >= 0.5);
  }
}

TEST_CASE("alpha is a lower bound for the graph-norm ratio") {
  std::mt19937_64 rng(77);
  std::normal_distribution<double> g;
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const auto fam = model::synthetic_family("linear-pencil", {{"dim", 5}, {"scale", 3.0}}, seed);
    const auto k = family::kato_constants(fam);
    const auto &[t0, t1] = *fam.pencil();
    for (int trial = 0; trial < 2000; ++trial) {
      const double t = static_cast<double>(trial % 101) / 100.0;
      Vec u(5);
      for (Eigen::Index i = 0; i < 5; ++i)
        u(i) = g(rng);
      // bias some samples toward the eigenvectors of D(t), where ratios are small
      const Mat d = t0 + t * (t1 - t0);
      if (trial % 3 == 0) {
        const auto sys = family::eigen_decompose(d);
        u = sys.vectors.col(trial % 5) + 1e-3 * u;
      }
      const double ratio = (u.norm() + (d * u).norm()) / (u.norm() + (t0 * u).norm());
      CHECK(ratio >= k.alpha - 1e-12);
    }
  }
}

TEST_CASE("delta formula") {
  family::KatoConstants k;
  k.c = std::log(2.0);
  k.c1 = 0.25;
  k.c2 = 1.0 / 3.0;
  CHECK(family::delta_for_epsilon(k, 100.0) == doctest::Approx(std::log(1.25) / std::log(2.0)).epsilon(1e-15));

  double prev = std::numeric_limits<double>::infinity();
  for (double eps : {1.0, 0.5, 0.1, 1e-3, 1e-6, 1e-9}) {
    const double d = family::delta_for_epsilon(k, eps);
    CHECK(d <= prev);
    CHECK(d > 0.0);
    prev = d;
  }
  CHECK(prev < 1e-8);
  CHECK_THROWS_AS(family::delta_for_epsilon(k, 0.0), Error);
}

TEST_CASE("growth bound holds along tracked branches") {
  for (std::uint64_t seed = 100; seed < 110; ++seed) {
    const auto fam = model::synthetic_family("linear-pencil", {{"dim", 6}}, seed);
    const auto k = family::kato_constants(fam);
    const auto branches = family::track_branches(fam, 100);
    const auto report = family::verify_growth_bound(branches, k);
    CHECK(report.violations == 0);
    CHECK(report.max_ratio <= 1.0);
    const auto ars = family::verify_arsinh_growth(branches, k, 0.5);
    CHECK(ars.holds);
  }
}

TEST_CASE("constant family growth ratios are 0/0 = 0") {
  const Mat t = Mat::Identity(2, 2);
  const auto fam = OperatorFamily::linear_pencil(t, t);
  const auto report = family::verify_growth_bound(family::track_branches(fam, 10),
                                                  family::kato_constants(fam));
  CHECK(report.max_ratio == 0.0);
  CHECK(report.violations == 0);
}

TEST_CASE("a deliberately wrong constant is caught") {
  const auto fam = model::synthetic_family("linear-pencil", {{"dim", 4}, {"scale", 2.0}}, 5);
  auto k = family::kato_constants(fam);
  k.c *= 1e-3;
  const auto report = family::verify_growth_bound(family::track_branches(fam, 50), k);
  CHECK(report.violations > 0);
  CHECK(report.max_ratio > 1.0);
}

TEST_CASE("kato constants need a linear pencil") {
  Vec d(2);
  d << 1, -1;
  CHECK_THROWS_AS(family::kato_constants(OperatorFamily::rotating_eigenbundle(d, {{0, 1, 1}})), Error);
}
