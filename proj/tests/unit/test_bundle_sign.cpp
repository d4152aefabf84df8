#include "spectraflow/bundle_sign.hpp"
#include "spectraflow/model_spectra.hpp"
#include "support.hpp"

#include <doctest.h>

#include <cmath>

using namespace spectraflow;
using bundle::SubspaceLoop;

namespace {

Vec unit(double angle) {
  Vec v(2);
  v << std::cos(angle), std::sin(angle);
  return v;
}

// Line in R^2 at angle turns * pi * t, sampled at N + 1 points.
SubspaceLoop line_loop(std::size_t n, int turns, double noise = 0.0, std::uint64_t seed = 0) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> jitter(-noise, noise);
  std::vector<Mat> ps;
  for (std::size_t i = 0; i <= n; ++i) {
    const double theta = turns * M_PI * static_cast<double>(i) / static_cast<double>(n);
    const double wobble = (i == 0 || i == n) ? 0.0 : jitter(rng);
    const Vec v = unit(theta + wobble);
    ps.push_back(v * v.transpose());
  }
  ps.back() = ps.front();
  return SubspaceLoop::from_projectors(std::move(ps));
}

// Independent oracle: the line bundle at angle phi(t) is orientable iff the
// continuous lift of the angle changes by an even multiple of pi.
int winding_sign(const SubspaceLoop &loop) {
  double total = 0.0;
  for (std::size_t i = 0; i + 1 < loop.projectors.size(); ++i) {
    const Vec a = family::eigen_decompose(loop.projectors[i]).vectors.col(1);
    const Vec b = family::eigen_decompose(loop.projectors[i + 1]).vectors.col(1);
    double d = std::atan2(b(1), b(0)) - std::atan2(a(1), a(0));
    d = std::remainder(d, M_PI); // lines: angles are defined modulo pi
    total += d;
  }
  const long half_turns = std::lround(total / M_PI);
  return half_turns % 2 == 0 ? 1 : -1;
}

} // namespace

TEST_CASE("Moebius loop is non-orientable; its double is orientable") {
  for (std::size_t n : {8, 32, 128}) {
    const auto once = bundle::propagate_frame(line_loop(n, 1));
    CHECK(once.det_sign == -1);
    CHECK(once.closure(0, 0) == doctest::Approx(-1.0).epsilon(1e-12));
    CHECK(bundle::propagate_frame(line_loop(n, 2)).det_sign == 1);
    CHECK(bundle::propagate_frame(line_loop(n, 1).repeated(2)).det_sign == 1);
  }
}

TEST_CASE("constant loop is orientable with identity closure") {
  Mat p = Mat::Zero(3, 3);
  p(0, 0) = p(2, 2) = 1;
  const auto cert = bundle::propagate_frame(SubspaceLoop::from_projectors({p, p, p, p}));
  CHECK(cert.det_sign == 1);
  CHECK((cert.closure - Mat::Identity(2, 2)).cwiseAbs().maxCoeff() < 1e-14);
  CHECK(cert.orthonormality_residual < 1e-14);
}

TEST_CASE("sign agrees with the winding oracle") {
  for (int turns = -3; turns <= 4; ++turns) {
    const auto loop = line_loop(64, turns, 0.05, static_cast<std::uint64_t>(turns + 10));
    CHECK(bundle::propagate_frame(loop).det_sign == winding_sign(loop));
  }
}

TEST_CASE("Lowdin orthonormalization is right-equivariant") {
  std::mt19937_64 rng(12);
  std::normal_distribution<double> g;
  for (int trial = 0; trial < 20; ++trial) {
    Mat x(6, 3);
    for (Eigen::Index i = 0; i < x.size(); ++i)
      x.data()[i] = g(rng);
    const Mat q = testsupport::random_orthogonal(3, rng);
    const Mat ox = bundle::lowdin(x);
    CHECK((ox.transpose() * ox - Mat::Identity(3, 3)).cwiseAbs().maxCoeff() < 1e-12);
    CHECK((bundle::lowdin(x * q) - ox * q).cwiseAbs().maxCoeff() < 1e-12);
  }
  CHECK_THROWS_AS(bundle::lowdin(Mat::Zero(3, 2)), Error);
}

TEST_CASE("sign is independent of basepoint, start frame and refinement") {
  const auto loop = line_loop(40, 1, 0.1, 3);
  for (std::size_t start : {0, 7, 20, 39})
    CHECK(bundle::propagate_frame(loop.rebased(start)).det_sign == -1);

  const Mat f0 = bundle::initial_frame(loop.projectors.front(), 1);
  CHECK(bundle::propagate_frame(loop, -f0).det_sign == -1);

  // Rank-2 bundle in R^4: Moebius line (+) trivial line.
  std::vector<Mat> ps;
  for (std::size_t i = 0; i <= 50; ++i) {
    const Vec v = unit(M_PI * static_cast<double>(i) / 50.0);
    Mat p = Mat::Zero(4, 4);
    p.topLeftCorner(2, 2) = v * v.transpose();
    p(3, 3) = 1;
    ps.push_back(p);
  }
  ps.back() = ps.front();
  const auto rank2 = SubspaceLoop::from_projectors(ps);
  std::mt19937_64 rng(1);
  const Mat base = bundle::initial_frame(rank2.projectors.front(), 2);
  for (int trial = 0; trial < 5; ++trial) {
    const Mat q = testsupport::random_orthogonal(2, rng);
    CHECK(bundle::propagate_frame(rank2, base * q).det_sign == -1);
  }
}

TEST_CASE("loop validation") {
  Mat a = Mat::Zero(2, 2), b = Mat::Zero(2, 2);
  a(0, 0) = 1;
  b(1, 1) = 1;
  CHECK_THROWS_AS(SubspaceLoop::from_projectors({a, b}), Error);    // not closed
  CHECK_THROWS_AS(SubspaceLoop::from_projectors({a, b, a}), Error); // step gap 1
  CHECK_THROWS_AS(SubspaceLoop::from_projectors({a, Mat::Identity(2, 2), a}), Error);
}

TEST_CASE("sign stability under perturbation") {
  const auto clean = line_loop(64, 1);
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const auto noisy = line_loop(64, 1, 0.1, seed);
    const auto v = bundle::sign_stability_check(clean, noisy);
    CHECK(v.hypothesis_holds);
    CHECK(v.sup_distance < 1.0);
    REQUIRE(v.sign_a);
    CHECK(*v.sign_a == -1);
    CHECK(*v.sign_b == -1);
  }
  // Orthogonal lines are at distance 1: no claim.
  std::vector<Mat> rotated;
  for (const auto &p : clean.projectors) {
    Mat r(2, 2);
    r << 0, -1, 1, 0;
    rotated.push_back(r * p * r.transpose());
  }
  const auto far = bundle::sign_stability_check(clean, SubspaceLoop::from_projectors(rotated));
  CHECK_FALSE(far.hypothesis_holds);
  CHECK_FALSE(far.sign_a.has_value());
}

TEST_CASE("transport by a loop of orthogonal matrices") {
  // H(t) = rotation by pi t in R^2: H_N = -H_0, so a line picks up -1 and the
  // whole plane picks up +1.
  std::vector<Mat> h;
  for (std::size_t i = 0; i <= 16; ++i) {
    const double a = M_PI * static_cast<double>(i) / 16.0;
    Mat r(2, 2);
    r << std::cos(a), -std::sin(a), std::sin(a), std::cos(a);
    h.push_back(r);
  }
  Mat e1 = Mat::Zero(2, 1);
  e1(0, 0) = 1;
  const auto line = bundle::transported_sign(h, e1);
  CHECK(line.end_factor == -1);
  CHECK(line.sign == -1);
  CHECK(line.rank == 1);
  CHECK(line.closure(0, 0) == doctest::Approx(-1.0));

  const auto plane = bundle::transported_sign(h, Mat::Identity(2, 2));
  CHECK(plane.sign == 1);

  // Full turn: H_N = H_0.
  std::vector<Mat> full;
  for (std::size_t i = 0; i <= 16; ++i) {
    const double a = 2 * M_PI * static_cast<double>(i) / 16.0;
    Mat r(2, 2);
    r << std::cos(a), -std::sin(a), std::sin(a), std::cos(a);
    full.push_back(r);
  }
  CHECK(bundle::transported_sign(full, e1).sign == 1);

  // A bundle that does not contain the transported frame is reported.
  std::vector<Mat> fixed(h.size(), e1 * e1.transpose());
  CHECK_THROWS_WITH_AS(bundle::transported_sign(h, e1, fixed), doctest::Contains("invariance"),
                       Error);
  std::vector<Mat> moving;
  for (const auto &m : h)
    moving.push_back(m * e1 * e1.transpose() * m.transpose());
  CHECK(bundle::transported_sign(h, e1, moving).sign == -1);
}

TEST_CASE("lasso certificate on the rotating eigenbundle") {
  const auto fam = model::synthetic_family("rotating-eigenbundle", {{"diagonal", {1.0, 3.0, 5.0}}}, 0);
  for (std::size_t n : {32, 64, 128}) {
    const auto cert = bundle::lasso_certificate(fam, {0.0, 2.0}, n);
    CHECK(cert.sign == -1);
    CHECK(cert.obstruction);
    CHECK(cert.rank == 1);
    CHECK(cert.statement.find("non-orientable") != std::string::npos);
  }
  const auto twice = bundle::lasso_certificate(fam.repeated(2), {0.0, 2.0}, 128);
  CHECK(twice.sign == 1);
  CHECK_FALSE(twice.obstruction);
  CHECK(twice.statement == "no obstruction detected");

  // Both rotating eigenvalues inside: the plane bundle is orientable.
  CHECK(bundle::lasso_certificate(fam, {0.0, 4.0}, 64).sign == 1);
}

TEST_CASE("a non-orientable lasso forces a collision in the linear filling") {
  // fam(t) = R(pi t) diag(1, -1) R(pi t)^T on [0, 2]; the homotopy
  // T_s(t) = (1 - s) fam(t) + s fam(0) contracts the loop. Scan (s, t) for the
  // smallest eigengap.
  const auto fam = model::synthetic_family("rotating-eigenbundle", {{"diagonal", {1.0, -1.0}}}, 0);
  const auto cert = bundle::lasso_certificate(fam, {0.0, 2.0}, 64);
  REQUIRE(cert.sign == -1);

  const Mat base = fam.evaluate(0.0);
  double min_gap = 1e300, at_s = -1, at_t = -1;
  for (int si = 0; si <= 40; ++si)
    for (int ti = 0; ti <= 40; ++ti) {
      const double s = si / 40.0, t = ti / 40.0;
      const auto ev = family::eigen_decompose((1 - s) * fam.evaluate(t) + s * base).values;
      if (ev(1) - ev(0) < min_gap) {
        min_gap = ev(1) - ev(0);
        at_s = s;
        at_t = t;
      }
    }
  CHECK(min_gap < 1e-6);
  CHECK(at_s == doctest::Approx(0.5));
  CHECK(at_t == doctest::Approx(0.5));
}
