#include "spectraflow/clifford.hpp"
#include "support.hpp"

#include <doctest.h>

#include <cmath>

using namespace spectraflow;
using namespace spectraflow::clifford;

namespace {

// Word reduction oracle: multiply generator words by bubble-sorting the
// concatenation, flipping the sign at every swap and cancelling e_i e_i = -1.
std::pair<double, Blade> reduce_word(std::vector<int> word) {
  double sign = 1.0;
  bool changed = true;
  while (changed) {
    changed = false;
    for (std::size_t i = 0; i + 1 < word.size(); ++i) {
      if (word[i] > word[i + 1]) {
        std::swap(word[i], word[i + 1]);
        sign = -sign;
        changed = true;
      } else if (word[i] == word[i + 1]) {
        word.erase(word.begin() + static_cast<long>(i), word.begin() + static_cast<long>(i) + 2);
        sign = -sign;
        changed = true;
        break;
      }
    }
  }
  Blade b = 0;
  for (int g : word)
    b |= Blade{1} << (g - 1);
  return {sign, b};
}

std::vector<int> word_of(Blade b) {
  std::vector<int> w;
  for (int i = 0; i < 32; ++i)
    if (b & (Blade{1} << i))
      w.push_back(i + 1);
  return w;
}

CliffordElement oracle_mul(const CliffordElement &a, const CliffordElement &b) {
  CliffordElement out(a.dim());
  for (const auto &[ba, ca] : a.terms())
    for (const auto &[bb, cb] : b.terms()) {
      auto w = word_of(ba);
      const auto wb = word_of(bb);
      w.insert(w.end(), wb.begin(), wb.end());
      const auto [s, blade] = reduce_word(w);
      out.set(blade, out.coeff(blade) + s * ca * cb);
    }
  return out;
}

CliffordElement random_element(int m, std::mt19937_64 &rng) {
  std::normal_distribution<double> g;
  CliffordElement a(m);
  for (Blade b = 0; b < (Blade{1} << m); ++b)
    a.set(b, g(rng));
  return a;
}

Vec random_unit(int m, std::mt19937_64 &rng) {
  std::normal_distribution<double> g;
  Vec v(m);
  for (int i = 0; i < m; ++i)
    v(i) = g(rng);
  return v.normalized();
}

SpinElement random_spin(int m, std::mt19937_64 &rng, int pairs = 2) {
  std::vector<Vec> f;
  for (int i = 0; i < 2 * pairs; ++i)
    f.push_back(random_unit(m, rng));
  return SpinElement::from_unit_vectors(f);
}

double max_abs(const Mat &a) { return a.cwiseAbs().maxCoeff(); }

} // namespace

TEST_CASE("defining relations") {
  const int m = 3;
  const auto e1 = CliffordElement::generator(m, 1);
  const auto e2 = CliffordElement::generator(m, 2);
  const auto one = CliffordElement::scalar(m, 1.0);
  CHECK(e1 * e1 == -one);
  CHECK(e1 * e2 == -(e2 * e1));
  CHECK((e1 * e2) * (e1 * e2) == -one);
  CHECK((e1 * e2).coeff(0b011) == 1.0);
  CHECK((e2 * e1).coeff(0b011) == -1.0);
  CHECK_THROWS_AS(CliffordElement::generator(m, 0), Error);
  CHECK_THROWS_AS(CliffordElement::generator(m, 4), Error);
}

TEST_CASE("product matches the word-reduction oracle") {
  std::mt19937_64 rng(2);
  for (int m = 1; m <= 5; ++m) {
    for (int trial = 0; trial < 5; ++trial) {
      const auto a = random_element(m, rng), b = random_element(m, rng);
      CHECK((a * b).distance(oracle_mul(a, b)) < 1e-12);
    }
    for (Blade x = 0; x < (Blade{1} << m); ++x)
      for (Blade y = 0; y < (Blade{1} << m); ++y) {
        auto w = word_of(x);
        const auto wy = word_of(y);
        w.insert(w.end(), wy.begin(), wy.end());
        CHECK(blade_sign(x, y) == reduce_word(w).first);
      }
  }
}

TEST_CASE("associativity, bilinearity and the anti-automorphisms") {
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 20; ++trial) {
    const int m = 4;
    const auto a = random_element(m, rng), b = random_element(m, rng), c = random_element(m, rng);
    CHECK(((a * b) * c).distance(a * (b * c)) < 1e-11);
    CHECK((a * (2.0 * b + c)).distance(2.0 * (a * b) + a * c) < 1e-11);
    CHECK(reverse(a * b).distance(reverse(b) * reverse(a)) < 1e-11);
    CHECK(grade_involution(a * b).distance(grade_involution(a) * grade_involution(b)) < 1e-11);
    const auto split = grade_split(a);
    CHECK((split.even + split.odd).distance(a) == 0.0);
    CHECK(grade_involution(a).distance(split.even - split.odd) == 0.0);
  }
}

TEST_CASE("vectors square to minus their norm") {
  std::mt19937_64 rng(4);
  std::normal_distribution<double> g;
  Vec v(5);
  for (int i = 0; i < 5; ++i)
    v(i) = g(rng);
  const auto x = CliffordElement::vector(v);
  CHECK((x * x).distance(CliffordElement::scalar(5, -v.squaredNorm())) < 1e-12);
  CHECK((vector_part(x) - v).norm() == 0.0);
}

TEST_CASE("theta is a homomorphism onto SO(m) with kernel {1, -1}") {
  std::mt19937_64 rng(5);
  for (int m = 2; m <= 6; ++m) {
    for (int trial = 0; trial < 5; ++trial) {
      const auto s = random_spin(m, rng), t = random_spin(m, rng);
      const Mat ts = theta(s);
      CHECK(max_abs(ts.transpose() * ts - Mat::Identity(m, m)) < 1e-12);
      CHECK(ts.determinant() == doctest::Approx(1.0));
      CHECK(max_abs(theta(s * t) - ts * theta(t)) < 1e-12);
      CHECK(max_abs(theta(-s) - ts) < 1e-12);
      CHECK(max_abs(theta(s.inverse()) - ts.transpose()) < 1e-12);
      CHECK(max_abs(theta_from_factorization(s) - ts) < 1e-12);
    }
    CHECK(max_abs(theta(SpinElement::identity(m)) - Mat::Identity(m, m)) == 0.0);
  }
}

TEST_CASE("elements outside the spin group are refused") {
  const int m = 3;
  auto e1 = CliffordElement::generator(m, 1);
  CHECK_THROWS_AS(SpinElement::from_value(e1), Error);
  CHECK_THROWS_AS(SpinElement::from_value(CliffordElement::scalar(m, 2.0)), Error);
  Vec v = Vec::Zero(m);
  v(0) = 1;
  CHECK_THROWS_AS(SpinElement::from_unit_vectors({v}), Error);
  CHECK_THROWS_AS(SpinElement::from_unit_vectors({v, 2.0 * v}), Error);
}

TEST_CASE("rotation lift covers the rotation and is odd under a full turn") {
  for (int m : {2, 3, 5}) {
    for (int i = 0; i < 100; ++i) {
      const double alpha = 2 * M_PI * i / 99.0 - M_PI;
      const auto s = rotation_lift(alpha, m);
      CHECK(max_abs(theta(s) - rotation_matrix(alpha, m)) <= 1e-12);
      CHECK(rotation_lift(alpha + 2 * M_PI, m).value().distance((-s).value()) < 1e-12);
      CHECK(rotation_lift(alpha + 4 * M_PI, m).value().distance(s.value()) < 1e-12);
    }
  }
  const Mat r = rotation_matrix(M_PI / 2, 2);
  CHECK(r(0, 1) == doctest::Approx(-1.0));
  CHECK(r(1, 0) == doctest::Approx(1.0));
}

TEST_CASE("rotation lift as a product of two reflections") {
  // v = e_{m-1}, w = cos(alpha/2) e_{m-1} + sin(alpha/2) e_m:
  // w v = -cos(alpha/2) - sin(alpha/2) e_{m-1} e_m, the negated lift.
  const int m = 3;
  for (double alpha : {0.3, 1.7, -2.2}) {
    Vec v = Vec::Zero(m), w = Vec::Zero(m);
    v(m - 2) = 1;
    w(m - 2) = std::cos(alpha / 2);
    w(m - 1) = std::sin(alpha / 2);
    const auto s = SpinElement::from_unit_vectors({w, v});
    CHECK(s.value().distance((-rotation_lift(alpha, m)).value()) < 1e-12);
    CHECK(max_abs(theta_from_factorization(s) - rotation_matrix(alpha, m)) < 1e-12);
  }
}

TEST_CASE("embedding commutes with theta") {
  std::mt19937_64 rng(6);
  for (int m = 2; m <= 5; ++m) {
    for (int trial = 0; trial < 5; ++trial) {
      const auto s = random_spin(m, rng);
      const auto es = embed(s);
      CHECK(es.dim() == m + 1);
      CHECK(max_abs(theta(es) - block_inclusion(theta(s))) < 1e-12);
      CHECK(max_abs(theta_from_factorization(es) - block_inclusion(theta(s))) < 1e-12);
      const auto a = random_element(m, rng), b = random_element(m, rng);
      CHECK(embed(a * b).distance(embed(a) * embed(b)) < 1e-11);
    }
  }
  CHECK(embed(CliffordElement::generator(2, 1)) == CliffordElement::generator(3, 2));
}

TEST_CASE("text round trip") {
  const int m = 3;
  const auto a = CliffordElement::scalar(m, 1.5) - 2.0 * CliffordElement::blade(m, 0b011) +
                 CliffordElement::generator(m, 3);
  CHECK(to_string(a) == "1.5 - 2*e1e2 + e3");
  CHECK(parse_element(to_string(a), m) == a);

  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 20; ++trial) {
    const auto x = random_element(4, rng);
    CHECK(parse_element(to_string(x), 4) == x);
  }
  CHECK(to_string(CliffordElement(2)) == "0");
  CHECK(parse_element("e2e1", 2) == -CliffordElement::blade(2, 0b11));
  CHECK_THROWS_AS(parse_element("e4", 3), Error);
  CHECK_THROWS_AS(parse_element("1 + * e1", 3), Error);
}
