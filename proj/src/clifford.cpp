#include "spectraflow/clifford.hpp"

#include <bit>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <cstdlib>

namespace spectraflow::clifford {

namespace {

void check_dim(int m) {
  if (m < 0 || m > kMaxDimension)
    throw Error("clifford: dimension must lie in [0, " + std::to_string(kMaxDimension) + "]");
}

void check_same(const CliffordElement &a, const CliffordElement &b) {
  if (a.dim() != b.dim())
    throw Error("clifford: dimension mismatch (" + std::to_string(a.dim()) + " vs " +
                std::to_string(b.dim()) + ")");
}

CliffordElement map_terms(const CliffordElement &a, double (*sign)(Blade)) {
  CliffordElement out(a.dim());
  for (const auto &[b, c] : a.terms())
    out.set(b, sign(b) * c);
  return out;
}

} // namespace

int grade(Blade b) { return std::popcount(b); }

double blade_sign(Blade a, Blade b) {
  int swaps = 0;
  for (Blade rest = b; rest != 0; rest &= rest - 1) {
    const Blade low = rest & (~rest + 1);
    // generators of a that sit above this generator of b
    swaps += std::popcount(a & ~((low << 1) - 1));
  }
  swaps += std::popcount(a & b);
  return (swaps & 1) ? -1.0 : 1.0;
}

CliffordElement::CliffordElement(int m) : m_(m) {
  check_dim(m);
  c_.assign(std::size_t{1} << m, 0.0);
}

CliffordElement CliffordElement::scalar(int m, double c) {
  CliffordElement e(m);
  e.c_[0] = c;
  return e;
}

CliffordElement CliffordElement::generator(int m, int i) {
  if (i < 1 || i > m)
    throw Error("clifford: generator index " + std::to_string(i) + " outside 1.." +
                std::to_string(m));
  return blade(m, Blade{1} << (i - 1));
}

CliffordElement CliffordElement::blade(int m, Blade mask, double c) {
  CliffordElement e(m);
  e.set(mask, c);
  return e;
}

CliffordElement CliffordElement::vector(const Vec &v) {
  CliffordElement e(static_cast<int>(v.size()));
  for (Eigen::Index i = 0; i < v.size(); ++i)
    e.c_[std::size_t{1} << i] = v(i);
  return e;
}

double CliffordElement::coeff(Blade b) const {
  return b < c_.size() ? c_[b] : 0.0;
}

void CliffordElement::set(Blade b, double c) {
  if (b >= c_.size())
    throw Error("clifford: blade outside Cl_" + std::to_string(m_));
  c_[b] = c;
}

std::vector<std::pair<Blade, double>> CliffordElement::terms() const {
  std::vector<std::pair<Blade, double>> out;
  for (std::size_t b = 0; b < c_.size(); ++b)
    if (c_[b] != 0.0)
      out.emplace_back(static_cast<Blade>(b), c_[b]);
  return out;
}

CliffordElement &CliffordElement::operator+=(const CliffordElement &o) {
  check_same(*this, o);
  for (std::size_t b = 0; b < c_.size(); ++b)
    c_[b] += o.c_[b];
  return *this;
}

CliffordElement &CliffordElement::operator-=(const CliffordElement &o) {
  check_same(*this, o);
  for (std::size_t b = 0; b < c_.size(); ++b)
    c_[b] -= o.c_[b];
  return *this;
}

CliffordElement &CliffordElement::operator*=(double s) {
  for (double &c : c_)
    c *= s;
  return *this;
}

double CliffordElement::distance(const CliffordElement &o) const {
  check_same(*this, o);
  double d = 0.0;
  for (std::size_t b = 0; b < c_.size(); ++b)
    d = std::max(d, std::abs(c_[b] - o.c_[b]));
  return d;
}

CliffordElement clifford_mul(const CliffordElement &a, const CliffordElement &b) {
  check_same(a, b);
  CliffordElement out(a.dim());
  const auto ta = a.terms();
  const auto tb = b.terms();
  for (const auto &[ba, ca] : ta)
    for (const auto &[bb, cb] : tb) {
      const Blade r = ba ^ bb;
      out.set(r, out.coeff(r) + blade_sign(ba, bb) * ca * cb);
    }
  return out;
}

GradeSplit grade_split(const CliffordElement &a) {
  GradeSplit s{CliffordElement(a.dim()), CliffordElement(a.dim())};
  for (const auto &[b, c] : a.terms())
    (grade(b) % 2 == 0 ? s.even : s.odd).set(b, c);
  return s;
}

CliffordElement grade_involution(const CliffordElement &a) {
  return map_terms(a, [](Blade b) { return grade(b) % 2 == 0 ? 1.0 : -1.0; });
}

CliffordElement reverse(const CliffordElement &a) {
  // reversing k generators takes k(k-1)/2 transpositions
  return map_terms(a, [](Blade b) {
    const int k = grade(b);
    return ((k * (k - 1) / 2) % 2 == 0) ? 1.0 : -1.0;
  });
}

CliffordElement grade_part(const CliffordElement &a, int k) {
  CliffordElement out(a.dim());
  for (const auto &[b, c] : a.terms())
    if (grade(b) == k)
      out.set(b, c);
  return out;
}

Vec vector_part(const CliffordElement &a) {
  Vec v(a.dim());
  for (int i = 0; i < a.dim(); ++i)
    v(i) = a.coeff(Blade{1} << i);
  return v;
}

SpinElement SpinElement::from_value(CliffordElement value) {
  for (const auto &[b, c] : value.terms())
    if (grade(b) % 2 != 0 && std::abs(c) > 1e-12)
      throw Error("spin element: value has an odd part");
  const CliffordElement norm = value * reverse(value);
  if (norm.distance(CliffordElement::scalar(value.dim(), 1.0)) > 1e-12)
    throw Error("spin element: s * reverse(s) differs from 1");
  return SpinElement(std::move(value));
}

SpinElement SpinElement::from_unit_vectors(const std::vector<Vec> &factors) {
  if (factors.empty() || factors.size() % 2 != 0)
    throw Error("spin element: need a positive even number of unit vectors");
  const int m = static_cast<int>(factors.front().size());
  CliffordElement value = CliffordElement::scalar(m, 1.0);
  for (const Vec &v : factors) {
    if (v.size() != m)
      throw Error("spin element: factor dimensions differ");
    if (std::abs(v.norm() - 1.0) > 1e-12)
      throw Error("spin element: factor is not a unit vector");
    value = value * CliffordElement::vector(v);
  }
  SpinElement s = from_value(std::move(value));
  s.factors_ = factors;
  return s;
}

SpinElement SpinElement::identity(int m) {
  return SpinElement(CliffordElement::scalar(m, 1.0));
}

SpinElement SpinElement::inverse() const {
  SpinElement s(reverse(value_));
  if (factors_)
    s.factors_ = std::vector<Vec>(factors_->rbegin(), factors_->rend());
  return s;
}

SpinElement SpinElement::operator-() const {
  SpinElement s(-value_);
  return s;
}

SpinElement operator*(const SpinElement &a, const SpinElement &b) {
  SpinElement s(a.value_ * b.value_);
  if (a.factors_ && b.factors_) {
    std::vector<Vec> f = *a.factors_;
    f.insert(f.end(), b.factors_->begin(), b.factors_->end());
    s.factors_ = std::move(f);
  }
  return s;
}

Mat theta(const SpinElement &s) {
  const int m = s.dim();
  const CliffordElement inv = reverse(s.value());
  Mat out(m, m);
  for (int j = 0; j < m; ++j) {
    const CliffordElement img = s.value() * CliffordElement::generator(m, j + 1) * inv;
    for (const auto &[b, c] : img.terms())
      if (grade(b) != 1 && std::abs(c) > 1e-10)
        throw Error("not a spin element");
    out.col(j) = vector_part(img);
  }
  return out;
}

Mat reflection_matrix(const Vec &v) {
  const double nn = v.squaredNorm();
  if (!(nn > 0.0))
    throw Error("reflection_matrix: zero vector");
  return Mat::Identity(v.size(), v.size()) - (2.0 / nn) * v * v.transpose();
}

Mat theta_from_factorization(const SpinElement &s) {
  if (!s.factorization())
    throw Error("theta_from_factorization: no stored factorization");
  Mat out = Mat::Identity(s.dim(), s.dim());
  for (const Vec &v : *s.factorization())
    out = out * reflection_matrix(v);
  return out;
}

namespace {

// cos and sin with the argument reduced by quarter turns first, so that whole
// multiples of pi/2 land on exact values.
std::pair<double, double> cos_sin(double x) {
  const double k = std::nearbyint(x / M_PI_2);
  const double r = x - k * M_PI_2;
  const double c = std::cos(r), s = std::sin(r);
  switch (static_cast<int>(std::fmod(k, 4.0) + 4.0) % 4) {
  case 0: return {c, s};
  case 1: return {-s, c};
  case 2: return {-c, -s};
  default: return {s, -c};
  }
}

} // namespace

Mat rotation_matrix(double alpha, int m) {
  if (m < 2)
    throw Error("rotation_matrix: m must be at least 2");
  Mat r = Mat::Identity(m, m);
  const auto [c, s] = cos_sin(alpha);
  r(m - 2, m - 2) = c;
  r(m - 2, m - 1) = -s;
  r(m - 1, m - 2) = s;
  r(m - 1, m - 1) = c;
  return r;
}

SpinElement rotation_lift(double alpha, int m) {
  if (m < 2)
    throw Error("rotation_lift: m must be at least 2");
  const auto [c, s] = cos_sin(alpha / 2.0);
  CliffordElement v = CliffordElement::scalar(m, c);
  v.set((Blade{1} << (m - 2)) | (Blade{1} << (m - 1)), s);
  return SpinElement::from_value(std::move(v));
}

CliffordElement embed(const CliffordElement &a) {
  CliffordElement out(a.dim() + 1);
  for (const auto &[b, c] : a.terms())
    out.set(b << 1, c);
  return out;
}

SpinElement embed(const SpinElement &s) {
  if (s.factorization()) {
    std::vector<Vec> f;
    for (const Vec &v : *s.factorization()) {
      Vec w = Vec::Zero(v.size() + 1);
      w.tail(v.size()) = v;
      f.push_back(std::move(w));
    }
    return SpinElement::from_unit_vectors(f);
  }
  return SpinElement::from_value(embed(s.value()));
}

Mat block_inclusion(const Mat &a) {
  Mat out = Mat::Identity(a.rows() + 1, a.cols() + 1);
  out.bottomRightCorner(a.rows(), a.cols()) = a;
  return out;
}

std::string to_string(const CliffordElement &a) {
  const auto terms = a.terms();
  if (terms.empty())
    return "0";
  std::string out;
  char buf[64];
  for (std::size_t k = 0; k < terms.size(); ++k) {
    const auto [b, c] = terms[k];
    if (k > 0)
      out += c < 0 ? " - " : " + ";
    else if (c < 0)
      out += '-';
    const bool unit = b != 0 && std::abs(c) == 1.0;
    if (!unit) {
      std::snprintf(buf, sizeof buf, "%.17g", std::abs(c));
      out += buf;
    }
    if (b != 0) {
      if (!unit)
        out += '*';
      for (int i = 0; i < a.dim(); ++i)
        if (b & (Blade{1} << i))
          out += "e" + std::to_string(i + 1);
    }
  }
  return out;
}

CliffordElement parse_element(std::string_view text, int m) {
  const std::string s(text);
  CliffordElement out(m);
  std::size_t pos = 0;
  auto skip_ws = [&] {
    while (pos < s.size() && std::isspace(static_cast<unsigned char>(s[pos])))
      ++pos;
  };
  auto fail = [&](const std::string &what) {
    throw Error("clifford parse error at offset " + std::to_string(pos) + ": " + what);
  };

  skip_ws();
  if (pos == s.size())
    fail("empty input");
  bool first = true;
  while (true) {
    skip_ws();
    if (pos == s.size())
      break;
    double sign = 1.0;
    if (s[pos] == '+' || s[pos] == '-') {
      sign = s[pos] == '-' ? -1.0 : 1.0;
      ++pos;
      skip_ws();
    } else if (!first) {
      fail("expected '+' or '-'");
    }
    first = false;

    double coeff = 1.0;
    bool have_coeff = false;
    if (pos < s.size() && (std::isdigit(static_cast<unsigned char>(s[pos])) || s[pos] == '.')) {
      char *end = nullptr;
      coeff = std::strtod(s.c_str() + pos, &end);
      pos = static_cast<std::size_t>(end - s.c_str());
      have_coeff = true;
      skip_ws();
      if (pos < s.size() && s[pos] == '*') {
        ++pos;
        skip_ws();
      } else {
        out.set(0, out.coeff(0) + sign * coeff);
        continue;
      }
    }

    CliffordElement term = CliffordElement::scalar(m, sign * coeff);
    bool any = false;
    while (pos < s.size() && s[pos] == 'e') {
      ++pos;
      const std::size_t start = pos;
      while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos])))
        ++pos;
      if (pos == start)
        fail("generator index expected");
      term = term * CliffordElement::generator(m, std::stoi(s.substr(start, pos - start)));
      any = true;
    }
    if (!any && !have_coeff)
      fail("term expected");
    if (!any)
      fail("blade expected after '*'");
    out += term;
  }
  return out;
}

} // namespace spectraflow::clifford
