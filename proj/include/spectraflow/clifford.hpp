#pragma once

// Real Clifford algebras Cl_m with generators e_1..e_m, e_i^2 = -1 and
// e_i e_j = -e_j e_i for i != j. Elements are dense coefficient vectors
// indexed by blade bitmasks (bit i-1 set <=> e_i present).
//
// embed() maps e_i in Cl_m to e_{i+1} in Cl_{m+1}; on rotation matrices this is
// the block inclusion A -> diag(1, A) fixing the first coordinate.

#include "spectraflow/common.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace spectraflow::clifford {

using Blade = std::uint32_t;

inline constexpr int kMaxDimension = 16;

int grade(Blade b);

/// Sign of e_a * e_b after reordering into ascending order, including the
/// factor (-1) for every generator shared by both blades.
double blade_sign(Blade a, Blade b);

class CliffordElement {
public:
  explicit CliffordElement(int m);

  static CliffordElement scalar(int m, double c);
  /// e_i, 1 <= i <= m.
  static CliffordElement generator(int m, int i);
  static CliffordElement blade(int m, Blade mask, double c = 1.0);
  /// sum_i v_i e_{i+1}
  static CliffordElement vector(const Vec &v);

  int dim() const { return m_; }
  double coeff(Blade b) const;
  void set(Blade b, double c);
  const std::vector<double> &coefficients() const { return c_; }
  /// Nonzero terms in ascending blade order.
  std::vector<std::pair<Blade, double>> terms() const;

  CliffordElement &operator+=(const CliffordElement &o);
  CliffordElement &operator-=(const CliffordElement &o);
  CliffordElement &operator*=(double s);
  friend CliffordElement operator+(CliffordElement a, const CliffordElement &b) { return a += b; }
  friend CliffordElement operator-(CliffordElement a, const CliffordElement &b) { return a -= b; }
  friend CliffordElement operator*(CliffordElement a, double s) { return a *= s; }
  friend CliffordElement operator*(double s, CliffordElement a) { return a *= s; }
  CliffordElement operator-() const { return *this * -1.0; }
  bool operator==(const CliffordElement &o) const = default;

  /// max_b |a_b - o_b|
  double distance(const CliffordElement &o) const;

private:
  int m_;
  std::vector<double> c_;
};

CliffordElement clifford_mul(const CliffordElement &a, const CliffordElement &b);
inline CliffordElement operator*(const CliffordElement &a, const CliffordElement &b) {
  return clifford_mul(a, b);
}

struct GradeSplit {
  CliffordElement even;
  CliffordElement odd;
};

GradeSplit grade_split(const CliffordElement &a);
/// Fixes the even part, negates the odd part.
CliffordElement grade_involution(const CliffordElement &a);
/// Reverses the order of generators in every blade.
CliffordElement reverse(const CliffordElement &a);
CliffordElement grade_part(const CliffordElement &a, int k);
/// Coefficients of e_1..e_m.
Vec vector_part(const CliffordElement &a);

class SpinElement {
public:
  /// Requires an even element with s * reverse(s) = 1 to 1e-12.
  static SpinElement from_value(CliffordElement value);
  /// Product v_1 ... v_k of an even number of unit vectors; keeps the factors.
  static SpinElement from_unit_vectors(const std::vector<Vec> &factors);
  static SpinElement identity(int m);

  const CliffordElement &value() const { return value_; }
  const std::optional<std::vector<Vec>> &factorization() const { return factors_; }
  int dim() const { return value_.dim(); }

  SpinElement inverse() const;
  SpinElement operator-() const;
  friend SpinElement operator*(const SpinElement &a, const SpinElement &b);

private:
  explicit SpinElement(CliffordElement v) : value_(std::move(v)) {}
  CliffordElement value_;
  std::optional<std::vector<Vec>> factors_;
};

/// Column j is the vector part of s e_j s^{-1}. Throws Error("not a spin
/// element") when a higher grade survives beyond 1e-10.
Mat theta(const SpinElement &s);

/// rho_v(y) = y - 2 <v,y> / <v,v> v
Mat reflection_matrix(const Vec &v);
/// Product of the reflections of the stored factors.
Mat theta_from_factorization(const SpinElement &s);

/// Identity on the first m-2 coordinates, rotation by alpha in the last two.
Mat rotation_matrix(double alpha, int m);
/// cos(alpha/2) + sin(alpha/2) e_{m-1} e_m
SpinElement rotation_lift(double alpha, int m);

CliffordElement embed(const CliffordElement &a);
SpinElement embed(const SpinElement &s);
/// diag(1, A)
Mat block_inclusion(const Mat &a);

/// "1.5 - 2*e1e2 + e3" style text, coefficients printed with %.17g.
std::string to_string(const CliffordElement &a);
CliffordElement parse_element(std::string_view text, int m);

} // namespace spectraflow::clifford
