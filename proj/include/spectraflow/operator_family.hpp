#pragma once

// Parametrized families t in [0,1] -> real symmetric n x n matrices, and the
// spectral computations done along them: eigendecomposition, branch tracking,
// derivative-growth constants for linear pencils, spectral flow and the
// variational (Min-Max / Rayleigh) checks.

#include "spectraflow/common.hpp"
#include "spectraflow/spectrum.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace spectraflow::family {

enum class FamilyKind {
  ExplicitSamples,
  LinearPencil,
  RotatingEigenbundle,
  SeededRandomPath,
  Polynomial,
  Custom,
};

std::string to_string(FamilyKind kind);

/// A Givens rotation plane (i, j) turning by turns * pi * t.
struct RotationPlane {
  Eigen::Index i = 0;
  Eigen::Index j = 1;
  int turns = 1;
};

/// Closed-form or sampled path of symmetric matrices over [0, 1].
class OperatorFamily {
public:
  using Evaluator = std::function<Mat(double)>;

  /// T(t) = T0 + t (T1 - T0).
  static OperatorFamily linear_pencil(Mat t0, Mat t1);
  /// Piecewise-linear interpolation between samples at t_i = i / (count - 1).
  static OperatorFamily explicit_samples(std::vector<Mat> samples);
  /// T(t) = R(t) diag(d) R(t)^T with R(t) the product of the plane rotations.
  static OperatorFamily rotating_eigenbundle(Vec diagonal, std::vector<RotationPlane> planes);
  /// T(t) = sum_k C_k t^k.
  static OperatorFamily polynomial(std::vector<Mat> coefficients,
                                   FamilyKind label = FamilyKind::Polynomial);
  static OperatorFamily from_function(Eigen::Index dim, Evaluator fn, bool is_loop);

  /// Symmetric matrix at parameter t; throws Error when the evaluator returns a
  /// matrix of the wrong size or one that is not symmetric to 1e-12 (relative).
  Mat evaluate(double t) const;

  Eigen::Index dim() const { return dim_; }
  FamilyKind kind() const { return kind_; }
  bool is_loop() const { return is_loop_; }

  /// (T0, T1) for linear pencils.
  const std::optional<std::pair<Mat, Mat>> &pencil() const { return pencil_; }
  /// Coefficients for polynomial-type families (linear pencils included).
  const std::optional<std::vector<Mat>> &coefficients() const { return coefficients_; }

  /// T(t) (+) T(t) on the doubled space.
  OperatorFamily doubled() const;
  /// Runs this family on [0, 1/2] and `next` on [1/2, 1]. Endpoints must match.
  OperatorFamily concatenated(const OperatorFamily &next) const;
  /// The loop traversed starting from parameter `start`. Requires is_loop().
  OperatorFamily rebased(double start) const;
  /// The loop traversed `times` times.
  OperatorFamily repeated(int times) const;

private:
  OperatorFamily(FamilyKind kind, Eigen::Index dim, Evaluator fn, bool is_loop);
  void check_loop_closure() const;

  FamilyKind kind_ = FamilyKind::Custom;
  Eigen::Index dim_ = 0;
  Evaluator fn_;
  bool is_loop_ = false;
  std::optional<std::pair<Mat, Mat>> pencil_;
  std::optional<std::vector<Mat>> coefficients_;
};

/// Uniform grid t_i = i / samples, i = 0..samples.
std::vector<double> parameter_grid(std::size_t samples);

// ---------------------------------------------------------------------------
// Eigendecomposition

struct EigenSystem {
  Vec values;  ///< ascending
  Mat vectors; ///< orthogonal, column i pairs with values(i)
};

/// Dense symmetric eigensolver. Throws Error for non-symmetric input.
EigenSystem eigen_decompose(const Mat &t);

/// Eigen systems of fam at every grid point; evaluated concurrently.
std::vector<EigenSystem> sample_eigensystems(const OperatorFamily &fam, std::size_t samples);

// ---------------------------------------------------------------------------
// Derivative-growth constants

struct KatoConstants {
  double alpha = 1.0; ///< lower bound for the graph-norm equivalence constant
  double beta = 0.0;  ///< ||T1 - T0||_2
  double c = 0.0;     ///< beta / alpha
  double r_cut = 2.0; ///< R with |eta| / (1 + |eta|) > 1/2 for |eta| >= R
  double c0 = 0.0;    ///< sup (1 + |t|) / sqrt(1 + t^2) = sqrt(2)
  double c1 = 0.25;
  double c2 = 0.0; ///< min(1 / (R + 1), 1 / (2 c0))
};

/// Number of t-grid points used for alpha.
inline constexpr std::size_t kAlphaGridPoints = 101;

/// Growth constants of a linear pencil. alpha is the minimum over a 101-point
/// t-grid of a certified lower bound for
///   inf_{u != 0} (|u| + |D(t) u|) / (|u| + |T0 u|),
/// namely the larger of 1 / (1 + t beta) and sqrt(mu_min(t) / 2), where mu_min
/// is the smallest generalized eigenvalue of (I + D(t)^2, I + T0^2).
KatoConstants kato_constants(const OperatorFamily &fam);

/// delta = ln(min(c1, eps c2) + 1) / c, or +inf when c == 0.
double delta_for_epsilon(const KatoConstants &k, double eps);

// ---------------------------------------------------------------------------
// Branch tracking

struct Branches {
  std::vector<double> grid;                ///< t_0..t_N
  std::vector<std::vector<double>> values; ///< values[branch][sample]

  std::size_t branch_count() const { return values.size(); }
};

/// Overlaps below this mark the grid as too coarse.
inline constexpr double kMinBranchOverlap = 0.1;

/// Continuous eigenvalue branches over the grid t_i = i / samples. Consecutive
/// spectra are matched greedily by |<v_i(t_k), v_j(t_{k+1})>|, ties broken by
/// eigenvalue proximity. Throws Error("grid too coarse") when a match falls
/// below kMinBranchOverlap.
Branches track_branches(const OperatorFamily &fam, std::size_t samples);

struct GrowthReport {
  double max_ratio = 0.0; ///< max |l(t) - l(t0)| / ((1 + |l(t0)|)(exp(c |t - t0|) - 1)); 0/0 = 0
  std::size_t violations = 0; ///< pairs breaking the bound beyond 1e-9
  std::size_t pairs_checked = 0;
};

/// Checks |l(t) - l(t0)| <= (1 + |l(t0)|)(exp(c |t - t0|) - 1) + 1e-9 over all
/// sample pairs and branches.
GrowthReport verify_growth_bound(const Branches &branches, const KatoConstants &k);

struct ArsinhGrowthReport {
  double eps = 0.0;
  double delta = 0.0;
  double max_change = 0.0; ///< max |arsinh l(t) - arsinh l(t0)| over pairs with |t - t0| <= delta
  std::size_t pairs_checked = 0;
  bool holds = true; ///< max_change < eps
};

/// The arsinh form of the growth bound with delta from delta_for_epsilon.
ArsinhGrowthReport verify_arsinh_growth(const Branches &branches, const KatoConstants &k,
                                        double eps);

// ---------------------------------------------------------------------------
// Spectral flow

enum class FlowMethod { ShiftAlign, ZeroCrossing };

/// Endpoint eigenvalues closer than this to zero are refused.
inline constexpr double kFlowEndpointTolerance = 1e-9;

/// Net number of eigenvalues crossing 0 from below along fam.
///  - ShiftAlign: sum of per-step shifts from align() on consecutive ordered
///    spectra (shifts up to n, overlap at least n - 1). Refuses (grid too
///    coarse) when a step's best distance is not below half the runner-up's.
///  - ZeroCrossing: signed count of sign changes of tracked branches.
int spectral_flow(const OperatorFamily &fam, std::size_t samples, FlowMethod method);

/// Per-step shifts of the shift-align method (useful for diagnostics).
std::vector<std::int64_t> flow_step_shifts(const OperatorFamily &fam, std::size_t samples);

// ---------------------------------------------------------------------------
// Variational checks

/// max of the Rayleigh quotient over span(basis). basis must have full column rank.
double max_rayleigh_on_span(const Mat &t, const Mat &basis);

struct MinMaxReport {
  double lambda_k = 0.0;
  double eigen_subspace_max = 0.0;
  double min_random_max = 0.0; ///< smallest max-Rayleigh over the random subspaces
  std::size_t trials = 0;
  std::size_t violations = 0; ///< random subspaces with max-Rayleigh < lambda_k - 1e-9
  bool holds = true;
};

/// Verifies lambda_k = max Rayleigh over the first k eigenvectors (to 1e-9) and
/// that `trials` random k-subspaces never go below lambda_k - 1e-9.
MinMaxReport min_max_check(const Mat &t, Eigen::Index k, std::size_t trials,
                           std::uint64_t seed = 0);

struct RayleighReport {
  bool precondition_ok = false;
  std::string message;
  double rayleigh = 0.0;
  double eps = 0.0; ///< max(0, rayleigh - level)
  double next_eigenvalue = 0.0;
  double distance_sq = 0.0;
  double bound = 0.0; ///< (level + eps) / next_eigenvalue
  bool holds = false;
};

/// Checks d(V, x)^2 <= (level + eps) / lambda_{k+1} where V is spanned by the
/// eigenvectors below `level`. Precondition violations are reported, not thrown.
RayleighReport rayleigh_distance_check(const Mat &t, double level, const Vec &x);

struct PairingReport {
  bool precondition_ok = false;
  std::optional<double> failing_t;
  std::optional<std::size_t> partner; ///< 0-based branch index paired with branch 0
  double sup_deviation = 0.0;
};

/// For families whose multiplicities are all even at every sample, finds a
/// branch m != 0 with sup_t |l_0(t) - l_m(t)| <= tol.
PairingReport detect_paired_branches(const OperatorFamily &fam, std::size_t samples, double tol);

} // namespace spectraflow::family
