#pragma once

// Exact reference spectra and seeded test families.
//
// Round sphere S^m (Dirac operator): eigenvalues +-(m/2 + k), k >= 0, each with
// complex multiplicity 2^floor(m/2) * C(m + k - 1, k).

#include "spectraflow/common.hpp"
#include "spectraflow/operator_family.hpp"
#include "spectraflow/spectrum.hpp"

#include <json.hpp>

#include <cstdint>
#include <random>
#include <string>
#include <utility>
#include <vector>

namespace spectraflow::model {

struct SphereSpectrumSpec {
  int m = 2;      ///< >= 2
  int levels = 1; ///< K >= 1: k = 0..K-1 on both signs
};

struct SphereLevel {
  int k = 0;
  double value = 0.0;              ///< m/2 + k, exactly representable
  std::uint64_t multiplicity = 0;
};

/// Positive levels k = 0..K-1. Throws Error when a multiplicity overflows 64 bits.
std::vector<SphereLevel> sphere_levels(const SphereSpectrumSpec &spec);

/// 2^floor(m/2) * C(m + k - 1, k), refusing on 64-bit overflow.
std::uint64_t sphere_multiplicity(int m, int k);

/// +-(m/2 + k) with multiplicities, as an anchored window. The window is
/// refused when it would hold more than kMaxWindowEntries values.
spectrum::SpectrumWindow sphere_spectrum(const SphereSpectrumSpec &spec);

inline constexpr std::uint64_t kMaxWindowEntries = std::uint64_t{1} << 26;

struct Multiplicities {
  std::uint64_t spin = 0; ///< mu
  std::uint64_t real = 0; ///< mu_R
};

/// Spin and real multiplicity from the complex one, by m mod 8:
///   0,6,7 -> (mu_C, mu_C);  1,5 -> (mu_C, 2 mu_C);  2,3,4 -> (mu_C / 2, 2 mu_C).
/// Throws Error("violates quaternionic structure") for odd mu_C in 2,3,4.
Multiplicities multiplicity_convert(int m_mod_8, std::uint64_t mu_c);

/// Symmetric n x n matrix (A + A^T) / 2 with standard normal A, times scale.
Mat random_symmetric(Eigen::Index n, std::mt19937_64 &rng, double scale = 1.0);

/// Seeded families. `kind` is one of linear-pencil, rotating-eigenbundle,
/// seeded-random-path, explicit-samples. Parameters:
///   linear-pencil:        t0, t1 (matrices) or dim [, scale, step]
///   rotating-eigenbundle: diagonal [, planes: [[i, j, turns], ...]]
///   seeded-random-path:   dim [, degree, scale, doubled]
///   explicit-samples:     samples (list of matrices)
/// Throws Error("unknown family kind ...") otherwise.
family::OperatorFamily synthetic_family(const std::string &kind, const nlohmann::json &params,
                                        std::uint64_t seed);

/// Matrix from a JSON array of rows.
Mat matrix_from_json(const nlohmann::json &rows);
nlohmann::json matrix_to_json(const Mat &m);

} // namespace spectraflow::model
