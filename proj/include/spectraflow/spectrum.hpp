#pragma once

// Ordered spectral functions on finite windows.
//
// An eigenvalue sequence is a non-decreasing map Z -> R. Finite operators only
// give a finite piece of it, so a SpectrumWindow stores the values together
// with the integer index of the first entry. Index 0 is anchored at the first
// value >= 0. Integer shifts act by (u.z)(j) = u(j + z); all metric quantities
// are taken over the overlap of index ranges.

#include "spectraflow/common.hpp"

#include <cstdint>
#include <span>
#include <vector>

namespace spectraflow::spectrum {

struct SpectrumWindow {
  std::vector<double> values; ///< non-decreasing
  std::int64_t first = 0;     ///< index of values[0]

  std::size_t size() const { return values.size(); }
  bool empty() const { return values.empty(); }
  std::int64_t last() const {
    return first + static_cast<std::int64_t>(values.size()) - 1;
  }
  bool contains_index(std::int64_t j) const { return j >= first && j <= last(); }
  /// Value at integer index j. Precondition: contains_index(j).
  double at(std::int64_t j) const { return values[static_cast<std::size_t>(j - first)]; }

  /// The shifted window u.z with (u.z)(j) = u(j + z).
  SpectrumWindow shifted(std::int64_t z) const { return {values, first - z}; }

  /// True when values are non-decreasing and index 0 sits on the first
  /// non-negative entry (or the window ends at -1 when all entries are negative).
  bool is_anchored() const;

  bool operator==(const SpectrumWindow &) const = default;
};

struct AlignmentResult {
  std::int64_t shift = 0;
  double distance = 0.0; ///< may be +inf
  std::size_t overlap_count = 0;
};

/// Sorts the eigenvalues and anchors index 0 at the first value >= 0.
/// Throws Error("empty spectrum") for empty input.
SpectrumWindow ordered_spectrum(std::span<const double> eigs);

/// Contiguous sub-window of entries in [interval.lo, interval.hi], keeping the
/// original indices. May be empty.
SpectrumWindow spectral_part(const SpectrumWindow &s, Interval interval);

/// sup_j |arsinh u(j) - arsinh v(j)| over the common index range; +inf when the
/// ranges do not overlap.
double arsinh_distance(const SpectrumWindow &u, const SpectrumWindow &v);

/// Number of common indices of u and v.
std::size_t overlap_count(const SpectrumWindow &u, const SpectrumWindow &v);

/// Tolerance used when comparing candidate alignment distances.
inline constexpr double kDistanceTolerance = 1e-12;

/// Finds k in [-max_shift, max_shift] minimizing arsinh_distance(u, v.k) among
/// shifts whose overlap has at least min_overlap entries. Ties (within
/// kDistanceTolerance) go to smaller |k|, then to negative k.
/// Throws Error("insufficient overlap") when no shift is admissible.
AlignmentResult align(const SpectrumWindow &u, const SpectrumWindow &v,
                      std::int64_t max_shift, std::size_t min_overlap);

/// All admissible (shift, distance) candidates in the same order align() scans them.
std::vector<AlignmentResult> alignment_candidates(const SpectrumWindow &u,
                                                  const SpectrumWindow &v,
                                                  std::int64_t max_shift,
                                                  std::size_t min_overlap);

} // namespace spectraflow::spectrum
