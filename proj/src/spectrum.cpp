#include "spectraflow/spectrum.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace spectraflow::spectrum {

bool SpectrumWindow::is_anchored() const {
  if (!std::is_sorted(values.begin(), values.end()))
    return false;
  const auto first_nonneg =
      std::find_if(values.begin(), values.end(), [](double x) { return x >= 0.0; });
  if (first_nonneg == values.end())
    return values.empty() || last() == -1;
  return first + (first_nonneg - values.begin()) == 0;
}

SpectrumWindow ordered_spectrum(std::span<const double> eigs) {
  if (eigs.empty())
    throw Error("empty spectrum");
  SpectrumWindow w;
  w.values.assign(eigs.begin(), eigs.end());
  std::sort(w.values.begin(), w.values.end());
  const auto negatives = std::partition_point(w.values.begin(), w.values.end(),
                                              [](double x) { return x < 0.0; }) -
                         w.values.begin();
  w.first = -static_cast<std::int64_t>(negatives);
  return w;
}

SpectrumWindow spectral_part(const SpectrumWindow &s, Interval interval) {
  const auto lo = std::lower_bound(s.values.begin(), s.values.end(), interval.lo);
  const auto hi = std::upper_bound(lo, s.values.end(), interval.hi);
  SpectrumWindow out;
  out.values.assign(lo, hi);
  out.first = s.first + (lo - s.values.begin());
  return out;
}

std::size_t overlap_count(const SpectrumWindow &u, const SpectrumWindow &v) {
  if (u.empty() || v.empty())
    return 0;
  const std::int64_t lo = std::max(u.first, v.first);
  const std::int64_t hi = std::min(u.last(), v.last());
  return hi < lo ? 0 : static_cast<std::size_t>(hi - lo + 1);
}

double arsinh_distance(const SpectrumWindow &u, const SpectrumWindow &v) {
  if (overlap_count(u, v) == 0)
    return std::numeric_limits<double>::infinity();
  const std::int64_t lo = std::max(u.first, v.first);
  const std::int64_t hi = std::min(u.last(), v.last());
  double d = 0.0;
  for (std::int64_t j = lo; j <= hi; ++j)
    d = std::max(d, std::abs(arsinh(u.at(j)) - arsinh(v.at(j))));
  return d;
}

std::vector<AlignmentResult> alignment_candidates(const SpectrumWindow &u,
                                                  const SpectrumWindow &v,
                                                  std::int64_t max_shift,
                                                  std::size_t min_overlap) {
  if (max_shift < 0)
    throw Error("align: max_shift must be non-negative");
  if (min_overlap < 1)
    throw Error("align: min_overlap must be at least 1");

  std::vector<AlignmentResult> out;
  // Preference order 0, -1, +1, -2, +2, ... encodes the tie-breaking rule.
  for (std::int64_t mag = 0; mag <= max_shift; ++mag) {
    for (std::int64_t k : {-mag, mag}) {
      if (mag == 0 && k != -mag)
        continue;
      const SpectrumWindow vk = v.shifted(k);
      const std::size_t count = overlap_count(u, vk);
      if (count < min_overlap)
        continue;
      out.push_back({k, arsinh_distance(u, vk), count});
    }
  }
  return out;
}

AlignmentResult align(const SpectrumWindow &u, const SpectrumWindow &v,
                      std::int64_t max_shift, std::size_t min_overlap) {
  const auto candidates = alignment_candidates(u, v, max_shift, min_overlap);
  if (candidates.empty())
    throw Error("insufficient overlap");
  AlignmentResult best = candidates.front();
  for (const auto &c : candidates)
    if (c.distance < best.distance - kDistanceTolerance)
      best = c;
  return best;
}

} // namespace spectraflow::spectrum
