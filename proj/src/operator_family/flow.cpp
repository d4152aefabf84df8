#include "spectraflow/operator_family.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace spectraflow::family {

namespace {

using spectrum::SpectrumWindow;

void check_endpoints(const std::vector<EigenSystem> &systems) {
  for (const auto *sys : {&systems.front(), &systems.back()}) {
    for (Eigen::Index i = 0; i < sys->values.size(); ++i)
      if (std::abs(sys->values(i)) <= kFlowEndpointTolerance)
        throw Error("spectral flow: 0 is an eigenvalue at an endpoint (" +
                    std::to_string(sys->values(i)) + ")");
  }
}

SpectrumWindow window_of(const EigenSystem &sys) {
  return spectrum::ordered_spectrum(
      std::span<const double>(sys.values.data(), static_cast<std::size_t>(sys.values.size())));
}

} // namespace

std::vector<std::int64_t> flow_step_shifts(const OperatorFamily &fam, std::size_t samples) {
  if (samples < 1)
    throw Error("spectral flow: need at least one step");
  const auto systems = sample_eigensystems(fam, samples);
  check_endpoints(systems);

  const auto n = static_cast<std::size_t>(fam.dim());
  const auto max_shift = static_cast<std::int64_t>(n);
  const std::size_t min_overlap = std::max<std::size_t>(1, n - 1);

  std::vector<std::int64_t> shifts;
  shifts.reserve(samples);
  SpectrumWindow u = window_of(systems[0]);
  for (std::size_t s = 0; s < samples; ++s) {
    SpectrumWindow v = window_of(systems[s + 1]);
    const auto candidates = spectrum::alignment_candidates(u, v, max_shift, min_overlap);
    const auto best = spectrum::align(u, v, max_shift, min_overlap);

    // The chosen shift must be separated from every competitor: its distance
    // has to stay below half of the next-best candidate distance.
    double runner_up = std::numeric_limits<double>::infinity();
    for (const auto &c : candidates)
      if (c.shift != best.shift)
        runner_up = std::min(runner_up, c.distance);
    if (!(best.distance < 0.5 * runner_up))
      throw Error("grid too coarse: ambiguous alignment at step " + std::to_string(s) +
                  " (distance " + std::to_string(best.distance) + ", runner-up " +
                  std::to_string(runner_up) + ")");
    shifts.push_back(best.shift);
    u = std::move(v);
  }
  return shifts;
}

int spectral_flow(const OperatorFamily &fam, std::size_t samples, FlowMethod method) {
  if (method == FlowMethod::ShiftAlign) {
    std::int64_t total = 0;
    for (auto k : flow_step_shifts(fam, samples))
      total += k;
    return static_cast<int>(total);
  }

  const auto branches = track_branches(fam, samples);
  for (const auto &b : branches.values) {
    for (double x : {b.front(), b.back()})
      if (std::abs(x) <= kFlowEndpointTolerance)
        throw Error("spectral flow: 0 is an eigenvalue at an endpoint (" + std::to_string(x) +
                    ")");
  }
  int flow = 0;
  for (const auto &b : branches.values) {
    for (std::size_t s = 0; s + 1 < b.size(); ++s) {
      if (b[s] < 0.0 && b[s + 1] >= 0.0)
        ++flow;
      else if (b[s] >= 0.0 && b[s + 1] < 0.0)
        --flow;
    }
  }
  return flow;
}

} // namespace spectraflow::family
