#pragma once

// Text formats.
//   windows:    CSV with header "index,value", one row per entry
//   matrices:   CSV, one line per row
//   families:   JSON {kind, dim, params, samples, seed}
//   projectors: CSV matrix plus JSON sidecar {rank, interval, gap_margin}
// Lines starting with '#' are comments. Reals are written with %.17g so they
// read back bit-identically.

#include "spectraflow/bundle_sign.hpp"
#include "spectraflow/common.hpp"
#include "spectraflow/operator_family.hpp"
#include "spectraflow/projection.hpp"
#include "spectraflow/spectrum.hpp"

#include <json.hpp>

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>

namespace spectraflow::io {

std::string format_real(double x);

void write_window_csv(std::ostream &os, const spectrum::SpectrumWindow &w);
/// Indices must be consecutive; values non-decreasing.
spectrum::SpectrumWindow read_window_csv(std::istream &is);
spectrum::SpectrumWindow load_window(const std::string &path);

void write_matrix_csv(std::ostream &os, const Mat &m);
Mat read_matrix_csv(std::istream &is);
Mat load_matrix(const std::string &path);

struct FamilyConfig {
  std::string kind;
  std::optional<Eigen::Index> dim;
  nlohmann::json params = nlohmann::json::object();
  std::optional<std::size_t> samples;
  std::optional<std::uint64_t> seed;
};

/// Throws Error naming the offending key for unknown keys or wrong types.
FamilyConfig parse_family_config(const nlohmann::json &j);
FamilyConfig load_family_config(const std::string &path);
/// Builds the family; seed falls back to `default_seed`. A declared dim must
/// match the built family.
family::OperatorFamily build_family(const FamilyConfig &cfg, std::uint64_t default_seed);

nlohmann::json projector_sidecar(const projection::IntervalProjector &p);
nlohmann::json certificate_json(const bundle::LassoCertificate &c);

nlohmann::json load_json(const std::string &path);

} // namespace spectraflow::io
