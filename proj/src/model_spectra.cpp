#include "spectraflow/model_spectra.hpp"

#include <limits>

namespace spectraflow::model {

namespace {

__extension__ typedef unsigned __int128 u128;

constexpr u128 kMax64 = std::numeric_limits<std::uint64_t>::max();

std::uint64_t binomial(std::uint64_t n, std::uint64_t k) {
  if (k > n)
    return 0;
  u128 r = 1;
  for (std::uint64_t i = 1; i <= k; ++i) {
    // r = C(n - k + i - 1, i - 1) -> C(n - k + i, i), exact at every step
    r = r * (n - k + i) / i;
    if (r > kMax64)
      throw Error("sphere spectrum: binomial C(" + std::to_string(n) + ", " +
                  std::to_string(k) + ") overflows 64 bits");
  }
  return static_cast<std::uint64_t>(r);
}

void check_spec(const SphereSpectrumSpec &spec) {
  if (spec.m < 2)
    throw Error("sphere spectrum: m must be at least 2");
  if (spec.levels < 1)
    throw Error("sphere spectrum: levels must be at least 1");
}

std::vector<Mat> matrices_from_json(const nlohmann::json &list) {
  if (!list.is_array() || list.empty())
    throw Error("expected a non-empty list of matrices");
  std::vector<Mat> out;
  for (const auto &m : list)
    out.push_back(matrix_from_json(m));
  return out;
}

} // namespace

std::uint64_t sphere_multiplicity(int m, int k) {
  if (m < 2 || k < 0)
    throw Error("sphere multiplicity: need m >= 2 and k >= 0");
  const u128 c = binomial(static_cast<std::uint64_t>(m + k - 1), static_cast<std::uint64_t>(k));
  const int half = m / 2;
  if (half >= 64 || (c << half) > kMax64 || ((c << half) >> half) != c)
    throw Error("sphere spectrum: multiplicity for m = " + std::to_string(m) +
                ", k = " + std::to_string(k) + " overflows 64 bits");
  return static_cast<std::uint64_t>(c << half);
}

std::vector<SphereLevel> sphere_levels(const SphereSpectrumSpec &spec) {
  check_spec(spec);
  std::vector<SphereLevel> out;
  for (int k = 0; k < spec.levels; ++k)
    out.push_back({k, 0.5 * spec.m + k, sphere_multiplicity(spec.m, k)});
  return out;
}

spectrum::SpectrumWindow sphere_spectrum(const SphereSpectrumSpec &spec) {
  const auto levels = sphere_levels(spec);
  u128 total = 0;
  for (const auto &l : levels)
    total += 2 * static_cast<u128>(l.multiplicity);
  if (total > kMaxWindowEntries)
    throw Error("sphere spectrum: window would hold more than " +
                std::to_string(kMaxWindowEntries) + " entries");

  spectrum::SpectrumWindow w;
  w.values.reserve(static_cast<std::size_t>(total));
  for (auto it = levels.rbegin(); it != levels.rend(); ++it)
    w.values.insert(w.values.end(), it->multiplicity, -it->value);
  const auto negatives = static_cast<std::int64_t>(w.values.size());
  for (const auto &l : levels)
    w.values.insert(w.values.end(), l.multiplicity, l.value);
  w.first = -negatives;
  return w;
}

Multiplicities multiplicity_convert(int m_mod_8, std::uint64_t mu_c) {
  if (m_mod_8 < 0 || m_mod_8 > 7)
    throw Error("multiplicity_convert: residue must lie in 0..7");
  if (mu_c == 0)
    throw Error("multiplicity_convert: mu_C must be positive");
  if (mu_c > std::numeric_limits<std::uint64_t>::max() / 2)
    throw Error("multiplicity_convert: mu_C too large");
  switch (m_mod_8) {
  case 0:
  case 6:
  case 7:
    return {mu_c, mu_c};
  case 1:
  case 5:
    return {mu_c, 2 * mu_c};
  default:
    if (mu_c % 2 != 0)
      throw Error("multiplicity_convert: odd mu_C " + std::to_string(mu_c) +
                  " violates quaternionic structure");
    return {mu_c / 2, 2 * mu_c};
  }
}

Mat random_symmetric(Eigen::Index n, std::mt19937_64 &rng, double scale) {
  std::normal_distribution<double> gauss;
  Mat a(n, n);
  for (Eigen::Index j = 0; j < n; ++j)
    for (Eigen::Index i = 0; i < n; ++i)
      a(i, j) = gauss(rng);
  return (0.5 * scale) * (a + a.transpose());
}

Mat matrix_from_json(const nlohmann::json &rows) {
  if (!rows.is_array() || rows.empty() || !rows.front().is_array())
    throw Error("matrix must be a non-empty array of rows");
  const auto n = static_cast<Eigen::Index>(rows.size());
  const auto m = static_cast<Eigen::Index>(rows.front().size());
  Mat out(n, m);
  for (Eigen::Index i = 0; i < n; ++i) {
    const auto &row = rows[static_cast<std::size_t>(i)];
    if (!row.is_array() || static_cast<Eigen::Index>(row.size()) != m)
      throw Error("matrix rows have different lengths");
    for (Eigen::Index j = 0; j < m; ++j) {
      const auto &x = row[static_cast<std::size_t>(j)];
      if (!x.is_number())
        throw Error("matrix entries must be numbers");
      out(i, j) = x.get<double>();
    }
  }
  return out;
}

nlohmann::json matrix_to_json(const Mat &m) {
  nlohmann::json rows = nlohmann::json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    nlohmann::json row = nlohmann::json::array();
    for (Eigen::Index j = 0; j < m.cols(); ++j)
      row.push_back(m(i, j));
    rows.push_back(std::move(row));
  }
  return rows;
}

family::OperatorFamily synthetic_family(const std::string &kind, const nlohmann::json &params,
                                        std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  const nlohmann::json p = params.is_null() ? nlohmann::json::object() : params;
  if (!p.is_object())
    throw Error("family params must be a JSON object");

  if (kind == "linear-pencil") {
    if (p.contains("t0") || p.contains("t1")) {
      if (!p.contains("t0") || !p.contains("t1"))
        throw Error("linear-pencil: both t0 and t1 are required");
      return family::OperatorFamily::linear_pencil(matrix_from_json(p["t0"]),
                                                   matrix_from_json(p["t1"]));
    }
    const auto n = p.value("dim", 0);
    if (n < 1)
      throw Error("linear-pencil: dim must be positive");
    const double scale = p.value("scale", 1.0);
    Mat t0 = random_symmetric(n, rng, scale);
    Mat t1 = random_symmetric(n, rng, scale);
    if (p.contains("step")) {
      const double step = p["step"].get<double>();
      const Mat d = t1 - t0;
      const double norm = operator_norm(d);
      t1 = t0 + (norm > 0.0 ? step / norm : 0.0) * d;
    }
    return family::OperatorFamily::linear_pencil(std::move(t0), std::move(t1));
  }

  if (kind == "rotating-eigenbundle") {
    if (!p.contains("diagonal") || !p["diagonal"].is_array() || p["diagonal"].empty())
      throw Error("rotating-eigenbundle: diagonal is required");
    const auto d = p["diagonal"].get<std::vector<double>>();
    Vec diag = Eigen::Map<const Vec>(d.data(), static_cast<Eigen::Index>(d.size()));
    std::vector<family::RotationPlane> planes;
    if (p.contains("planes")) {
      for (const auto &pl : p["planes"]) {
        if (!pl.is_array() || pl.size() != 3)
          throw Error("rotating-eigenbundle: planes are [i, j, turns] triples");
        planes.push_back({pl[0].get<Eigen::Index>(), pl[1].get<Eigen::Index>(), pl[2].get<int>()});
      }
    } else {
      planes.push_back({0, 1, 1});
    }
    return family::OperatorFamily::rotating_eigenbundle(std::move(diag), std::move(planes));
  }

  if (kind == "seeded-random-path") {
    const auto n = p.value("dim", 0);
    if (n < 1)
      throw Error("seeded-random-path: dim must be positive");
    const int degree = p.value("degree", 2);
    if (degree < 0)
      throw Error("seeded-random-path: degree must be non-negative");
    const double scale = p.value("scale", 1.0);
    std::vector<Mat> coeffs;
    for (int k = 0; k <= degree; ++k)
      coeffs.push_back(random_symmetric(n, rng, scale));
    auto fam = family::OperatorFamily::polynomial(std::move(coeffs),
                                                  family::FamilyKind::SeededRandomPath);
    return p.value("doubled", false) ? fam.doubled() : fam;
  }

  if (kind == "explicit-samples") {
    if (!p.contains("samples"))
      throw Error("explicit-samples: samples are required");
    return family::OperatorFamily::explicit_samples(matrices_from_json(p["samples"]));
  }

  throw Error("unknown family kind '" + kind + "'");
}

} // namespace spectraflow::model
