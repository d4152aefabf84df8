#include "spectraflow/io.hpp"

#include "spectraflow/model_spectra.hpp"

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <vector>

namespace spectraflow::io {

namespace {

bool skip_line(const std::string &line) {
  const auto pos = line.find_first_not_of(" \t\r");
  return pos == std::string::npos || line[pos] == '#';
}

std::vector<std::string> split(const std::string &line) {
  std::vector<std::string> out;
  std::stringstream ss(line);
  std::string cell;
  while (std::getline(ss, cell, ','))
    out.push_back(cell);
  return out;
}

double parse_real(const std::string &cell, std::size_t line_no) {
  const char *begin = cell.c_str();
  char *end = nullptr;
  const double x = std::strtod(begin, &end);
  while (*end == ' ' || *end == '\t' || *end == '\r')
    ++end;
  if (end == begin || *end != '\0')
    throw Error("line " + std::to_string(line_no) + ": '" + cell + "' is not a number");
  return x;
}

std::ifstream open(const std::string &path) {
  std::ifstream in(path);
  if (!in)
    throw Error("cannot open '" + path + "'");
  return in;
}

} // namespace

std::string format_real(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

void write_window_csv(std::ostream &os, const spectrum::SpectrumWindow &w) {
  os << "index,value\n";
  for (std::size_t i = 0; i < w.size(); ++i)
    os << (w.first + static_cast<std::int64_t>(i)) << ',' << format_real(w.values[i]) << '\n';
}

spectrum::SpectrumWindow read_window_csv(std::istream &is) {
  spectrum::SpectrumWindow w;
  std::string line;
  std::size_t line_no = 0;
  bool header = false;
  while (std::getline(is, line)) {
    ++line_no;
    if (skip_line(line))
      continue;
    if (!header) {
      if (line.rfind("index,value", 0) != 0)
        throw Error("window CSV must start with the header 'index,value'");
      header = true;
      continue;
    }
    const auto cells = split(line);
    if (cells.size() != 2)
      throw Error("line " + std::to_string(line_no) + ": expected 'index,value'");
    const double idx = parse_real(cells[0], line_no);
    const auto j = static_cast<std::int64_t>(idx);
    if (static_cast<double>(j) != idx)
      throw Error("line " + std::to_string(line_no) + ": index must be an integer");
    const double v = parse_real(cells[1], line_no);
    if (w.values.empty()) {
      w.first = j;
    } else {
      if (j != w.last() + 1)
        throw Error("line " + std::to_string(line_no) + ": indices must be consecutive");
      if (v < w.values.back())
        throw Error("line " + std::to_string(line_no) + ": values must be non-decreasing");
    }
    w.values.push_back(v);
  }
  if (!header)
    throw Error("window CSV is missing the header 'index,value'");
  return w;
}

spectrum::SpectrumWindow load_window(const std::string &path) {
  auto in = open(path);
  return read_window_csv(in);
}

void write_matrix_csv(std::ostream &os, const Mat &m) {
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    for (Eigen::Index j = 0; j < m.cols(); ++j)
      os << (j ? "," : "") << format_real(m(i, j));
    os << '\n';
  }
}

Mat read_matrix_csv(std::istream &is) {
  std::vector<std::vector<double>> rows;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(is, line)) {
    ++line_no;
    if (skip_line(line))
      continue;
    std::vector<double> row;
    for (const auto &cell : split(line))
      row.push_back(parse_real(cell, line_no));
    if (!rows.empty() && row.size() != rows.front().size())
      throw Error("line " + std::to_string(line_no) + ": row length differs");
    rows.push_back(std::move(row));
  }
  if (rows.empty() || rows.front().empty())
    throw Error("matrix CSV is empty");
  Mat m(static_cast<Eigen::Index>(rows.size()), static_cast<Eigen::Index>(rows.front().size()));
  for (Eigen::Index i = 0; i < m.rows(); ++i)
    for (Eigen::Index j = 0; j < m.cols(); ++j)
      m(i, j) = rows[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
  return m;
}

Mat load_matrix(const std::string &path) {
  auto in = open(path);
  return read_matrix_csv(in);
}

FamilyConfig parse_family_config(const nlohmann::json &j) {
  if (!j.is_object())
    throw Error("family config must be a JSON object");
  FamilyConfig cfg;
  for (const auto &[key, value] : j.items()) {
    if (key == "kind") {
      if (!value.is_string())
        throw Error("/kind: expected a string");
      cfg.kind = value.get<std::string>();
    } else if (key == "dim") {
      if (!value.is_number_integer() || value.get<std::int64_t>() < 1)
        throw Error("/dim: expected a positive integer");
      cfg.dim = value.get<Eigen::Index>();
    } else if (key == "params") {
      if (!value.is_object())
        throw Error("/params: expected an object");
      cfg.params = value;
    } else if (key == "samples") {
      if (!value.is_number_integer() || value.get<std::int64_t>() < 1)
        throw Error("/samples: expected a positive integer");
      cfg.samples = value.get<std::size_t>();
    } else if (key == "seed") {
      if (!value.is_number_integer() ||
          (!value.is_number_unsigned() && value.get<std::int64_t>() < 0))
        throw Error("/seed: expected a non-negative integer");
      cfg.seed = value.get<std::uint64_t>();
    } else {
      throw Error("/" + key + ": unknown key");
    }
  }
  if (cfg.kind.empty())
    throw Error("/kind: required");
  return cfg;
}

FamilyConfig load_family_config(const std::string &path) {
  return parse_family_config(load_json(path));
}

family::OperatorFamily build_family(const FamilyConfig &cfg, std::uint64_t default_seed) {
  nlohmann::json params = cfg.params;
  if (cfg.dim && !params.contains("dim") &&
      (cfg.kind == "linear-pencil" || cfg.kind == "seeded-random-path"))
    params["dim"] = *cfg.dim;
  auto fam = model::synthetic_family(cfg.kind, params, cfg.seed.value_or(default_seed));
  if (cfg.dim && fam.dim() != *cfg.dim)
    throw Error("family dim " + std::to_string(fam.dim()) + " differs from declared dim " +
                std::to_string(*cfg.dim));
  return fam;
}

nlohmann::json projector_sidecar(const projection::IntervalProjector &p) {
  return {{"rank", p.rank},
          {"interval", {p.interval.lo, p.interval.hi}},
          {"gap_margin", p.gap_margin}};
}

nlohmann::json certificate_json(const bundle::LassoCertificate &c) {
  return {{"sign", c.sign},
          {"rank", c.rank},
          {"samples", c.samples},
          {"interval", {c.interval.lo, c.interval.hi}},
          {"min_gap_margin", c.min_gap_margin},
          {"max_step_gap", c.max_step_gap},
          {"closure_matrix", model::matrix_to_json(c.closure)},
          {"statement", c.statement}};
}

nlohmann::json load_json(const std::string &path) {
  auto in = open(path);
  try {
    return nlohmann::json::parse(in);
  } catch (const nlohmann::json::parse_error &e) {
    throw Error("'" + path + "' is not valid JSON: " + e.what());
  }
}

} // namespace spectraflow::io
