// Command-line front end. Each subcommand only translates flags into an
// experiment config; all computation happens in the library.

#include "spectraflow/experiment.hpp"
#include "spectraflow/io.hpp"

#include <CLI11.hpp>

#include <iostream>
#include <optional>
#include <sstream>
#include <string>

namespace ex = spectraflow::experiment;
using nlohmann::json;

namespace {

std::optional<json> parse_interval(const std::string &text) {
  std::stringstream ss(text);
  std::string lo, hi, extra;
  if (!std::getline(ss, lo, ',') || !std::getline(ss, hi, ',') || std::getline(ss, extra, ','))
    return std::nullopt;
  try {
    std::size_t a = 0, b = 0;
    const double l = std::stod(lo, &a);
    const double h = std::stod(hi, &b);
    if (a != lo.size() || b != hi.size())
      return std::nullopt;
    return json::array({l, h});
  } catch (const std::exception &) {
    return std::nullopt;
  }
}

} // namespace

int main(int argc, char **argv) {
  CLI::App app{"Spectra of parametrized symmetric matrix families"};
  app.require_subcommand(1);

  std::string output = "-";
  std::optional<std::uint64_t> seed;
  app.add_option("-o,--output", output, "Output path, '-' for standard output");
  app.add_option("--seed", seed, "Seed for seeded families");

  json params = json::object();
  std::string command;
  std::string interval_text;
  std::string config_path;

  auto *sphere = app.add_subcommand("sphere-spectrum", "Dirac spectrum of the round sphere");
  int dim = 0, levels = 0;
  std::string format = "csv";
  sphere->add_option("--dim", dim, "Sphere dimension m")->required();
  sphere->add_option("--levels", levels, "Number of levels K")->required();
  sphere->add_option("--format", format, "csv or json");

  auto *flow = app.add_subcommand("flow", "Spectral flow of a family");
  std::string family_path;
  std::size_t samples = 0;
  std::string method;
  flow->add_option("--family", family_path, "Family JSON")->required();
  flow->add_option("--samples", samples, "Grid steps");
  flow->add_option("--method", method, "shift-align, zero-crossing or both");

  auto *lasso = app.add_subcommand("lasso", "Orientability certificate of an interval eigenbundle");
  lasso->add_option("--family", family_path, "Loop family JSON")->required();
  lasso->add_option("--interval", interval_text, "lo,hi")->required();
  lasso->add_option("--samples", samples, "Grid steps");

  auto *align = app.add_subcommand("align", "Shift alignment of two spectrum windows");
  std::string u_path, v_path;
  std::int64_t max_shift = 5, min_overlap = 1;
  align->add_option("--u", u_path, "Window CSV")->required();
  align->add_option("--v", v_path, "Window CSV")->required();
  align->add_option("--max-shift", max_shift, "Largest |shift|");
  align->add_option("--min-overlap", min_overlap, "Smallest admissible overlap");

  auto *project = app.add_subcommand("project", "Spectral projector of an interval");
  std::string matrix_path, sidecar;
  std::size_t nodes = 64;
  project->add_option("--matrix", matrix_path, "Matrix CSV")->required();
  project->add_option("--interval", interval_text, "lo,hi")->required();
  project->add_option("--method", method, "direct or contour");
  project->add_option("--nodes", nodes, "Quadrature nodes for the contour method");
  project->add_option("--sidecar", sidecar, "Path for the JSON sidecar");

  auto *kato = app.add_subcommand("kato-check", "Eigenvalue growth bound along a linear pencil");
  double eps = 0.5;
  kato->add_option("--family", family_path, "Linear pencil JSON")->required();
  kato->add_option("--samples", samples, "Grid steps");
  kato->add_option("--eps", eps, "arsinh tolerance");

  auto *identify = app.add_subcommand("identify", "Identification maps between two inner products");
  std::string g_path, h_path;
  identify->set_help_flag("--help", "Print this help message and exit");
  identify->add_option("--g", g_path, "Gram matrix CSV")->required();
  identify->add_option("--h", h_path, "Gram matrix CSV")->required();

  auto *run = app.add_subcommand("run", "Run an experiment config");
  run->add_option("--config", config_path, "Experiment JSON")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError &e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : ex::kExitSchema;
  }

  if (run->parsed()) {
    json cfg;
    try {
      cfg = spectraflow::io::load_json(config_path);
    } catch (const std::exception &e) {
      std::cerr << "schema error at /: " << e.what() << '\n';
      return ex::kExitSchema;
    }
    return ex::run_json(cfg, std::cout, std::cerr);
  }

  auto *sub = app.get_subcommands().front();
  command = sub->get_name();
  if (!interval_text.empty()) {
    const auto iv = parse_interval(interval_text);
    if (!iv) {
      std::cerr << "schema error at /params/interval: expected lo,hi\n";
      return ex::kExitSchema;
    }
    params["interval"] = *iv;
  }
  auto set_if = [&](const char *flag, const char *key, const auto &value) {
    if (const auto *opt = sub->get_option_no_throw(flag); opt != nullptr && opt->count() > 0)
      params[key] = value;
  };

  if (sub == sphere) {
    params["dim"] = dim;
    params["levels"] = levels;
    params["format"] = format;
  } else if (sub == flow || sub == lasso || sub == kato) {
    params["family"] = family_path;
    set_if("--samples", "samples", samples);
    set_if("--method", "method", method);
    set_if("--eps", "eps", eps);
  } else if (sub == align) {
    params["u"] = u_path;
    params["v"] = v_path;
    set_if("--max-shift", "max_shift", max_shift);
    set_if("--min-overlap", "min_overlap", min_overlap);
  } else if (sub == project) {
    params["matrix"] = matrix_path;
    set_if("--method", "method", method);
    set_if("--nodes", "nodes", nodes);
    set_if("--sidecar", "sidecar", sidecar);
  } else if (sub == identify) {
    params["g"] = g_path;
    params["h"] = h_path;
  }

  json cfg = {{"command", command}, {"params", params}, {"output", output}};
  if (seed)
    cfg["seed"] = *seed;
  return ex::run_json(cfg, std::cout, std::cerr);
}
