#include "spectraflow/experiment.hpp"

#include "spectraflow/bundle_sign.hpp"
#include "spectraflow/io.hpp"
#include "spectraflow/metric_identification.hpp"
#include "spectraflow/model_spectra.hpp"
#include "spectraflow/operator_family.hpp"
#include "spectraflow/projection.hpp"
#include "spectraflow/spectrum.hpp"

#include <array>
#include <fstream>
#include <functional>
#include <sstream>
#include <vector>

namespace spectraflow::experiment {

namespace {

using nlohmann::json;

enum class FieldType { Integer, Number, String, Boolean, Interval, FamilyRef };

struct Field {
  const char *name;
  FieldType type;
  bool required = false;
  json fallback = nullptr;                ///< default when absent (null: none)
  double min = -1e300;                    ///< numeric lower bound (inclusive)
  bool exclusive_min = false;
  std::vector<std::string> choices = {};  ///< allowed strings
};

std::vector<Field> schema(Command c) {
  using T = FieldType;
  switch (c) {
  case Command::SphereSpectrum:
    return {{"dim", T::Integer, true, nullptr, 2},
            {"levels", T::Integer, true, nullptr, 1},
            {"format", T::String, false, "csv", 0, false, {"csv", "json"}}};
  case Command::Flow:
    return {{"family", T::FamilyRef, true},
            {"samples", T::Integer, false, nullptr, 1},
            {"method", T::String, false, "both", 0, false, {"shift-align", "zero-crossing", "both"}}};
  case Command::Lasso:
    return {{"family", T::FamilyRef, true},
            {"interval", T::Interval, true},
            {"samples", T::Integer, false, nullptr, 1}};
  case Command::Align:
    return {{"u", T::String, true},
            {"v", T::String, true},
            {"max_shift", T::Integer, false, 5, 0},
            {"min_overlap", T::Integer, false, 1, 1}};
  case Command::Project:
    return {{"matrix", T::String, true},
            {"interval", T::Interval, true},
            {"method", T::String, false, "direct", 0, false, {"direct", "contour"}},
            {"nodes", T::Integer, false, 64, 8},
            {"sidecar", T::String, false}};
  case Command::KatoCheck:
    return {{"family", T::FamilyRef, true},
            {"samples", T::Integer, false, 200, 2},
            {"eps", T::Number, false, 0.5, 0, true}};
  case Command::Identify:
    return {{"g", T::String, true}, {"h", T::String, true}};
  }
  return {};
}

void check_field(const Field &f, const json &v, const std::string &ptr) {
  switch (f.type) {
  case FieldType::Integer:
    if (!v.is_number_integer())
      throw SchemaError(ptr, "expected an integer");
    if (static_cast<double>(v.get<std::int64_t>()) < f.min)
      throw SchemaError(ptr, "must be at least " + io::format_real(f.min));
    return;
  case FieldType::Number: {
    if (!v.is_number())
      throw SchemaError(ptr, "expected a number");
    const double x = v.get<double>();
    if (f.exclusive_min ? !(x > f.min) : !(x >= f.min))
      throw SchemaError(ptr, std::string("must be ") + (f.exclusive_min ? "greater than " : "at least ") +
                                 io::format_real(f.min));
    return;
  }
  case FieldType::String: {
    if (!v.is_string())
      throw SchemaError(ptr, "expected a string");
    if (f.choices.empty())
      return;
    const auto s = v.get<std::string>();
    for (const auto &c : f.choices)
      if (s == c)
        return;
    std::string list;
    for (const auto &c : f.choices)
      list += (list.empty() ? "" : ", ") + c;
    throw SchemaError(ptr, "'" + s + "' is not one of {" + list + "}");
  }
  case FieldType::Boolean:
    if (!v.is_boolean())
      throw SchemaError(ptr, "expected a boolean");
    return;
  case FieldType::Interval:
    if (!v.is_array() || v.size() != 2 || !v[0].is_number() || !v[1].is_number())
      throw SchemaError(ptr, "expected [lo, hi]");
    if (!(v[0].get<double>() < v[1].get<double>()))
      throw SchemaError(ptr, "interval must satisfy lo < hi");
    return;
  case FieldType::FamilyRef:
    if (v.is_string())
      return;
    if (!v.is_object())
      throw SchemaError(ptr, "expected a family file path or an inline family object");
    try {
      io::parse_family_config(v);
    } catch (const Error &e) {
      throw SchemaError(ptr, e.what());
    }
    return;
  }
}

// ---------------------------------------------------------------------------

struct Context {
  const ExperimentConfig &config;
  json params;
  std::uint64_t seed() const { return config.seed.value_or(0); }
};

Interval interval_of(const json &v) { return {v[0].get<double>(), v[1].get<double>()}; }

std::string interval_text(Interval iv) {
  return "[" + io::format_real(iv.lo) + ", " + io::format_real(iv.hi) + "]";
}

template <class F> auto as_schema(const std::string &ptr, F &&load) {
  try {
    return load();
  } catch (const Error &e) {
    throw SchemaError(ptr, e.what());
  }
}

struct LoadedFamily {
  family::OperatorFamily fam;
  std::optional<std::size_t> samples;
};

LoadedFamily load_family(const Context &ctx) {
  return as_schema("/params/family", [&] {
    const json &ref = ctx.params["family"];
    const auto cfg = ref.is_string() ? io::load_family_config(ref.get<std::string>())
                                     : io::parse_family_config(ref);
    return LoadedFamily{io::build_family(cfg, ctx.seed()), cfg.samples};
  });
}

std::size_t samples_for(const Context &ctx, const LoadedFamily &f, std::size_t fallback) {
  if (ctx.params.contains("samples"))
    return ctx.params["samples"].get<std::size_t>();
  return f.samples.value_or(fallback);
}

void header(std::ostream &os, const std::string &operation, const std::string &tolerances) {
  os << "# operation: " << operation << '\n' << "# tolerances: " << tolerances << '\n';
}

void sphere_spectrum(const Context &ctx, std::ostream &os) {
  const model::SphereSpectrumSpec spec{ctx.params["dim"].get<int>(), ctx.params["levels"].get<int>()};
  const auto levels = model::sphere_levels(spec);
  const auto window = model::sphere_spectrum(spec);
  const std::string op =
      "sphere-spectrum m=" + std::to_string(spec.m) + " levels=" + std::to_string(spec.levels);
  const std::string tol = "exact (dyadic eigenvalues, 64-bit integer multiplicities)";

  if (ctx.params["format"] == "json") {
    json lv = json::array();
    for (const auto &l : levels)
      lv.push_back({{"k", l.k}, {"value", l.value}, {"multiplicity", l.multiplicity}});
    const json doc = {{"operation", op},
                      {"tolerances", tol},
                      {"levels", lv},
                      {"window", {{"first", window.first}, {"values", window.values}}}};
    os << doc.dump(2) << '\n';
    return;
  }
  header(os, op, tol);
  io::write_window_csv(os, window);
}

void flow(const Context &ctx, std::ostream &os) {
  const auto loaded = load_family(ctx);
  const std::size_t samples = samples_for(ctx, loaded, 200);
  const std::string method = ctx.params["method"].get<std::string>();

  std::vector<std::pair<std::string, int>> rows;
  if (method != "zero-crossing")
    rows.emplace_back("shift-align",
                      family::spectral_flow(loaded.fam, samples, family::FlowMethod::ShiftAlign));
  if (method != "shift-align")
    rows.emplace_back("zero-crossing",
                      family::spectral_flow(loaded.fam, samples, family::FlowMethod::ZeroCrossing));
  if (rows.size() == 2 && rows[0].second != rows[1].second)
    throw Error("flow methods disagree: shift-align " + std::to_string(rows[0].second) +
                ", zero-crossing " + std::to_string(rows[1].second));

  header(os, "flow samples=" + std::to_string(samples) + " method=" + method,
         "endpoint |lambda| > 1e-9; alignment margin 1/2; branch overlap >= 0.1");
  os << "method,flow\n";
  for (const auto &[name, value] : rows)
    os << name << ',' << value << '\n';
}

void lasso(const Context &ctx, std::ostream &os) {
  const auto loaded = load_family(ctx);
  const std::size_t samples = samples_for(ctx, loaded, 64);
  const Interval iv = interval_of(ctx.params["interval"]);
  const auto cert = bundle::lasso_certificate(loaded.fam, iv, samples);

  json doc = io::certificate_json(cert);
  doc["operation"] = "lasso samples=" + std::to_string(samples) + " interval=" + interval_text(iv);
  doc["tolerances"] = "endpoint gap > 1e-8; step gap < 1; |det A| >= 0.5";
  os << doc.dump(2) << '\n';
}

void align(const Context &ctx, std::ostream &os) {
  const auto u = as_schema("/params/u", [&] { return io::load_window(ctx.params["u"]); });
  const auto v = as_schema("/params/v", [&] { return io::load_window(ctx.params["v"]); });
  const auto max_shift = ctx.params["max_shift"].get<std::int64_t>();
  const auto min_overlap = ctx.params["min_overlap"].get<std::size_t>();
  const auto r = spectrum::align(u, v, max_shift, min_overlap);

  header(os,
         "align max_shift=" + std::to_string(max_shift) +
             " min_overlap=" + std::to_string(min_overlap),
         "ties within " + io::format_real(spectrum::kDistanceTolerance));
  os << "shift,distance,overlap\n"
     << r.shift << ',' << io::format_real(r.distance) << ',' << r.overlap_count << '\n';
}

void project(const Context &ctx, std::ostream &os) {
  const Mat t = as_schema("/params/matrix", [&] { return io::load_matrix(ctx.params["matrix"]); });
  const Interval iv = interval_of(ctx.params["interval"]);
  const std::string method = ctx.params["method"].get<std::string>();
  const auto nodes = ctx.params["nodes"].get<std::size_t>();
  const auto p = method == "contour" ? projection::project_contour(t, iv, nodes)
                                     : projection::project_direct(t, iv);
  const json sidecar = io::projector_sidecar(p);

  std::string op = "project method=" + method + " interval=" + interval_text(iv);
  if (method == "contour")
    op += " nodes=" + std::to_string(nodes);
  header(os, op,
         "endpoint gap > " + io::format_real(projection::kEndpointTolerance) +
             (method == "contour" ? "; imaginary part <= 1e-8" : ""));

  std::optional<std::string> sidecar_path;
  if (ctx.params.contains("sidecar"))
    sidecar_path = ctx.params["sidecar"].get<std::string>();
  else if (ctx.config.output != "-")
    sidecar_path = ctx.config.output + ".json";
  if (sidecar_path) {
    std::ofstream side(*sidecar_path);
    if (!side)
      throw SchemaError("/params/sidecar", "cannot write '" + *sidecar_path + "'");
    side << sidecar.dump(2) << '\n';
  } else {
    os << "# sidecar: " << sidecar.dump() << '\n';
  }
  io::write_matrix_csv(os, p.p);
}

void kato_check(const Context &ctx, std::ostream &os) {
  const auto loaded = load_family(ctx);
  const auto samples = ctx.params["samples"].get<std::size_t>();
  const double eps = ctx.params["eps"].get<double>();
  const auto k = family::kato_constants(loaded.fam);
  const auto branches = family::track_branches(loaded.fam, samples);
  const auto growth = family::verify_growth_bound(branches, k);
  const auto ars = family::verify_arsinh_growth(branches, k, eps);

  const json doc = {
      {"operation", "kato-check samples=" + std::to_string(samples)},
      {"tolerances", "growth slack 1e-9; alpha grid 101 points"},
      {"alpha", k.alpha},
      {"beta", k.beta},
      {"c", k.c},
      {"r_cut", k.r_cut},
      {"c0", k.c0},
      {"c1", k.c1},
      {"c2", k.c2},
      {"eps", eps},
      {"delta", ars.delta},
      {"growth",
       {{"max_ratio", growth.max_ratio},
        {"violations", growth.violations},
        {"pairs_checked", growth.pairs_checked}}},
      {"arsinh",
       {{"max_change", ars.max_change}, {"pairs_checked", ars.pairs_checked}, {"holds", ars.holds}}},
      {"holds", growth.violations == 0 && ars.holds}};
  os << doc.dump(2) << '\n';
}

void identify(const Context &ctx, std::ostream &os) {
  const Mat g = as_schema("/params/g", [&] { return io::load_matrix(ctx.params["g"]); });
  const Mat h = as_schema("/params/h", [&] { return io::load_matrix(ctx.params["h"]); });
  const metric::MetricPair pair(g, h);
  const auto r = metric::identification_residuals(pair);

  const json doc = {{"operation", "identify n=" + std::to_string(pair.dim())},
                    {"tolerances", "SPD gate: symmetry 1e-12, eigenvalues > 1e-12"},
                    {"a", model::matrix_to_json(metric::a_map(pair))},
                    {"b", model::matrix_to_json(metric::b_map(pair))},
                    {"f", metric::volume_factor(pair)},
                    {"residuals",
                     {{"a_defining", r.a_defining},
                      {"a_self_adjoint", r.a_self_adjoint},
                      {"b_inverse_square", r.b_inverse_square},
                      {"b_self_adjoint", r.b_self_adjoint},
                      {"b_pairing", r.b_pairing},
                      {"f_inverse", r.f_inverse}}}};
  os << doc.dump(2) << '\n';
}

constexpr std::array<std::pair<Command, const char *>, 7> kNames{{
    {Command::SphereSpectrum, "sphere-spectrum"},
    {Command::Flow, "flow"},
    {Command::Lasso, "lasso"},
    {Command::Align, "align"},
    {Command::Project, "project"},
    {Command::KatoCheck, "kato-check"},
    {Command::Identify, "identify"},
}};

} // namespace

std::string to_string(Command c) {
  for (const auto &[cmd, name] : kNames)
    if (cmd == c)
      return name;
  return "unknown";
}

std::optional<Command> command_from_string(const std::string &s) {
  for (const auto &[cmd, name] : kNames)
    if (s == name)
      return cmd;
  return std::nullopt;
}

json validate_params(Command c, const json &params) {
  if (!params.is_object())
    throw SchemaError("/params", "expected an object");
  const auto fields = schema(c);
  for (const auto &[key, value] : params.items()) {
    bool known = false;
    for (const auto &f : fields)
      known = known || key == f.name;
    if (!known)
      throw SchemaError("/params/" + key, "unknown key for command '" + to_string(c) + "'");
  }
  json out = params;
  for (const auto &f : fields) {
    const std::string ptr = std::string("/params/") + f.name;
    if (!params.contains(f.name)) {
      if (f.required)
        throw SchemaError(ptr, "required");
      if (!f.fallback.is_null())
        out[f.name] = f.fallback;
      continue;
    }
    check_field(f, params[f.name], ptr);
  }
  return out;
}

ExperimentConfig parse_config(const json &j) {
  if (!j.is_object())
    throw SchemaError("", "config must be a JSON object");
  for (const auto &[key, value] : j.items())
    if (key != "command" && key != "params" && key != "seed" && key != "output")
      throw SchemaError("/" + key, "unknown key");

  if (!j.contains("command"))
    throw SchemaError("/command", "required");
  if (!j["command"].is_string())
    throw SchemaError("/command", "expected a string");
  const auto cmd = command_from_string(j["command"].get<std::string>());
  if (!cmd)
    throw SchemaError("/command", "unknown command '" + j["command"].get<std::string>() + "'");

  ExperimentConfig cfg;
  cfg.command = *cmd;
  if (j.contains("seed")) {
    const auto &seed = j["seed"];
    if (!seed.is_number_integer() || (!seed.is_number_unsigned() && seed.get<std::int64_t>() < 0))
      throw SchemaError("/seed", "expected a non-negative integer");
    cfg.seed = j["seed"].get<std::uint64_t>();
  }
  if (j.contains("output")) {
    if (!j["output"].is_string() || j["output"].get<std::string>().empty())
      throw SchemaError("/output", "expected a path or \"-\"");
    cfg.output = j["output"].get<std::string>();
  }
  cfg.params = validate_params(cfg.command, j.value("params", json::object()));
  return cfg;
}

int run(const ExperimentConfig &config, std::ostream &out, std::ostream &err) {
  std::ostringstream buffer;
  try {
    const Context ctx{config, validate_params(config.command, config.params)};
    switch (config.command) {
    case Command::SphereSpectrum: sphere_spectrum(ctx, buffer); break;
    case Command::Flow: flow(ctx, buffer); break;
    case Command::Lasso: lasso(ctx, buffer); break;
    case Command::Align: align(ctx, buffer); break;
    case Command::Project: project(ctx, buffer); break;
    case Command::KatoCheck: kato_check(ctx, buffer); break;
    case Command::Identify: identify(ctx, buffer); break;
    }
  } catch (const SchemaError &e) {
    err << "schema error at " << (e.pointer().empty() ? "/" : e.pointer()) << ": "
        << std::string(e.what()).substr(e.pointer().size() + 2) << '\n';
    return kExitSchema;
  } catch (const Error &e) {
    err << e.what() << '\n';
    return kExitRefused;
  }

  if (config.output == "-") {
    out << buffer.str();
  } else {
    std::ofstream file(config.output, std::ios::binary);
    if (!file) {
      err << "schema error at /output: cannot write '" << config.output << "'\n";
      return kExitSchema;
    }
    file << buffer.str();
  }
  return kExitOk;
}

int run_json(const json &j, std::ostream &out, std::ostream &err) {
  ExperimentConfig cfg;
  try {
    cfg = parse_config(j);
  } catch (const SchemaError &e) {
    err << "schema error at " << (e.pointer().empty() ? "/" : e.pointer()) << ": "
        << std::string(e.what()).substr(e.pointer().size() + 2) << '\n';
    return kExitSchema;
  }
  return run(cfg, out, err);
}

} // namespace spectraflow::experiment
