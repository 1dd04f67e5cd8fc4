#include "gsim/manifest.hpp"

#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <initializer_list>
#include <optional>
#include <sstream>
#include <utility>

#include "json.hpp"

namespace gsim {
namespace {

using nlohmann::json;
using nlohmann::ordered_json;

[[noreturn]] void fail(const std::string& msg) { throw ManifestError(msg); }

int line_of_offset(const std::string& text, size_t offset) {
  int line = 1;
  for (size_t i = 0; i < offset && i < text.size(); ++i) {
    if (text[i] == '\n') ++line;
  }
  return line;
}

void check_fields(const json& obj, const std::string& path,
                  std::initializer_list<const char*> allowed) {
  for (const auto& item : obj.items()) {
    bool known = false;
    for (const char* a : allowed) {
      if (item.key() == a) {
        known = true;
        break;
      }
    }
    if (!known) fail("unknown field '" + path + "." + item.key() + "'");
  }
}

const json& require(const json& obj, const std::string& path, const char* key) {
  auto it = obj.find(key);
  if (it == obj.end()) fail("missing field '" + path + "." + key + "'");
  return *it;
}

std::string get_string(const json& v, const std::string& path) {
  if (!v.is_string()) fail("field '" + path + "' must be a string");
  return v.get<std::string>();
}

long long get_int(const json& v, const std::string& path) {
  if (!v.is_number_integer()) fail("field '" + path + "' must be an integer");
  return v.get<long long>();
}

uint64_t get_seed(const json& v, const std::string& path) {
  if (!(v.is_number_unsigned() || (v.is_number_integer() && v.get<long long>() >= 0))) {
    fail("field '" + path + "' must be a nonnegative integer");
  }
  return v.get<uint64_t>();
}

double get_double(const json& v, const std::string& path) {
  if (!v.is_number()) fail("field '" + path + "' must be a number");
  return v.get<double>();
}

bool get_bool(const json& v, const std::string& path) {
  if (!v.is_boolean()) fail("field '" + path + "' must be a boolean");
  return v.get<bool>();
}

Mat get_matrix(const json& v, const std::string& path, int rows, int cols) {
  if (!v.is_array() || static_cast<int>(v.size()) != rows) {
    fail("field '" + path + "' must be an array of " + std::to_string(rows) + " rows");
  }
  Mat m(rows, cols);
  for (int i = 0; i < rows; ++i) {
    const json& jrow = v.at(static_cast<size_t>(i));
    if (!jrow.is_array() || static_cast<int>(jrow.size()) != cols) {
      fail("field '" + path + "[" + std::to_string(i) + "]' must be an array of " +
           std::to_string(cols) + " numbers");
    }
    for (int j = 0; j < cols; ++j) {
      m(i, j) = get_double(jrow.at(static_cast<size_t>(j)),
                           path + "[" + std::to_string(i) + "][" + std::to_string(j) + "]");
    }
  }
  return m;
}

// Manifest node ids are 1-based; internally they are 0-based.
std::vector<int> get_node_list(const json& v, const std::string& path, int node_count) {
  if (!v.is_array() || v.empty()) fail("field '" + path + "' must be a nonempty array");
  std::vector<int> ids;
  for (size_t i = 0; i < v.size(); ++i) {
    const long long id =
        get_int(v.at(i), path + "[" + std::to_string(i) + "]");
    if (id < 1 || id > node_count) {
      fail("field '" + path + "[" + std::to_string(i) + "]' must name a node in 1.." +
           std::to_string(node_count));
    }
    ids.push_back(static_cast<int>(id - 1));
  }
  return ids;
}

MarginalFamily parse_family(const json& v, const std::string& path) {
  if (!v.is_object()) fail("field '" + path + "' must be an object");
  const std::string tag = get_string(require(v, path, "tag"), path + ".tag");
  try {
    if (tag == "two-point-asymmetric") {
      check_fields(v, path, {"tag", "p"});
      if (v.contains("p")) {
        return MarginalFamily::two_point_asymmetric(get_double(v.at("p"), path + ".p"));
      }
      return MarginalFamily::parse(tag);
    }
    if (tag == "mixture-of-gaussians") {
      check_fields(v, path, {"tag", "components"});
      if (!v.contains("components")) return MarginalFamily::parse(tag);
      const json& comps = v.at("components");
      if (!comps.is_array() || comps.empty()) {
        fail("field '" + path + ".components' must be a nonempty array");
      }
      std::vector<MixtureComponent> parsed;
      for (size_t i = 0; i < comps.size(); ++i) {
        const std::string cpath = path + ".components[" + std::to_string(i) + "]";
        const json& c = comps.at(i);
        if (!c.is_object()) fail("field '" + cpath + "' must be an object");
        check_fields(c, cpath, {"weight", "mean", "sigma"});
        parsed.push_back({get_double(require(c, cpath, "weight"), cpath + ".weight"),
                          get_double(require(c, cpath, "mean"), cpath + ".mean"),
                          get_double(require(c, cpath, "sigma"), cpath + ".sigma")});
      }
      return MarginalFamily::mixture_of_gaussians(std::move(parsed));
    }
    check_fields(v, path, {"tag"});
    return MarginalFamily::parse(tag);
  } catch (const InvalidInput& e) {
    fail("field '" + path + "': " + e.what());
  }
}

SchemePtr build_scheme(const std::string& name, const json& params) {
  auto num = [&params](const char* key, double def) {
    return params.contains(key) ? get_double(params.at(key), std::string("scheme.params.") + key)
                                : def;
  };
  auto integer = [&params](const char* key, long long def) {
    return params.contains(key) ? get_int(params.at(key), std::string("scheme.params.") + key)
                                : def;
  };
  try {
    if (name == "uncoded_lmmse") {
      check_fields(params, "scheme.params", {"power", "source_variance", "noise_variance"});
      return baseline_uncoded_lmmse(num("power", 1.0), num("source_variance", 1.0),
                                    num("noise_variance", 1.0));
    }
    if (name == "sign_bpsk") {
      check_fields(params, "scheme.params", {"power", "noise_variance", "source_variance"});
      return baseline_sign_bpsk(num("power", 1.0), num("noise_variance", 1.0),
                                num("source_variance", 1.0));
    }
    if (name == "scalar_quantizer") {
      check_fields(params, "scheme.params", {"rate_bits", "design_variance", "loading_factor"});
      return baseline_scalar_quantizer(static_cast<int>(integer("rate_bits", 3)),
                                       num("design_variance", 1.0), num("loading_factor", 4.0));
    }
    if (name == "pass_through") {
      check_fields(params, "scheme.params", {});
      return baseline_pass_through();
    }
  } catch (const InvalidInput& e) {
    fail(std::string("scheme.params: ") + e.what());
  }
  fail("unknown scheme '" + name + "' (run `gsim list` for the inventory)");
}

Experiment build_experiment(const json& j, const std::string& text) {
  if (!j.is_object()) fail("manifest root must be an object");
  check_fields(j, "manifest",
               {"experiment", "source", "network", "scheme", "wrappers", "converter", "b_sweep",
                "trials", "seed", "output"});

  const std::string name = get_string(require(j, "manifest", "experiment"), "experiment");
  if (name.empty()) fail("field 'experiment' must be nonempty");
  for (char c : name) {
    const bool ok = (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || (c >= '0' && c <= '9') ||
                    c == '_' || c == '-' || c == '.';
    if (!ok) fail("field 'experiment' may only contain letters, digits, '_', '-', '.'");
  }

  // Source model.
  const json& jsrc = require(j, "manifest", "source");
  if (!jsrc.is_object()) fail("field 'source' must be an object");
  check_fields(jsrc, "source", {"k", "covariance", "family"});
  const long long k = get_int(require(jsrc, "source", "k"), "source.k");
  if (k < 1 || k > 64) fail("field 'source.k' must be in 1..64");
  const Mat source_cov = get_matrix(require(jsrc, "source", "covariance"), "source.covariance",
                                    static_cast<int>(k), static_cast<int>(k));
  const MarginalFamily source_family = parse_family(require(jsrc, "source", "family"), "source.family");
  std::optional<CovarianceSpec> source_spec;
  try {
    source_spec.emplace(source_cov);
  } catch (const InvalidInput& e) {
    fail(std::string("field 'source.covariance': ") + e.what());
  }

  // Network.
  const json& jnet = require(j, "manifest", "network");
  if (!jnet.is_object()) fail("field 'network' must be an object");
  check_fields(jnet, "network", {"nodes", "sources", "destinations", "form"});
  const long long nodes = get_int(require(jnet, "network", "nodes"), "network.nodes");
  if (nodes < 1 || nodes > 256) fail("field 'network.nodes' must be in 1..256");
  const std::vector<int> src_nodes =
      get_node_list(require(jnet, "network", "sources"), "network.sources", static_cast<int>(nodes));
  const std::vector<int> dst_nodes = get_node_list(require(jnet, "network", "destinations"),
                                                   "network.destinations", static_cast<int>(nodes));
  std::optional<Topology> topo;
  try {
    topo.emplace(static_cast<int>(nodes), src_nodes, dst_nodes);
  } catch (const InvalidInput& e) {
    fail(std::string("network: ") + e.what());
  }
  if (topo->pair_count() != static_cast<int>(k)) {
    fail("source.k (" + std::to_string(k) + ") must equal the number of source/destination pairs (" +
         std::to_string(topo->pair_count()) + ")");
  }

  const json& jform = require(jnet, "network", "form");
  if (!jform.is_object()) fail("field 'network.form' must be an object");
  const std::string form_type = get_string(require(jform, "network.form", "type"), "network.form.type");
  std::optional<NetworkModel> model;
  try {
    if (form_type == "additive") {
      check_fields(jform, "network.form", {"type", "h", "noise"});
      const Mat h = get_matrix(require(jform, "network.form", "h"), "network.form.h",
                               static_cast<int>(nodes), static_cast<int>(nodes));
      const json& jnoise = require(jform, "network.form", "noise");
      if (!jnoise.is_object()) fail("field 'network.form.noise' must be an object");
      check_fields(jnoise, "network.form.noise", {"covariance", "family"});
      const Mat noise_cov =
          get_matrix(require(jnoise, "network.form.noise", "covariance"),
                     "network.form.noise.covariance", static_cast<int>(nodes), static_cast<int>(nodes));
      const MarginalFamily noise_family =
          parse_family(require(jnoise, "network.form.noise", "family"), "network.form.noise.family");
      model.emplace(
          NetworkModel::additive(*topo, h, CovarianceSpec(noise_cov), noise_family));
    } else if (form_type == "bitpipe") {
      check_fields(jform, "network.form", {"type", "links", "rate_bits", "range"});
      const json& jlinks = require(jform, "network.form", "links");
      if (!jlinks.is_array() || jlinks.empty()) {
        fail("field 'network.form.links' must be a nonempty array of [from, to] pairs");
      }
      std::vector<std::pair<int, int>> links;
      for (size_t i = 0; i < jlinks.size(); ++i) {
        const std::string lpath = "network.form.links[" + std::to_string(i) + "]";
        const json& l = jlinks.at(i);
        if (!l.is_array() || l.size() != 2) fail("field '" + lpath + "' must be a [from, to] pair");
        const long long from = get_int(l.at(0), lpath + "[0]");
        const long long to = get_int(l.at(1), lpath + "[1]");
        if (from < 1 || from > nodes || to < 1 || to > nodes) {
          fail("field '" + lpath + "' must name nodes in 1.." + std::to_string(nodes));
        }
        links.emplace_back(static_cast<int>(from - 1), static_cast<int>(to - 1));
      }
      const long long rate = get_int(require(jform, "network.form", "rate_bits"),
                                     "network.form.rate_bits");
      const double range = get_double(require(jform, "network.form", "range"), "network.form.range");
      model.emplace(NetworkModel::bit_pipe(*topo, links, static_cast<int>(rate), range));
    } else {
      fail("field 'network.form.type' must be \"additive\" or \"bitpipe\"");
    }
  } catch (const InvalidInput& e) {
    fail(std::string("network.form: ") + e.what());
  }

  // Scheme and wrappers.
  const json& jscheme = require(j, "manifest", "scheme");
  if (!jscheme.is_object()) fail("field 'scheme' must be an object");
  check_fields(jscheme, "scheme", {"name", "params"});
  const std::string scheme_name = get_string(require(jscheme, "scheme", "name"), "scheme.name");
  json params = json::object();
  if (jscheme.contains("params")) {
    params = jscheme.at("params");
    if (!params.is_object()) fail("field 'scheme.params' must be an object");
  }
  SchemePtr scheme = build_scheme(scheme_name, params);

  if (j.contains("wrappers")) {
    const json& jw = j.at("wrappers");
    if (!jw.is_object()) fail("field 'wrappers' must be an object");
    check_fields(jw, "wrappers", {"clip", "encoding_precision", "reading_precision"});
    try {
      // Innermost to outermost: encoding precision, reading precision, clip.
      if (jw.contains("encoding_precision")) {
        const json& w = jw.at("encoding_precision");
        if (!w.is_object()) fail("field 'wrappers.encoding_precision' must be an object");
        check_fields(w, "wrappers.encoding_precision", {"enabled", "rho"});
        if (get_bool(require(w, "wrappers.encoding_precision", "enabled"),
                     "wrappers.encoding_precision.enabled")) {
          const long long rho = get_int(require(w, "wrappers.encoding_precision", "rho"),
                                        "wrappers.encoding_precision.rho");
          scheme = limit_encoding_precision(scheme, static_cast<int>(rho));
        }
      }
      if (jw.contains("reading_precision")) {
        const json& w = jw.at("reading_precision");
        if (!w.is_object()) fail("field 'wrappers.reading_precision' must be an object");
        check_fields(w, "wrappers.reading_precision", {"enabled", "rho", "dithered"});
        if (get_bool(require(w, "wrappers.reading_precision", "enabled"),
                     "wrappers.reading_precision.enabled")) {
          const long long rho = get_int(require(w, "wrappers.reading_precision", "rho"),
                                        "wrappers.reading_precision.rho");
          const bool dithered =
              w.contains("dithered") &&
              get_bool(w.at("dithered"), "wrappers.reading_precision.dithered");
          scheme = limit_reading_precision(scheme, static_cast<int>(rho), dithered);
        }
      }
      if (jw.contains("clip")) {
        const json& w = jw.at("clip");
        if (!w.is_object()) fail("field 'wrappers.clip' must be an object");
        check_fields(w, "wrappers.clip", {"enabled", "bound"});
        if (get_bool(require(w, "wrappers.clip", "enabled"), "wrappers.clip.enabled")) {
          scheme = clip_outputs(scheme, get_double(require(w, "wrappers.clip", "bound"),
                                                   "wrappers.clip.bound"));
        }
      }
    } catch (const InvalidInput& e) {
      fail(std::string("wrappers: ") + e.what());
    }
  }

  // Converter and sweep.
  const std::string conv = get_string(require(j, "manifest", "converter"), "converter");
  ConverterKind kind;
  if (conv == "none") {
    kind = ConverterKind::kNone;
  } else if (conv == "source") {
    kind = ConverterKind::kSource;
  } else if (conv == "noise") {
    kind = ConverterKind::kNoise;
  } else {
    fail("field 'converter' must be \"none\", \"source\", or \"noise\"");
  }
  if (kind == ConverterKind::kNoise && !model->is_additive()) {
    fail("converter \"noise\" requires an additive network form");
  }

  std::vector<int> b_list;
  if (j.contains("b_sweep")) {
    const json& jb = j.at("b_sweep");
    if (!jb.is_array()) fail("field 'b_sweep' must be an array of even integers");
    int prev = 0;
    for (size_t i = 0; i < jb.size(); ++i) {
      const std::string bpath = "b_sweep[" + std::to_string(i) + "]";
      const long long b = get_int(jb.at(i), bpath);
      if (b < 2 || b % 2 != 0) {
        fail("field '" + bpath + "' is " + std::to_string(b) +
             ": every block size must be even and at least 2");
      }
      if (b > 1 << 20) fail("field '" + bpath + "' is too large");
      if (b <= prev) fail("field 'b_sweep' must be strictly ascending");
      prev = static_cast<int>(b);
      b_list.push_back(static_cast<int>(b));
    }
  }
  if (kind == ConverterKind::kNone && !b_list.empty()) {
    fail("field 'b_sweep' must be empty when converter is \"none\"");
  }
  if (kind != ConverterKind::kNone && b_list.empty()) {
    fail("field 'b_sweep' must be a nonempty list of even block sizes when a converter is selected");
  }

  const long long trials = get_int(require(j, "manifest", "trials"), "trials");
  if (trials < 1 || trials > 1000000000LL) fail("field 'trials' must be in 1..1e9");
  const uint64_t seed = get_seed(require(j, "manifest", "seed"), "seed");

  const json& jout = require(j, "manifest", "output");
  if (!jout.is_object()) fail("field 'output' must be an object");
  check_fields(jout, "output", {"csv", "json"});
  const std::string csv_path = get_string(require(jout, "output", "csv"), "output.csv");
  const std::string json_path = get_string(require(jout, "output", "json"), "output.json");
  if (csv_path.empty() || json_path.empty()) fail("output paths must be nonempty");

  SweepRequest sweep;
  sweep.converter = kind;
  sweep.b_list = std::move(b_list);
  sweep.trials = trials;
  sweep.seed = seed;

  return Experiment{name,  std::move(*model), std::move(scheme), SourceSpec{*source_spec, source_family},
                    sweep, csv_path,          json_path,         text};
}

std::string fmt_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

ordered_json mat_to_json(const Mat& m) {
  ordered_json rows = ordered_json::array();
  for (int i = 0; i < m.rows; ++i) {
    ordered_json row = ordered_json::array();
    for (int j = 0; j < m.cols; ++j) row.push_back(m(i, j));
    rows.push_back(std::move(row));
  }
  return rows;
}

ordered_json probe_to_json(const TransformProbe& probe) {
  ordered_json out;
  out["b"] = probe.b;
  out["samples"] = probe.samples;
  ordered_json rows = ordered_json::array();
  for (const TransformProbeRow& row : probe.rows) {
    ordered_json jr;
    jr["l"] = row.l;
    jr["covariance"] = mat_to_json(row.covariance);
    jr["covariance_stderr"] = mat_to_json(row.covariance_stderr);
    jr["ks"] = row.ks;
    jr["skewness"] = row.skewness;
    jr["excess_kurtosis"] = row.excess_kurtosis;
    jr["lag1_autocorr"] = row.lag1_autocorr;
    rows.push_back(std::move(jr));
  }
  out["rows"] = std::move(rows);
  return out;
}

}  // namespace

Experiment parse_experiment(const std::string& text, const std::string& origin) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    fail("manifest parse error in " + origin + " at line " +
         std::to_string(line_of_offset(text, e.byte)) + ": " + e.what());
  }
  try {
    return build_experiment(j, text);
  } catch (const ManifestError&) {
    throw;
  } catch (const std::exception& e) {
    fail("invalid manifest " + origin + ": " + e.what());
  }
}

Experiment load_experiment(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail("cannot read manifest '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_experiment(buf.str(), path);
}

RunOutputs run_experiment(const Experiment& experiment, const RunOverrides& overrides) {
  SweepRequest sweep = experiment.sweep;
  if (overrides.trials) {
    if (*overrides.trials < 1) throw InvalidInput("trial override must be positive");
    sweep.trials = *overrides.trials;
  }
  if (overrides.seed) sweep.seed = *overrides.seed;

  namespace fs = std::filesystem;
  const fs::path out_dir = overrides.out_dir ? fs::path(*overrides.out_dir) : fs::path(".");
  const fs::path csv_path = out_dir / experiment.csv_path;
  const fs::path json_path = out_dir / experiment.json_path;
  fs::create_directories(csv_path.parent_path().empty() ? out_dir : csv_path.parent_path());
  fs::create_directories(json_path.parent_path().empty() ? out_dir : json_path.parent_path());

  const auto t0 = std::chrono::steady_clock::now();
  std::vector<SweepRow> rows =
      convergence_sweep(experiment.model, experiment.scheme, experiment.source, sweep);
  const double wall =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();

  const std::string csv = render_csv(experiment.name, rows, sweep.seed);

  ordered_json bundle;
  bundle["experiment"] = experiment.name;
  bundle["manifest"] = experiment.manifest_text;
  bundle["seed"] = sweep.seed;
  bundle["trials"] = sweep.trials;
  ordered_json jrows = ordered_json::array();
  for (const SweepRow& row : rows) {
    ordered_json jr;
    jr["b"] = row.b;
    ordered_json dests = ordered_json::array();
    for (size_t m = 0; m < row.report.per_destination.size(); ++m) {
      const DestinationDistortion& d = row.report.per_destination[m];
      ordered_json jd;
      jd["destination"] = m + 1;
      jd["trials"] = d.trials;
      jd["mse"] = d.mse;
      jd["stderr"] = d.stderr_of_mean;
      jd["ci95"] = d.ci95;
      dests.push_back(std::move(jd));
    }
    jr["destinations"] = std::move(dests);
    ordered_json jdiag;
    jdiag["samples"] = row.diagnostics.samples;
    jdiag["coordinate"] = row.diagnostics.coordinate;
    jdiag["ks"] = row.diagnostics.ks;
    jdiag["skew"] = row.diagnostics.skewness;
    jdiag["exkurt"] = row.diagnostics.excess_kurtosis;
    jr["diagnostics"] = std::move(jdiag);
    if (row.effective_noise) jr["effective_noise"] = probe_to_json(*row.effective_noise);
    jrows.push_back(std::move(jr));
  }
  bundle["rows"] = std::move(jrows);
  ordered_json jrng;
  jrng["generator"] = "splitmix64";
  jrng["stream_layout"] =
      "stream id = (role << 40) | index; roles: source=1, noise=2, dither=3, diagnostics=4";
  bundle["rng"] = std::move(jrng);
  bundle["wall_clock_seconds"] = wall;

  {
    std::ofstream out(csv_path, std::ios::binary);
    if (!out) throw InvalidInput("cannot write '" + csv_path.string() + "'");
    out << csv;
  }
  {
    std::ofstream out(json_path, std::ios::binary);
    if (!out) throw InvalidInput("cannot write '" + json_path.string() + "'");
    out << bundle.dump(2) << "\n";
  }
  if (overrides.verbosity > 0) {
    std::printf("experiment %s: %zu sweep rows, %lld trials, seed %llu\n", experiment.name.c_str(),
                rows.size(), static_cast<long long>(sweep.trials),
                static_cast<unsigned long long>(sweep.seed));
    for (const SweepRow& row : rows) {
      for (size_t m = 0; m < row.report.per_destination.size(); ++m) {
        const DestinationDistortion& d = row.report.per_destination[m];
        std::printf("  b=%-5d dest=%zu mse=%.6g +- %.2g (ks=%.4f)\n", row.b, m + 1, d.mse, d.ci95,
                    row.diagnostics.ks);
      }
    }
    std::printf("wrote %s and %s (%.2fs)\n", csv_path.string().c_str(),
                json_path.string().c_str(), wall);
  }
  return RunOutputs{csv_path.string(), json_path.string(), std::move(rows)};
}

RunOutputs run_manifest(const std::string& path, const RunOverrides& overrides) {
  return run_experiment(load_experiment(path), overrides);
}

std::string render_csv(const std::string& experiment_name, const std::vector<SweepRow>& rows,
                       uint64_t seed) {
  std::string out = "experiment,b,destination,trials,mse,stderr,ci95,ks,skew,exkurt,seed\n";
  for (const SweepRow& row : rows) {
    for (size_t m = 0; m < row.report.per_destination.size(); ++m) {
      const DestinationDistortion& d = row.report.per_destination[m];
      out += experiment_name;
      out += ',';
      out += std::to_string(row.b);
      out += ',';
      out += std::to_string(m + 1);
      out += ',';
      out += std::to_string(d.trials);
      out += ',';
      out += fmt_double(d.mse);
      out += ',';
      out += fmt_double(d.stderr_of_mean);
      out += ',';
      out += fmt_double(d.ci95);
      out += ',';
      out += fmt_double(row.diagnostics.ks);
      out += ',';
      out += fmt_double(row.diagnostics.skewness);
      out += ',';
      out += fmt_double(row.diagnostics.excess_kurtosis);
      out += ',';
      out += std::to_string(seed);
      out += '\n';
    }
  }
  return out;
}

std::string list_components() {
  std::string out;
  out += "converters:\n  noise\n  none\n  source\n";
  out += "families:\n";
  for (const std::string& tag : MarginalFamily::known_tags()) out += "  " + tag + "\n";
  out += "network forms:\n  additive\n  bitpipe\n";
  out += "schemes:\n  pass_through\n  scalar_quantizer\n  sign_bpsk\n  uncoded_lmmse\n";
  out += "wrappers:\n  clip\n  encoding_precision\n  reading_precision\n";
  return out;
}

}  // namespace gsim
