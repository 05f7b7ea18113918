#include "gmfg/cli/config.hpp"

#include <cmath>
#include <fstream>
#include <numeric>
#include <set>

namespace gmfg::cli {

using nlohmann::json;

ConfigError::ConfigError(std::string field, const std::string& message)
    : Error(field.empty() ? message : "field '" + field + "': " + message),
      field_(std::move(field)) {}

namespace {

// Typed access to one JSON object; remembers which keys were read so that
// unknown (usually misspelled) keys can be rejected.
class Section {
 public:
  Section(const json& obj, std::string path) : obj_(obj), path_(std::move(path)) {
    if (!obj_.is_object()) throw ConfigError(path_, "expected an object");
  }

  std::string field(const std::string& key) const { return path_.empty() ? key : path_ + "." + key; }

  const json* find(const std::string& key) {
    seen_.insert(key);
    auto it = obj_.find(key);
    return it == obj_.end() ? nullptr : &*it;
  }

  const json& require(const std::string& key) {
    const json* v = find(key);
    if (!v) throw ConfigError(field(key), "missing");
    return *v;
  }

  double number(const std::string& key, double fallback) {
    const json* v = find(key);
    if (!v) return fallback;
    if (!v->is_number()) throw ConfigError(field(key), "expected a number");
    return v->get<double>();
  }

  std::optional<double> optional_number(const std::string& key) {
    const json* v = find(key);
    if (!v || v->is_null()) return std::nullopt;
    if (!v->is_number()) throw ConfigError(field(key), "expected a number");
    return v->get<double>();
  }

  std::size_t count(const std::string& key, std::size_t fallback) {
    const json* v = find(key);
    if (!v) return fallback;
    if (!v->is_number_integer() || v->get<long long>() < 0)
      throw ConfigError(field(key), "expected a nonnegative integer");
    return v->get<std::size_t>();
  }

  std::string text(const std::string& key, const std::string& fallback) {
    const json* v = find(key);
    if (!v) return fallback;
    if (!v->is_string()) throw ConfigError(field(key), "expected a string");
    return v->get<std::string>();
  }

  std::vector<double> numbers(const std::string& key) {
    const json* v = find(key);
    if (!v) return {};
    if (!v->is_array()) throw ConfigError(field(key), "expected an array of numbers");
    std::vector<double> out;
    for (const auto& x : *v) {
      if (!x.is_number()) throw ConfigError(field(key), "expected an array of numbers");
      out.push_back(x.get<double>());
    }
    return out;
  }

  void reject_unknown() const {
    for (const auto& [key, value] : obj_.items()) {
      if (!seen_.count(key)) throw ConfigError(field(key), "unknown key");
    }
  }

 private:
  const json& obj_;
  std::string path_;
  std::set<std::string> seen_;
};

CouplingSpec parse_coupling(const json& v, const std::string& path, std::size_t n) {
  CouplingSpec spec;
  if (v.is_string()) {
    spec.type = v.get<std::string>();
  } else {
    Section s(v, path);
    spec.type = s.text("type", "zero");
    spec.kappa = s.optional_number("kappa");
    spec.eps = s.optional_number("eps");
    if (spec.type == "linear") {
      spec.values = s.numbers("a");
    } else if (spec.type == "constant") {
      if (const json* c = s.find("value"); c && c->is_number()) {
        spec.values.assign(n, c->get<double>());
      } else {
        spec.values = s.numbers("values");
      }
    }
    s.reject_unknown();
  }
  if (spec.type != "zero" && spec.type != "constant" && spec.type != "logit" &&
      spec.type != "linear") {
    throw ConfigError(path + ".type", "unknown coupling '" + spec.type + "'");
  }
  if ((spec.type == "linear" || spec.type == "constant") && spec.values.size() != n) {
    throw ConfigError(path, "expected " + std::to_string(n) + " per-node coefficients");
  }
  if (spec.type == "logit" && spec.eps && !(*spec.eps >= 0.0)) {
    throw ConfigError(path + ".eps", "must be >= 0");
  }
  return spec;
}

json coupling_json(const CouplingSpec& c) {
  json j{{"type", c.type}};
  if (c.kappa) j["kappa"] = *c.kappa;
  if (c.eps) j["eps"] = *c.eps;
  if (c.type == "linear") j["a"] = c.values;
  if (c.type == "constant") j["values"] = c.values;
  return j;
}

Coupling build_coupling(const CouplingSpec& c, const RunConfig& cfg) {
  if (c.type == "constant") return Coupling::constant(c.values);
  if (c.type == "linear") return Coupling::linear(c.values);
  if (c.type == "logit") return Coupling::logit(c.kappa.value_or(cfg.kappa), c.eps.value_or(cfg.params.eps));
  return Coupling::zero();
}

}  // namespace

RunConfig parse_config(const json& doc) {
  RunConfig c;
  Section top(doc, "");

  const double schema = top.number("schema", 1);
  if (schema != 1) throw ConfigError("schema", "unsupported schema version");

  {
    Section g(top.require("graph"), "graph");
    const json& n = g.require("n");
    if (!n.is_number_integer() || n.get<long long>() < 1)
      throw ConfigError("graph.n", "expected a positive integer");
    c.n = n.get<std::size_t>();
    if (const json* edges = g.find("edges")) {
      if (!edges->is_array()) throw ConfigError("graph.edges", "expected an array of [source, target]");
      for (std::size_t k = 0; k < edges->size(); ++k) {
        const json& e = (*edges)[k];
        const std::string where = "graph.edges[" + std::to_string(k) + "]";
        if (!e.is_array() || e.size() != 2 || !e[0].is_number_integer() || !e[1].is_number_integer())
          throw ConfigError(where, "expected [source, target]");
        const long long s = e[0].get<long long>();
        const long long t = e[1].get<long long>();
        if (s < 1 || t < 1 || s > static_cast<long long>(c.n) || t > static_cast<long long>(c.n))
          throw ConfigError(where, "node labels run from 1 to " + std::to_string(c.n));
        c.edges.emplace_back(static_cast<Node>(s - 1), static_cast<Node>(t - 1));
      }
    }
    g.reject_unknown();
    try {
      (void)Graph::build(c.n, c.edges);
    } catch (const GraphError& e) {
      throw ConfigError("graph.edges", e.what());
    }
  }

  {
    Section h(top.require("hamiltonian"), "hamiltonian");
    c.family = h.text("family", c.family);
    if (c.family != "quadratic_congestion")
      throw ConfigError("hamiltonian.family", "unknown family '" + c.family + "'");
    c.params.alpha = h.number("alpha", c.params.alpha);
    c.params.beta = h.number("beta", c.params.beta);
    c.params.eps = h.number("eps", c.params.eps);
    c.kappa = h.number("kappa", c.kappa);
    if (!(c.params.alpha >= 0.0)) throw ConfigError("hamiltonian.alpha", "must be >= 0");
    if (!(c.params.beta >= 0.0)) throw ConfigError("hamiltonian.beta", "must be >= 0");
    if (!(c.params.eps > 0.0)) throw ConfigError("hamiltonian.eps", "must be > 0");
    if (const json* f = h.find("f")) c.f = parse_coupling(*f, "hamiltonian.f", c.n);
    if (const json* g = h.find("g")) c.g = parse_coupling(*g, "hamiltonian.g", c.n);
    h.reject_unknown();
  }

  c.horizon = top.number("horizon", c.horizon);
  if (!(c.horizon > 0.0) || !std::isfinite(c.horizon)) throw ConfigError("horizon", "must be > 0");
  c.steps = top.count("steps", c.steps);
  if (c.steps < 1) throw ConfigError("steps", "must be >= 1");

  if (const json* m0 = top.find("m0"); m0 && !(m0->is_string() && m0->get<std::string>() == "uniform")) {
    if (!m0->is_array()) throw ConfigError("m0", "expected \"uniform\" or an array");
    c.m0_uniform = false;
    c.m0 = top.numbers("m0");
    if (c.m0.size() != c.n) throw ConfigError("m0", "expected " + std::to_string(c.n) + " entries");
    double sum = 0.0;
    for (double x : c.m0) {
      if (!(x >= 0.0)) throw ConfigError("m0", "entries must be nonnegative");
      sum += x;
    }
    if (std::abs(sum - 1.0) > 1e-9) throw ConfigError("m0", "entries must sum to 1");
    for (double& x : c.m0) x /= sum;
  } else {
    c.m0.assign(c.n, 1.0 / static_cast<double>(c.n));
  }

  if (const json* s = top.find("solver")) {
    Section sv(*s, "solver");
    try {
      c.solver.scheme = scheme_from_string(sv.text("scheme", to_string(c.solver.scheme)));
    } catch (const std::invalid_argument& e) {
      throw ConfigError("solver.scheme", e.what());
    }
    c.solver.omega = sv.number("omega", c.solver.omega);
    c.solver.tol = sv.number("tol", c.solver.tol);
    c.solver.max_iter = sv.count("max_iter", c.solver.max_iter);
    c.solver.stall_window = sv.count("stall_window", c.solver.stall_window);
    sv.reject_unknown();
    if (!(c.solver.omega > 0.0 && c.solver.omega <= 1.0))
      throw ConfigError("solver.omega", "must lie in (0, 1]");
    if (!(c.solver.tol > 0.0)) throw ConfigError("solver.tol", "must be > 0");
    if (c.solver.max_iter < 1) throw ConfigError("solver.max_iter", "must be >= 1");
  }

  if (const json* u = top.find("uniqueness")) {
    Section us(*u, "uniqueness");
    c.uniqueness.n_samples = us.count("n_samples", c.uniqueness.n_samples);
    c.uniqueness.n_pairs = us.count("n_pairs", c.uniqueness.n_pairs);
    c.uniqueness.psd_tol = us.number("psd_tol", c.uniqueness.psd_tol);
    c.uniqueness.mono_tol = us.number("mono_tol", c.uniqueness.mono_tol);
    c.uniqueness.q_max = us.optional_number("q_max");
    c.tol_agree = us.number("tol_agree", c.tol_agree);
    us.reject_unknown();
    if (c.uniqueness.q_max && !(*c.uniqueness.q_max > 0.0))
      throw ConfigError("uniqueness.q_max", "must be > 0");
    if (!(c.uniqueness.psd_tol >= 0.0)) throw ConfigError("uniqueness.psd_tol", "must be >= 0");
  }

  if (const json* o = top.find("oracle")) {
    Section os(*o, "oracle");
    c.oracle_samples = os.count("n_samples", c.oracle_samples);
    os.reject_unknown();
  }

  c.output = top.text("output", c.output);
  if (const json* seed = top.find("seed")) {
    if (!seed->is_number_unsigned()) throw ConfigError("seed", "expected a nonnegative integer");
    c.seed = seed->get<std::uint64_t>();
  }
  c.uniqueness.seed = c.seed;
  c.uniqueness.horizon = c.horizon;
  top.reject_unknown();

  try {
    (void)make_model(c);
  } catch (const ModelError& e) {
    throw ConfigError("hamiltonian", e.what());
  }
  return c;
}

RunConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("", "cannot open config file " + path.string());
  json doc;
  try {
    doc = json::parse(in);
  } catch (const json::parse_error& e) {
    throw ConfigError("", path.string() + ": " + e.what());
  }
  return parse_config(doc);
}

json to_json(const RunConfig& c) {
  json edges = json::array();
  for (const auto& [s, t] : c.edges) edges.push_back({s + 1, t + 1});
  json j;
  j["schema"] = c.schema;
  j["graph"] = {{"n", c.n}, {"edges", edges}};
  j["hamiltonian"] = {{"family", c.family},
                      {"alpha", c.params.alpha},
                      {"beta", c.params.beta},
                      {"eps", c.params.eps},
                      {"kappa", c.kappa},
                      {"f", coupling_json(c.f)},
                      {"g", coupling_json(c.g)}};
  j["horizon"] = c.horizon;
  j["steps"] = c.steps;
  j["m0"] = c.m0_uniform ? json("uniform") : json(c.m0);
  j["solver"] = {{"scheme", to_string(c.solver.scheme)},
                 {"omega", c.solver.omega},
                 {"tol", c.solver.tol},
                 {"max_iter", c.solver.max_iter},
                 {"stall_window", c.solver.stall_window}};
  j["uniqueness"] = {{"n_samples", c.uniqueness.n_samples},
                     {"n_pairs", c.uniqueness.n_pairs},
                     {"psd_tol", c.uniqueness.psd_tol},
                     {"mono_tol", c.uniqueness.mono_tol},
                     {"q_max", c.uniqueness.q_max ? json(*c.uniqueness.q_max) : json(nullptr)},
                     {"tol_agree", c.tol_agree}};
  j["oracle"] = {{"n_samples", c.oracle_samples}};
  j["output"] = c.output;
  j["seed"] = c.seed;
  return j;
}

std::shared_ptr<const HamiltonianModel> make_model(const RunConfig& c) {
  return std::make_shared<QuadraticCongestion>(Graph::build(c.n, c.edges), c.params,
                                               build_coupling(c.f, c), build_coupling(c.g, c));
}

MfgProblem make_problem(const RunConfig& c) {
  return MfgProblem{make_model(c), c.m0, TimeGrid(c.horizon, c.steps)};
}

SamplerConfig sampler_config(const RunConfig& c) {
  SamplerConfig s = c.uniqueness;
  s.horizon = c.horizon;
  s.seed = c.seed;
  return s;
}

}  // namespace gmfg::cli
