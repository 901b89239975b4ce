#include "graphrd/config.hpp"

#include <algorithm>
#include <charconv>
#include <cstdlib>
#include <set>
#include <sstream>

#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>

#include "graphrd/error.hpp"
#include "graphrd/kernel_io.hpp"
#include "graphrd/output.hpp"
#include "graphrd/profiles.hpp"

namespace graphrd {

namespace pt = boost::property_tree;

std::string_view to_string(ExperimentKind kind) noexcept {
  switch (kind) {
    case ExperimentKind::DiffusionConvergence: return "diffusion_convergence";
    case ExperimentKind::RdConvergence: return "rd_convergence";
    case ExperimentKind::Lln: return "lln";
    case ExperimentKind::SingleRun: return "single_run";
  }
  return "unknown";
}

namespace {

const std::map<std::string, std::set<std::string>>& known_keys() {
  static const std::map<std::string, std::set<std::string>> keys{
      {"experiment",
       {"kind", "seed", "replicas", "threads", "output_dir", "plot_script", "paranoid"}},
      {"kernel", {"family", "c", "a", "file", "construction"}},
      {"sequence", {"n", "ell", "reference_factor"}},
      {"reaction", {"family", "r", "birth", "death"}},
      {"initial", {"profile"}},
      {"time", {"T", "dt", "outputs"}},
      {"bounds", {"p", "cut_mode", "strict", "restarts", "slack"}},
      {"lln", {"epsilon", "cap_density", "grid"}},
  };
  return keys;
}

[[noreturn]] void config_error(const std::string& key, const std::string& message) {
  fail(ErrorCode::ConfigError, key + ": " + message);
}

std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r\n");
  return std::string(s.substr(b, e - b + 1));
}

/// Drops '#' comments, which the INI reader does not know about.
std::string strip_comments(std::string_view text) {
  std::string out;
  std::istringstream in{std::string(text)};
  std::string line;
  while (std::getline(in, line)) {
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    out += line;
    out += '\n';
  }
  return out;
}

double to_real(const std::string& key, const std::string& text) {
  const std::string t = trim(text);
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), v);
  if (ec != std::errc() || ptr != t.data() + t.size() || !std::isfinite(v)) {
    config_error(key, "expected a number, got '" + t + "'");
  }
  return v;
}

std::uint64_t to_unsigned(const std::string& key, const std::string& text) {
  const std::string t = trim(text);
  std::uint64_t v = 0;
  const auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), v);
  if (ec != std::errc() || ptr != t.data() + t.size()) {
    config_error(key, "expected a nonnegative integer, got '" + t + "'");
  }
  return v;
}

bool to_bool(const std::string& key, const std::string& text) {
  const std::string t = trim(text);
  if (t == "true" || t == "1" || t == "yes" || t == "on") return true;
  if (t == "false" || t == "0" || t == "no" || t == "off") return false;
  config_error(key, "expected true or false, got '" + t + "'");
}

std::vector<std::string> split_list(const std::string& text) {
  std::vector<std::string> out;
  std::string item;
  std::istringstream in(text);
  while (std::getline(in, item, ',')) {
    item = trim(item);
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

std::string join(const std::vector<std::string>& items) {
  std::string out;
  for (std::size_t i = 0; i < items.size(); ++i) {
    if (i) out += ", ";
    out += items[i];
  }
  return out;
}

void apply_override(pt::ptree& tree, const std::string& item) {
  const auto eq = item.find('=');
  if (eq == std::string::npos) config_error(item, "override must look like section.key=value");
  const std::string path = trim(item.substr(0, eq));
  const auto dot = path.find('.');
  if (dot == std::string::npos || dot == 0 || dot + 1 == path.size()) {
    config_error(path, "override key must look like section.key");
  }
  tree.put(pt::ptree::path_type(path, '.'), trim(item.substr(eq + 1)));
}

}  // namespace

ReactionTerm ExperimentConfig::reaction() const {
  if (reaction_family == "zero") return ReactionTerm::zero();
  if (reaction_family == "linear") return ReactionTerm::linear(reaction_rate);
  if (reaction_family == "logistic") return ReactionTerm::logistic(reaction_rate);
  if (reaction_family == "allen_cahn") return ReactionTerm::allen_cahn();
  if (reaction_family == "birth_death") return ReactionTerm::birth_death(birth_family(), death_family());
  config_error("reaction.family", "unknown family '" + reaction_family + "'");
}

RateFamily ExperimentConfig::birth_family() const { return RateFamily::parse(birth); }
RateFamily ExperimentConfig::death_family() const { return RateFamily::parse(death); }

GraphonHandle ExperimentConfig::kernel() const {
  if (kernel_file) return load_graphon(*kernel_file);
  return analytic_kernel();
}

AnalyticGraphon ExperimentConfig::analytic_kernel() const {
  if (kernel_file) config_error("kernel.file", "this experiment needs an analytic kernel family");
  return AnalyticGraphon::from_params(kernel_family, kernel_params);
}

std::size_t ExperimentConfig::reference_n() const {
  return reference_factor * *std::max_element(n_values.begin(), n_values.end());
}

BoundOptions ExperimentConfig::bound_options() const {
  BoundOptions o;
  o.dt = dt;
  o.output_count = outputs;
  o.mode = cut_mode;
  o.strict = strict;
  o.heuristic_restarts = restarts;
  o.heuristic_seed = seed;
  o.slack = slack;
  return o;
}

ExperimentConfig parse_config(std::string_view text, const std::vector<std::string>& overrides) {
  pt::ptree tree;
  try {
    std::istringstream in(strip_comments(text));
    pt::ini_parser::read_ini(in, tree);
  } catch (const pt::ini_parser_error& e) {
    fail(ErrorCode::ConfigError, "line " + std::to_string(e.line()) + ": " + e.message());
  }
  for (const auto& item : overrides) apply_override(tree, item);

  for (const auto& [section, body] : tree) {
    const auto it = known_keys().find(section);
    if (it == known_keys().end()) {
      if (!body.data().empty() && body.empty()) {
        config_error(section, "key outside a section");
      }
      config_error("[" + section + "]", "unknown section");
    }
    for (const auto& [key, value] : body) {
      if (!it->second.count(key)) config_error(section + "." + key, "unknown key");
    }
  }

  auto get = [&](const std::string& key) -> std::optional<std::string> {
    if (auto v = tree.get_optional<std::string>(pt::ptree::path_type(key, '.'))) return trim(*v);
    return std::nullopt;
  };

  ExperimentConfig cfg;
  if (auto v = get("experiment.kind")) {
    if (*v == "diffusion_convergence") cfg.kind = ExperimentKind::DiffusionConvergence;
    else if (*v == "rd_convergence") cfg.kind = ExperimentKind::RdConvergence;
    else if (*v == "lln") cfg.kind = ExperimentKind::Lln;
    else if (*v == "single_run") cfg.kind = ExperimentKind::SingleRun;
    else config_error("experiment.kind", "expected diffusion_convergence, rd_convergence, lln or "
                                         "single_run, got '" + *v + "'");
  }
  if (auto v = get("experiment.seed")) cfg.seed = to_unsigned("experiment.seed", *v);
  if (auto v = get("experiment.replicas")) cfg.replicas = to_unsigned("experiment.replicas", *v);
  if (auto v = get("experiment.threads")) cfg.threads = to_unsigned("experiment.threads", *v);
  if (auto v = get("experiment.output_dir")) cfg.output_dir = *v;
  else if (auto env = output_dir_from_env()) cfg.output_dir = *env;
  if (auto v = get("experiment.plot_script")) cfg.plot_script = to_bool("experiment.plot_script", *v);
  if (auto v = get("experiment.paranoid")) cfg.paranoid = to_bool("experiment.paranoid", *v);

  if (auto v = get("kernel.file")) {
    cfg.kernel_file = std::filesystem::path(*v);
    cfg.kernel_family = "file";
    cfg.kernel_params.clear();
  }
  if (auto v = get("kernel.family")) {
    if (cfg.kernel_file) config_error("kernel.family", "give either a family or a file, not both");
    cfg.kernel_family = *v;
    cfg.kernel_params.clear();
  }
  for (const char* name : {"c", "a"}) {
    if (auto v = get(std::string("kernel.") + name)) {
      cfg.kernel_params[name] = to_real(std::string("kernel.") + name, *v);
    }
  }
  if (!cfg.kernel_file) {
    if (cfg.kernel_family == "constant" || cfg.kernel_family == "min" ||
        cfg.kernel_family == "smooth_cosine") {
      cfg.kernel_params.erase("a");
      if (!cfg.kernel_params.count("c")) cfg.kernel_params["c"] = 0.5;
    } else if (cfg.kernel_family.rfind("separable_", 0) == 0) {
      cfg.kernel_params.erase("c");
      if (!cfg.kernel_params.count("a")) cfg.kernel_params["a"] = 1.0;
    }
  }
  if (auto v = get("kernel.construction")) {
    if (*v == "quotient") cfg.construction = Construction::Quotient;
    else if (*v == "sampled") cfg.construction = Construction::Sampled;
    else config_error("kernel.construction", "expected quotient or sampled, got '" + *v + "'");
  }

  if (auto v = get("sequence.n")) {
    cfg.n_values.clear();
    for (const auto& item : split_list(*v)) {
      cfg.n_values.push_back(to_unsigned("sequence.n", item));
    }
  }
  if (auto v = get("sequence.ell")) {
    for (const auto& item : split_list(*v)) cfg.ell_values.push_back(to_real("sequence.ell", item));
  }
  if (auto v = get("sequence.reference_factor")) {
    cfg.reference_factor = to_unsigned("sequence.reference_factor", *v);
  }

  if (auto v = get("reaction.family")) cfg.reaction_family = *v;
  if (auto v = get("reaction.r")) cfg.reaction_rate = to_real("reaction.r", *v);
  if (auto v = get("reaction.birth")) cfg.birth = *v;
  if (auto v = get("reaction.death")) cfg.death = *v;

  if (auto v = get("initial.profile")) cfg.profile = *v;

  if (auto v = get("time.T")) cfg.T = to_real("time.T", *v);
  if (auto v = get("time.dt")) cfg.dt = to_real("time.dt", *v);
  if (auto v = get("time.outputs")) cfg.outputs = to_unsigned("time.outputs", *v);

  if (auto v = get("bounds.p")) {
    cfg.p_values.clear();
    for (const auto& item : split_list(*v)) {
      try {
        cfg.p_values.push_back(Exponent::parse(item));
      } catch (const Error& e) {
        config_error("bounds.p", e.what());
      }
    }
  }
  if (auto v = get("bounds.cut_mode")) {
    if (*v == "exact") cfg.cut_mode = CutNormMode::Exact;
    else if (*v == "heuristic") cfg.cut_mode = CutNormMode::Heuristic;
    else config_error("bounds.cut_mode", "expected exact or heuristic, got '" + *v + "'");
  }
  if (auto v = get("bounds.strict")) cfg.strict = to_bool("bounds.strict", *v);
  if (auto v = get("bounds.restarts")) {
    cfg.restarts = static_cast<int>(to_unsigned("bounds.restarts", *v));
  }
  if (auto v = get("bounds.slack")) cfg.slack = to_real("bounds.slack", *v);

  if (auto v = get("lln.epsilon")) cfg.epsilon = to_real("lln.epsilon", *v);
  if (auto v = get("lln.cap_density")) cfg.cap_density = to_real("lln.cap_density", *v);
  if (auto v = get("lln.grid")) cfg.grid = to_unsigned("lln.grid", *v);

  // Validation.
  if (cfg.n_values.empty()) config_error("sequence.n", "needs at least one value");
  for (std::size_t i = 0; i < cfg.n_values.size(); ++i) {
    if (cfg.n_values[i] == 0) config_error("sequence.n", "values must be positive");
    if (i > 0 && cfg.n_values[i] <= cfg.n_values[i - 1]) {
      config_error("sequence.n", "values must be strictly increasing");
    }
  }
  if (cfg.reference_factor == 0) config_error("sequence.reference_factor", "must be positive");
  if (!(cfg.T > 0.0)) config_error("time.T", "must be positive");
  if (!(cfg.dt > 0.0)) config_error("time.dt", "must be positive");
  if (cfg.outputs < 2) config_error("time.outputs", "must be at least 2");
  if (cfg.p_values.empty()) config_error("bounds.p", "needs at least one exponent");
  if (!(cfg.slack >= 0.0)) config_error("bounds.slack", "must be nonnegative");
  if (cfg.replicas == 0) config_error("experiment.replicas", "must be positive");
  if (cfg.kind == ExperimentKind::Lln) {
    if (!(cfg.epsilon > 0.0)) config_error("lln.epsilon", "must be positive");
    if (cfg.ell_values.size() != cfg.n_values.size()) {
      config_error("sequence.ell", "needs one ell per n value (" +
                                       std::to_string(cfg.n_values.size()) + " expected)");
    }
    for (std::size_t i = 0; i < cfg.ell_values.size(); ++i) {
      if (!(cfg.ell_values[i] > 0.0)) config_error("sequence.ell", "values must be positive");
      if (i > 0 && cfg.ell_values[i] < cfg.ell_values[i - 1]) {
        config_error("sequence.ell", "values must be nondecreasing");
      }
    }
    if (!(cfg.cap_density > 0.0)) config_error("lln.cap_density", "must be positive");
    if (cfg.grid < 2) config_error("lln.grid", "must be at least 2");
  }

  // Resolve every named family now so mistakes surface as config errors.
  try {
    (void)cfg.reaction();
    if (cfg.kind == ExperimentKind::Lln) {
      (void)cfg.birth_family();
      (void)cfg.death_family();
    }
    if (!cfg.kernel_file) (void)cfg.analytic_kernel();
    (void)parse_profile(cfg.profile);
  } catch (const Error& e) {
    if (e.code() == ErrorCode::ConfigError) throw;
    fail(ErrorCode::ConfigError, e.what());
  }
  if (cfg.kind == ExperimentKind::Lln && cfg.reaction_family != "birth_death") {
    config_error("reaction.family", "lln experiments need birth_death rates");
  }
  if ((cfg.kind == ExperimentKind::DiffusionConvergence ||
       cfg.kind == ExperimentKind::RdConvergence || cfg.kind == ExperimentKind::Lln) &&
      cfg.kernel_file) {
    config_error("kernel.file", std::string(to_string(cfg.kind)) +
                                    " compares against an analytic kernel; set kernel.family");
  }
  if (cfg.kind == ExperimentKind::DiffusionConvergence && cfg.reaction_family != "zero") {
    config_error("reaction.family", "diffusion_convergence runs without a reaction; use zero");
  }
  return cfg;
}

ExperimentConfig load_config(const std::filesystem::path& path,
                             const std::vector<std::string>& overrides) {
  std::string text;
  try {
    text = read_file(path);
  } catch (const Error& e) {
    fail(ErrorCode::ConfigError, std::string("cannot read config: ") + e.what());
  }
  auto cfg = parse_config(text, overrides);
  if (cfg.kernel_file && cfg.kernel_file->is_relative()) {
    cfg.kernel_file = path.parent_path() / *cfg.kernel_file;
  }
  return cfg;
}

std::string config_echo(const ExperimentConfig& cfg) {
  std::vector<std::string> ns, ells, ps;
  for (auto n : cfg.n_values) ns.push_back(std::to_string(n));
  for (auto l : cfg.ell_values) ells.push_back(format_real(l));
  for (const auto& p : cfg.p_values) ps.push_back(p.to_string());

  std::ostringstream out;
  out << "[experiment]\n"
      << "kind = " << to_string(cfg.kind) << '\n'
      << "seed = " << cfg.seed << '\n'
      << "replicas = " << cfg.replicas << '\n'
      << "plot_script = " << (cfg.plot_script ? "true" : "false") << '\n'
      << "paranoid = " << (cfg.paranoid ? "true" : "false") << "\n\n";
  out << "[kernel]\n";
  if (cfg.kernel_file) {
    out << "file = " << cfg.kernel_file->string() << '\n';
  } else {
    out << "family = " << cfg.kernel_family << '\n';
    for (const auto& [k, v] : cfg.kernel_params) out << k << " = " << format_real(v) << '\n';
  }
  out << "construction = " << (cfg.construction == Construction::Quotient ? "quotient" : "sampled")
      << "\n\n";
  out << "[sequence]\n"
      << "n = " << join(ns) << '\n';
  if (!ells.empty()) out << "ell = " << join(ells) << '\n';
  out << "reference_factor = " << cfg.reference_factor << "\n\n";
  out << "[reaction]\n"
      << "family = " << cfg.reaction_family << '\n'
      << "r = " << format_real(cfg.reaction_rate) << '\n'
      << "birth = " << cfg.birth << '\n'
      << "death = " << cfg.death << "\n\n";
  out << "[initial]\n"
      << "profile = " << cfg.profile << "\n\n";
  out << "[time]\n"
      << "T = " << format_real(cfg.T) << '\n'
      << "dt = " << format_real(cfg.dt) << '\n'
      << "outputs = " << cfg.outputs << "\n\n";
  out << "[bounds]\n"
      << "p = " << join(ps) << '\n'
      << "cut_mode = " << to_string(cfg.cut_mode) << '\n'
      << "strict = " << (cfg.strict ? "true" : "false") << '\n'
      << "restarts = " << cfg.restarts << '\n'
      << "slack = " << format_real(cfg.slack) << "\n\n";
  out << "[lln]\n"
      << "epsilon = " << format_real(cfg.epsilon) << '\n'
      << "cap_density = " << format_real(cfg.cap_density) << '\n'
      << "grid = " << cfg.grid << '\n';
  return out.str();
}

std::string config_hash(const ExperimentConfig& cfg) { return fnv1a_hex(config_echo(cfg)); }

std::optional<std::filesystem::path> output_dir_from_env() {
  if (const char* v = std::getenv("GRAPHRD_OUTPUT_DIR"); v && *v) return std::filesystem::path(v);
  return std::nullopt;
}

}  // namespace graphrd
