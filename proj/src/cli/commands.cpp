#include <CLI11.hpp>
#include <cmath>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>

#include "coherence/cli.hpp"
#include "coherence/error.hpp"
#include "coherence/fock.hpp"
#include "coherence/gaussian.hpp"
#include "coherence/measures.hpp"
#include "coherence/optimize.hpp"
#include "coherence/states.hpp"

namespace coherence::cli {

namespace {

using measures::LogBase;

states::TruncationPolicy policy_of(const RunConfig& config) {
  states::TruncationPolicy p;
  p.tol = config.tol;
  return p;
}

double squeeze_for_mean(double nbar) { return std::asinh(std::sqrt(nbar)); }

// Lookup helper over parsed key=value parameters; unknown keys are rejected.
class Params {
public:
  Params(const StateSpec& spec, std::initializer_list<std::string_view> allowed) {
    for (const auto& p : spec.params) {
      bool ok = false;
      for (auto a : allowed) ok = ok || a == p.key;
      if (!ok)
        fail(ErrorKind::usage, "unknown parameter '" + p.key + "' for '" + spec.name +
                                   "' (at position " + std::to_string(p.position) + ")");
      values_.emplace(p.key, &p);
    }
  }

  bool has(const std::string& key) const { return values_.count(key) != 0; }

  double real(const std::string& key, std::optional<double> fallback = std::nullopt) const {
    const auto it = values_.find(key);
    if (it == values_.end()) {
      if (fallback) return *fallback;
      fail(ErrorKind::usage, "missing parameter '" + key + "'");
    }
    const auto z = complex_value(*it->second);
    if (z.imag() != 0.0)
      fail(ErrorKind::usage, "parameter '" + key + "' must be real (at position " +
                                 std::to_string(it->second->position) + ")");
    return z.real();
  }

  std::complex<double> complex(const std::string& key, std::complex<double> fallback) const {
    const auto it = values_.find(key);
    return it == values_.end() ? fallback : complex_value(*it->second);
  }

private:
  static std::complex<double> complex_value(const StateSpec::Param& p) {
    try {
      return parse_complex(p.value);
    } catch (const Error&) {
      fail(ErrorKind::usage, "cannot parse value '" + p.value + "' for '" + p.key +
                                 "' (at position " + std::to_string(p.position) + ")");
    }
  }

  std::map<std::string, const StateSpec::Param*> values_;
};

std::size_t to_count(double x, const char* what) {
  if (!(x >= 0.0) || x != std::floor(x) || x > 1e9)
    fail(ErrorKind::usage, std::string(what) + " must be a nonnegative integer");
  return static_cast<std::size_t>(x);
}

double g2_from_distribution(const fock::NumberDistribution& dist) {
  const double n = fock::mean_n(dist);
  require(n > 0.0, ErrorKind::undefined_correlation, "g2_zero: mean photon number is zero");
  return (fock::second_moment(dist) - n) / (n * n);
}

void put_covariance(nlohmann::ordered_json& out, const fock::PureFockState& state) {
  const auto gamma = gaussian::covariance_matrix(state);
  out["gamma_xx"] = gamma.xx;
  out["gamma_xp"] = gamma.xp;
  out["gamma_pp"] = gamma.pp;
  out["det_gamma"] = gaussian::det_gamma(gamma);
}

void put_single_mode(nlohmann::ordered_json& out, const fock::NumberDistribution& dist,
                     const RunConfig& config, const MeasureOptions& options) {
  out["rel_ent"] = measures::shannon_entropy(dist, config.log_base);
  out["entropy_error_bar"] = measures::entropy_error_bar(dist.tail_bound(), config.log_base);
  out["tail_bound"] = dist.tail_bound();
  out["cutoff"] = dist.cutoff();
  const double n = fock::mean_n(dist);
  out["mean_n"] = n;
  out["max_rel_ent_at_mean"] = measures::max_rel_ent_coherence(n, config.log_base);
  if (options.l1) out["l1"] = measures::l1_coherence(dist);
  if (options.g2) out["g2"] = g2_from_distribution(dist);
}

}  // namespace

std::string render(const Table& table, const RunConfig& config) {
  if (config.format == Format::json) {
    nlohmann::ordered_json j;
    j["tol"] = config.tol;
    j["log_base"] = measures::to_string(config.log_base);
    j["version"] = version();
    j["columns"] = table.columns;
    auto rows = nlohmann::ordered_json::array();
    for (const auto& row : table.rows) {
      auto r = nlohmann::ordered_json::array();
      for (const auto& cell : row) std::visit([&](const auto& v) { r.push_back(v); }, cell);
      rows.push_back(std::move(r));
    }
    j["rows"] = std::move(rows);
    return j.dump(2) + "\n";
  }
  std::string out;
  for (std::size_t i = 0; i < table.columns.size(); ++i) {
    if (i) out += ',';
    out += table.columns[i];
  }
  out += '\n';
  out += config_comment(config);
  out += '\n';
  for (const auto& row : table.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (i) out += ',';
      std::visit(
          [&](const auto& v) {
            using T = std::decay_t<decltype(v)>;
            if constexpr (std::is_same_v<T, double>)
              out += format_real(v);
            else if constexpr (std::is_same_v<T, long long>)
              out += std::to_string(v);
            else
              out += v;
          },
          row[i]);
    }
    out += '\n';
  }
  return out;
}

Table fig1a(const RunConfig& config, double nbar) {
  validate(config);
  require(nbar >= 0.0 && std::isfinite(nbar), ErrorKind::usage, "--nbar must be nonnegative");
  const auto policy = policy_of(config);
  const auto p_pstd = fock::number_distribution(states::pstd(nbar, {}, policy));
  const auto p_coh = fock::number_distribution(states::coherent(std::sqrt(nbar), policy));
  const auto p_sv = states::squeezed(0.0, squeeze_for_mean(nbar), 0.0, policy);
  const std::size_t rows = std::max({p_pstd.cutoff(), p_coh.cutoff(), p_sv.cutoff()}) + 1;
  auto at = [](const fock::NumberDistribution& d, std::size_t n) {
    return n < d.probs().size() ? d.probs()[n] : 0.0;
  };
  Table t{{"n", "p_pstd", "p_coherent", "p_squeezed_vacuum"}, {}};
  for (std::size_t n = 0; n < rows; ++n)
    t.rows.push_back({static_cast<long long>(n), at(p_pstd, n), at(p_coh, n), at(p_sv, n)});
  return t;
}

Table fig1b(const RunConfig& config) {
  validate(config);
  const auto policy = policy_of(config);
  Table t{{"nbar", "c_pstd", "c_coherent", "c_squeezed_vacuum", "log_base"}, {}};
  for (double nbar : config.grid.points()) {
    const double c_pstd = measures::rel_ent_coherence(states::pstd(nbar, {}, policy), config.log_base);
    const double c_coh =
        measures::rel_ent_coherence(states::coherent(std::sqrt(nbar), policy), config.log_base);
    const double c_sv = measures::shannon_entropy(
        states::squeezed(0.0, squeeze_for_mean(nbar), 0.0, policy), config.log_base);
    t.rows.push_back({nbar, c_pstd, c_coh, c_sv, std::string(measures::to_string(config.log_base))});
  }
  return t;
}

Table fig1c(const RunConfig& config) {
  validate(config);
  const auto policy = policy_of(config);
  Table t{{"nbar", "det_pstd", "det_coherent", "det_squeezed_vacuum"}, {}};
  for (double nbar : config.grid.points()) {
    const double d_pstd = gaussian::det_gamma(gaussian::covariance_matrix(states::pstd(nbar, {}, policy)));
    const double d_coh =
        gaussian::det_gamma(gaussian::covariance_matrix(states::coherent(std::sqrt(nbar), policy)));
    const double d_sv = gaussian::det_gamma(
        gaussian::covariance_matrix(states::squeezed_vacuum(squeeze_for_mean(nbar), 0.0, policy)));
    t.rows.push_back({nbar, d_pstd, d_coh, d_sv});
  }
  return t;
}

Table fig2a(const RunConfig& config, unsigned d_max) {
  validate(config);
  require(d_max >= 1, ErrorKind::usage, "--d-max must be >= 1");
  Table t;
  t.columns.push_back("nbar_t");
  for (unsigned d = 1; d <= d_max; ++d) t.columns.push_back("c_d" + std::to_string(d));
  for (double nbar_t : config.grid.points()) {
    std::vector<Cell> row{nbar_t};
    for (unsigned d = 1; d <= d_max; ++d)
      row.emplace_back(measures::max_rel_ent_coherence_multimode(d, nbar_t, config.log_base));
    t.rows.push_back(std::move(row));
  }
  return t;
}

Table fig2b(const RunConfig& config) {
  validate(config);
  const auto policy = policy_of(config);
  Table t{{"nbar_t", "c_max2", "c_two_mode_coherent", "c_tmsv", "c_tmsv_bs"}, {}};
  for (double nbar_t : config.grid.points()) {
    const double c_max = measures::max_rel_ent_coherence_multimode(2, nbar_t, config.log_base);
    const double c_tmc = measures::rel_ent_coherence(
        states::two_mode_coherent(std::sqrt(nbar_t / 2.0), policy), config.log_base);
    const double c_tmsv = measures::rel_ent_coherence(states::tmsv(nbar_t, policy), config.log_base);
    const double c_bs =
        measures::rel_ent_coherence(states::tmsv_through_bs(nbar_t, policy), config.log_base);
    t.rows.push_back({nbar_t, c_max, c_tmc, c_tmsv, c_bs});
  }
  return t;
}

nlohmann::ordered_json measure(std::string_view state_spec, const RunConfig& config,
                               const MeasureOptions& options) {
  validate(config);
  const StateSpec spec = parse_state_spec(state_spec);
  const auto policy = policy_of(config);
  nlohmann::ordered_json out;
  out["state"] = std::string(state_spec);
  out["log_base"] = measures::to_string(config.log_base);

  if (spec.name == "pstd") {
    const Params p(spec, {"nbar", "phi"});
    const auto state = states::pstd(p.real("nbar"), {p.real("phi", 0.0)}, policy);
    put_single_mode(out, fock::number_distribution(state), config, options);
    if (options.covariance) put_covariance(out, state);
  } else if (spec.name == "coherent") {
    const Params p(spec, {"alpha"});
    const auto state = states::coherent(p.complex("alpha", 0.0), policy);
    put_single_mode(out, fock::number_distribution(state), config, options);
    if (options.covariance) put_covariance(out, state);
  } else if (spec.name == "squeezed") {
    const Params p(spec, {"alpha", "r", "nbar", "phi"});
    require(!(p.has("r") && p.has("nbar")), ErrorKind::usage, "give either r or nbar for squeezed");
    const double r = p.has("nbar") ? squeeze_for_mean(p.real("nbar")) : p.real("r");
    const auto alpha = p.complex("alpha", 0.0);
    const double phi = p.real("phi", 0.0);
    put_single_mode(out, states::squeezed(alpha, r, phi, policy), config, options);
    if (options.covariance) {
      require(alpha == std::complex<double>{}, ErrorKind::usage,
              "--covariance for squeezed states needs alpha = 0");
      put_covariance(out, states::squeezed_vacuum(r, phi, policy));
    }
  } else if (spec.name == "thermal") {
    const Params p(spec, {"nbar"});
    const auto rho = states::thermal(p.real("nbar"), policy);
    const auto dist = fock::number_distribution(rho);
    out["rel_ent"] = measures::rel_ent_coherence(rho, config.log_base);
    out["entropy_error_bar"] = measures::entropy_error_bar(rho.tail_bound(), config.log_base);
    out["tail_bound"] = rho.tail_bound();
    out["cutoff"] = rho.dimension() - 1;
    out["mean_n"] = fock::mean_n(dist);
    out["von_neumann_entropy"] = measures::von_neumann_entropy(rho, config.log_base);
    if (options.l1) out["l1"] = measures::l1_coherence(rho);
    if (options.g2) out["g2"] = g2_from_distribution(dist);
  } else if (spec.name == "tmsv" || spec.name == "tmsv_bs" || spec.name == "two_mode_coherent") {
    std::optional<fock::TwoModePureState> state;
    if (spec.name == "two_mode_coherent") {
      const Params p(spec, {"alpha"});
      state = states::two_mode_coherent(p.complex("alpha", 0.0), policy);
    } else {
      const Params p(spec, {"nbar"});
      state = spec.name == "tmsv" ? states::tmsv(p.real("nbar"), policy)
                                  : states::tmsv_through_bs(p.real("nbar"), policy);
    }
    out["rel_ent"] = measures::rel_ent_coherence(*state, config.log_base);
    out["entropy_error_bar"] = measures::entropy_error_bar(state->tail_bound(), config.log_base);
    out["tail_bound"] = state->tail_bound();
    out["total_cutoff"] = state->total_cutoff();
    out["mean_total_n"] = state->mean_total_photons();
    out["max_rel_ent_at_mean"] =
        measures::max_rel_ent_coherence_multimode(2, state->mean_total_photons(), config.log_base);
  } else if (spec.name == "multimode_max") {
    const Params p(spec, {"d", "nbar"});
    const auto d = static_cast<unsigned>(to_count(p.real("d"), "d"));
    const double nbar_t = p.real("nbar");
    const auto dist = states::multimode_max_coherent(d, nbar_t, policy);
    out["rel_ent"] = measures::shannon_entropy(dist, config.log_base);
    out["entropy_error_bar"] = measures::entropy_error_bar(dist.tail_bound(), config.log_base);
    out["tail_bound"] = dist.tail_bound();
    out["cutoff"] = dist.cutoff();
    out["mean_total_n"] = fock::mean_n(dist);
    out["max_rel_ent_closed_form"] =
        measures::max_rel_ent_coherence_multimode(d, nbar_t, config.log_base);
  } else {
    fail(ErrorKind::usage, "unknown state '" + spec.name + "' (at position 0)");
  }
  return out;
}

nlohmann::ordered_json optimize(std::string_view problem_spec, const RunConfig& config,
                                bool with_distribution) {
  validate(config);
  const StateSpec spec = parse_state_spec(problem_spec);
  optimize::OptimizationReport report{fock::NumberDistribution({1.0}, 0.0)};
  bool entropy = false;
  if (spec.name == "maxent") {
    const Params p(spec, {"nbar", "cutoff", "tol"});
    report = optimize::maximize_entropy_mean_constraint(
        p.real("nbar"), to_count(p.real("cutoff"), "cutoff"), p.real("tol", 1e-10));
    entropy = true;
  } else if (spec.name == "l1_mean") {
    const Params p(spec, {"nbar", "cutoff", "tol"});
    report = optimize::maximize_l1_mean_constraint(
        p.real("nbar"), to_count(p.real("cutoff"), "cutoff"), p.real("tol", 1e-10));
  } else if (spec.name == "l1_two_moment") {
    const Params p(spec, {"nbar", "m2", "cutoff", "tol"});
    report = optimize::maximize_l1_two_moment_constraint(
        p.real("nbar"), p.real("m2"), to_count(p.real("cutoff"), "cutoff"), p.real("tol", 1e-10));
  } else {
    fail(ErrorKind::usage, "unknown problem '" + spec.name + "' (at position 0)");
  }

  nlohmann::ordered_json out;
  out["problem"] = std::string(problem_spec);
  out["objective"] = entropy ? measures::in_base(report.objective, config.log_base) : report.objective;
  if (entropy) out["log_base"] = measures::to_string(config.log_base);
  out["normalization_residual"] = report.normalization_residual;
  out["mean_residual"] = report.mean_residual;
  if (report.second_moment_residual) out["second_moment_residual"] = *report.second_moment_residual;
  out["kkt_residual"] = report.kkt_residual;
  out["multipliers"] = report.multipliers;
  out["cutoff"] = report.cutoff;
  out["iterations"] = report.iterations;
  out["converged"] = report.converged;
  if (with_distribution) {
    const auto p = report.distribution.probs();
    out["distribution"] = std::vector<double>(p.begin(), p.end());
  }
  return out;
}

void emit(const std::string& text, const RunConfig& config, std::ostream& out) {
  if (config.output_path.empty()) {
    out << text;
    return;
  }
  std::ofstream file(config.output_path, std::ios::binary | std::ios::trunc);
  require(static_cast<bool>(file), ErrorKind::io, "cannot open '" + config.output_path + "' for writing");
  file << text;
  file.flush();
  require(static_cast<bool>(file), ErrorKind::io, "failed writing '" + config.output_path + "'");
}

int run(int argc, char** argv) {
  CLI::App app{"Coherence of bosonic states in truncated Fock spaces"};
  app.require_subcommand(1);
  app.fallthrough();
  app.set_version_flag("--version", std::string(version()));

  RunConfig config;
  std::string log_base = "natural";
  std::string grid_text;
  std::string format = "csv";
  app.add_option("--tol", config.tol, "truncation tolerance (neglected probability mass)")
      ->capture_default_str();
  app.add_option("--log-base", log_base, "entropy log base")
      ->check(CLI::IsMember({"natural", "two"}))
      ->capture_default_str();
  app.add_option("--out", config.output_path, "output file (default: stdout)");
  app.add_option("--format", format, "output format")
      ->check(CLI::IsMember({"csv", "json"}))
      ->capture_default_str();
  app.add_option("--grid", grid_text, "nbar grid start:stop:step (default 0.05:5:0.05)");

  double nbar = 1.0;
  auto* fig1a_cmd = app.add_subcommand("fig1a", "photon-number distributions at one nbar");
  fig1a_cmd->add_option("--nbar", nbar, "mean photon number")->capture_default_str();
  auto* fig1b_cmd = app.add_subcommand("fig1b", "relative entropy of coherence vs nbar");
  auto* fig1c_cmd = app.add_subcommand("fig1c", "covariance-matrix determinants vs nbar");
  unsigned d_max = 5;
  auto* fig2a_cmd = app.add_subcommand("fig2a", "maximal multi-mode coherence vs nbar_t");
  fig2a_cmd->add_option("--d-max", d_max, "largest number of modes")->capture_default_str();
  auto* fig2b_cmd = app.add_subcommand("fig2b", "two-mode state coherences vs nbar_t");

  std::string spec;
  MeasureOptions options;
  auto* measure_cmd = app.add_subcommand("measure", "measure a named state");
  measure_cmd->add_option("state", spec, "state spec, e.g. pstd:nbar=1")->required();
  measure_cmd->add_flag("--g2", options.g2, "include g2(0)");
  measure_cmd->add_flag("--l1", options.l1, "include the l1 norm of coherence");
  measure_cmd->add_flag("--covariance", options.covariance, "include the covariance matrix");

  bool with_distribution = false;
  auto* optimize_cmd = app.add_subcommand("optimize", "run a constrained maximization");
  optimize_cmd->add_option("problem", spec, "e.g. maxent:nbar=1,cutoff=200")->required();
  optimize_cmd->add_flag("--with-distribution", with_distribution, "include the maximizer");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  }

  try {
    config.log_base = measures::parse_log_base(log_base);
    config.format = format == "json" ? Format::json : Format::csv;
    if (!grid_text.empty()) config.grid = parse_grid(grid_text);
    validate(config);

    std::string text;
    if (*fig1a_cmd) text = render(fig1a(config, nbar), config);
    else if (*fig1b_cmd) text = render(fig1b(config), config);
    else if (*fig1c_cmd) text = render(fig1c(config), config);
    else if (*fig2a_cmd) text = render(fig2a(config, d_max), config);
    else if (*fig2b_cmd) text = render(fig2b(config), config);
    else if (*measure_cmd) text = measure(spec, config, options).dump(2) + "\n";
    else if (*optimize_cmd) text = optimize(spec, config, with_distribution).dump(2) + "\n";
    emit(text, config, std::cout);
  } catch (const Error& e) {
    std::cerr << e.what() << "\n";
    switch (e.kind()) {
      case ErrorKind::usage: return 2;
      case ErrorKind::io: return 3;
      default: return 4;
    }
  }
  return 0;
}

}  // namespace coherence::cli
