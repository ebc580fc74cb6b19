#include "spinstar/cli.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "spinstar/analytic.hpp"
#include "spinstar/error.hpp"
#include "spinstar/observables.hpp"
#include "spinstar/oracle.hpp"
#include "spinstar/spectral.hpp"

namespace spinstar {

namespace {

constexpr double kValidateTolerance = 1e-9;
constexpr double kSpectrumTmax = 400.0;
constexpr double kDefaultTmax = 200.0;

const std::vector<std::pair<std::string, Mode>>& mode_names() {
  static const std::vector<std::pair<std::string, Mode>> names = {
      {"dynamics", Mode::Dynamics},       {"spectrum", Mode::Spectrum},       {"fluctuation", Mode::Fluctuation},
      {"decoherence", Mode::Decoherence}, {"mutual-info", Mode::MutualInfo}, {"correlation", Mode::Correlation},
      {"validate", Mode::Validate}};
  return names;
}

[[noreturn]] void usage(const std::string& flag, const std::string& what) { raise(ErrorKind::Usage, flag + ": " + what); }

InverseTemperature parse_beta(const std::string& text, const std::string& flag) {
  if (text == "inf" || text == "INFINITE" || text == "infinite") return InverseTemperature::infinite();
  double v = 0.0;
  std::size_t used = 0;
  try {
    v = std::stod(text, &used);
  } catch (const std::exception&) {
    usage(flag, "not a number or 'inf': '" + text + "'");
  }
  if (used != text.size()) usage(flag, "not a number or 'inf': '" + text + "'");
  if (!std::isfinite(v) || v < 0.0) usage(flag, "must be >= 0 or 'inf'");
  return InverseTemperature(v);
}

std::string join_ints(const std::vector<int>& v) {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + std::to_string(v[i]);
  return s;
}

std::string join_betas(const std::vector<InverseTemperature>& v) {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + format_beta(v[i]);
  return s;
}

struct RawFlags {
  std::string mode;
  int n = 201;
  double g = 0.1;
  double omega = 1.0;
  double omega0 = 1.0;
  std::string beta = "0";
  std::string init = "up";
  bool dephased = false;
  double dt = 0.05;
  double t_max = kDefaultTmax;
  double t_min_fluct = 50.0;
  int oracle_cap = kDefaultOracleLimit;
  std::vector<int> n_list;
  std::vector<std::string> beta_list;
  double rel_threshold = 0.1;
  std::string out = "-";
  unsigned workers = 0;
};

void build_app(CLI::App& app, RawFlags& f) {
  std::vector<std::string> modes;
  for (const auto& [name, m] : mode_names()) modes.push_back(name);
  app.add_option("mode", f.mode, "Run mode")->required()->check(CLI::IsMember(modes));
  app.add_option("--n", f.n, "Number of bath spins");
  app.add_option("--g", f.g, "Coupling");
  app.add_option("--omega", f.omega, "Bath splitting");
  app.add_option("--omega0", f.omega0, "Central splitting");
  app.add_option("--beta", f.beta, "Inverse temperature, decimal or 'inf'");
  app.add_option("--init", f.init, "Central initial state: up, down, plus or a,b");
  app.add_flag("--dephased", f.dephased, "Drop the initial coherences");
  app.add_option("--dt", f.dt, "Time step");
  app.add_option("--t-max", f.t_max, "Final time (default 200, 400 for spectrum)");
  app.add_option("--t-min-fluct", f.t_min_fluct, "Start of the fluctuation window");
  app.add_option("--oracle-cap", f.oracle_cap, "Largest N for the full-space simulator");
  app.add_option("--n-list", f.n_list, "Sweep over N (fluctuation)")->delimiter(',');
  app.add_option("--beta-list", f.beta_list, "Sweep over beta (fluctuation)")->delimiter(',');
  app.add_option("--rel-threshold", f.rel_threshold, "Peak threshold relative to the largest peak");
  app.add_option("--out", f.out, "Output CSV, '-' for stdout");
  app.add_option("--workers", f.workers, "Worker threads, 0 = hardware concurrency");
  app.set_config("--config", "", "Config file (key = value), overridden by flags");
}

RunConfig finish(const RawFlags& f, bool t_max_given) {
  RunConfig c;
  for (const auto& [name, m] : mode_names()) {
    if (name == f.mode) c.mode = m;
  }
  if (f.n < 1) usage("--n", "must be >= 1");
  for (const auto& [flag, v] : {std::pair{"--g", f.g}, {"--omega", f.omega}, {"--omega0", f.omega0}}) {
    if (!std::isfinite(v)) usage(flag, "must be finite");
  }
  if (!(f.omega > 0.0)) usage("--omega", "must be > 0");
  c.params.n_spins = f.n;
  c.params.g = f.g;
  c.params.omega = f.omega;
  c.params.omega0 = f.omega0;
  c.params.beta = parse_beta(f.beta, "--beta");
  c.init = InitSpec::parse(f.init);
  c.init.dephased = f.dephased;
  if (!(f.dt > 0.0) || !std::isfinite(f.dt)) usage("--dt", "must be > 0");
  const double t_max = t_max_given ? f.t_max : (c.mode == Mode::Spectrum ? kSpectrumTmax : kDefaultTmax);
  if (!(t_max >= 0.0) || !std::isfinite(t_max)) usage("--t-max", "must be >= 0");
  c.grid = TimeGrid::up_to(t_max, f.dt);
  if (!std::isfinite(f.t_min_fluct)) usage("--t-min-fluct", "must be finite");
  c.t_min_fluct = f.t_min_fluct;
  if (f.oracle_cap < 1) usage("--oracle-cap", "must be >= 1");
  c.oracle_cap = f.oracle_cap;
  for (int n : f.n_list) {
    if (n < 1) usage("--n-list", "entries must be >= 1");
  }
  c.n_list = f.n_list;
  for (const auto& b : f.beta_list) c.beta_list.push_back(parse_beta(b, "--beta-list"));
  if (!(f.rel_threshold > 0.0 && f.rel_threshold <= 1.0)) usage("--rel-threshold", "must lie in (0, 1]");
  c.rel_threshold = f.rel_threshold;
  c.output = f.out;
  c.workers = f.workers;
  return c;
}

RunConfig parse_args(std::vector<std::string> args) {
  CLI::App app{"Central spin coupled to a spin bath", "spinstar"};
  RawFlags f;
  build_app(app, f);
  std::reverse(args.begin(), args.end());
  try {
    app.parse(args);
  } catch (const CLI::CallForHelp&) {
    raise(ErrorKind::Usage, app.help());
  } catch (const CLI::ParseError& e) {
    raise(ErrorKind::Usage, e.what());
  }
  return finish(f, app.count("--t-max") > 0);
}

std::string help_text() {
  CLI::App app{"Central spin coupled to a spin bath", "spinstar"};
  RawFlags f;
  build_app(app, f);
  return app.help();
}

void write_output(const RunConfig& config, const CsvTable& table) {
  if (config.output == "-") {
    write_csv(std::cout, table);
    std::cout.flush();
    if (!std::cout) raise(ErrorKind::Io, "failed writing to stdout");
    return;
  }
  std::ofstream out(config.output, std::ios::binary);
  if (!out) raise(ErrorKind::Io, "cannot open '" + config.output + "' for writing");
  write_csv(out, table);
  out.close();
  if (!out) raise(ErrorKind::Io, "failed writing '" + config.output + "'");
}

CsvTable table_for(const RunConfig& config, std::vector<std::string> columns) {
  CsvTable t;
  t.metadata = config.metadata();
  t.columns = std::move(columns);
  return t;
}

TrajectoryResult block_run(const RunConfig& config, const ModelParams& params, bool entropies) {
  TrajectoryOptions opt;
  opt.want_entropies = entropies;
  opt.workers = config.workers;
  return run_trajectory(params, config.init.state(), config.grid, opt);
}

int run_dynamics(const RunConfig& config) {
  const auto traj = block_run(config, config.params, false);
  auto table = table_for(config, {"t", "P", "sx", "sy", "sz"});
  for (int k = 0; k < config.grid.n_steps; ++k) {
    const auto& st = traj.central_states[static_cast<std::size_t>(k)];
    const auto b = bloch_vector(st);
    table.rows.push_back({config.grid.time(k), probability_up(st), b.x, b.y, b.z});
  }
  write_output(config, table);
  return kExitOk;
}

int run_spectrum(const RunConfig& config, std::ostream& log) {
  const auto traj = block_run(config, config.params, false);
  const auto spec = power_spectrum(probability_series(traj));
  auto table = table_for(config, {"omega", "amplitude"});
  for (std::size_t k = 0; k < spec.amplitudes.size(); ++k) {
    table.rows.push_back({spec.angular_frequencies[k], spec.amplitudes[k]});
  }
  write_output(config, table);
  log << "normalization: " << spec.normalization() << '\n';
  const auto peaks = find_peaks(spec, config.rel_threshold);
  log << "peaks (rel_threshold " << format_double(config.rel_threshold) << "): " << peaks.size() << '\n';
  for (const auto& p : peaks) log << "  omega = " << format_double(p.frequency) << "  amplitude = " << format_double(p.amplitude) << '\n';
  return kExitOk;
}

int run_fluctuation(const RunConfig& config) {
  const std::vector<int> ns = config.n_list.empty() ? std::vector<int>{config.params.n_spins} : config.n_list;
  const std::vector<InverseTemperature> betas =
      config.beta_list.empty() ? std::vector<InverseTemperature>{config.params.beta} : config.beta_list;
  auto table = table_for(config, {"n", "beta", "deltaP"});
  for (int n : ns) {
    for (const auto& beta : betas) {
      ModelParams p = config.params;
      p.n_spins = n;
      p.beta = beta;
      const auto traj = block_run(config, p, false);
      table.rows.push_back({static_cast<double>(n), beta.value(), fluctuation(probability_series(traj), config.t_min_fluct)});
    }
  }
  write_output(config, table);
  return kExitOk;
}

int run_decoherence(const RunConfig& config) {
  const auto traj = block_run(config, config.params, false);
  const auto ratio = coherence_ratio(coherence_series(traj));
  auto table = table_for(config, {"t", "reL", "imL", "absL"});
  for (int k = 0; k < config.grid.n_steps; ++k) {
    const cplx l = ratio.values[static_cast<std::size_t>(k)];
    table.rows.push_back({config.grid.time(k), l.real(), l.imag(), std::abs(l)});
  }
  write_output(config, table);
  return kExitOk;
}

int run_mutual_info(const RunConfig& config) {
  const auto traj = block_run(config, config.params, true);
  const auto mi = mutual_entropy_series(traj);
  const auto& e = *traj.entropies;
  auto table = table_for(config, {"t", "I_bits", "S_s", "S_b", "S_sb"});
  for (int k = 0; k < config.grid.n_steps; ++k) {
    const auto i = static_cast<std::size_t>(k);
    table.rows.push_back({config.grid.time(k), mi.values[i], e.central[i], e.bath[i], e.global[i]});
  }
  write_output(config, table);
  return kExitOk;
}

int run_correlation(const RunConfig& config, std::ostream& log) {
  auto table = table_for(config, {"dt", "re", "im", "abs"});
  for (int k = 0; k < config.grid.n_steps; ++k) {
    const auto s = bath_correlation(config.params, config.grid.time(k));
    table.rows.push_back({s.dt, s.value.real(), s.value.imag(), std::abs(s.value)});
  }
  write_output(config, table);
  if (config.params.n_spins <= config.oracle_cap && !config.params.beta.is_infinite()) {
    std::vector<double> dts;
    const int samples = std::min(config.grid.n_steps, 64);
    for (int i = 0; i < samples; ++i) {
      dts.push_back(samples > 1 ? config.grid.t_max() * i / (samples - 1) : 0.0);
    }
    const auto r = correlation_phase_report(config.params, dts, config.oracle_cap);
    log << "phase rate, closed form: " << format_double(r.printed_rate) << '\n'
        << "phase rate, numeric:     " << format_double(r.observed_rate) << '\n'
        << "max modulus deviation:   " << format_double(r.max_modulus_deviation) << '\n'
        << "max phase deviation:     " << format_double(r.max_phase_deviation) << '\n'
        << "phases agree:            " << (r.phases_agree ? "yes" : "no") << '\n';
  } else {
    log << "phase report skipped (needs finite beta and n <= oracle cap)\n";
  }
  return kExitOk;
}

int run_validate(const RunConfig& config, std::ostream& log) {
  if (config.params.n_spins > config.oracle_cap) {
    raise(ErrorKind::ResourceLimit, "validate needs n <= oracle cap (" + std::to_string(config.oracle_cap) + ")");
  }
  const auto block = block_run(config, config.params, true);
  OracleOptions opt;
  opt.oracle_limit = config.oracle_cap;
  const auto full = run_full_trajectory(config.params, config.init.state(), config.grid, opt);
  const auto i_block = mutual_entropy_series(block);
  const auto i_full = mutual_entropy_series(full);
  auto table = table_for(config, {"t", "dP", "dC", "dI"});
  double max_p = 0.0;
  double max_c = 0.0;
  double max_i = 0.0;
  for (int k = 0; k < config.grid.n_steps; ++k) {
    const auto i = static_cast<std::size_t>(k);
    const double dp = std::abs(probability_up(block.central_states[i]) - probability_up(full.central_states[i]));
    const double dc = std::abs(coherence(block.central_states[i]) - coherence(full.central_states[i]));
    const double di = std::abs(i_block.values[i] - i_full.values[i]);
    max_p = std::max(max_p, dp);
    max_c = std::max(max_c, dc);
    max_i = std::max(max_i, di);
    table.rows.push_back({config.grid.time(k), dp, dc, di});
  }
  write_output(config, table);
  const bool ok = max_p <= kValidateTolerance && max_c <= kValidateTolerance && max_i <= kValidateTolerance;
  log << "max |dP| = " << format_double(max_p) << '\n'
      << "max |dC| = " << format_double(max_c) << '\n'
      << "max |dI| = " << format_double(max_i) << '\n'
      << (ok ? "validation passed" : "validation FAILED") << " (tolerance " << format_double(kValidateTolerance) << ")\n";
  return ok ? kExitOk : kExitValidation;
}

int exit_status(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::ResourceLimit:
      return kExitResource;
    case ErrorKind::Io:
      return kExitIo;
    default:
      return kExitUsage;
  }
}

}  // namespace

const char* to_string(Mode mode) {
  for (const auto& [name, m] : mode_names()) {
    if (m == mode) return name.c_str();
  }
  return "?";
}

InitSpec InitSpec::parse(const std::string& text) {
  InitSpec s;
  if (text == "up") return s;
  if (text == "down") {
    s.kind = Kind::Down;
    return s;
  }
  if (text == "plus") {
    s.kind = Kind::Plus;
    return s;
  }
  const auto comma = text.find(',');
  if (comma == std::string::npos) usage("--init", "expected up, down, plus or a,b; got '" + text + "'");
  s.kind = Kind::Amplitudes;
  try {
    std::size_t ua = 0;
    std::size_t ub = 0;
    const std::string ta = text.substr(0, comma);
    const std::string tb = text.substr(comma + 1);
    s.a = std::stod(ta, &ua);
    s.b = std::stod(tb, &ub);
    if (ua != ta.size() || ub != tb.size()) throw std::invalid_argument("trailing characters");
  } catch (const std::exception&) {
    usage("--init", "amplitudes are not numbers: '" + text + "'");
  }
  if (std::abs(s.a * s.a + s.b * s.b - 1.0) > 1e-10) usage("--init", "|a|^2 + |b|^2 must equal 1");
  return s;
}

std::string InitSpec::to_string() const {
  switch (kind) {
    case Kind::Up:
      return "up";
    case Kind::Down:
      return "down";
    case Kind::Plus:
      return "plus";
    case Kind::Amplitudes:
      return format_double(a) + "," + format_double(b);
  }
  return "up";
}

CentralState InitSpec::state() const {
  CentralState s;
  switch (kind) {
    case Kind::Up:
      s = CentralState::up();
      break;
    case Kind::Down:
      s = CentralState::down();
      break;
    case Kind::Plus:
      s = CentralState::plus();
      break;
    case Kind::Amplitudes:
      s = CentralState::from_amplitudes(a, b);
      break;
  }
  return dephased ? s.dephased() : s;
}

std::string format_beta(InverseTemperature beta) { return beta.is_infinite() ? "inf" : format_double(beta.value()); }

std::vector<std::pair<std::string, std::string>> RunConfig::metadata() const {
  std::vector<std::pair<std::string, std::string>> m = {
      {"version", kVersion},
      {"mode", to_string(mode)},
      {"n", std::to_string(params.n_spins)},
      {"g", format_double(params.g)},
      {"omega", format_double(params.omega)},
      {"omega0", format_double(params.omega0)},
      {"beta", format_beta(params.beta)},
      {"init", init.to_string()},
      {"dephased", init.dephased ? "true" : "false"},
      {"dt", format_double(grid.dt)},
      {"t-max", format_double(grid.t_max())},
      {"t-min-fluct", format_double(t_min_fluct)},
      {"oracle-cap", std::to_string(oracle_cap)},
      {"rel-threshold", format_double(rel_threshold)},
  };
  if (!n_list.empty()) m.emplace_back("n-list", join_ints(n_list));
  if (!beta_list.empty()) m.emplace_back("beta-list", join_betas(beta_list));
  return m;
}

RunConfig parse_config(const std::vector<std::string>& args) { return parse_args(args); }

RunConfig config_from_metadata(const CsvTable& table) {
  const std::string* mode = table.find("mode");
  if (!mode) raise(ErrorKind::InvalidInput, "preamble has no mode");
  std::vector<std::string> args{*mode};
  for (const auto& [k, v] : table.metadata) {
    if (k == "mode" || k == "version") continue;
    args.push_back("--" + k + "=" + v);
  }
  return parse_args(args);
}

int execute(const RunConfig& config, std::ostream& log) {
  switch (config.mode) {
    case Mode::Dynamics:
      return run_dynamics(config);
    case Mode::Spectrum:
      return run_spectrum(config, log);
    case Mode::Fluctuation:
      return run_fluctuation(config);
    case Mode::Decoherence:
      return run_decoherence(config);
    case Mode::MutualInfo:
      return run_mutual_info(config);
    case Mode::Correlation:
      return run_correlation(config, log);
    case Mode::Validate:
      return run_validate(config, log);
  }
  return kExitUsage;
}

int run_cli(int argc, const char* const* argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  for (const auto& a : args) {
    if (a == "--help" || a == "-h") {
      std::cout << help_text();
      return kExitOk;
    }
    if (a == "--version") {
      std::cout << kVersion << '\n';
      return kExitOk;
    }
  }
  try {
    const RunConfig config = parse_config(args);
    return execute(config, std::cerr);
  } catch (const Error& e) {
    std::cerr << "spinstar: " << e.what() << '\n';
    return exit_status(e.kind());
  } catch (const std::bad_alloc&) {
    std::cerr << "spinstar: resource-limit: out of memory\n";
    return kExitResource;
  } catch (const std::exception& e) {
    std::cerr << "spinstar: " << e.what() << '\n';
    return kExitUsage;
  }
}

}  // namespace spinstar
