#include "spincorr/cli.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <numbers>
#include <ostream>
#include <sstream>
#include <string_view>
#include <utility>
#include <variant>

#include "CLI11.hpp"
#include "json.hpp"
#include "spincorr/experiment.hpp"
#include "spincorr/hidden_variable.hpp"
#include "spincorr/quantum_core.hpp"

namespace spincorr::cli {

namespace {

struct HelpRequested {
  std::string text;
};

// ---------------------------------------------------------------------------
// Report table shared by the CSV and JSON writers.

using Cell = std::variant<std::monostate, std::int64_t, std::uint64_t, double, std::string>;

struct Report {
  std::vector<std::pair<std::string, Cell>> metadata;
  std::vector<std::string> columns;
  std::vector<std::vector<Cell>> rows;
};

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string csv_cell(const Cell& c) {
  struct Visitor {
    std::string operator()(std::monostate) const { return {}; }
    std::string operator()(std::int64_t v) const { return std::to_string(v); }
    std::string operator()(std::uint64_t v) const { return std::to_string(v); }
    std::string operator()(double v) const { return format_double(v); }
    std::string operator()(const std::string& v) const { return v; }
  };
  return std::visit(Visitor{}, c);
}

nlohmann::ordered_json json_cell(const Cell& c) {
  struct Visitor {
    nlohmann::ordered_json operator()(std::monostate) const { return nullptr; }
    nlohmann::ordered_json operator()(std::int64_t v) const { return v; }
    nlohmann::ordered_json operator()(std::uint64_t v) const { return v; }
    nlohmann::ordered_json operator()(double v) const { return v; }
    nlohmann::ordered_json operator()(const std::string& v) const { return v; }
  };
  return std::visit(Visitor{}, c);
}

void write_csv(const Report& report, std::ostream& os) {
  for (const auto& [key, value] : report.metadata) os << "# " << key << '=' << csv_cell(value) << '\n';
  for (std::size_t i = 0; i < report.columns.size(); ++i) os << (i ? "," : "") << report.columns[i];
  os << '\n';
  for (const auto& row : report.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) os << (i ? "," : "") << csv_cell(row[i]);
    os << '\n';
  }
}

void write_json(const Report& report, std::ostream& os) {
  nlohmann::ordered_json doc;
  auto& meta = doc["metadata"];
  meta = nlohmann::ordered_json::object();
  for (const auto& [key, value] : report.metadata) meta[key] = json_cell(value);
  doc["columns"] = report.columns;
  auto& rows = doc["rows"];
  rows = nlohmann::ordered_json::array();
  for (const auto& row : report.rows) {
    nlohmann::ordered_json obj = nlohmann::ordered_json::object();
    for (std::size_t i = 0; i < row.size(); ++i) obj[report.columns[i]] = json_cell(row[i]);
    rows.push_back(std::move(obj));
  }
  os << doc.dump(2) << '\n';
}

// ---------------------------------------------------------------------------
// Angle handling.

double to_radians(double value, bool degrees) {
  return degrees ? value / 180.0 * std::numbers::pi : value;
}

double from_radians(double value, bool degrees) {
  return degrees ? value / std::numbers::pi * 180.0 : value;
}

// Values within roundoff of the interval ends are snapped onto them.
double checked_zenith(double radians, std::string_view what) {
  constexpr double slack = 1e-12;
  if (!std::isfinite(radians) || radians < -slack || radians > std::numbers::pi + slack) {
    throw UsageError(std::string(what) + " must lie in [0, 180] degrees / [0, pi] radians");
  }
  return std::clamp(radians, 0.0, std::numbers::pi);
}

double parse_number(const std::string& text, std::string_view what) {
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(text, &used);
  } catch (const std::exception&) {
    throw UsageError("malformed number for " + std::string(what) + ": '" + text + "'");
  }
  if (used != text.size() || !std::isfinite(v)) {
    throw UsageError("malformed number for " + std::string(what) + ": '" + text + "'");
  }
  return v;
}

BlochDirection parse_direction(const std::string& text, bool degrees, std::string_view what) {
  const auto comma = text.find(',');
  if (comma == std::string::npos || text.find(',', comma + 1) != std::string::npos) {
    throw UsageError(std::string(what) + " expects 'zenith,azimuth', got '" + text + "'");
  }
  const double zenith = to_radians(parse_number(text.substr(0, comma), what), degrees);
  const double azimuth = to_radians(parse_number(text.substr(comma + 1), what), degrees);
  if (!std::isfinite(azimuth)) throw UsageError(std::string(what) + ": non-finite azimuth");
  return {checked_zenith(zenith, what), azimuth};
}

struct SettingPair {
  BlochDirection a;
  BlochDirection b;
};

SettingPair resolve_pair(const RunConfig& cfg) {
  if (cfg.theta_ab) {
    if (cfg.a || cfg.b) throw UsageError("--theta-ab cannot be combined with --a/--b");
    const double theta = checked_zenith(to_radians(*cfg.theta_ab, cfg.degrees), "--theta-ab");
    return {BlochDirection::in_xz_plane(0.0), BlochDirection::in_xz_plane(theta)};
  }
  if (!cfg.a || !cfg.b) throw UsageError("supply --theta-ab or both --a and --b");
  return {parse_direction(*cfg.a, cfg.degrees, "--a"), parse_direction(*cfg.b, cfg.degrees, "--b")};
}

struct Grid {
  double start;
  double stop;
  double step;
};

std::vector<double> expand_grid(const RunConfig& cfg) {
  Grid g{0.0, std::numbers::pi, std::numbers::pi / 36};
  if (cfg.degrees) g = {0.0, 180.0, 5.0};
  if (cfg.grid) {
    std::vector<std::string> parts;
    std::stringstream ss(*cfg.grid);
    for (std::string part; std::getline(ss, part, ':');) parts.push_back(part);
    if (parts.size() != 3) throw UsageError("--grid expects start:stop:step");
    g = {parse_number(parts[0], "--grid"), parse_number(parts[1], "--grid"),
         parse_number(parts[2], "--grid")};
  }
  if (!(g.step > 0.0) || g.stop < g.start) throw UsageError("--grid needs step > 0 and stop >= start");
  const auto count = static_cast<std::size_t>(std::floor((g.stop - g.start) / g.step + 1e-9)) + 1;
  if (count > 1'000'000) throw UsageError("--grid has too many points");
  std::vector<double> out;
  out.reserve(count);
  for (std::size_t i = 0; i < count; ++i) out.push_back(g.start + static_cast<double>(i) * g.step);
  return out;
}

// ---------------------------------------------------------------------------
// Commands.

void add_common_metadata(Report& rep, const RunConfig& cfg) {
  rep.metadata.emplace_back("tool", std::string(kToolName) + " " + kToolVersion);
  rep.metadata.emplace_back("command", cfg.command);
  rep.metadata.emplace_back("unit", std::string(cfg.degrees ? "deg" : "rad"));
}

void add_sampling_metadata(Report& rep, const RunConfig& cfg, const std::string& model) {
  rep.metadata.emplace_back("seed", cfg.seed);
  rep.metadata.emplace_back("n", cfg.n);
  rep.metadata.emplace_back("model", model);
}

std::string direction_text(const BlochDirection& d, bool degrees) {
  return format_double(from_radians(d.theta(), degrees)) + "," +
         format_double(from_radians(d.phi(), degrees));
}

Report cmd_exact(const RunConfig& cfg) {
  const auto [a, b] = resolve_pair(cfg);
  const BlochDirection r = cfg.r ? parse_direction(*cfg.r, cfg.degrees, "--r") : a;

  Report rep;
  add_common_metadata(rep, cfg);
  rep.metadata.emplace_back("model", std::string("exact"));
  rep.metadata.emplace_back("a", direction_text(a, cfg.degrees));
  rep.metadata.emplace_back("b", direction_text(b, cfg.degrees));
  rep.metadata.emplace_back("r", direction_text(r, cfg.degrees));
  rep.columns = {"quantity", "k", "eigenvalue", "real", "imag"};

  rep.rows.push_back({std::string("C_Q"), {}, {}, correlation_exact(a, b), 0.0});
  for (const auto& ch : decompose_intermediate(a, b, r).channels) {
    rep.rows.push_back({std::string("F"), std::int64_t{ch.k}, {}, ch.weight.real(), ch.weight.imag()});
  }
  for (const auto& ch : decompose_eigenbasis(a, b).channels) {
    rep.rows.push_back({std::string("C"), std::int64_t{ch.k}, std::int64_t{*ch.eigenvalue},
                        ch.weight.real(), 0.0});
  }
  return rep;
}

Report cmd_weights(const RunConfig& cfg) {
  const auto [a, b] = resolve_pair(cfg);
  const auto breakdown = decompose_eigenbasis(a, b);
  const auto closed = partition_measures(separation_angle(a, b));

  Report rep;
  add_common_metadata(rep, cfg);
  rep.metadata.emplace_back("model", std::string("exact"));
  rep.metadata.emplace_back("theta_ab", from_radians(separation_angle(a, b), cfg.degrees));
  rep.columns = {"k", "alpha", "beta", "eigenvalue", "weight", "closed_form"};
  for (const auto& ch : breakdown.channels) {
    const auto [alpha, beta] = channel_signs(ch.k);
    const double expected = 0.5 * (*ch.eigenvalue < 0 ? closed.minus : closed.plus);
    rep.rows.push_back({std::int64_t{ch.k}, std::int64_t{alpha}, std::int64_t{beta},
                        std::int64_t{*ch.eigenvalue}, ch.weight.real(), expected});
  }
  rep.rows.push_back({std::string("total"), {}, {}, {}, breakdown.total,
                      singlet_correlation_analytic(separation_angle(a, b))});
  return rep;
}

SeriesModel series_model(const std::string& model) {
  if (model.empty() || model == "hv") return SeriesModel::hv;
  if (model == "sampler") return SeriesModel::quantum_sampler;
  throw UsageError("sample supports --model hv|sampler");
}

Report cmd_sample(const RunConfig& cfg) {
  const auto [a, b] = resolve_pair(cfg);
  const std::string model = cfg.model.empty() ? "hv" : cfg.model;
  const auto series = run_series(a, b, cfg.n, series_model(model), cfg.seed, 0, {cfg.workers});
  const auto est = estimate_correlation(series);

  Report rep;
  add_common_metadata(rep, cfg);
  add_sampling_metadata(rep, cfg, model);
  rep.columns = {"theta_ab", "n", "N1", "N2", "N3", "N4", "estimate", "stderr", "exact"};
  const double theta = separation_angle(a, b);
  rep.rows.push_back({from_radians(theta, cfg.degrees), series.total(), series.counts[0],
                      series.counts[1], series.counts[2], series.counts[3], est.value,
                      est.std_error, correlation_exact(a, b)});
  return rep;
}

ChshModel chsh_model(const std::string& model) {
  if (model.empty() || model == "hv") return ChshModel::hv_per_setting;
  if (model == "exact") return ChshModel::quantum_exact;
  if (model == "sampler") return ChshModel::quantum_sampler;
  if (model == "transfer") return ChshModel::transfer_baseline;
  throw UsageError("chsh supports --model exact|hv|sampler|transfer");
}

Report cmd_chsh(const RunConfig& cfg) {
  if (cfg.theta_ab) throw UsageError("chsh takes --a/--a-prime/--b/--b-prime, not --theta-ab");
  ChshSettings settings = ChshSettings::canonical();
  if (cfg.a) settings.a = parse_direction(*cfg.a, cfg.degrees, "--a");
  if (cfg.a_prime) settings.a_prime = parse_direction(*cfg.a_prime, cfg.degrees, "--a-prime");
  if (cfg.b) settings.b = parse_direction(*cfg.b, cfg.degrees, "--b");
  if (cfg.b_prime) settings.b_prime = parse_direction(*cfg.b_prime, cfg.degrees, "--b-prime");

  const ChshModel model = chsh_model(cfg.model);
  const auto report = run_chsh(settings, cfg.n, model, cfg.seed, {cfg.workers});

  Report rep;
  add_common_metadata(rep, cfg);
  add_sampling_metadata(rep, cfg, std::string(to_string(model)));
  rep.columns = {"pair",     "first_zenith", "first_azimuth", "second_zenith", "second_azimuth",
                 "theta",    "estimate",     "stderr",        "N1",            "N2",
                 "N3",       "N4"};
  constexpr std::array<const char*, 4> labels{"ab", "ab'", "a'b", "a'b'"};
  for (std::size_t i = 0; i < 4; ++i) {
    const auto& p = report.pairs[i];
    std::vector<Cell> row{std::string(labels[i]),
                          from_radians(p.first.theta(), cfg.degrees),
                          from_radians(p.first.phi(), cfg.degrees),
                          from_radians(p.second.theta(), cfg.degrees),
                          from_radians(p.second.phi(), cfg.degrees),
                          from_radians(separation_angle(p.first, p.second), cfg.degrees),
                          p.estimate.value, p.estimate.std_error};
    for (int k = 0; k < 4; ++k) row.push_back(p.counts ? Cell{(*p.counts)[k]} : Cell{});
    rep.rows.push_back(std::move(row));
  }
  std::vector<Cell> s_row(rep.columns.size());
  s_row[0] = std::string("S");
  s_row[6] = report.s;
  s_row[7] = report.s_std_error;
  rep.rows.push_back(std::move(s_row));
  return rep;
}

Report cmd_sweep(const RunConfig& cfg) {
  if (cfg.system != "singlet" && cfg.system != "single-electron") {
    throw UsageError("--system must be singlet or single-electron");
  }
  if (!cfg.model.empty() && cfg.model != "hv") throw UsageError("sweep supports --model hv only");
  const bool singlet_mode = cfg.system == "singlet";
  const auto grid = expand_grid(cfg);

  Report rep;
  add_common_metadata(rep, cfg);
  add_sampling_metadata(rep, cfg, "hv");
  rep.metadata.emplace_back("system", cfg.system);
  rep.columns = {"theta_ab", "exact", "hv_analytic", "hv_sampled", "stderr"};

  const BlochDirection a = BlochDirection::in_xz_plane(0.0);
  const Spinor plus_a = make_r_basis(a).plus;
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const double theta = checked_zenith(to_radians(grid[i], cfg.degrees), "--grid point");
    const BlochDirection b = BlochDirection::in_xz_plane(theta);
    const SamplingOptions opts{cfg.seed, static_cast<std::uint32_t>(i), {cfg.workers}};
    double exact = 0.0;
    double analytic = 0.0;
    CorrelationEstimate sampled;
    if (singlet_mode) {
      exact = correlation_exact(a, b);
      analytic = singlet_correlation_analytic(theta);
      sampled = singlet_correlation_sampled(theta, cfg.n, opts);
    } else {
      exact = single_spin_correlation(plus_a, a, b).real();
      analytic = single_electron_correlation(theta, CorrelationMode::analytic, 0).value;
      sampled = single_electron_correlation(theta, CorrelationMode::sampled, cfg.n, opts);
    }
    rep.rows.push_back({grid[i], exact, analytic, sampled.value, sampled.std_error});
  }
  return rep;
}

CLI::App* add_command(CLI::App& app, RunConfig& cfg, const std::string& name,
                      const std::string& description) {
  auto* sub = app.add_subcommand(name, description);
  sub->callback([&cfg, name] { cfg.command = name; });
  sub->add_option("--theta-ab", cfg.theta_ab, "Separation angle; places a at 0 and b at theta-ab");
  sub->add_option("--a", cfg.a, "Side-1 axis as zenith,azimuth");
  sub->add_option("--b", cfg.b, "Side-2 axis as zenith,azimuth");
  auto* deg = sub->add_flag("--deg", cfg.degrees, "Angles in degrees");
  auto* rad = sub->add_flag("--rad", "Angles in radians (default)");
  deg->excludes(rad);
  sub->add_option("--format", cfg.format, "Output format")->check(CLI::IsMember({"csv", "json"}));
  sub->add_option("--out", cfg.out, "Output file (default stdout)");
  return sub;
}

void add_sampling(CLI::App* sub, RunConfig& cfg) {
  sub->add_option("--n", cfg.n, "Trials per setting pair")->check(CLI::PositiveNumber);
  sub->add_option("--seed", cfg.seed, "64-bit seed");
  sub->add_option("--workers", cfg.workers, "Worker threads (0 = hardware)");
}

void emit(const Report& rep, const RunConfig& cfg, std::ostream& os) {
  if (cfg.format == "json") {
    write_json(rep, os);
  } else {
    write_csv(rep, os);
  }
}

}  // namespace

RunConfig parse_args(const std::vector<std::string>& args) {
  RunConfig cfg;
  CLI::App app{"Two-spin singlet correlations: exact engine, hidden-variable sampler, CHSH runs",
               kToolName};
  app.set_version_flag("--version", std::string(kToolName) + " " + kToolVersion);
  app.require_subcommand(1);

  auto* exact = add_command(app, cfg, "exact", "Exact correlation with both channel decompositions");
  exact->add_option("--r", cfg.r, "Intermediate-basis axis as zenith,azimuth (default: a)");
  add_command(app, cfg, "weights", "Eigenbasis weights C_k and eigenvalues A_k");
  auto* sample = add_command(app, cfg, "sample", "One coincidence series");
  add_sampling(sample, cfg);
  sample->add_option("--model", cfg.model, "hv | sampler");
  auto* chsh = add_command(app, cfg, "chsh", "CHSH run over four setting pairs");
  add_sampling(chsh, cfg);
  chsh->add_option("--a-prime", cfg.a_prime, "Second side-1 axis as zenith,azimuth");
  chsh->add_option("--b-prime", cfg.b_prime, "Second side-2 axis as zenith,azimuth");
  chsh->add_option("--model", cfg.model, "exact | hv | sampler | transfer");
  auto* sweep = add_command(app, cfg, "sweep", "Correlation curves over a grid of separations");
  add_sampling(sweep, cfg);
  sweep->add_option("--grid", cfg.grid, "start:stop:step in the angle unit");
  sweep->add_option("--system", cfg.system, "singlet | single-electron");
  sweep->add_option("--model", cfg.model, "hv");

  std::vector<const char*> argv{kToolName};
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) {
      std::ostringstream text;
      app.exit(e, text, text);
      throw HelpRequested{text.str()};
    }
    throw UsageError(e.what());
  }
  return cfg;
}

void execute(const RunConfig& cfg, std::ostream& out) {
  Report rep;
  if (cfg.command == "exact") {
    rep = cmd_exact(cfg);
  } else if (cfg.command == "weights") {
    rep = cmd_weights(cfg);
  } else if (cfg.command == "sample") {
    rep = cmd_sample(cfg);
  } else if (cfg.command == "chsh") {
    rep = cmd_chsh(cfg);
  } else if (cfg.command == "sweep") {
    rep = cmd_sweep(cfg);
  } else {
    throw UsageError("unknown command '" + cfg.command + "'");
  }

  if (!cfg.out) {
    emit(rep, cfg, out);
    out.flush();
    return;
  }
  std::ofstream file(*cfg.out, std::ios::binary | std::ios::trunc);
  if (!file) throw IoError("cannot open output file '" + *cfg.out + "'");
  emit(rep, cfg, file);
  file.flush();
  if (!file) throw IoError("failed writing output file '" + *cfg.out + "'");
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  try {
    execute(parse_args(args), out);
    return kSuccess;
  } catch (const HelpRequested& help) {
    out << help.text;
    return kSuccess;
  } catch (const UsageError& e) {
    err << "error: " << e.what() << "\nRun with --help for usage.\n";
    return kUsageError;
  } catch (const IoError& e) {
    err << "error: " << e.what() << '\n';
    return kIoError;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << '\n';
    return kUsageError;
  } catch (const std::domain_error& e) {
    err << "error: " << e.what() << '\n';
    return kUsageError;
  }
}

}  // namespace spincorr::cli
