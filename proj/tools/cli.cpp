#include "cli.hpp"

#include <cmath>
#include <fstream>
#include <optional>
#include <ostream>
#include <random>
#include <sstream>
#include <variant>

#include <CLI11.hpp>

#include "cohcorr/correlations.hpp"
#include "cohcorr/dephasing.hpp"
#include "cohcorr/errors.hpp"
#include "cohcorr/kernels.hpp"
#include "cohcorr/oracle.hpp"
#include "format.hpp"

namespace cohcorr::cli {
namespace {

// Bad flag values that CLI11 cannot see by itself.
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct SpecArgs {
  int n = 0;
  std::vector<double> p;
  std::string parity = "even";
  std::string family;
  std::vector<double> z;
  double j = 0.0;
  double bargmann = 0.0;
};

struct OutputArgs {
  std::string format = "csv";
  std::string out;
};

void add_spec_options(CLI::App* app, SpecArgs& a, bool with_overlaps) {
  app->add_option("--n", a.n, "number of modes")->required()->check(CLI::Range(2, 64));
  app->add_option("--parity", a.parity, "relative phase e^{i m pi}")
      ->check(CLI::IsMember({"even", "odd"}))
      ->capture_default_str();
  app->add_option("--family", a.family, "coherent-state family for z inputs")
      ->check(CLI::IsMember({"wh", "su2", "su11"}));
  app->add_option("--j", a.j, "SU(2) spin (half-integer)");
  app->add_option("--bargmann", a.bargmann, "SU(1,1) Bargmann index");
  if (with_overlaps) {
    app->add_option("--p", a.p, "overlap of each mode, in [0,1]");
    app->add_option("--z", a.z, "coherent-state label |z| (one value, or one per mode)");
  }
}

void add_output_options(CLI::App* app, OutputArgs& o) {
  app->add_option("--format", o.format)->check(CLI::IsMember({"csv", "json"}))->capture_default_str();
  app->add_option("--out", o.out, "write to FILE instead of stdout");
}

Parity parse_parity(const std::string& s) { return s == "odd" ? Parity::Odd : Parity::Even; }

MeasurementSide parse_side(const std::string& s) {
  return s == "second" ? MeasurementSide::SecondQubit : MeasurementSide::FirstQubit;
}

FamilyParams family_params(const SpecArgs& a) {
  if (a.family == "wh") return FamilyParams::weyl_heisenberg();
  if (a.family == "su2") {
    const double twice = 2.0 * a.j;
    if (!(a.j > 0.0) || std::abs(twice - std::round(twice)) > 1e-12)
      throw UsageError("--j must be a positive half-integer for --family su2");
    return FamilyParams::su2(static_cast<int>(std::lround(twice)));
  }
  if (!(a.bargmann > 0.0)) throw UsageError("--bargmann must be positive for --family su11");
  return FamilyParams::su11(a.bargmann);
}

std::vector<double> resolve_overlaps(const SpecArgs& a) {
  const auto n = static_cast<std::size_t>(a.n);
  if (!a.family.empty()) {
    if (!a.p.empty()) throw UsageError("give either --p or --family/--z, not both");
    if (a.z.size() != 1 && a.z.size() != n) throw UsageError("--z takes one value or one per mode");
    const auto params = family_params(a);
    std::vector<double> p(n);
    for (std::size_t m = 0; m < n; ++m) p[m] = overlap(a.z.size() == 1 ? a.z[0] : a.z[m], params);
    return p;
  }
  if (a.p.size() != n)
    throw UsageError("--p needs exactly n = " + std::to_string(n) + " values, got " + std::to_string(a.p.size()));
  return a.p;
}

std::pair<std::size_t, std::size_t> resolve_pair(const std::vector<int>& pair, int n) {
  if (pair.size() != 2) throw UsageError("--pair takes two mode indices");
  for (int v : pair)
    if (v < 1 || v > n) throw UsageError("--pair indices must lie in 1..n");
  if (pair[0] == pair[1]) throw UsageError("--pair indices must differ");
  return {static_cast<std::size_t>(pair[0] - 1), static_cast<std::size_t>(pair[1] - 1)};
}

std::vector<double> linear_grid(const std::vector<double>& g, const char* flag) {
  if (g.size() != 3) throw UsageError(std::string(flag) + " takes START STOP STEPS");
  const double steps_d = g[2];
  if (!(steps_d >= 2) || steps_d != std::floor(steps_d))
    throw UsageError(std::string(flag) + ": STEPS must be an integer >= 2");
  const auto steps = static_cast<std::size_t>(steps_d);
  std::vector<double> out(steps);
  for (std::size_t k = 0; k < steps; ++k)
    out[k] = k + 1 == steps ? g[1] : g[0] + (g[1] - g[0]) * static_cast<double>(k) / static_cast<double>(steps - 1);
  return out;
}

// Writes to --out when given, otherwise to `out`.
template <class Fn>
void emit(const OutputArgs& o, std::ostream& out, Fn&& write) {
  if (o.out.empty()) {
    write(out);
    return;
  }
  std::ofstream file(o.out);
  if (!file) throw UsageError("cannot open --out file " + o.out);
  write(file);
}

std::string t0_text(const SuddenDeathTime& t0) {
  return std::holds_alternative<NeverDies>(t0) ? "infinite" : format_number(std::get<double>(t0));
}

Json t0_json(const SuddenDeathTime& t0) {
  if (std::holds_alternative<NeverDies>(t0)) return "infinite";
  return round9(std::get<double>(t0));
}

// ---------------------------------------------------------------- report

struct ReportArgs {
  SpecArgs spec;
  OutputArgs output;
  bool pure = false;
  int k = 1;
  std::vector<int> pair;
  std::string side = "first";
  std::optional<double> rate;
  double t = 0.0;
  bool verify = false;
};

void cmd_report(const ReportArgs& a, std::ostream& out) {
  const SuperpositionSpec spec(resolve_overlaps(a.spec), parse_parity(a.spec.parity));
  const MeasurementSide side = parse_side(a.side);

  Table table;
  std::vector<Cell> row;
  auto put = [&](std::string name, Cell value) {
    table.columns.push_back(std::move(name));
    row.push_back(std::move(value));
  };

  std::optional<TwoQubitDensity> rho;
  CorrelationReport rep;
  put("n", static_cast<long long>(spec.modes()));
  put("parity", a.spec.parity);
  if (a.pure) {
    if (a.k < 1 || a.k > a.spec.n - 1) throw UsageError("--k must lie in 1..n-1");
    const auto k = static_cast<std::size_t>(a.k);
    rep = pure_report(spec, k);
    rho.emplace(pure_density(pure_split(spec, k)));
    put("selection", "pure k=" + std::to_string(a.k));
  } else {
    const auto [i, j] = resolve_pair(a.pair.empty() ? std::vector<int>{1, 2} : a.pair, a.spec.n);
    rep = mixed_discord_closed(spec, i, j, side);
    rho = reduced_pair_density(spec, i, j);
    put("selection", "pair " + std::to_string(i + 1) + " " + std::to_string(j + 1));
  }
  put("side", std::string(to_string(side)));
  put("discord", rep.discord);
  put("branch", std::string(to_string(rep.branch)));
  put("lambda1", rep.k_eigenvalues[0]);
  put("lambda2", rep.k_eigenvalues[1]);
  put("lambda3", rep.k_eigenvalues[2]);
  put("concurrence", rep.concurrence);
  put("discord_numeric", geometric_discord_numeric(*rho, side).discord);
  if (a.verify) put("discord_oracle", oracle::discord_by_measurement_search(*rho, side).discord);

  std::optional<SuddenDeathTime> t0;
  if (a.rate) {
    const DephasingParams params(*a.rate, a.t);
    put("rate", *a.rate);
    put("t", a.t);
    put("gamma", params.gamma());
    if (a.pure) {
      const auto evolved = apply_dephasing(*rho, params.gamma());
      put("discord_t", geometric_discord_numeric(evolved, side).discord);
      put("concurrence_t", concurrence_mixed(evolved));
      t0 = rep.concurrence > 0.0 ? SuddenDeathTime{NeverDies{}} : SuddenDeathTime{0.0};
    } else {
      const auto [i, j] = resolve_pair(a.pair.empty() ? std::vector<int>{1, 2} : a.pair, a.spec.n);
      put("discord_t", discord_trajectory(spec, i, j, params, side).discord);
      put("concurrence_t", concurrence_trajectory(spec, i, j, params));
      t0 = sudden_death_time(spec, i, j, *a.rate);
    }
  }
  table.add(row);

  emit(a.output, out, [&](std::ostream& os) {
    if (a.output.format == "json") {
      Json doc = rows_to_json(table).at(0);
      if (t0) doc["t0"] = t0_json(*t0);
      write_json(os, doc);
    } else {
      if (t0) {
        table.columns.push_back("t0");
        table.rows[0].push_back(t0_text(*t0));
      }
      write_csv(os, table);
    }
  });
}

// ---------------------------------------------------------------- sweep

struct SweepArgs {
  SpecArgs spec;
  OutputArgs output;
  std::string mode = "mixed";
  int k = 1;
  std::vector<int> pair;
  std::string side = "first";
  std::vector<double> grid;
  std::vector<double> z_grid;
};

void cmd_sweep(const SweepArgs& a, std::ostream& out) {
  const Parity parity = parse_parity(a.spec.parity);
  const MeasurementSide side = parse_side(a.side);
  const auto n = static_cast<std::size_t>(a.spec.n);

  std::vector<double> ps;
  if (!a.spec.family.empty()) {
    if (!a.grid.empty()) throw UsageError("give either --grid or --family/--z-grid, not both");
    const auto params = family_params(a.spec);
    for (double z : linear_grid(a.z_grid, "--z-grid")) ps.push_back(overlap(z, params));
  } else {
    ps = linear_grid(a.grid.empty() ? std::vector<double>{0.0, 1.0, 101} : a.grid, "--grid");
    for (double p : ps)
      if (!(p >= 0.0 && p <= 1.0)) throw UsageError("--grid must lie within [0,1]");
  }

  std::size_t k = 0, i = 0, j = 1;
  if (a.mode == "pure") {
    if (a.k < 1 || a.k > a.spec.n - 1) throw UsageError("--k must lie in 1..n-1");
    k = static_cast<std::size_t>(a.k);
  } else {
    std::tie(i, j) = resolve_pair(a.pair.empty() ? std::vector<int>{1, 2} : a.pair, a.spec.n);
  }

  Table table;
  table.columns = {"p", "discord_closed", "discord_numeric", "branch", "concurrence", "lambda1", "lambda2", "lambda3"};
  for (double p : ps) {
    const SuperpositionSpec spec(std::vector<double>(n, p), parity);
    if (a.mode == "pure") {
      const auto rep = pure_report(spec, k);
      const double numeric = geometric_discord_numeric(TwoQubitDensity(pure_density(pure_split(spec, k))), side).discord;
      table.add({p, rep.discord, numeric, std::string(to_string(rep.branch)), rep.concurrence, rep.k_eigenvalues[0],
                 rep.k_eigenvalues[1], rep.k_eigenvalues[2]});
    } else {
      const auto rep = mixed_discord_closed(spec, i, j, side);
      const auto lam = pair_k_spectrum(spec, i, j, side);
      const double numeric = geometric_discord_numeric(reduced_pair_density(spec, i, j), side).discord;
      table.add({p, rep.discord, numeric, std::string(to_string(rep.branch)), rep.concurrence, lam.longitudinal,
                 lam.transverse_x, lam.transverse_y});
    }
  }

  emit(a.output, out, [&](std::ostream& os) {
    if (a.output.format == "json") {
      Json doc = Json::object();
      doc["mode"] = a.mode;
      doc["n"] = a.spec.n;
      doc["parity"] = a.spec.parity;
      doc["side"] = a.side;
      doc["rows"] = rows_to_json(table);
      write_json(os, doc);
    } else {
      write_csv(os, table);
    }
  });
}

// ---------------------------------------------------------------- evolve

struct EvolveArgs {
  SpecArgs spec;
  OutputArgs output;
  std::vector<int> pair;
  std::string side = "first";
  double rate = 0.0;
  std::vector<double> t_grid;
  std::vector<double> times;
};

void cmd_evolve(const EvolveArgs& a, std::ostream& out) {
  const SuperpositionSpec spec(resolve_overlaps(a.spec), parse_parity(a.spec.parity));
  const MeasurementSide side = parse_side(a.side);
  const auto [i, j] = resolve_pair(a.pair.empty() ? std::vector<int>{1, 2} : a.pair, a.spec.n);

  if (a.t_grid.empty() == a.times.empty()) throw UsageError("give exactly one of --t-grid or --times");
  const std::vector<double> ts = a.times.empty() ? linear_grid(a.t_grid, "--t-grid") : a.times;

  Table table;
  table.columns = {"t", "gamma", "discord", "concurrence"};
  for (double t : ts) {
    const DephasingParams params(a.rate, t);
    table.add({t, params.gamma(), discord_trajectory(spec, i, j, params, side).discord,
               concurrence_trajectory(spec, i, j, params)});
  }
  const SuddenDeathTime t0 = sudden_death_time(spec, i, j, a.rate);

  emit(a.output, out, [&](std::ostream& os) {
    if (a.output.format == "json") {
      Json doc = Json::object();
      doc["rate"] = round9(a.rate);
      doc["pair"] = {i + 1, j + 1};
      doc["side"] = a.side;
      doc["rows"] = rows_to_json(table);
      doc["t0"] = t0_json(t0);
      write_json(os, doc);
    } else {
      write_csv(os, table);
      os << "# t0=" << t0_text(t0) << '\n';
    }
  });
}

// ---------------------------------------------------------------- verify

struct VerifyArgs {
  int samples = 200;
  std::uint64_t seed = 1;
  double tol = 1e-6;
};

struct Sample {
  std::vector<double> p;
  Parity parity;
  std::size_t i, j;
  MeasurementSide side;
  double rate, t;
};

std::string describe(const Sample& s) {
  std::ostringstream os;
  os << "n=" << s.p.size() << " p=[";
  for (std::size_t m = 0; m < s.p.size(); ++m) os << (m ? " " : "") << format_number(s.p[m]);
  os << "] parity=" << (s.parity == Parity::Odd ? "odd" : "even") << " pair=" << s.i + 1 << "," << s.j + 1
     << " side=" << to_string(s.side) << " rate=" << format_number(s.rate) << " t=" << format_number(s.t);
  return os.str();
}

Sample draw_sample(std::mt19937_64& rng) {
  std::uniform_int_distribution<int> nd(2, 6);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  Sample s;
  s.p.resize(static_cast<std::size_t>(nd(rng)));
  for (auto& v : s.p) v = u(rng);
  s.parity = u(rng) < 0.5 ? Parity::Even : Parity::Odd;
  std::uniform_int_distribution<std::size_t> md(0, s.p.size() - 1);
  s.i = md(rng);
  do s.j = md(rng);
  while (s.j == s.i);
  s.side = u(rng) < 0.5 ? MeasurementSide::FirstQubit : MeasurementSide::SecondQubit;
  s.rate = 0.1 + 2.0 * u(rng);
  s.t = 3.0 * u(rng);
  return s;
}

int cmd_verify(const VerifyArgs& a, std::ostream& out) {
  if (a.samples < 1) throw UsageError("--samples must be positive");
  if (!(a.tol > 0.0)) throw UsageError("--tol must be positive");

  const std::vector<std::string> names = {"closed_vs_numeric", "numeric_vs_oracle", "kraus_vs_bloch",
                                          "gram_vs_closed",    "trajectory_vs_kraus", "pure_relation"};
  std::vector<double> worst(names.size(), 0.0);
  std::vector<std::string> violations;

  std::mt19937_64 rng(a.seed);
  for (int n = 0; n < a.samples; ++n) {
    const Sample s = draw_sample(rng);
    const SuperpositionSpec spec(s.p, s.parity);
    const DephasingParams params(s.rate, s.t);
    const auto rho = reduced_pair_density(spec, s.i, s.j);
    const auto evolved = apply_dephasing(rho, params.gamma());
    const double numeric_t = geometric_discord_numeric(evolved, s.side).discord;

    std::vector<double> dev(names.size());
    dev[0] = std::abs(mixed_discord_closed(spec, s.i, s.j, s.side).discord -
                      geometric_discord_numeric(rho, s.side).discord);
    dev[1] = std::abs(numeric_t - oracle::discord_by_measurement_search(evolved, s.side).discord);
    dev[2] = (evolved.matrix() - bloch_reconstruct(dephase_bloch(bloch_decompose(rho), params.gamma())))
                 .cwiseAbs()
                 .maxCoeff();
    dev[3] = (oracle::pair_density_from_overlaps(spec, s.i, s.j).matrix() - rho.matrix()).cwiseAbs().maxCoeff();
    dev[4] = std::max(std::abs(discord_trajectory(spec, s.i, s.j, params, s.side).discord - numeric_t),
                      std::abs(concurrence_trajectory(spec, s.i, s.j, params) - concurrence_mixed(evolved)));
    const std::size_t k = 1 + n % (s.p.size() - 1);
    const double c = concurrence_pure(spec, k);
    dev[5] = std::abs(geometric_discord_pure_closed(spec, k) - 0.5 * c * c);

    for (std::size_t q = 0; q < names.size(); ++q) {
      worst[q] = std::max(worst[q], dev[q]);
      if (dev[q] > a.tol) violations.push_back(names[q] + " deviation=" + format_number(dev[q]) + " " + describe(s));
    }
  }

  out << "verify samples=" << a.samples << " seed=" << a.seed << " tol=" << format_number(a.tol) << '\n';
  for (std::size_t q = 0; q < names.size(); ++q)
    out << names[q] << " max_deviation=" << format_number(worst[q]) << (worst[q] <= a.tol ? " ok" : " FAIL") << '\n';
  constexpr std::size_t shown = 20;
  for (std::size_t v = 0; v < violations.size() && v < shown; ++v) out << "violation " << violations[v] << '\n';
  if (violations.size() > shown) out << "... " << violations.size() - shown << " more violations\n";
  out << (violations.empty() ? "PASS" : "FAIL") << '\n';
  return violations.empty() ? 0 : 1;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Geometric discord and concurrence of multipartite coherent-state superpositions", "cohcorr"};
  app.require_subcommand(1);

  ReportArgs report;
  auto* rep = app.add_subcommand("report", "correlations of one pure split or mode pair");
  add_spec_options(rep, report.spec, true);
  add_output_options(rep, report.output);
  rep->add_flag("--pure", report.pure, "use the pure k | n-k split");
  rep->add_option("--k", report.k, "size of the first group in the pure split")->capture_default_str();
  rep->add_option("--pair", report.pair, "mode pair i j (1-based)")->expected(2);
  rep->add_option("--side", report.side)->check(CLI::IsMember({"first", "second"}))->capture_default_str();
  rep->add_option("--rate", report.rate, "dephasing rate");
  rep->add_option("--t", report.t, "time for the dephased values")->capture_default_str();
  rep->add_flag("--verify", report.verify, "also run the measurement search");

  SweepArgs sweep;
  auto* swp = app.add_subcommand("sweep", "discord along an equal-overlap grid");
  add_spec_options(swp, sweep.spec, false);
  add_output_options(swp, sweep.output);
  swp->add_option("--mode", sweep.mode)->check(CLI::IsMember({"pure", "mixed"}))->capture_default_str();
  swp->add_option("--k", sweep.k)->capture_default_str();
  swp->add_option("--pair", sweep.pair)->expected(2);
  swp->add_option("--side", sweep.side)->check(CLI::IsMember({"first", "second"}))->capture_default_str();
  swp->add_option("--grid", sweep.grid, "START STOP STEPS over p")->expected(3);
  swp->add_option("--z-grid", sweep.z_grid, "START STOP STEPS over |z| (with --family)")->expected(3);

  EvolveArgs evolve;
  auto* evo = app.add_subcommand("evolve", "dephasing trajectory of a mode pair");
  add_spec_options(evo, evolve.spec, true);
  add_output_options(evo, evolve.output);
  evo->add_option("--pair", evolve.pair)->expected(2);
  evo->add_option("--side", evolve.side)->check(CLI::IsMember({"first", "second"}))->capture_default_str();
  evo->add_option("--rate", evolve.rate)->required();
  evo->add_option("--t-grid", evolve.t_grid, "START STOP STEPS")->expected(3);
  evo->add_option("--times", evolve.times, "explicit list of times");

  VerifyArgs verify;
  auto* ver = app.add_subcommand("verify", "cross-check the independent computation paths");
  ver->add_option("--samples", verify.samples)->capture_default_str();
  ver->add_option("--seed", verify.seed)->capture_default_str();
  ver->add_option("--tol", verify.tol)->capture_default_str();

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return 0;
    err << "error: " << e.what() << '\n';
    return 2;
  }

  try {
    if (rep->parsed()) cmd_report(report, out);
    if (swp->parsed()) cmd_sweep(sweep, out);
    if (evo->parsed()) cmd_evolve(evolve, out);
    if (ver->parsed()) return cmd_verify(verify, out);
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return 2;
  }
  return 0;
}

}  // namespace cohcorr::cli
