#include "spinorq/commands.hpp"

#include <cmath>
#include <fstream>
#include <functional>
#include <map>
#include <mutex>

#include <fmt/format.h>

#include "spinorq/analysis.hpp"
#include "spinorq/errors.hpp"
#include "spinorq/io.hpp"
#include "spinorq/scaling.hpp"

namespace spinorq::cli {
namespace {

namespace fs = std::filesystem;

std::ofstream open_out(const fs::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InvalidArgument(fmt::format("cannot write '{}'", path.string()));
  return out;
}

double c1_of(const RunConfig& cfg) {
  const long sign = cfg.get_int("model.c1_sign");
  if (sign != 1 && sign != -1) {
    throw InvalidArgument(fmt::format("model.c1_sign must be +1 or -1, got {}", sign));
  }
  return static_cast<double>(sign);
}

int n_atoms_of(const RunConfig& cfg) {
  const long n = cfg.get_int("model.n_atoms");
  SpinorModel{static_cast<int>(n), -1.0, 0.0}.validate();
  return static_cast<int>(n);
}

InitialState initial_of(const RunConfig& cfg) {
  const std::string s = cfg.get_string("quench.initial");
  if (s == "ground") return InitialState::ground;
  if (s == "most_excited") return InitialState::most_excited;
  throw InvalidArgument(
      fmt::format("quench.initial must be 'ground' or 'most_excited', got '{}'", s));
}

QuenchSpec spec_of(const RunConfig& cfg) {
  QuenchSpec spec{n_atoms_of(cfg), c1_of(cfg), cfg.get_double("quench.q_initial"),
                  cfg.get_double("quench.q_final"), initial_of(cfg)};
  spec.validate();
  return spec;
}

QuenchOptions quench_options(const RunConfig& cfg) {
  const long band = cfg.get_int("quench.band_width");
  if (band < 1) throw InvalidArgument("quench.band_width must be >= 1");
  return {cfg.get_double("quench.retention_tolerance"), static_cast<std::size_t>(band),
          cfg.get_double("quench.band_tolerance")};
}

WindowSweepOptions window_options(const RunConfig& cfg) {
  const long steps = cfg.get_int("window.steps");
  if (steps < 2) throw InvalidArgument("window.steps must be >= 2");
  return {cfg.get_double("window.sensitivity_tol"), static_cast<std::size_t>(steps),
          cfg.get_double("window.min_fraction"), cfg.get_double("window.max_fraction")};
}

KinkOptions kink_options(const RunConfig& cfg) {
  return {cfg.get_double("kink.margin_fraction"), cfg.get_double("kink.agreement_fraction"),
          cfg.get_double("kink.prominence")};
}

ClassifyOptions classify_options(const RunConfig& cfg) {
  return {cfg.get_double("classify.overlap_half_width_fraction"),
          cfg.get_double("classify.overlap_threshold")};
}

TimescaleOptions timescale_options(const RunConfig& cfg) {
  return {cfg.get_double("timescales.sigma_multiplier"),
          cfg.get_double("timescales.significance"),
          cfg.get_double("timescales.comparable_peak")};
}

std::vector<int> sizes_of(const RunConfig& cfg, const std::string& key) {
  auto sizes = cfg.get_int_list(key);
  for (int n : sizes) SpinorModel{n, -1.0, 0.0}.validate();
  return sizes;
}

Json fit_json(const ScalingFit& f) {
  Json j;
  j["offset_a"] = f.offset_a;
  j["amplitude_b"] = f.amplitude_b;
  j["exponent_gamma"] = f.exponent_gamma;
  j["growth_exponent"] = f.growth_exponent();
  j["r_squared"] = f.r_squared;
  j["rmse"] = f.rmse;
  j["sse"] = f.sse;
  j["n_points"] = f.n_points;
  return j;
}

// Both fit forms, or the error message of whichever failed.
Json fits_json(const std::vector<ScalingPoint>& points) {
  Json j;
  try {
    j["pure"] = fit_json(fit_pure_power_law(points));
  } catch (const FitError& e) {
    j["pure"] = {{"error", e.what()}};
  }
  try {
    j["offset"] = fit_json(fit_power_law_with_offset(points));
  } catch (const FitError& e) {
    j["offset"] = {{"error", e.what()}};
  }
  return j;
}

Json timescale_json(const TimescaleReport& t, int n) {
  Json j;
  j["t_collapse"] = t.t_collapse;
  j["t_revival"] = t.t_revival;
  j["t_oscillation"] = t.t_oscillation;
  j["t_randomize"] = t.t_randomize;
  j["t_collapse_over_n"] = t.t_collapse / n;
  j["t_revival_over_n"] = t.t_revival / n;
  j["m_index"] = t.m_index;
  j["sigma"] = t.sigma;
  j["sigma_index_offset"] = t.sigma_index_offset;
  j["revival_neighbor"] = t.revival_neighbor;
  j["significant_points"] = t.significant_points;
  return j;
}

Json kink_json(const KinkReport& k) {
  Json j;
  j["index"] = k.index;
  j["curvature_index"] = k.curvature_index;
  j["spacing_index"] = k.spacing_index;
  j["margin"] = k.margin;
  j["curvature_agrees"] = k.curvature_agrees;
  j["spacing_agrees"] = k.spacing_agrees;
  return j;
}

void write_spectrum_csv(const fs::path& path, const EigenSystem& system,
                        std::span<const double> eev) {
  auto out = open_out(path);
  const auto pr = participation_ratios(system);
  CsvWriter csv(out, {"alpha", "energy", "eev", "pr", "level_spacing"});
  for (std::size_t a = 0; a < system.dim; ++a) {
    const double spacing =
        a + 1 < system.dim ? system.values[a + 1] - system.values[a] : std::nan("");
    csv.row({static_cast<std::int64_t>(a), system.values[a], eev[a], pr[a], spacing});
  }
}

std::string plot_header(const std::string& data, const std::string& png) {
  return fmt::format(
      "# gnuplot script; run with: gnuplot {}.gp\n"
      "set datafile separator ','\n"
      "set key autotitle columnhead\n"
      "set terminal pngcairo size 900,600\n"
      "set output '{}'\n"
      "# data: {}\n",
      png.substr(0, png.size() - 4), png, data);
}

void ground_scan_cmd(const Context& ctx) {
  const auto& cfg = ctx.config;
  const int n = n_atoms_of(cfg);
  const double c1 = c1_of(cfg);
  const auto qs = linear_grid(cfg.get_double("ground_scan.q_min"),
                              cfg.get_double("ground_scan.q_max"),
                              cfg.get_double("ground_scan.q_step"));
  const GroundScan scan = ground_scan(n, c1, qs, ctx.threads);
  {
    auto out = open_out(ctx.out_dir / "ground_scan.csv");
    CsvWriter csv(out, {"q", "n0_fraction"});
    for (std::size_t i = 0; i < scan.q.size(); ++i) csv.row({scan.q[i], scan.n0_fraction[i]});
  }
  Json doc = json_document();
  doc["command"] = "ground-scan";
  doc["n_atoms"] = n;
  doc["c1"] = c1;
  Json crossings;
  for (double level : {0.01, 0.5, 0.99}) {
    crossings[format_number(level)] = level_crossings(scan.q, scan.n0_fraction, level);
  }
  doc["crossings"] = crossings;
  write_json(ctx.out_dir / "ground_scan.json", doc);
  write_text(ctx.out_dir / "ground_scan.gp",
             plot_header("ground_scan.csv", "ground_scan.png") +
                 "set xlabel 'q / |c1|'\nset ylabel '<N0>/N'\nset yrange [-0.05:1.05]\n"
                 "plot 'ground_scan.csv' using 1:2 with lines lw 2\n");
}

void quench_cmd(const Context& ctx) {
  const auto& cfg = ctx.config;
  const QuenchSpec spec = spec_of(cfg);
  const EigenSystem system = decompose(build_hamiltonian(spec.final_model()));
  const QuenchResult r = run_quench(spec, system, quench_options(cfg));

  {
    auto out = open_out(ctx.out_dir / "quench_spectrum.csv");
    CsvWriter csv(out, {"alpha", "energy", "eon", "eev"});
    for (std::size_t a = 0; a < r.dim; ++a) {
      csv.row({static_cast<std::int64_t>(a), r.energies[a], r.eon[a], r.eev[a]});
    }
  }
  {
    const auto dist = overlap_distribution(r);
    auto out = open_out(ctx.out_dir / "overlap_distribution.csv");
    CsvWriter csv(out, {"alpha", "amplitude", "gap", "weight"});
    for (std::size_t i = 0; i < dist.indices.size(); ++i) {
      csv.row({static_cast<std::int64_t>(dist.indices[i]), dist.amplitudes[i], dist.gaps[i],
               dist.weights[i]});
    }
  }
  write_spectrum_csv(ctx.out_dir / "thermal_spectrum.csv", system, r.eev);

  Json doc = json_document();
  doc["command"] = "quench";
  doc["n_atoms"] = spec.n_atoms;
  doc["c1"] = spec.c1;
  doc["q_initial"] = spec.q_initial;
  doc["q_final"] = spec.q_final;
  doc["initial"] = spec.initial == InitialState::ground ? "ground" : "most_excited";
  doc["pde"] = r.pde;
  doc["pde_fraction"] = r.pde / spec.n_atoms;
  doc["mean_energy"] = r.mean_energy;
  doc["effective_dimension"] = r.effective_dimension;
  doc["initial_n0"] = r.initial_n0;
  doc["retained"] = r.retained.size();
  doc["retained_weight"] = r.retained_weight;
  doc["band_width"] = r.band_width;
  doc["truncation_error"] = r.truncation_error();

  std::optional<KinkReport> kink;
  try {
    kink = detect_kink(system, r.eev, kink_options(cfg));
    doc["kink"] = kink_json(*kink);
    doc["kink_overlap"] = kink_overlap(r, *kink, classify_options(cfg));
  } catch (const NoKink& e) {
    doc["kink"] = {{"error", e.what()}};
  }
  doc["region"] = to_string(classify_region(spec, r, kink, classify_options(cfg)));

  try {
    const McWindow w = select_window(r, WindowVariant::symmetric, window_options(cfg));
    const double mc = mc_prediction(w, r.eev);
    const EthCondition cond = eth_condition(r.energies, r.eev, w);
    Json jw;
    jw["center"] = w.center;
    jw["half_width"] = w.half_width;
    jw["n_members"] = w.members.size();
    jw["mc_prediction"] = mc;
    jw["pde_minus_mc_fraction"] = (r.pde - mc) / spec.n_atoms;
    jw["eth_condition"] = cond.value;
    jw["division_hazard"] = cond.division_hazard;
    doc["window"] = jw;
  } catch (const NoValidWindow& e) {
    doc["window"] = {{"error", e.what()}};
  }
  try {
    doc["timescales"] = timescale_json(predict_timescales(r, timescale_options(cfg)), spec.n_atoms);
  } catch (const UndefinedTimescale& e) {
    doc["timescales"] = {{"error", e.what()}};
  }
  write_json(ctx.out_dir / "quench_summary.json", doc);
  write_text(ctx.out_dir / "quench.gp",
             plot_header("quench_spectrum.csv", "quench.png") +
                 "set multiplot layout 2,1\n"
                 "set xlabel 'E_alpha'\nset ylabel 'EON'\nset logscale y\n"
                 "plot 'quench_spectrum.csv' using 2:3 with points pt 7 ps 0.4\n"
                 "unset logscale y\nset ylabel 'EEV'\n"
                 "plot 'quench_spectrum.csv' using 2:4 with lines\n"
                 "unset multiplot\n");
}

void evolve_cmd(const Context& ctx) {
  const auto& cfg = ctx.config;
  const QuenchSpec spec = spec_of(cfg);
  const QuenchResult r = run_quench(spec, quench_options(cfg));
  const double t_min = cfg.get_double("evolve.t_min");
  const double t_max = cfg.get_double("evolve.t_max");
  const long points = cfg.get_int("evolve.points");
  if (points < 1) throw InvalidArgument("evolve.points must be >= 1");
  const std::string grid = cfg.get_string("evolve.grid");
  std::vector<double> times;
  if (grid == "log") {
    times = log_time_grid(t_min, t_max, static_cast<std::size_t>(points));
  } else if (grid == "linear") {
    if (!(t_max >= t_min)) throw InvalidArgument("evolve.t_max must be >= evolve.t_min");
    times.resize(static_cast<std::size_t>(points));
    for (std::size_t i = 0; i < times.size(); ++i) {
      times[i] = points == 1 ? t_min
                             : t_min + (t_max - t_min) * static_cast<double>(i) /
                                           static_cast<double>(points - 1);
    }
  } else {
    throw InvalidArgument(fmt::format("evolve.grid must be 'linear' or 'log', got '{}'", grid));
  }
  const auto n0 = evolve_n0(r, times, ctx.threads);
  {
    auto out = open_out(ctx.out_dir / "evolution.csv");
    CsvWriter csv(out, {"t", "n0"});
    for (std::size_t i = 0; i < times.size(); ++i) csv.row({times[i], n0[i]});
  }
  Json doc = json_document();
  doc["command"] = "evolve";
  doc["n_atoms"] = spec.n_atoms;
  doc["pde"] = r.pde;
  doc["long_time_average"] = long_time_average(r);
  doc["initial_n0"] = r.initial_n0;
  doc["truncation_error"] = r.truncation_error();
  doc["points"] = times.size();
  try {
    doc["timescales"] = timescale_json(predict_timescales(r, timescale_options(cfg)), spec.n_atoms);
  } catch (const UndefinedTimescale& e) {
    doc["timescales"] = {{"error", e.what()}};
  }
  write_json(ctx.out_dir / "evolution.json", doc);
  write_text(ctx.out_dir / "evolve.gp",
             plot_header("evolution.csv", "evolution.png") +
                 fmt::format("N = {}\nset xlabel '|c1| t / N'\nset ylabel '<N0(t)>/N'\n"
                             "plot 'evolution.csv' using ($1/N):($2/N) with lines\n",
                             spec.n_atoms));
}

void quench_map_cmd(const Context& ctx) {
  const auto& cfg = ctx.config;
  const int n = n_atoms_of(cfg);
  const double c1 = c1_of(cfg);
  const double step = cfg.get_double("map.step");
  const auto qi = linear_grid(cfg.get_double("map.qi_min"), cfg.get_double("map.qi_max"), step);
  const auto qf = linear_grid(cfg.get_double("map.qf_min"), cfg.get_double("map.qf_max"), step);
  QuenchMapOptions opts{quench_options(cfg), kink_options(cfg), classify_options(cfg)};
  const QuenchMap map = quench_map(n, c1, initial_of(cfg), qi, qf, opts, ctx.threads);

  std::map<std::string, int> counts{{"I", 0}, {"II", 0}, {"III", 0}, {"IV", 0}};
  int failures = 0;
  {
    auto out = open_out(ctx.out_dir / "quench_map.csv");
    CsvWriter csv(out, {"q_initial", "q_final", "pde", "pde_fraction", "region", "error"});
    for (const auto& c : map.cells) {
      const std::string region = c.region ? std::string(to_string(*c.region)) : "";
      if (c.region) ++counts[region];
      if (!c.error.empty()) ++failures;
      csv.row({c.q_initial, c.q_final, c.pde, c.pde / n, region, c.error});
    }
  }
  Json doc = json_document();
  doc["command"] = "quench-map";
  doc["n_atoms"] = n;
  doc["c1"] = c1;
  doc["rows"] = qi.size();
  doc["columns"] = qf.size();
  doc["region_counts"] = counts;
  doc["failed_cells"] = failures;
  write_json(ctx.out_dir / "quench_map.json", doc);
  write_text(ctx.out_dir / "quench_map.gp",
             plot_header("quench_map.csv", "quench_map.png") +
                 "set xlabel 'q_f'\nset ylabel 'q_i'\nset cblabel '<N0>/N (long time)'\n"
                 "set view map\n"
                 "splot 'quench_map.csv' using 2:1:4 with points pt 5 ps 0.5 palette\n");
}

void eth_scan_cmd(const Context& ctx) {
  const auto& cfg = ctx.config;
  const double c1 = c1_of(cfg);
  const double q = cfg.get_double("eth.q");
  const double width = cfg.get_double("eth.width");
  const auto sizes = sizes_of(cfg, "eth.sizes");
  const SpectrumSink sink = [&](int n, const EigenSystem& system, std::span<const double> eev) {
    write_spectrum_csv(ctx.out_dir / fmt::format("eth_spectrum_N{}.csv", n), system, eev);
  };
  const auto rows = eth_scan(c1, q, width, sizes, ctx.threads, sink);

  {
    auto out = open_out(ctx.out_dir / "eth_scan.csv");
    CsvWriter csv(out, {"n_atoms", "n_members", "center", "mc_prediction", "noise", "support",
                        "max_divergence", "mean_eev_difference"});
    for (const auto& r : rows) {
      csv.row({static_cast<std::int64_t>(r.n_atoms), static_cast<std::int64_t>(r.report.n_members),
               r.center, r.report.mc_prediction, r.report.noise, r.report.support,
               r.report.max_divergence, r.report.mean_eev_difference});
    }
  }
  Json doc = json_document();
  doc["command"] = "eth-scan";
  doc["c1"] = c1;
  doc["q"] = q;
  doc["width"] = width;
  doc["observable"] = "N0/N";
  const std::vector<std::pair<std::string, std::function<double(const EthReport&)>>> columns{
      {"noise", [](const EthReport& e) { return e.noise; }},
      {"support", [](const EthReport& e) { return e.support; }},
      {"max_divergence", [](const EthReport& e) { return e.max_divergence; }},
      {"mean_eev_difference", [](const EthReport& e) { return e.mean_eev_difference; }}};
  for (const auto& [name, get] : columns) {
    std::vector<ScalingPoint> pts;
    for (const auto& r : rows) pts.push_back({static_cast<double>(r.n_atoms), get(r.report)});
    doc["fits"][name] = fits_json(pts);
  }
  write_json(ctx.out_dir / "eth_fits.json", doc);
  write_text(ctx.out_dir / "eth_scan.gp",
             plot_header("eth_scan.csv", "eth_scan.png") +
                 "set logscale xy\nset xlabel 'N'\nset ylabel 'indicator of N0/N'\n"
                 "plot for [c=5:8] 'eth_scan.csv' using 1:c with linespoints\n");
}

void pr_scan_cmd(const Context& ctx) {
  const auto& cfg = ctx.config;
  const double c1 = c1_of(cfg);
  const double q = cfg.get_double("pr.q");
  const auto sizes = sizes_of(cfg, "pr.sizes");
  const auto rows = pr_scan(c1, q, cfg.get_double("pr.mid_width"), cfg.get_double("pr.kink_width"),
                            sizes, kink_options(cfg), ctx.threads);
  {
    auto out = open_out(ctx.out_dir / "pr_scan.csv");
    CsvWriter csv(out, {"n_atoms", "ground_pr", "most_excited_pr", "mid_window_pr", "kink_index",
                        "kink_window_pr"});
    for (const auto& r : rows) {
      csv.row({static_cast<std::int64_t>(r.n_atoms), r.ground, r.most_excited, r.mid_window,
               r.kink_index ? CsvCell{static_cast<std::int64_t>(*r.kink_index)} : CsvCell{""},
               r.kink_window.value_or(std::nan(""))});
    }
  }
  Json doc = json_document();
  doc["command"] = "pr-scan";
  doc["c1"] = c1;
  doc["q"] = q;
  const std::vector<std::pair<std::string, std::function<std::optional<double>(const PrScanRow&)>>>
      columns{{"ground_pr", [](const PrScanRow& r) { return std::optional(r.ground); }},
              {"most_excited_pr", [](const PrScanRow& r) { return std::optional(r.most_excited); }},
              {"mid_window_pr", [](const PrScanRow& r) { return std::optional(r.mid_window); }},
              {"kink_window_pr", [](const PrScanRow& r) { return r.kink_window; }}};
  for (const auto& [name, get] : columns) {
    std::vector<ScalingPoint> pts;
    for (const auto& r : rows) {
      if (const auto v = get(r)) pts.push_back({static_cast<double>(r.n_atoms), *v});
    }
    try {
      doc["fits"][name] = fit_json(fit_pure_power_law(pts));
    } catch (const FitError& e) {
      doc["fits"][name] = {{"error", e.what()}};
    }
  }
  write_json(ctx.out_dir / "pr_fits.json", doc);
  write_text(ctx.out_dir / "pr_scan.gp",
             plot_header("pr_scan.csv", "pr_scan.png") +
                 "set logscale xy\nset xlabel 'N'\nset ylabel 'PR'\n"
                 "plot for [c=2:4] 'pr_scan.csv' using 1:c with linespoints, "
                 "'pr_scan.csv' using 1:6 with linespoints\n");
}

void timescales_cmd(const Context& ctx) {
  const auto& cfg = ctx.config;
  const QuenchSpec base = spec_of(cfg);
  const auto sizes = sizes_of(cfg, "timescales.sizes");
  const auto rows =
      size_scan(base, sizes, quench_options(cfg), timescale_options(cfg), ctx.threads);
  const double hz = cfg.get_double("timescales.c1_hz");
  {
    auto out = open_out(ctx.out_dir / "timescales.csv");
    CsvWriter csv(out, {"n_atoms", "effective_dimension", "pde_fraction", "t_collapse",
                        "t_revival", "t_oscillation", "t_randomize", "m_index",
                        "sigma_index_offset", "note"});
    for (const auto& r : rows) {
      const double nan = std::nan("");
      const auto& t = r.timescales;
      csv.row({static_cast<std::int64_t>(r.n_atoms), r.effective_dimension, r.pde / r.n_atoms,
               t ? t->t_collapse : nan, t ? t->t_revival : nan, t ? t->t_oscillation : nan,
               t ? t->t_randomize : nan,
               t ? CsvCell{static_cast<std::int64_t>(t->m_index)} : CsvCell{""},
               t ? CsvCell{static_cast<std::int64_t>(t->sigma_index_offset)} : CsvCell{""},
               r.note});
    }
  }
  Json doc = json_document();
  doc["command"] = "timescales";
  doc["c1"] = base.c1;
  doc["q_initial"] = base.q_initial;
  doc["q_final"] = base.q_final;
  std::vector<ScalingPoint> de, tc, tr;
  for (const auto& r : rows) {
    const double n = r.n_atoms;
    de.push_back({n, r.effective_dimension});
    if (r.timescales) {
      tc.push_back({n, r.timescales->t_collapse});
      tr.push_back({n, r.timescales->t_revival});
    }
    Json entry = r.timescales ? timescale_json(*r.timescales, r.n_atoms) : Json{{"error", r.note}};
    if (r.timescales && hz != 0.0) {
      entry["t_collapse_seconds"] = to_seconds(r.timescales->t_collapse, hz);
      entry["t_revival_seconds"] = to_seconds(r.timescales->t_revival, hz);
    }
    doc["sizes"][std::to_string(r.n_atoms)] = entry;
  }
  doc["fits"]["effective_dimension"] = fits_json(de);
  doc["fits"]["t_collapse"] = fits_json(tc);
  doc["fits"]["t_revival"] = fits_json(tr);
  write_json(ctx.out_dir / "timescales.json", doc);
  write_text(ctx.out_dir / "timescales.gp",
             plot_header("timescales.csv", "timescales.png") +
                 "set logscale xy\nset xlabel 'N'\nset ylabel '|c1| t'\n"
                 "plot 'timescales.csv' using 1:4 with linespoints, "
                 "'' using 1:5 with linespoints, '' using 1:2 with linespoints\n");
}

void fit_cmd(const Context& ctx) {
  const auto& cfg = ctx.config;
  const std::string input = cfg.get_string("fit.input");
  if (input.empty()) throw InvalidArgument("fit.input must name a CSV file");
  const CsvTable table = read_csv(fs::path(input));
  const auto x = table.column(cfg.get_string("fit.x_column"));
  const auto y = table.column(cfg.get_string("fit.y_column"));
  std::vector<ScalingPoint> pts;
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (!std::isnan(x[i]) && !std::isnan(y[i])) pts.push_back({x[i], y[i]});
  }
  const std::string form = cfg.get_string("fit.form");
  ScalingFit fit;
  if (form == "offset") {
    fit = fit_power_law_with_offset(pts, {cfg.get_double("fit.gamma_min"),
                                          cfg.get_double("fit.gamma_max"),
                                          cfg.get_double("fit.gamma_step")});
  } else if (form == "pure") {
    fit = fit_pure_power_law(pts);
  } else {
    throw InvalidArgument(fmt::format("fit.form must be 'offset' or 'pure', got '{}'", form));
  }
  Json doc = json_document();
  doc["command"] = "fit";
  doc["form"] = form;
  doc["x_column"] = cfg.get_string("fit.x_column");
  doc["y_column"] = cfg.get_string("fit.y_column");
  doc["fit"] = fit_json(fit);
  write_json(ctx.out_dir / "fit.json", doc);
}

void lattice_cmd(const Context& ctx) {
  const auto& cfg = ctx.config;
  const SpinorModel model{n_atoms_of(cfg), c1_of(cfg), cfg.get_double("quench.q_final")};
  const LatticeParameters lp = lattice_parameters(model);
  {
    auto out = open_out(ctx.out_dir / "lattice.csv");
    CsvWriter csv(out, {"site", "hopping", "onsite"});
    for (std::size_t i = 0; i < lp.onsite.size(); ++i) {
      csv.row({static_cast<std::int64_t>(i), i < lp.hopping.size() ? lp.hopping[i] : std::nan(""),
               lp.onsite[i]});
    }
  }
  {
    auto out = open_out(ctx.out_dir / "hamiltonian.csv");
    write_operator_csv(out, build_hamiltonian(model));
  }
  write_text(ctx.out_dir / "lattice.gp",
             plot_header("lattice.csv", "lattice.png") +
                 "set multiplot layout 2,1\nset xlabel 'site i'\n"
                 "plot 'lattice.csv' using 1:2 with lines\n"
                 "plot 'lattice.csv' using 1:3 with lines\nunset multiplot\n");
}

const std::vector<std::pair<std::string, void (*)(const Context&)>>& table() {
  static const std::vector<std::pair<std::string, void (*)(const Context&)>> t{
      {"ground-scan", ground_scan_cmd}, {"quench", quench_cmd},
      {"evolve", evolve_cmd},           {"quench-map", quench_map_cmd},
      {"eth-scan", eth_scan_cmd},       {"pr-scan", pr_scan_cmd},
      {"timescales", timescales_cmd},   {"fit", fit_cmd},
      {"lattice-params", lattice_cmd}};
  return t;
}

}  // namespace

const std::vector<std::string>& command_names() {
  static const std::vector<std::string> names = [] {
    std::vector<std::string> out;
    for (const auto& [name, fn] : table()) out.push_back(name);
    return out;
  }();
  return names;
}

void run_command(const std::string& name, const Context& ctx) {
  for (const auto& [n, fn] : table()) {
    if (n != name) continue;
    fs::create_directories(ctx.out_dir);
    write_text(ctx.out_dir / "effective_config.ini", ctx.config.to_string());
    fn(ctx);
    return;
  }
  throw InvalidArgument(fmt::format("unknown command '{}'", name));
}

std::string error_kind(const std::exception& e) {
  if (dynamic_cast<const InvalidArgument*>(&e)) return "InvalidArgument";
  if (dynamic_cast<const ConvergenceError*>(&e)) return "ConvergenceError";
  if (dynamic_cast<const NoValidWindow*>(&e)) return "NoValidWindow";
  if (dynamic_cast<const NoKink*>(&e)) return "NoKink";
  if (dynamic_cast<const UndefinedTimescale*>(&e)) return "UndefinedTimescale";
  if (dynamic_cast<const FitError*>(&e)) return "FitError";
  if (dynamic_cast<const RetentionError*>(&e)) return "RetentionError";
  if (dynamic_cast<const std::filesystem::filesystem_error*>(&e)) return "FilesystemError";
  return "InternalError";
}

}  // namespace spinorq::cli
