// Release gate: ten criteria covering window layout, attribution math,
// estimator convergence, robust fitting, report arithmetic, bundle shape,
// determinism, and forecast skill. Each criterion prints one PASS/FAIL line
// with its runtime; the process exit code is the number of failures. Every
// check is seeded, so a green gate stays green.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <functional>
#include <iostream>
#include <map>
#include <nlohmann/json.hpp>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "aircast/cli.hpp"
#include "aircast/forecast.hpp"
#include "aircast/report.hpp"
#include "aircast/series.hpp"
#include "aircast/shapley.hpp"
#include "aircast/synth.hpp"
#include "helpers.hpp"

using namespace aircast;

namespace fs = std::filesystem;

namespace {

struct Failure : std::runtime_error {
  using std::runtime_error::runtime_error;
};

void require(bool ok, const std::string& msg) {
  if (!ok) throw Failure(msg);
}

// The pipeline commands narrate progress on stdout; keep the gate's report
// to one line per criterion.
struct QuietCout {
  std::ostringstream sink;
  std::streambuf* saved = std::cout.rdbuf(sink.rdbuf());
  ~QuietCout() { std::cout.rdbuf(saved); }
};

const OperationalCalendar kCal{};

// Regular weekday series with coded values, long enough for lag windows.
RegularSeries make_series(int n_days) {
  std::vector<Observation> obs;
  Date d{2024, 9, 2};
  int emitted = 0;
  while (emitted < n_days) {
    if (kCal.is_working_day(d)) {
      for (int s = 0; s < kCal.slots_per_day(); ++s) {
        Observation o;
        o.ts.date = d;
        o.ts.minute_of_day = kCal.minute_of(s);
        o.asat = 18.0 + 0.1 * emitted + 0.01 * s;
        o.ambient = 6.0;
        o.room_avg = 21.0;
        obs.push_back(o);
      }
      ++emitted;
    }
    d = add_days(d, 1);
  }
  return regularize(obs, kCal, 0);
}

// Hand-built linear model over m features, slot 0.
HuberModel toy_model(const Eigen::VectorXd& weights, double intercept) {
  HuberModel model;
  model.slot = 0;
  model.intercept = intercept;
  model.weights = weights;
  model.feature_means = Eigen::VectorXd::Zero(weights.size());
  model.feature_scales = Eigen::VectorXd::Ones(weights.size());
  for (int j = 0; j < weights.size(); ++j) {
    model.labels.push_back("f" + std::to_string(j));
  }
  model.n_train = 2;
  return model;
}

Eigen::MatrixXd random_background(int rows, int cols, std::uint64_t seed) {
  RngStream rng(seed);
  Eigen::MatrixXd bg(rows, cols);
  for (int r = 0; r < rows; ++r) {
    for (int c = 0; c < cols; ++c) bg(r, c) = rng.gaussian(0.0, 2.0);
  }
  return bg;
}

// Nonlinear probe: linear part plus pairwise products.
struct PairwiseModel {
  Eigen::VectorXd b;
  Eigen::MatrixXd C;

  double operator()(const Eigen::VectorXd& z) const {
    double out = z.dot(b);
    for (int i = 0; i < z.size(); ++i) {
      for (int j = i + 1; j < z.size(); ++j) out += C(i, j) * z(i) * z(j);
    }
    return out;
  }
};

PairwiseModel pairwise_model(int m, std::uint64_t seed) {
  RngStream rng(seed);
  PairwiseModel f;
  f.b.resize(m);
  f.C = Eigen::MatrixXd::Zero(m, m);
  for (int i = 0; i < m; ++i) f.b(i) = rng.gaussian(0, 1);
  for (int i = 0; i < m; ++i) {
    for (int j = i + 1; j < m; ++j) f.C(i, j) = rng.gaussian(0, 0.5);
  }
  return f;
}

std::string fmt_phi(double got, double want) {
  char buf[80];
  std::snprintf(buf, sizeof(buf), "got %.12g, want %.12g", got, want);
  return buf;
}

// ---- A1: window-layout golden ------------------------------------------------

void a1_window_layout() {
  static const char* kGolden[37] = {
      "f3_2D:8:15",  "f4_2D:8:30",  "f5_2D:8:45",  "f6_2D:9:00",  "f7_2D:9:15",
      "f8_2D:9:30",  "f9_2D:9:45",  "f10_2D:10:00", "f11_2D:10:15",
      "f12_2D:10:30", "f13_2D:10:45", "f14_2D:11:00", "f15_2D:11:15",
      "f16_2D:11:30", "f17_2D:11:45", "f18_2D:12:00", "f19_2D:12:15",
      "f20_2D:12:30", "f21_2D:12:45", "f22_2D:13:00", "f23_2D:13:15",
      "f24_2D:13:30", "f25_2D:13:45", "f26_2D:14:00", "f27_2D:14:15",
      "f28_2D:14:30", "f29_2D:14:45", "f30_2D:15:00", "f31_2D:15:15",
      "f32_2D:15:30", "f33_2D:15:45", "f34_2D:16:00", "f35_2D:16:15",
      "f36_2D:16:30", "f37_2D:16:45", "f38_2D:17:00", "f2_1D:8:00"};

  const RegularSeries series = make_series(3);
  const FeatureVector at0 = build_feature_vector(series, series.days[2], 0, kCal);
  require(at0.labels.size() == 39, "expected 39 labels at slot 0");
  require(render_label(at0.labels[0], kCal) == "f0:AT", "exogenous label 0");
  require(render_label(at0.labels[1], kCal) == "f1:RT-avg", "exogenous label 1");
  for (int i = 0; i < 37; ++i) {
    const std::string got = render_label(at0.labels[i + 2], kCal);
    require(got == kGolden[i],
            "slot-0 lag " + std::to_string(i) + ": got '" + got + "', want '" +
                kGolden[i] + "'");
  }

  const FeatureVector at7 = build_feature_vector(series, series.days[2], 7, kCal);
  require(render_label(at7.labels.back(), kCal) == "f9_1D:9:45",
          "slot-7 last lag should be f9_1D:9:45");
  bool found = false;
  for (const FeatureLabel& label : at7.labels) {
    if (render_label(label, kCal) == "f37_2D:16:45") found = true;
  }
  require(found, "slot-7 window should contain f37_2D:16:45");
}

// ---- A2: efficiency identity ---------------------------------------------------

void a2_efficiency() {
  RngStream rng(2024);
  for (int t = 0; t < 100; ++t) {
    const int m = 1 + t % 12;
    Eigen::VectorXd w(m), x(m);
    for (int j = 0; j < m; ++j) w(j) = rng.gaussian(0, 2);
    for (int j = 0; j < m; ++j) x(j) = rng.gaussian(0, 2.5);
    const double intercept = rng.gaussian(0, 3);
    const BackgroundSet bg{random_background(3 + t % 40, m, 5000 + t)};

    const HuberModel model = toy_model(w, intercept);
    const Attribution attr =
        linear_contributions(model, testkit::toy_point(x), bg);
    const double resid =
        std::abs(attr.base_value + attr.phi.sum() - attr.prediction);
    require(resid <= 1e-9,
            "instance " + std::to_string(t) + ": residual " + fmt_phi(resid, 0));
  }
}

// ---- A3: oracle equivalence ----------------------------------------------------

void a3_oracles() {
  // Exact enumeration reproduces the closed form on linear models.
  for (std::uint64_t seed = 1; seed <= 3; ++seed) {
    RngStream rng(seed);
    Eigen::VectorXd w(6), x(6);
    for (int j = 0; j < 6; ++j) w(j) = rng.gaussian(0, 1.5);
    for (int j = 0; j < 6; ++j) x(j) = rng.gaussian(0, 2);
    const HuberModel model = toy_model(w, rng.gaussian(0, 2));
    const BackgroundSet bg{random_background(50, 6, 60 + seed)};

    const Attribution lin = linear_contributions(model, testkit::toy_point(x), bg);
    const Attribution ex = exact_shapley(model, testkit::toy_point(x), bg);
    const double gap = (lin.phi - ex.phi).cwiseAbs().maxCoeff();
    require(gap <= 1e-9, "linear/exact mismatch " + fmt_phi(gap, 0));
  }

  // Monte-Carlo brackets the exact values on a nonlinear model.
  const int m = 5;
  const PairwiseModel f = pairwise_model(m, 77);
  const Eigen::MatrixXd bg = random_background(12, m, 78);
  Eigen::VectorXd x(m);
  {
    RngStream rng(79);
    for (int j = 0; j < m; ++j) x(j) = rng.gaussian(0, 2);
  }
  const Eigen::VectorXd exact = exact_shapley_phi(f, x, bg);

  int hits = 0;
  for (int trial = 0; trial < 40; ++trial) {
    const McShapleyResult mc =
        monte_carlo_shapley_run(f, x, bg, 2000, 1000 + trial);
    bool all_within = true;
    for (int j = 0; j < m; ++j) {
      if (std::abs(mc.phi(j) - exact(j)) > 3 * mc.std_errors(j)) all_within = false;
    }
    if (all_within) ++hits;
  }
  require(hits >= 38, "only " + std::to_string(hits) +
                          "/40 trials inside 3 SE (need 38)");
}

// ---- A4: MC convergence rate ---------------------------------------------------

void a4_convergence() {
  const int m = 5;
  const PairwiseModel f = pairwise_model(m, 81);
  const Eigen::MatrixXd bg = random_background(12, m, 82);
  Eigen::VectorXd x(m);
  {
    RngStream rng(83);
    for (int j = 0; j < m; ++j) x(j) = rng.gaussian(0, 2);
  }
  const Eigen::VectorXd exact = exact_shapley_phi(f, x, bg);

  double err_small = 0.0, err_large = 0.0;
  for (int seed = 0; seed < 20; ++seed) {
    const McShapleyResult small =
        monte_carlo_shapley_run(f, x, bg, 500, 2000 + 2 * seed);
    const McShapleyResult large =
        monte_carlo_shapley_run(f, x, bg, 2000, 2001 + 2 * seed);
    err_small += (small.phi - exact).cwiseAbs().mean();
    err_large += (large.phi - exact).cwiseAbs().mean();
  }
  err_small /= 20;
  err_large /= 20;
  require(err_large <= 0.7 * err_small,
          "4x permutations shrank the error only from " +
              std::to_string(err_small) + " to " + std::to_string(err_large));
}

// ---- A5: axiom suite -----------------------------------------------------------

void a5_axioms() {
  const int m = 4;
  // Symmetric pair: features 0 and 1 enter identically, share background
  // columns, and take the same explained value.
  auto sym = [](const Eigen::VectorXd& z) {
    return z(0) + z(1) + z(0) * z(3) + z(1) * z(3) + 0.5 * z(2);
  };
  Eigen::MatrixXd bg = random_background(10, m, 90);
  bg.col(1) = bg.col(0);
  Eigen::VectorXd x(m);
  x << 1.3, 1.3, -0.4, 2.0;

  const Eigen::VectorXd phi = exact_shapley_phi(sym, x, bg);
  require(std::abs(phi(0) - phi(1)) <= 1e-9,
          "exact symmetry: " + fmt_phi(phi(0), phi(1)));

  const McShapleyResult mc = monte_carlo_shapley_run(sym, x, bg, 4000, 91);
  const double sym_tol =
      3 * std::hypot(mc.std_errors(0), mc.std_errors(1)) + 1e-12;
  require(std::abs(mc.phi(0) - mc.phi(1)) <= sym_tol,
          "sampled symmetry: " + fmt_phi(mc.phi(0), mc.phi(1)));

  // Dummy: feature 1 is ignored by the model, so it earns nothing.
  auto dummy = [](const Eigen::VectorXd& z) { return 2 * z(0) + z(2) * z(2); };
  const Eigen::MatrixXd bg2 = random_background(10, m, 92);
  const Eigen::VectorXd phi_d = exact_shapley_phi(dummy, x, bg2);
  require(std::abs(phi_d(1)) <= 1e-9, "exact dummy earned " + fmt_phi(phi_d(1), 0));
  const McShapleyResult mc_d = monte_carlo_shapley_run(dummy, x, bg2, 1000, 93);
  require(std::abs(mc_d.phi(1)) <= 3 * mc_d.std_errors(1) + 1e-12,
          "sampled dummy earned " + fmt_phi(mc_d.phi(1), 0));

  // Additivity: attributions of a sum are the sum of attributions.
  const PairwiseModel fa = pairwise_model(5, 94);
  const PairwiseModel fb = pairwise_model(5, 95);
  auto fsum = [&](const Eigen::VectorXd& z) { return fa(z) + fb(z); };
  const Eigen::MatrixXd bg3 = random_background(10, 5, 96);
  Eigen::VectorXd x5(5);
  {
    RngStream rng(97);
    for (int j = 0; j < 5; ++j) x5(j) = rng.gaussian(0, 1.5);
  }
  const Eigen::VectorXd pa = exact_shapley_phi(fa, x5, bg3);
  const Eigen::VectorXd pb = exact_shapley_phi(fb, x5, bg3);
  const Eigen::VectorXd ps = exact_shapley_phi(fsum, x5, bg3);
  const double add_gap = (ps - pa - pb).cwiseAbs().maxCoeff();
  require(add_gap <= 1e-9, "exact additivity gap " + fmt_phi(add_gap, 0));

  const McShapleyResult ma = monte_carlo_shapley_run(fa, x5, bg3, 2000, 98);
  const McShapleyResult mb = monte_carlo_shapley_run(fb, x5, bg3, 2000, 99);
  const McShapleyResult ms = monte_carlo_shapley_run(fsum, x5, bg3, 2000, 100);
  for (int j = 0; j < 5; ++j) {
    const double se = std::sqrt(ms.std_errors(j) * ms.std_errors(j) +
                                ma.std_errors(j) * ma.std_errors(j) +
                                mb.std_errors(j) * mb.std_errors(j));
    require(std::abs(ms.phi(j) - ma.phi(j) - mb.phi(j)) <= 3 * se + 1e-12,
            "sampled additivity, feature " + std::to_string(j));
  }
}

// ---- A6: Huber robustness ------------------------------------------------------

void a6_huber() {
  int huber_wins = 0;
  for (int seed = 0; seed < 20; ++seed) {
    RngStream rng(900 + seed);
    Eigen::MatrixXd X(200, 1);
    Eigen::VectorXd y(200);
    for (int i = 0; i < 200; ++i) {
      X(i, 0) = 10.0 * rng.next_unit();
      y(i) = 2.0 * X(i, 0) + 1.0 + rng.gaussian(0, 0.05);
    }
    const std::vector<int> order = rng.permutation(200);
    for (int i = 0; i < 20; ++i) y(order[i]) += 50.0;  // gross sensor spikes

    const HuberModel model = fit_huber(testkit::toy_training_set(X, y), kCal);
    const Eigen::VectorXd ols = testkit::ols_oracle(X, y);
    if (std::abs(model.weights(0) - 2.0) < std::abs(ols(1) - 2.0)) ++huber_wins;
  }
  require(huber_wins >= 18, "huber beat ols on only " +
                                std::to_string(huber_wins) + "/20 seeds");

  // A huge delta never lets the weight function engage: identical to OLS.
  RngStream rng(950);
  Eigen::MatrixXd X(200, 1);
  Eigen::VectorXd y(200);
  for (int i = 0; i < 200; ++i) {
    X(i, 0) = 10.0 * rng.next_unit();
    y(i) = 2.0 * X(i, 0) + 1.0 + rng.gaussian(0, 0.05);
  }
  HuberOptions wide;
  wide.delta = 1e9;
  const HuberModel model = fit_huber(testkit::toy_training_set(X, y), kCal, wide);
  const Eigen::VectorXd ols = testkit::ols_oracle(X, y);
  require(std::abs(model.intercept - ols(0)) <= 1e-6,
          "wide-delta intercept " + fmt_phi(model.intercept, ols(0)));
  require(std::abs(model.weights(0) - ols(1)) <= 1e-6,
          "wide-delta slope " + fmt_phi(model.weights(0), ols(1)));
}

// ---- A7: difference-curve arithmetic -------------------------------------------

void a7_difference_curve() {
  std::vector<double> truth(37, 19.0), forecast(37, 19.0);
  truth[27] = 20.1;     // 14:45
  forecast[27] = 18.00;

  const DifferenceCurve curve = difference_curve(truth, forecast, kCal);
  require(curve.argmax_slot == 27, "argmax slot " +
                                       std::to_string(curve.argmax_slot));
  require(format_clock(curve.minutes[27]) == "14:45", "argmax clock label");
  require(std::abs(curve.max_abs - 2.1) <= 1e-12,
          "max diff " + fmt_phi(curve.max_abs, 2.1));

  const std::string csv = render(curve, Format::csv);
  require(csv.find("27,14:45,20.100000,18.000000,2.100000,1") != std::string::npos,
          "csv row for the peak slot");
  const std::string json = render(curve, Format::json);
  require(json.find("\"argmax_time\": \"14:45\"") != std::string::npos,
          "json argmax_time");
  require(json.find("\"max_abs_diff\": 2.100000") != std::string::npos,
          "json max_abs_diff");
}

// ---- A8: bundle shape ----------------------------------------------------------

void a8_bundle() {
  QuietCout quiet;
  testkit::TempDir td("accept_bundle");
  RunConfig config;
  config.out = td.str();
  config.synth_days = 30;
  config.seed = 11;
  cmd_synth(config);
  config.data = td.file("synthetic.csv");
  cmd_ingest(config);
  cmd_train(config);
  cmd_explain(config, Date{2024, 10, 11});  // last synthesized working day

  int n_slices = 0;
  for (const auto& entry : fs::directory_iterator(td.path)) {
    const std::string name = entry.path().filename().string();
    if (name.rfind("slice_", 0) == 0 && name.find(".json") != std::string::npos) {
      ++n_slices;
    }
  }
  require(n_slices == 37, "expected 37 slice files, found " +
                              std::to_string(n_slices));

  const std::string table = testkit::slurp(td.file("top2_table.csv"));
  require(testkit::count_lines(table) == 38,
          "top-2 table should have a header plus 37 rows");

  const std::string matrix = testkit::slurp(td.file("binary_matrix.csv"));
  require(testkit::count_lines(matrix) == 37, "matrix should have 37 rows");
  std::size_t start = 0;
  int row_no = 0;
  while (start < matrix.size()) {
    const std::size_t end = matrix.find('\n', start);
    const std::string line = matrix.substr(start, end - start);
    int cells = 0, sum = 0;
    std::size_t pos = 0;
    while (pos <= line.size()) {
      std::size_t comma = line.find(',', pos);
      if (comma == std::string::npos) comma = line.size();
      sum += std::stoi(line.substr(pos, comma - pos));
      ++cells;
      pos = comma + 1;
    }
    require(cells == 39, "matrix row " + std::to_string(row_no) + " has " +
                             std::to_string(cells) + " columns");
    require(sum == 2, "matrix row " + std::to_string(row_no) + " sums to " +
                          std::to_string(sum));
    start = end + 1;
    ++row_no;
  }

  // Every waterfall closes: at full precision in attributions.json, and at
  // rendering precision inside each slice file.
  const nlohmann::json attrs =
      nlohmann::json::parse(testkit::slurp(td.file("attributions.json")));
  require(attrs.at("slots").size() == 37, "attributions should carry 37 slots");
  for (const auto& slot : attrs.at("slots")) {
    const auto& attr = slot.at("attribution");
    double sum = attr.at("base_value").get<double>();
    for (const auto& phi : attr.at("phi")) sum += phi.get<double>();
    const double gap = std::abs(sum - slot.at("prediction").get<double>());
    require(gap <= 1e-9, "attribution closure gap " + fmt_phi(gap, 0));
  }
  for (const auto& entry : fs::directory_iterator(td.path)) {
    const std::string name = entry.path().filename().string();
    if (name.rfind("slice_", 0) != 0 || name.find(".json") == std::string::npos) {
      continue;
    }
    const nlohmann::json slice =
        nlohmann::json::parse(testkit::slurp(entry.path().string()));
    const auto& contributions = slice.at("contributions");
    require(!contributions.empty(), name + " has no contributions");
    const double last =
        contributions.back().at("cumulative").get<double>();
    const double gap = std::abs(last - slice.at("prediction").get<double>());
    require(gap <= 2e-6, name + " walk ends " + fmt_phi(last, 0) +
                             " away from the prediction");
  }
}

// ---- A9: determinism -----------------------------------------------------------

void a9_determinism() {
  QuietCout quiet;
  testkit::TempDir td("accept_determinism");
  const std::string cfg = td.file("run.conf");
  testkit::spit(cfg,
                "synth.days = 12\n"
                "attribution.method = shapley_mc\n"
                "attribution.n_permutations = 400\n"
                "attribution.seed = 99\n"
                "threads = 2\n");

  auto pipeline = [&](const std::string& dir) {
    require(run_cli({"synth", "--config", cfg, "--out", dir}) == 0, "synth");
    require(run_cli({"ingest", "--config", cfg, "--data", dir + "/synthetic.csv",
                     "--out", dir}) == 0,
            "ingest");
    require(run_cli({"train", "--config", cfg, "--out", dir}) == 0, "train");
    require(run_cli({"explain", "--config", cfg, "--day", "2024-09-17", "--out",
                     dir}) == 0,
            "explain");
  };
  const std::string dir_a = (td.path / "a").string();
  const std::string dir_b = (td.path / "b").string();
  pipeline(dir_a);
  pipeline(dir_b);

  std::map<std::string, fs::path> files_a, files_b;
  for (const auto& entry : fs::recursive_directory_iterator(dir_a)) {
    if (entry.is_regular_file()) {
      files_a[fs::relative(entry.path(), dir_a).string()] = entry.path();
    }
  }
  for (const auto& entry : fs::recursive_directory_iterator(dir_b)) {
    if (entry.is_regular_file()) {
      files_b[fs::relative(entry.path(), dir_b).string()] = entry.path();
    }
  }
  require(!files_a.empty(), "first run produced no files");
  require(files_a.size() == files_b.size(),
          "runs produced different file sets: " +
              std::to_string(files_a.size()) + " vs " +
              std::to_string(files_b.size()));
  for (const auto& [rel, path_a] : files_a) {
    const auto found = files_b.find(rel);
    require(found != files_b.end(), "second run is missing " + rel);
    require(testkit::slurp(path_a.string()) ==
                testkit::slurp(found->second.string()),
            rel + " differs between the runs");
  }
}

// ---- A10: forecast sanity ------------------------------------------------------

void a10_forecast_skill() {
  SynthOptions opts;
  opts.days = 150;
  opts.seed = 5;
  const RegularSeries series =
      regularize(filter_operational(synth_series(opts, kCal), kCal), kCal, 0);
  require(series.n_days() == 150, "expected 150 synthetic days");

  const int n_eval = 20;
  const std::vector<Date> eval_days(series.days.end() - n_eval, series.days.end());
  BacktestOptions bopts;
  bopts.threads = 4;
  const BacktestResult result = backtest(series, eval_days, kCal, bopts);

  const int n_slots = kCal.slots_per_day();
  std::vector<double> persistence_mae(n_slots, 0.0);
  for (const Date& day : eval_days) {
    const int idx = series.day_index(day);
    for (int s = 0; s < n_slots; ++s) {
      persistence_mae[s] += std::abs(series.asat(idx, s) - series.asat(idx - 1, s));
    }
  }
  for (double& v : persistence_mae) v /= n_eval;

  int wins = 0;
  for (int s = 0; s < n_slots; ++s) {
    if (result.per_slot_mae[s] < persistence_mae[s]) ++wins;
  }
  require(wins >= 30, "model beat persistence on only " + std::to_string(wins) +
                          "/37 slots");
}

// ---- harness -------------------------------------------------------------------

struct Criterion {
  const char* name;
  double budget_s;
  std::function<void()> body;
};

}  // namespace

int main() {
  const std::vector<Criterion> criteria = {
      {"A1 window-layout golden", 1.0, a1_window_layout},
      {"A2 efficiency identity", 1.0, a2_efficiency},
      {"A3 oracle equivalence", 30.0, a3_oracles},
      {"A4 MC convergence rate", 60.0, a4_convergence},
      {"A5 axiom suite", 10.0, a5_axioms},
      {"A6 Huber robustness", 5.0, a6_huber},
      {"A7 difference-curve arithmetic", 1.0, a7_difference_curve},
      {"A8 bundle shape", 30.0, a8_bundle},
      {"A9 determinism", 60.0, a9_determinism},
      {"A10 forecast sanity", 60.0, a10_forecast_skill},
  };

  int failures = 0;
  for (const Criterion& criterion : criteria) {
    const auto t0 = std::chrono::steady_clock::now();
    std::string error;
    try {
      criterion.body();
    } catch (const std::exception& e) {
      error = e.what();
    }
    const double elapsed =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
            .count();
    if (error.empty() && elapsed > criterion.budget_s) {
      char buf[64];
      std::snprintf(buf, sizeof(buf), "took %.1fs, budget %.0fs", elapsed,
                    criterion.budget_s);
      error = buf;
    }
    if (error.empty()) {
      std::printf("%-32s PASS (%.2fs)\n", criterion.name, elapsed);
    } else {
      std::printf("%-32s FAIL (%.2fs): %s\n", criterion.name, elapsed,
                  error.c_str());
      ++failures;
    }
    std::fflush(stdout);
  }
  std::printf("%d/10 criteria passed\n", 10 - failures);
  return failures;
}
