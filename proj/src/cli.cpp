#include "aircast/cli.hpp"

#include <CLI11.hpp>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <nlohmann/json.hpp>
#include <sstream>

#include "aircast/error.hpp"
#include "aircast/forecast.hpp"
#include "aircast/series.hpp"
#include "aircast/shapley.hpp"
#include "aircast/synth.hpp"
#include "aircast/textio.hpp"

namespace fs = std::filesystem;

namespace aircast {

namespace {

std::string out_path(const RunConfig& config, const std::string& name) {
  return (fs::path(config.out) / name).string();
}

void ensure_out_dir(const RunConfig& config) {
  std::error_code ec;
  fs::create_directories(config.out, ec);
  if (ec) {
    throw Error(Errc::io_error, "cannot create output directory '" + config.out + "'");
  }
}

void write_text(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(Errc::io_error, "cannot write '" + path + "'");
  out << content;
  if (!out) throw Error(Errc::io_error, "write failed for '" + path + "'");
}

std::string read_text(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(Errc::io_error, "cannot open '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

std::string model_filename(int slot) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "model_slot%02d.json", slot);
  return std::string(buf);
}

// Pooled model wins if present; otherwise one file per slot is required.
std::vector<HuberModel> read_models(const RunConfig& config) {
  const std::string pooled_path = out_path(config, "model_pooled.json");
  if (fs::exists(pooled_path)) {
    return {read_model(pooled_path)};
  }
  std::vector<HuberModel> models;
  const int n_slots = config.cal.slots_per_day();
  models.reserve(n_slots);
  for (int s = 0; s < n_slots; ++s) {
    const std::string path = out_path(config, model_filename(s));
    if (!fs::exists(path)) {
      throw Error(Errc::io_error, "model file '" + path + "' missing; run train first");
    }
    models.push_back(read_model(path));
  }
  return models;
}

RegularSeries read_series(const RunConfig& config) {
  return read_series_csv(out_path(config, "series.csv"), config.cal);
}

std::string forecast_csv(const ForecastCurve& curve, const OperationalCalendar& cal) {
  std::string out = "slot,time,forecast_asat\n";
  for (std::size_t s = 0; s < curve.values.size(); ++s) {
    out += std::to_string(s) + "," + format_clock(cal.minute_of(static_cast<int>(s))) +
           "," + fmt6(curve.values[s]) + "\n";
  }
  return out;
}

std::string run_meta_json(const RunConfig& config, const char* command,
                          const Date* target_day) {
  std::string out = "{\n";
  out += "  \"command\": \"" + std::string(command) + "\",\n";
  if (target_day) {
    out += "  \"target_day\": \"" + format_date(*target_day) + "\",\n";
  }
  out += "  \"method\": \"" + config.method + "\",\n";
  out += "  \"n_permutations\": " + std::to_string(config.n_permutations) + ",\n";
  out += "  \"seed\": " + std::to_string(config.seed) + ",\n";
  out += "  \"threads\": " + std::to_string(config.threads) + ",\n";
  out += "  \"pooled\": " + std::string(config.pooled ? "true" : "false") + ",\n";
  out += "  \"window_days\": " + std::to_string(config.window_days) + ",\n";
  out += "  \"k\": " + std::to_string(config.top_k) + ",\n";
  out += "  \"formats\": [";
  for (std::size_t i = 0; i < config.formats.size(); ++i) {
    if (i) out += ", ";
    out += "\"" + std::string(format_ext(config.formats[i])) + "\"";
  }
  out += "]\n}\n";
  return out;
}

// The report bundle shared by cmd_explain and cmd_report.
struct ExplainedSlot {
  int minute = 0;
  double prediction = 0.0;
  Attribution attr;
};

void write_bundle(const RunConfig& config, const std::vector<ExplainedSlot>& slots,
                  const std::vector<double>* truth) {
  std::vector<SliceReport> slices;
  slices.reserve(slots.size());
  for (const ExplainedSlot& es : slots) {
    slices.push_back(make_slice(es.attr, es.prediction, es.minute));
  }
  for (const SliceReport& slice : slices) {
    for (Format format : config.formats) {
      write_text(out_path(config, slice_filename(slice.minute_of_day, format)),
                 render(slice, format));
    }
  }
  write_text(out_path(config, "top2_table.csv"),
             render(top_k_table(slices, config.top_k), Format::csv));
  write_text(out_path(config, "binary_matrix.csv"),
             render(binary_top_matrix(slices), Format::csv));

  if (truth) {
    std::vector<double> forecast;
    forecast.reserve(slots.size());
    for (const ExplainedSlot& es : slots) forecast.push_back(es.prediction);
    const DifferenceCurve curve = difference_curve(*truth, forecast, config.cal);
    write_text(out_path(config, "diff_curve.csv"), render(curve, Format::csv));
    for (Format format : config.formats) {
      if (format == Format::csv) continue;
      write_text(out_path(config, std::string("diff_curve.") + format_ext(format)),
                 render(curve, format));
    }
  }
}

std::string attributions_json(const RunConfig& config, const Date& target_day,
                              const std::vector<ExplainedSlot>& slots,
                              const std::vector<double>* truth) {
  std::string out = "{\n";
  out += "  \"target_day\": \"" + format_date(target_day) + "\",\n";
  out += "  \"method\": \"" + config.method + "\",\n";
  out += "  \"truth\": ";
  if (truth) {
    out += "[";
    for (std::size_t s = 0; s < truth->size(); ++s) {
      if (s) out += ", ";
      out += fmt_shortest((*truth)[s]);
    }
    out += "]";
  } else {
    out += "null";
  }
  out += ",\n  \"slots\": [";
  for (std::size_t i = 0; i < slots.size(); ++i) {
    const ExplainedSlot& es = slots[i];
    if (i) out += ",";
    out += "\n    {\"minute\": " + std::to_string(es.minute);
    out += ", \"prediction\": " + fmt_shortest(es.prediction);
    out += ", \"values\": [";
    for (Eigen::Index j = 0; j < es.attr.x.size(); ++j) {
      if (j) out += ", ";
      out += fmt_shortest(es.attr.x(j));
    }
    out += "], \"indices\": [";
    for (std::size_t j = 0; j < es.attr.indices.size(); ++j) {
      if (j) out += ", ";
      out += std::to_string(es.attr.indices[j]);
    }
    out += "],\n     \"attribution\": ";
    std::string attr = attribution_json(es.attr);
    if (!attr.empty() && attr.back() == '\n') attr.pop_back();
    out += attr + "}";
  }
  out += "\n  ]\n}\n";
  return out;
}

}  // namespace

void cmd_ingest(const RunConfig& config) {
  config.validate();
  if (config.data.empty()) {
    throw Error(Errc::config_invalid, "no input: set data= in config or pass --data");
  }
  ensure_out_dir(config);
  const std::vector<Observation> raw = parse_csv_file(config.data, config.schema);
  const std::vector<Observation> operational = filter_operational(raw, config.cal);
  const RegularSeries series = regularize(operational, config.cal, config.max_fill);
  write_series_csv(series, out_path(config, "series.csv"));
  std::cout << "series.csv: " << series.n_days() << " day(s), "
            << series.cal.slots_per_day() << " slots each, "
            << raw.size() - operational.size() << " non-operational row(s) dropped\n";
}

void cmd_train(const RunConfig& config) {
  config.validate();
  ensure_out_dir(config);
  RegularSeries series = read_series(config);
  if (config.window_days > 0 && series.n_days() > config.window_days) {
    // Keep the most recent window only.
    const Date past_end = add_days(series.days.back(), 1);
    series = days_before(series, past_end, config.window_days);
  }

  const std::vector<HuberModel> models =
      fit_all_slots(series, config.cal, config.huber, config.pooled, config.threads);

  // Drop stale model files so later commands cannot mix modes.
  for (const auto& entry : fs::directory_iterator(config.out)) {
    const std::string name = entry.path().filename().string();
    if (name.rfind("model_", 0) == 0 && name.size() >= 5 &&
        name.compare(name.size() - 5, 5, ".json") == 0) {
      fs::remove(entry.path());
    }
  }
  if (config.pooled) {
    write_model(models.front(), out_path(config, "model_pooled.json"));
  } else {
    for (std::size_t s = 0; s < models.size(); ++s) {
      write_model(models[s], out_path(config, model_filename(static_cast<int>(s))));
    }
  }
  write_text(out_path(config, "coef_dist.csv"),
             render(coefficient_distribution(models, config.cal), Format::csv));
  std::cout << (config.pooled ? 1 : static_cast<int>(models.size()))
            << " model(s) trained on " << series.n_days() << " day(s)\n";
}

void cmd_forecast(const RunConfig& config, const Date& target_day) {
  config.validate();
  if (!config.cal.is_working_day(target_day)) {
    throw Error(Errc::config_invalid,
                format_date(target_day) + " is not a working day");
  }
  ensure_out_dir(config);
  const RegularSeries series = read_series(config);
  const std::vector<HuberModel> models = read_models(config);
  const ForecastCurve curve = forecast_day(models, series, target_day, config.cal);
  write_text(out_path(config, "forecast.csv"), forecast_csv(curve, config.cal));
  std::cout << "forecast for " << format_date(target_day) << ": " << curve.values.size()
            << " slot(s) written\n";
}

void cmd_explain(const RunConfig& config, const Date& target_day) {
  config.validate();
  if (!config.cal.is_working_day(target_day)) {
    throw Error(Errc::config_invalid,
                format_date(target_day) + " is not a working day");
  }
  ensure_out_dir(config);
  const RegularSeries series = read_series(config);
  const std::vector<HuberModel> models = read_models(config);
  const bool pooled = models.size() == 1 && models.front().slot < 0;

  // Everything the explanation may draw on must predate the target day.
  const RegularSeries history = days_before(series, target_day, config.window_days);
  const int n_slots = config.cal.slots_per_day();

  BackgroundSet pooled_bg;
  if (pooled) {
    pooled_bg = background_from(build_pooled_training_set(history, config.cal));
  }

  std::vector<ExplainedSlot> slots;
  slots.reserve(n_slots);
  for (int s = 0; s < n_slots; ++s) {
    const HuberModel& model = pooled ? models.front() : models[s];
    const FeatureVector fv = build_feature_vector(history, target_day, s, config.cal);
    const BackgroundSet bg =
        pooled ? pooled_bg : background_from(build_training_set(history, s, config.cal));

    ExplainedSlot es;
    es.minute = config.cal.minute_of(s);
    es.prediction = predict(model, fv);
    if (config.method == "linear") {
      es.attr = linear_contributions(model, fv, bg);
    } else if (config.method == "shapley_exact") {
      es.attr = exact_shapley(model, fv, bg, config.max_features);
    } else {
      es.attr = monte_carlo_shapley(model, fv, bg, config.n_permutations,
                                    config.seed + static_cast<std::uint64_t>(s),
                                    config.threads);
    }
    const EfficiencyResult eff =
        efficiency_check(es.attr, es.prediction, default_efficiency_tol(es.attr));
    std::cout << "slot " << format_clock(es.minute)
              << " efficiency_residual=" << fmt_shortest(eff.residual) << "\n";
    slots.push_back(std::move(es));
  }

  // Forecast curve emitted alongside the explanations.
  ForecastCurve curve;
  curve.day = target_day;
  for (const ExplainedSlot& es : slots) curve.values.push_back(es.prediction);
  write_text(out_path(config, "forecast.csv"), forecast_csv(curve, config.cal));

  std::vector<double> truth;
  const int day_idx = series.day_index(target_day);
  if (day_idx >= 0) {
    for (int s = 0; s < n_slots; ++s) truth.push_back(series.asat(day_idx, s));
  }
  const std::vector<double>* truth_ptr = day_idx >= 0 ? &truth : nullptr;

  write_text(out_path(config, "attributions.json"),
             attributions_json(config, target_day, slots, truth_ptr));
  write_bundle(config, slots, truth_ptr);
  write_text(out_path(config, "run_meta.json"),
             run_meta_json(config, "explain", &target_day));
  std::cout << slots.size() << " slice(s) written to " << config.out << "\n";
}

void cmd_report(const RunConfig& config) {
  config.validate();
  const std::string text = read_text(out_path(config, "attributions.json"));
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw Error(Errc::io_error, std::string("bad attributions.json: ") + e.what());
  }
  try {
    std::vector<ExplainedSlot> slots;
    std::vector<double> truth;
    const bool have_truth = !doc.at("truth").is_null();
    if (have_truth) {
      for (const auto& v : doc["truth"]) truth.push_back(v.get<double>());
    }
    for (const auto& item : doc.at("slots")) {
      ExplainedSlot es;
      es.minute = item.at("minute").get<int>();
      es.prediction = item.at("prediction").get<double>();
      const auto& attr = item.at("attribution");
      const std::string method = attr.at("method").get<std::string>();
      if (method == "linear_exact") es.attr.method = AttrMethod::linear_exact;
      else if (method == "shapley_exact") es.attr.method = AttrMethod::shapley_exact;
      else if (method == "shapley_mc") es.attr.method = AttrMethod::shapley_mc;
      else throw Error(Errc::io_error, "unknown attribution method '" + method + "'");
      es.attr.base_value = attr.at("base_value").get<double>();
      es.attr.prediction = es.prediction;
      const auto& values = item.at("values");
      es.attr.x.resize(values.size());
      for (std::size_t j = 0; j < values.size(); ++j) es.attr.x(j) = values[j].get<double>();
      for (const auto& v : item.at("indices")) es.attr.indices.push_back(v.get<int>());
      const auto& phi = attr.at("phi");
      es.attr.phi.resize(phi.size());
      for (std::size_t j = 0; j < phi.size(); ++j) es.attr.phi(j) = phi[j].get<double>();
      for (const auto& s : attr.at("labels")) es.attr.labels.push_back(s.get<std::string>());
      if (attr.contains("std_errors")) {
        const auto& se = attr["std_errors"];
        es.attr.std_errors.resize(se.size());
        for (std::size_t j = 0; j < se.size(); ++j) es.attr.std_errors(j) = se[j].get<double>();
        es.attr.n_samples = attr.at("n_samples").get<int>();
        es.attr.seed = attr.at("seed").get<std::uint64_t>();
      }
      slots.push_back(std::move(es));
    }
    write_bundle(config, slots, have_truth ? &truth : nullptr);
    std::cout << slots.size() << " slice(s) re-rendered to " << config.out << "\n";
  } catch (const nlohmann::json::exception& e) {
    throw Error(Errc::io_error, std::string("bad attributions.json: ") + e.what());
  }
}

void cmd_synth(const RunConfig& config) {
  config.validate();
  ensure_out_dir(config);
  SynthOptions opts;
  opts.start = config.synth_start;
  opts.days = config.synth_days;
  opts.seed = config.seed;
  const std::vector<Observation> obs = synth_series(opts, config.cal);
  write_raw_csv(obs, out_path(config, "synthetic.csv"));
  std::cout << "synthetic.csv: " << obs.size() << " row(s) over " << config.synth_days
            << " working day(s)\n";
}

int exit_code_for(Errc code) {
  switch (code) {
    case Errc::malformed_timestamp:
    case Errc::non_numeric_value:
    case Errc::duplicate_timestamp:
    case Errc::missing_column:
    case Errc::gap_too_large:
    case Errc::empty_input:
      return 2;
    case Errc::insufficient_history:
    case Errc::not_enough_rows:
      return 3;
    case Errc::missing_day:
      return 4;
    default:
      return 1;
  }
}

int run_cli(const std::vector<std::string>& args) {
  CLI::App app{"next-day supply-air temperature forecasts with per-point explanations"};
  app.require_subcommand(1);

  std::string config_path, out_dir, data, schema_spec, day_text, method, start_text;
  std::uint64_t seed = 0;
  int threads = 0, days = 0;
  bool pooled = false;

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--config", config_path, "config file (key = value lines)");
    sub->add_option("--out", out_dir, "output directory");
    sub->add_option("--seed", seed, "random seed");
    sub->add_option("--threads", threads, "worker threads");
    sub->add_option("--schema", schema_spec, "column mapping ts=<col>,asat=<col>,at=<col>,rt=<col>");
  };

  CLI::App* c_ingest = app.add_subcommand("ingest", "parse raw CSV into a regular series");
  add_common(c_ingest);
  c_ingest->add_option("--data", data, "raw input CSV");

  CLI::App* c_train = app.add_subcommand("train", "fit per-slot models from series.csv");
  add_common(c_train);
  c_train->add_flag("--pooled", pooled, "fit one shared model instead of 37");

  CLI::App* c_forecast = app.add_subcommand("forecast", "predict a day's control curve");
  add_common(c_forecast);
  c_forecast->add_option("--day", day_text, "target day YYYY-MM-DD")->required();

  CLI::App* c_explain = app.add_subcommand("explain", "forecast plus per-slot attributions");
  add_common(c_explain);
  c_explain->add_option("--day", day_text, "target day YYYY-MM-DD")->required();
  c_explain->add_option("--method", method, "linear | shapley_exact | shapley_mc");

  CLI::App* c_report = app.add_subcommand("report", "re-render reports from attributions.json");
  add_common(c_report);

  CLI::App* c_synth = app.add_subcommand("synth", "generate synthetic sensor data");
  add_common(c_synth);
  c_synth->add_option("--days", days, "working days to generate");
  c_synth->add_option("--start", start_text, "first day YYYY-MM-DD");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : 1;
  }

  try {
    RunConfig config;
    if (!config_path.empty()) config = load_config(config_path);

    CLI::App* sub = app.get_subcommands().front();
    if (sub->count("--out")) config.out = out_dir;
    if (sub->count("--seed")) config.seed = seed;
    if (sub->count("--threads")) config.threads = threads;
    if (sub->count("--schema")) config.schema = parse_schema_spec(schema_spec);
    if (sub == c_ingest && c_ingest->count("--data")) config.data = data;
    if (sub == c_train && c_train->count("--pooled")) config.pooled = true;
    if (sub == c_explain && c_explain->count("--method")) config.method = method;
    if (sub == c_synth && c_synth->count("--days")) config.synth_days = days;
    if (sub == c_synth && c_synth->count("--start")) {
      if (!parse_date(start_text, config.synth_start)) {
        throw Error(Errc::config_invalid, "--start '" + start_text + "' is not a date");
      }
    }

    Date target_day;
    if (sub == c_forecast || sub == c_explain) {
      if (!parse_date(day_text, target_day)) {
        throw Error(Errc::config_invalid, "--day '" + day_text + "' is not a date");
      }
    }

    if (sub == c_ingest) cmd_ingest(config);
    else if (sub == c_train) cmd_train(config);
    else if (sub == c_forecast) cmd_forecast(config, target_day);
    else if (sub == c_explain) cmd_explain(config, target_day);
    else if (sub == c_report) cmd_report(config);
    else cmd_synth(config);
    return 0;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    std::cerr << "error_code=" << e.code_name() << "\n";
    return exit_code_for(e.code());
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    std::cerr << "error_code=Internal\n";
    return 1;
  }
}

}  // namespace aircast
