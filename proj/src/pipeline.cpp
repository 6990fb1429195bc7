#include "tsfit/pipeline.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "tsfit/arma.hpp"
#include "tsfit/csv.hpp"
#include "tsfit/errors.hpp"
#include "tsfit/garma.hpp"
#include "tsfit/numeric.hpp"
#include "tsfit/svg.hpp"

namespace tsfit {

namespace {

using ordered_json = nlohmann::ordered_json;

template <typename F>
auto stage(const char* name, F&& fn) -> decltype(fn()) {
  try {
    return fn();
  } catch (Error& e) {
    e.set_stage(name);
    throw;
  }
}

void validate_config(const PipelineConfig& cfg) {
  if (cfg.input_path.empty()) throw InvalidSpec("input path is required");
  if (!(cfg.train_fraction > 0.0 && cfg.train_fraction < 1.0)) {
    throw InvalidSpec("train fraction must lie in (0, 1)");
  }
  if (!(cfg.alpha > 0.0 && cfg.alpha < 1.0)) throw InvalidSpec("alpha must lie in (0, 1)");
  if (cfg.candidates.empty()) throw InvalidSpec("candidate list must not be empty");
  for (auto [p, q] : cfg.candidates) {
    if (p < 0 || q < 0 || p + q == 0) {
      throw InvalidSpec("candidate orders must be non-negative with p + q >= 1");
    }
  }
  if (cfg.forecast_horizon < 0) throw InvalidSpec("forecast horizon must be non-negative");
  if (cfg.garma_orders && (cfg.garma_orders->first < 0 || cfg.garma_orders->second < 0)) {
    throw InvalidSpec("garma orders must be non-negative");
  }
}

bool is_count_series(const std::vector<double>& v) {
  return std::all_of(v.begin(), v.end(),
                     [](double y) { return y >= 0.0 && y == std::floor(y); });
}

// j-times differenced copies of a value vector, index 0 = raw.
std::vector<std::vector<double>> difference_ladder(const std::vector<double>& values, int d) {
  std::vector<std::vector<double>> ladder(static_cast<std::size_t>(d) + 1);
  ladder[0] = values;
  for (int j = 1; j <= d; ++j) {
    const auto& prev = ladder[static_cast<std::size_t>(j - 1)];
    std::vector<double> next(prev.size() - 1);
    for (std::size_t i = 0; i + 1 < prev.size(); ++i) next[i] = prev[i + 1] - prev[i];
    ladder[static_cast<std::size_t>(j)] = std::move(next);
  }
  return ladder;
}

// Integrate fixed-origin forecasts of the d-th difference back to the level
// scale, seeding each level with the last train value of that level.
std::vector<double> integrate_forecasts(const std::vector<double>& diff_forecasts,
                                        const std::vector<std::vector<double>>& train_ladder,
                                        int d) {
  std::vector<double> last(static_cast<std::size_t>(d));
  for (int j = 0; j < d; ++j) last[static_cast<std::size_t>(j)] = train_ladder[static_cast<std::size_t>(j)].back();

  std::vector<double> level(diff_forecasts.size());
  for (std::size_t i = 0; i < diff_forecasts.size(); ++i) {
    double v = diff_forecasts[i];
    for (int j = d - 1; j >= 0; --j) {
      v += last[static_cast<std::size_t>(j)];
      last[static_cast<std::size_t>(j)] = v;
    }
    level[i] = v;
  }
  return level;
}

// One-step level predictions over original indices [from, n): predicted d-th
// difference plus the actual lower-level values at t-1.
std::vector<double> level_one_step(const std::vector<double>& diff_predictions,
                                   const std::vector<std::vector<double>>& full_ladder,
                                   int d, std::size_t from) {
  std::vector<double> level(diff_predictions.size());
  for (std::size_t i = 0; i < diff_predictions.size(); ++i) {
    const std::size_t t = from + i;  // original index being predicted
    double v = diff_predictions[i];
    for (int j = d - 1; j >= 0; --j) {
      // actual value of the j-th difference at original time t-1
      v += full_ladder[static_cast<std::size_t>(j)][t - 1 - static_cast<std::size_t>(j)];
    }
    level[i] = v;
  }
  return level;
}

std::string sanitize_label(const std::string& label) {
  std::string out;
  for (char c : label) {
    if (std::isalnum(static_cast<unsigned char>(c))) {
      out.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(c))));
    } else if (!out.empty() && out.back() != '_') {
      out.push_back('_');
    }
  }
  while (!out.empty() && out.back() == '_') out.pop_back();
  return out;
}

void write_text_file(const std::string& path, const std::string& content) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw IoError("cannot write " + path);
  f << content;
  if (!f) throw IoError("write failed: " + path);
}

}  // namespace

std::string model_label(int p, int q) {
  if (p > 0 && q == 0) return "AR(" + std::to_string(p) + ")";
  if (p == 0 && q > 0) return "MA(" + std::to_string(q) + ")";
  return "ARMA(" + std::to_string(p) + "," + std::to_string(q) + ")";
}

RunReport run_pipeline(const PipelineConfig& config) {
  stage("config", [&] { validate_config(config); });

  RunReport rep;
  rep.config = config;

  // Ingest.
  csv::IngestResult ingested = stage("ingest", [&] {
    return csv::ingest(config.input_path, config.date_column, config.value_column,
                       config.date_column_explicit);
  });
  for (auto& w : ingested.warnings) rep.warnings.push_back("ingest: " + w);
  const TimeSeries& full = ingested.series;
  rep.raw_values = full.values;
  rep.raw_dates = full.dates;

  // Describe.
  rep.summary = stage("summarize", [&] { return summarize(full); });

  // Split.
  auto [train, test] = stage("split", [&] { return split(full, config.train_fraction); });
  rep.split = split_spec(full, config.train_fraction);
  rep.test_actuals = test.values;

  // Stationarity loop: difference the train series until the ADF test rejects
  // the unit root, at most twice.
  TimeSeries stat_train = train;
  stage("stationarity", [&] {
    bool adf_usable = true;
    try {
      rep.adf_before = adf_test(stat_train);
    } catch (const SeriesTooShort&) {
      adf_usable = false;
      rep.warnings.push_back(
          "stationarity: series too short for the ADF regression; proceeding without "
          "differencing");
    }
    if (adf_usable) {
      AdfResult current = *rep.adf_before;
      while (!is_stationary(current, config.alpha)) {
        if (rep.d_used >= 2) {
          throw NumericalDegeneracy(
              "series still non-stationary after 2 differencing passes (ADF p = " +
              csv::format_double(current.p_value) + ")");
        }
        stat_train = difference(stat_train, 1);
        ++rep.d_used;
        current = adf_test(stat_train);
        rep.adf_after = current;
      }
    }
  });
  rep.stationary_values = stat_train.values;

  // Identification plots.
  stage("correlogram", [&] {
    const std::size_t max_lag = default_max_lag(stat_train.size());
    rep.train_acf = acf(stat_train, max_lag);
    rep.train_pacf = pacf(stat_train, std::max<std::size_t>(max_lag, 1));
    rep.acf_pattern = classify_pattern(rep.train_acf).to_string();
    rep.pacf_pattern = classify_pattern(rep.train_pacf).to_string();
  });

  // Candidate fits on the stationary train series.
  std::vector<arma::Fit> fits;
  stage("fit", [&] {
    for (auto [p, q] : config.candidates) {
      fits.push_back(arma::fit(stat_train, arma::Spec{p, q, true}));
    }
  });

  // Evaluation on the held-out window, both fixed-origin and rolling.
  const std::size_t test_len = rep.split.test_len;
  rep.horizon_used =
      config.forecast_horizon > 0 ? static_cast<std::size_t>(config.forecast_horizon) : test_len;
  const auto full_ladder = difference_ladder(full.values, rep.d_used);
  const auto train_ladder = difference_ladder(train.values, rep.d_used);

  stage("evaluate", [&] {
    for (std::size_t m = 0; m < fits.size(); ++m) {
      const arma::Fit& fit = fits[m];
      ModelReport mr;
      mr.p = fit.spec.p;
      mr.q = fit.spec.q;
      mr.label = model_label(fit.spec.p, fit.spec.q);
      mr.sigma2 = fit.sigma2;
      mr.loglik = fit.loglik;
      mr.aic = aic(fit.loglik, fit.n_params());
      mr.converged = fit.converged;
      for (int i = 0; i < fit.spec.p; ++i) {
        mr.coefficients.push_back({"phi_" + std::to_string(i + 1),
                                   fit.phi[static_cast<std::size_t>(i)],
                                   fit.se[static_cast<std::size_t>(i)]});
      }
      for (int j = 0; j < fit.spec.q; ++j) {
        mr.coefficients.push_back({"theta_" + std::to_string(j + 1),
                                   fit.theta[static_cast<std::size_t>(j)],
                                   fit.se[static_cast<std::size_t>(fit.spec.p + j)]});
      }
      if (fit.spec.include_mean) {
        mr.coefficients.push_back(
            {"mean", fit.mean, fit.se[static_cast<std::size_t>(fit.spec.p + fit.spec.q)]});
      }

      // Fixed-origin forecasts, long enough for both the test window and the
      // requested horizon.
      const std::size_t h = std::max(test_len, rep.horizon_used);
      std::vector<arma::Forecast> fc = arma::forecast(fit, stat_train, h);
      std::vector<double> diff_points(h);
      for (std::size_t i = 0; i < h; ++i) diff_points[i] = fc[i].point;
      std::vector<double> level_points = integrate_forecasts(diff_points, train_ladder, rep.d_used);

      std::vector<double> psi = arma::psi_weights(fit.phi, fit.theta, h);
      for (int j = 0; j < rep.d_used; ++j) {
        for (std::size_t i = 1; i < psi.size(); ++i) psi[i] += psi[i - 1];
      }
      std::vector<double> level_se(h);
      double cum = 0.0;
      for (std::size_t i = 0; i < h; ++i) {
        cum += psi[i] * psi[i];
        level_se[i] = std::sqrt(fit.sigma2 * cum);
      }

      mr.forecast_points.assign(level_points.begin(),
                                level_points.begin() + static_cast<long>(rep.horizon_used));
      mr.forecast_se.assign(level_se.begin(), level_se.begin() + static_cast<long>(rep.horizon_used));

      std::vector<double> test_view(test.values.begin(), test.values.end());
      std::vector<double> h_view(level_points.begin(), level_points.begin() + static_cast<long>(test_len));
      mr.h_step.mae = mae(h_view, test_view);
      mr.h_step.rmse = rmse(h_view, test_view);

      // Rolling one-step predictions over the test window using the true past.
      TimeSeries full_stat = make_series(full_ladder[static_cast<std::size_t>(rep.d_used)]);
      const std::size_t from_stat = rep.split.train_len - static_cast<std::size_t>(rep.d_used);
      std::vector<double> diff_pred = arma::predict_one_step(fit, full_stat, from_stat);
      mr.prediction_points = level_one_step(diff_pred, full_ladder, rep.d_used, rep.split.train_len);
      mr.one_step.mae = mae(mr.prediction_points, test_view);
      mr.one_step.rmse = rmse(mr.prediction_points, test_view);

      TimeSeries resid = arma::residuals(fit, stat_train);
      mr.residual_values = resid.values;
      mr.ljung_box = ljung_box(resid, 10, fit.spec.p + fit.spec.q);

      rep.models.push_back(std::move(mr));
    }
  });

  // Model selection by AIC.
  stage("rank", [&] {
    std::vector<EvalReport> entries;
    for (const ModelReport& mr : rep.models) {
      EvalReport er;
      er.model_label = mr.label;
      er.aic = mr.aic;
      er.mae = mr.one_step.mae;
      er.rmse = mr.one_step.rmse;
      er.ljung_box = mr.ljung_box;
      entries.push_back(er);
    }
    rep.ranking = rank_models(entries);
    rep.selected = rep.ranking.front().model_label;
  });

  // GARMA on the raw (undifferenced) train counts.
  stage("garma", [&] {
    if (!config.garma_orders) {
      rep.warnings.push_back("garma: disabled by configuration");
      return;
    }
    if (!is_count_series(train.values)) {
      rep.warnings.push_back(
          "garma: train data are not non-negative integer counts; stage skipped");
      return;
    }
    auto [gp, gq] = *config.garma_orders;
    std::vector<std::pair<int, int>> orders = {{gp, gq}};
    if (gq > 0) orders.push_back({gp, 0});
    for (auto [p, q] : orders) {
      garma::Fit gf = garma::fit(train, garma::Spec{p, q, 0.1});
      GarmaReport gr;
      gr.label = "GARMA(" + std::to_string(p) + "," + std::to_string(q) + ")";
      gr.loglik = gf.loglik;
      gr.converged = gf.converged;
      gr.coefficients.push_back({"intercept", gf.beta[0], gf.beta_se[0]});
      for (int i = 0; i < p; ++i) {
        gr.coefficients.push_back({"phi_" + std::to_string(i + 1),
                                   gf.phi[static_cast<std::size_t>(i)],
                                   gf.phi_se[static_cast<std::size_t>(i)]});
      }
      for (int j = 0; j < q; ++j) {
        gr.coefficients.push_back({"theta_" + std::to_string(j + 1),
                                   gf.theta[static_cast<std::size_t>(j)],
                                   gf.theta_se[static_cast<std::size_t>(j)]});
      }
      rep.garma.push_back(std::move(gr));
    }
  });

  // Artifacts.
  stage("emit", [&] {
    std::filesystem::create_directories(config.output_dir);
    rep.artifact_paths = emit_plot_data(rep, config.output_dir);
    const std::string report_path = config.output_dir + "/report.json";
    rep.artifact_paths.push_back(report_path);
    write_text_file(report_path, report_to_json(rep));
  });

  return rep;
}

namespace {

std::string join_path(const std::string& dir, const std::string& name) {
  return dir + "/" + name;
}

void write_csv(const std::string& path, const std::string& header,
               const std::vector<std::vector<std::string>>& rows) {
  std::ostringstream out;
  out << header << "\n";
  for (const auto& row : rows) {
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (i) out << ",";
      out << row[i];
    }
    out << "\n";
  }
  write_text_file(path, out.str());
}

}  // namespace

std::vector<std::string> emit_plot_data(const RunReport& rep, const std::string& output_dir) {
  std::filesystem::create_directories(output_dir);
  std::vector<std::string> paths;
  const auto fd = [](double v) { return csv::format_double(v); };

  const auto add_pair = [&](const std::string& base) {
    paths.push_back(join_path(output_dir, base + ".csv"));
    paths.push_back(join_path(output_dir, base + ".svg"));
  };

  // fig01: the raw series.
  {
    std::vector<std::vector<std::string>> rows;
    std::vector<double> t(rep.raw_values.size());
    for (std::size_t i = 0; i < rep.raw_values.size(); ++i) {
      t[i] = static_cast<double>(i);
      std::vector<std::string> row = {fd(t[i])};
      if (!rep.raw_dates.empty()) row.push_back(rep.raw_dates[i].to_string());
      row.push_back(fd(rep.raw_values[i]));
      rows.push_back(std::move(row));
    }
    const std::string base = "fig01_series";
    write_csv(join_path(output_dir, base + ".csv"),
              rep.raw_dates.empty() ? "t,value" : "t,date,value", rows);
    svg::write_line_chart(join_path(output_dir, base + ".svg"), "Observed series",
                          {{"observed", "#000000", t, rep.raw_values}});
    add_pair(base);
  }

  // fig02: the stationary (differenced) train series.
  {
    std::vector<std::vector<std::string>> rows;
    std::vector<double> t(rep.stationary_values.size());
    for (std::size_t i = 0; i < rep.stationary_values.size(); ++i) {
      t[i] = static_cast<double>(i + static_cast<std::size_t>(rep.d_used));
      rows.push_back({fd(t[i]), fd(rep.stationary_values[i])});
    }
    const std::string base = "fig02_stationary";
    write_csv(join_path(output_dir, base + ".csv"), "t,value", rows);
    svg::write_line_chart(join_path(output_dir, base + ".svg"), "Stationary train series",
                          {{"stationary", "#000000", t, rep.stationary_values}});
    add_pair(base);
  }

  // fig03: normal QQ pairs of the stationary series.
  {
    std::vector<double> sorted = rep.stationary_values;
    std::sort(sorted.begin(), sorted.end());
    const std::size_t n = sorted.size();
    std::vector<double> theo(n);
    std::vector<std::vector<std::string>> rows;
    for (std::size_t i = 0; i < n; ++i) {
      theo[i] = num::normal_quantile((static_cast<double>(i) + 0.5) / static_cast<double>(n));
      rows.push_back({fd(theo[i]), fd(sorted[i])});
    }
    const std::string base = "fig03_qq";
    write_csv(join_path(output_dir, base + ".csv"), "theoretical,sample", rows);
    // reference line through mean +- sd
    double mean = 0.0, sd = 0.0;
    for (double v : sorted) mean += v;
    mean /= static_cast<double>(n);
    for (double v : sorted) sd += (v - mean) * (v - mean);
    sd = n > 1 ? std::sqrt(sd / (static_cast<double>(n) - 1.0)) : 0.0;
    std::vector<double> ref_y(n);
    for (std::size_t i = 0; i < n; ++i) ref_y[i] = mean + sd * theo[i];
    svg::write_line_chart(join_path(output_dir, base + ".svg"), "Normal QQ plot",
                          {{"sample", "#000000", theo, sorted},
                           {"normal", "#d62728", theo, ref_y}});
    add_pair(base);
  }

  // fig04/fig05: correlograms.
  const auto emit_correlogram = [&](const std::string& base, const Correlogram& c,
                                    const std::string& title) {
    std::vector<double> lags, coefs;
    std::vector<std::vector<std::string>> rows;
    const std::size_t first = (c.kind == Correlogram::Kind::acf) ? 0 : 1;
    for (std::size_t lag = first; lag <= c.max_lag(); ++lag) {
      lags.push_back(static_cast<double>(lag));
      coefs.push_back(c.at_lag(lag));
      rows.push_back({fd(static_cast<double>(lag)), fd(c.at_lag(lag)), fd(c.band)});
    }
    write_csv(join_path(output_dir, base + ".csv"), "lag,coefficient,band", rows);
    svg::write_stem_chart(join_path(output_dir, base + ".svg"), title, lags, coefs, c.band);
    add_pair(base);
  };
  emit_correlogram("fig04_acf", rep.train_acf, "ACF of the stationary train series");
  emit_correlogram("fig05_pacf", rep.train_pacf, "PACF of the stationary train series");

  // Forecast and prediction figures per model: the first two models take the
  // canonical fig06..fig09 slots, further ones continue from fig11.
  const std::size_t train_len = rep.split.train_len;
  for (std::size_t m = 0; m < rep.models.size(); ++m) {
    const ModelReport& mr = rep.models[m];
    const int fc_num = m < 2 ? static_cast<int>(6 + m) : static_cast<int>(11 + 2 * (m - 2));
    const int pr_num = m < 2 ? static_cast<int>(8 + m) : static_cast<int>(12 + 2 * (m - 2));
    char buf[8];

    std::snprintf(buf, sizeof(buf), "fig%02d", fc_num);
    {
      const std::string base = std::string(buf) + "_forecast_" + sanitize_label(mr.label);
      std::vector<std::vector<std::string>> rows;
      std::vector<double> t(mr.forecast_points.size());
      for (std::size_t i = 0; i < mr.forecast_points.size(); ++i) {
        t[i] = static_cast<double>(train_len + i);
        std::string actual = i < rep.test_actuals.size() ? fd(rep.test_actuals[i]) : "";
        rows.push_back({fd(t[i]), actual, fd(mr.forecast_points[i]), fd(mr.forecast_se[i])});
      }
      write_csv(join_path(output_dir, base + ".csv"), "t,actual,forecast,se", rows);
      std::vector<double> ta(rep.test_actuals.size());
      for (std::size_t i = 0; i < ta.size(); ++i) ta[i] = static_cast<double>(train_len + i);
      svg::write_line_chart(join_path(output_dir, base + ".svg"), mr.label + " forecast",
                            {{"actual", "#000000", ta, rep.test_actuals},
                             {"forecast", "#d62728", t, mr.forecast_points}});
      add_pair(base);
    }

    std::snprintf(buf, sizeof(buf), "fig%02d", pr_num);
    {
      const std::string base = std::string(buf) + "_prediction_" + sanitize_label(mr.label);
      std::vector<std::vector<std::string>> rows;
      std::vector<double> t(mr.prediction_points.size());
      for (std::size_t i = 0; i < mr.prediction_points.size(); ++i) {
        t[i] = static_cast<double>(train_len + i);
        rows.push_back({fd(t[i]), fd(rep.test_actuals[i]), fd(mr.prediction_points[i])});
      }
      write_csv(join_path(output_dir, base + ".csv"), "t,actual,predicted", rows);
      svg::write_line_chart(join_path(output_dir, base + ".svg"), mr.label + " one-step predictions",
                            {{"actual", "#000000", t, rep.test_actuals},
                             {"predicted", "#d62728", t, mr.prediction_points}});
      add_pair(base);
    }
  }

  // fig10: residuals of the selected model.
  {
    const ModelReport* sel = nullptr;
    for (const ModelReport& mr : rep.models) {
      if (mr.label == rep.selected) sel = &mr;
    }
    if (sel == nullptr && !rep.models.empty()) sel = &rep.models.front();
    if (sel != nullptr) {
      std::vector<std::vector<std::string>> rows;
      std::vector<double> t(sel->residual_values.size());
      for (std::size_t i = 0; i < sel->residual_values.size(); ++i) {
        t[i] = static_cast<double>(i + static_cast<std::size_t>(rep.d_used));
        rows.push_back({fd(t[i]), fd(sel->residual_values[i])});
      }
      const std::string base = "fig10_residuals";
      write_csv(join_path(output_dir, base + ".csv"), "t,residual", rows);
      svg::write_line_chart(join_path(output_dir, base + ".svg"),
                            sel->label + " residuals",
                            {{"residual", "#000000", t, sel->residual_values}});
      add_pair(base);
    }
  }

  std::sort(paths.begin(), paths.end());
  return paths;
}

namespace {

ordered_json adf_to_json(const std::optional<AdfResult>& r) {
  if (!r) return nullptr;
  ordered_json j;
  j["statistic"] = r->statistic;
  j["lag_order"] = r->lag_order;
  j["p_value"] = r->p_value;
  j["clamped"] = r->clamped == AdfResult::Clamp::none
                     ? "none"
                     : (r->clamped == AdfResult::Clamp::low ? "low" : "high");
  j["regression"] = r->regression;
  return j;
}

ordered_json ljung_box_to_json(const LjungBoxResult& lb) {
  ordered_json j;
  j["q_stat"] = lb.q_stat;
  j["df"] = lb.df;
  j["p_value"] = lb.p_value;
  j["lags_used"] = lb.lags_used;
  j["fitted_params_adjustment"] = lb.fitted_params_adjustment;
  return j;
}

ordered_json coefficients_to_json(const std::vector<CoefficientRow>& coefs) {
  ordered_json arr = ordered_json::array();
  for (const CoefficientRow& c : coefs) {
    ordered_json j;
    j["name"] = c.name;
    j["estimate"] = c.estimate;
    j["se"] = c.se;
    arr.push_back(j);
  }
  return arr;
}

}  // namespace

std::string report_to_json(const RunReport& rep) {
  ordered_json j;
  j["schema"] = rep.schema;

  ordered_json cfg;
  cfg["input_path"] = rep.config.input_path;
  cfg["date_column"] = rep.config.date_column;
  cfg["value_column"] = rep.config.value_column;
  cfg["train_fraction"] = rep.config.train_fraction;
  cfg["alpha"] = rep.config.alpha;
  ordered_json cands = ordered_json::array();
  for (auto [p, q] : rep.config.candidates) cands.push_back(ordered_json::array({p, q}));
  cfg["candidates"] = cands;
  cfg["forecast_horizon"] = rep.config.forecast_horizon;
  if (rep.config.garma_orders) {
    cfg["garma_orders"] =
        ordered_json::array({rep.config.garma_orders->first, rep.config.garma_orders->second});
  } else {
    cfg["garma_orders"] = nullptr;
  }
  cfg["output_dir"] = rep.config.output_dir;
  cfg["seed"] = rep.config.seed;
  j["config"] = cfg;

  ordered_json sum;
  sum["min"] = rep.summary.min;
  sum["q1"] = rep.summary.q1;
  sum["median"] = rep.summary.median;
  sum["mean"] = rep.summary.mean;
  sum["q3"] = rep.summary.q3;
  sum["max"] = rep.summary.max;
  sum["sd"] = rep.summary.sd;
  sum["var"] = rep.summary.var;
  j["summary"] = sum;

  ordered_json sp;
  sp["train_fraction"] = rep.split.train_fraction;
  sp["train_len"] = rep.split.train_len;
  sp["test_len"] = rep.split.test_len;
  j["split"] = sp;

  ordered_json st;
  st["adf_before"] = adf_to_json(rep.adf_before);
  st["adf_after"] = adf_to_json(rep.adf_after);
  st["d_used"] = rep.d_used;
  j["stationarity"] = st;

  ordered_json ident;
  ident["acf_pattern"] = rep.acf_pattern;
  ident["pacf_pattern"] = rep.pacf_pattern;
  ident["max_lag"] = rep.train_acf.max_lag();
  j["identification"] = ident;

  ordered_json models = ordered_json::array();
  for (const ModelReport& mr : rep.models) {
    ordered_json m;
    m["label"] = mr.label;
    m["p"] = mr.p;
    m["q"] = mr.q;
    m["coefficients"] = coefficients_to_json(mr.coefficients);
    m["sigma2"] = mr.sigma2;
    m["loglik"] = mr.loglik;
    m["aic"] = mr.aic;
    m["converged"] = mr.converged;
    m["ljung_box"] = ljung_box_to_json(mr.ljung_box);
    ordered_json ev;
    ev["one_step"] = {{"mae", mr.one_step.mae}, {"rmse", mr.one_step.rmse}};
    ev["h_step"] = {{"mae", mr.h_step.mae}, {"rmse", mr.h_step.rmse}};
    m["evaluation"] = ev;
    models.push_back(m);
  }
  j["models"] = models;

  ordered_json ranking = ordered_json::array();
  for (const EvalReport& er : rep.ranking) {
    ordered_json r;
    r["model"] = er.model_label;
    r["aic"] = er.aic;
    r["rmse"] = er.rmse;
    r["mae"] = er.mae;
    ranking.push_back(r);
  }
  j["ranking"] = ranking;
  j["selected"] = rep.selected;

  ordered_json garma_arr = ordered_json::array();
  for (const GarmaReport& gr : rep.garma) {
    ordered_json g;
    g["label"] = gr.label;
    g["coefficients"] = coefficients_to_json(gr.coefficients);
    g["loglik"] = gr.loglik;
    g["converged"] = gr.converged;
    garma_arr.push_back(g);
  }
  j["garma"] = garma_arr;

  j["horizon_used"] = rep.horizon_used;
  j["warnings"] = rep.warnings;
  j["artifacts"] = rep.artifact_paths;

  return j.dump(2) + "\n";
}

std::string report_to_text(const RunReport& rep) {
  std::ostringstream out;
  const auto fd = [](double v) { return csv::format_double(v); };

  out << "== Series ==\n";
  out << "n = " << rep.raw_values.size() << ", train = " << rep.split.train_len
      << ", test = " << rep.split.test_len << "\n";
  out << "min " << fd(rep.summary.min) << "  q1 " << fd(rep.summary.q1) << "  median "
      << fd(rep.summary.median) << "  mean " << fd(rep.summary.mean) << "  q3 "
      << fd(rep.summary.q3) << "  max " << fd(rep.summary.max) << "\n";
  out << "sd " << fd(rep.summary.sd) << "  var " << fd(rep.summary.var) << "\n\n";

  out << "== Stationarity (ADF, constant+trend) ==\n";
  if (rep.adf_before) {
    out << "before differencing: statistic " << fd(rep.adf_before->statistic) << ", p "
        << fd(rep.adf_before->p_value)
        << (rep.adf_before->clamped != AdfResult::Clamp::none ? " (clamped)" : "") << ", lags "
        << rep.adf_before->lag_order << "\n";
  } else {
    out << "before differencing: not computed\n";
  }
  if (rep.adf_after) {
    out << "after differencing:  statistic " << fd(rep.adf_after->statistic) << ", p "
        << fd(rep.adf_after->p_value)
        << (rep.adf_after->clamped != AdfResult::Clamp::none ? " (clamped)" : "") << "\n";
  }
  out << "differences applied: " << rep.d_used << "\n\n";

  out << "== Identification ==\n";
  out << "ACF pattern:  " << rep.acf_pattern << "\n";
  out << "PACF pattern: " << rep.pacf_pattern << "\n\n";

  out << "== Candidate models (train) ==\n";
  for (const ModelReport& mr : rep.models) {
    out << mr.label << (mr.converged ? "" : "  [did not converge]") << "\n";
    for (const CoefficientRow& c : mr.coefficients) {
      out << "  " << c.name << " = " << fd(c.estimate) << " (se " << fd(c.se) << ")\n";
    }
    out << "  sigma2 = " << fd(mr.sigma2) << ", loglik = " << fd(mr.loglik)
        << ", AIC = " << fd(mr.aic) << "\n";
    out << "  Ljung-Box: Q = " << fd(mr.ljung_box.q_stat) << ", df = " << mr.ljung_box.df
        << ", p = " << fd(mr.ljung_box.p_value) << "\n";
    out << "  test MAE/RMSE  one-step: " << fd(mr.one_step.mae) << " / " << fd(mr.one_step.rmse)
        << "   h-step: " << fd(mr.h_step.mae) << " / " << fd(mr.h_step.rmse) << "\n";
  }
  out << "\nselected by AIC: " << rep.selected << "\n\n";

  if (!rep.garma.empty()) {
    out << "== GARMA (Poisson, log link, raw train counts) ==\n";
    for (const GarmaReport& gr : rep.garma) {
      out << gr.label << (gr.converged ? "" : "  [did not converge]") << "\n";
      for (const CoefficientRow& c : gr.coefficients) {
        out << "  " << c.name << " = " << fd(c.estimate) << " (se " << fd(c.se) << ")\n";
      }
      out << "  loglik = " << fd(gr.loglik) << "\n";
    }
    out << "\n";
  }

  if (!rep.warnings.empty()) {
    out << "== Warnings ==\n";
    for (const std::string& w : rep.warnings) out << "  " << w << "\n";
    out << "\n";
  }

  out << "artifacts in " << rep.config.output_dir << " (" << rep.artifact_paths.size()
      << " files)\n";
  return out.str();
}

}  // namespace tsfit
