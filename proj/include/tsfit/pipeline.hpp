#ifndef TSFIT_PIPELINE_HPP
#define TSFIT_PIPELINE_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "tsfit/correlogram.hpp"
#include "tsfit/diagnostics.hpp"
#include "tsfit/series.hpp"
#include "tsfit/stationarity.hpp"

namespace tsfit {

struct PipelineConfig {
  std::string input_path;
  std::string date_column = "date";
  bool date_column_explicit = false;  // missing explicit column is an error
  std::string value_column = "cases";
  double train_fraction = 0.9;
  double alpha = 0.05;
  std::vector<std::pair<int, int>> candidates = {{1, 1}, {0, 5}};
  int forecast_horizon = 0;  // 0 means "test length"
  std::optional<std::pair<int, int>> garma_orders = std::pair<int, int>{1, 1};
  std::string output_dir = "out";
  std::uint64_t seed = 1;
};

struct CoefficientRow {
  std::string name;
  double estimate = 0.0;
  double se = 0.0;
};

struct ModelEval {
  double mae = 0.0;
  double rmse = 0.0;
};

struct ModelReport {
  std::string label;
  int p = 0;
  int q = 0;
  std::vector<CoefficientRow> coefficients;
  double sigma2 = 0.0;
  double loglik = 0.0;
  double aic = 0.0;
  bool converged = false;
  LjungBoxResult ljung_box;       // on the train residuals
  ModelEval one_step;             // rolling one-step predictions over the test window
  ModelEval h_step;               // fixed-origin forecasts over the test window

  // plot payloads (original scale unless noted)
  std::vector<double> forecast_points;
  std::vector<double> forecast_se;
  std::vector<double> prediction_points;
  std::vector<double> residual_values;  // stationary-scale train innovations
};

struct GarmaReport {
  std::string label;
  std::vector<CoefficientRow> coefficients;
  double loglik = 0.0;
  bool converged = false;
};

struct RunReport {
  int schema = 1;
  PipelineConfig config;
  SummaryStats summary;
  SplitSpec split;
  std::optional<AdfResult> adf_before;
  std::optional<AdfResult> adf_after;
  int d_used = 0;
  std::string acf_pattern;
  std::string pacf_pattern;
  std::vector<ModelReport> models;     // config order
  std::vector<EvalReport> ranking;     // AIC order (one-step eval numbers)
  std::string selected;
  std::vector<GarmaReport> garma;
  std::vector<std::string> warnings;
  std::vector<std::string> artifact_paths;

  // figure payloads
  std::vector<double> raw_values;
  std::vector<Date> raw_dates;
  std::vector<double> stationary_values;  // d_used-differenced train
  Correlogram train_acf;
  Correlogram train_pacf;
  std::vector<double> test_actuals;
  std::size_t horizon_used = 0;
};

// Ingest, summarize, split, ADF/difference loop, identify, fit candidates,
// evaluate both ways, rank by AIC, diagnose, fit GARMA on the raw train
// counts, and write report.json plus the figure CSV/SVG files under
// config.output_dir. Deterministic for a fixed config and input. Errors carry
// the failing stage name.
RunReport run_pipeline(const PipelineConfig& config);

// Figure CSVs and matching SVGs for a completed report; returns the paths.
std::vector<std::string> emit_plot_data(const RunReport& report, const std::string& output_dir);

std::string report_to_json(const RunReport& report);
std::string report_to_text(const RunReport& report);

// "ARMA(p,q)" / "AR(p)" / "MA(q)".
std::string model_label(int p, int q);

}  // namespace tsfit

#endif  // TSFIT_PIPELINE_HPP
