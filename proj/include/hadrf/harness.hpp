#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "hadrf/gkf.hpp"
#include "hadrf/random_field.hpp"
#include "hadrf/sweep.hpp"
#include "hadrf/transform.hpp"

namespace hadrf {

// Declarative Monte Carlo campaign: which field, which transform, which
// thresholds/indices, how many samples, which estimators to report.
struct ExperimentConfig {
  FieldSpec field;
  TransformSpec transform;
  std::vector<double> thresholds;
  std::vector<int> indices;
  int samples = 0;
  SweepSettings sweep;
  bool hadwiger = true;
  bool estimator_exact = true;       // cubical-complex valuation rows
  bool estimator_polygonized = false;  // contour-based mu_1 rows (2D)
  bool estimator_vertex = false;       // vertex-quadrature area/Lebesgue rows
  std::string output;

  // Strict parsing: unknown keys are rejected.
  static ExperimentConfig from_json_text(const std::string& text);
  static ExperimentConfig from_json_file(const std::string& path);
  std::string to_json_text() const;

  void validate() const;
};

struct ReportRow {
  std::string quantity;  // mu0..mu3, hadwiger0..hadwiger3, mean
  int index = 0;
  std::optional<double> threshold;
  std::string estimator;  // exact | polygonized | vertex | sweep | sample
  double empirical_mean = 0.0;
  double stderr_mean = 0.0;  // sample stddev / sqrt(N)
  double prediction = 0.0;
  double z = 0.0;  // (mean - prediction) / stderr; NaN when stderr is 0
  int samples = 0;
  std::uint64_t seed = 0;
};

// Mean / standard error / z against a prediction; constant samples yield
// stderr 0 and a NaN z unless the mean matches the prediction exactly.
struct Aggregate {
  double mean = 0.0;
  double stderr_mean = 0.0;
};
Aggregate aggregate_samples(std::span<const double> values);
double z_score(const Aggregate& agg, double prediction);

// Runs the campaign: per sample simulate, transform, measure; deterministic
// for a fixed seed no matter how many worker threads run (jobs <= 0 picks
// the hardware count).
std::vector<ReportRow> run_validation(const ExperimentConfig& cfg, int jobs = 0);

// Theory side only: one row per requested quantity with the prediction
// filled in.
std::vector<ReportRow> predict_rows(const ExperimentConfig& cfg);

DomainSummary domain_summary(const ExperimentConfig& cfg);

void write_report_csv(std::ostream& out, std::span<const ReportRow> rows);
void write_prediction_csv(std::ostream& out, std::span<const ReportRow> rows);

}  // namespace hadrf
