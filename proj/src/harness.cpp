#include "hadrf/harness.hpp"

#include <atomic>
#include <cmath>
#include <exception>
#include <fstream>
#include <limits>
#include <iomanip>
#include <mutex>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <thread>

#include <json.hpp>

#include "hadrf/polygonize.hpp"

namespace hadrf {

namespace {

using nlohmann::json;

void reject_unknown_keys(const json& obj, std::initializer_list<const char*> allowed,
                         const std::string& where) {
  for (auto it = obj.begin(); it != obj.end(); ++it) {
    bool ok = false;
    for (const char* key : allowed)
      if (it.key() == key) ok = true;
    if (!ok) throw std::invalid_argument("config: unknown key '" + it.key() + "' in " + where);
  }
}

TransformSpec transform_from_json(const json& j) {
  reject_unknown_keys(j, {"kind", "breakpoints", "pieces"}, "transform");
  const std::string kind = j.at("kind").get<std::string>();
  if (kind == "identity") return TransformSpec::identity();
  if (kind == "chi2") return TransformSpec::chi_squared();
  if (kind == "piecewise1d") {
    std::vector<double> breaks;
    if (j.contains("breakpoints")) breaks = j.at("breakpoints").get<std::vector<double>>();
    std::vector<Polynomial> pieces;
    for (const auto& coeffs : j.at("pieces"))
      pieces.emplace_back(coeffs.get<std::vector<double>>());
    if (breaks.empty() && pieces.size() == 1)
      return TransformSpec::piecewise(Piecewise1D(std::move(pieces[0])));
    return TransformSpec::piecewise(Piecewise1D(std::move(breaks), std::move(pieces)));
  }
  throw std::invalid_argument("config: unknown transform kind '" + kind + "'");
}

json transform_to_json(const TransformSpec& t) {
  json j;
  switch (t.kind) {
    case TransformSpec::Kind::identity:
      j["kind"] = "identity";
      break;
    case TransformSpec::Kind::chi2:
      j["kind"] = "chi2";
      break;
    case TransformSpec::Kind::piecewise1d: {
      j["kind"] = "piecewise1d";
      j["breakpoints"] = std::vector<double>(t.pw.breakpoints().begin(), t.pw.breakpoints().end());
      json pieces = json::array();
      for (std::size_t p = 0; p < t.pw.piece_count(); ++p)
        pieces.push_back(std::vector<double>(t.pw.piece(p).coeffs().begin(),
                                             t.pw.piece(p).coeffs().end()));
      j["pieces"] = pieces;
      break;
    }
  }
  return j;
}

ExperimentConfig config_from_json(const json& j) {
  reject_unknown_keys(j,
                      {"field", "transform", "thresholds", "indices", "samples", "sweep",
                       "hadwiger", "estimators", "output"},
                      "top level");
  ExperimentConfig cfg;

  const json& jf = j.at("field");
  reject_unknown_keys(jf, {"dims", "spacing", "length_scale", "components", "seed"}, "field");
  cfg.field.grid = GridSpec(jf.at("dims").get<std::vector<int>>(),
                            jf.at("spacing").get<double>());
  cfg.field.cov.length_scale = jf.at("length_scale").get<double>();
  if (!(cfg.field.cov.length_scale > 0.0))
    throw std::invalid_argument("config: length_scale must be positive");
  cfg.field.components = jf.value("components", 1);
  cfg.field.seed = jf.value("seed", std::uint64_t{0});

  cfg.transform = transform_from_json(j.at("transform"));
  cfg.thresholds = j.value("thresholds", std::vector<double>{});
  if (j.contains("indices")) {
    cfg.indices = j.at("indices").get<std::vector<int>>();
  } else {
    for (int i = 0; i <= cfg.field.grid.dimension(); ++i) cfg.indices.push_back(i);
  }
  cfg.samples = j.at("samples").get<int>();
  if (j.contains("sweep")) {
    const json& js = j.at("sweep");
    reject_unknown_keys(js, {"step"}, "sweep");
    if (js.contains("step")) cfg.sweep.step = js.at("step").get<double>();
  }
  cfg.hadwiger = j.value("hadwiger", true);
  if (j.contains("estimators")) {
    cfg.estimator_exact = false;
    for (const auto& e : j.at("estimators")) {
      const std::string name = e.get<std::string>();
      if (name == "exact")
        cfg.estimator_exact = true;
      else if (name == "polygonized")
        cfg.estimator_polygonized = true;
      else if (name == "vertex")
        cfg.estimator_vertex = true;
      else
        throw std::invalid_argument("config: unknown estimator '" + name + "'");
    }
  }
  cfg.output = j.value("output", std::string{});
  cfg.validate();
  return cfg;
}

// One report row's identity plus how to measure and predict it.
struct RowPlan {
  std::string quantity;
  int index = 0;
  std::optional<double> threshold;
  std::string estimator;
};

std::vector<RowPlan> plan_rows(const ExperimentConfig& cfg) {
  const int n = cfg.field.grid.dimension();
  std::vector<RowPlan> plan;
  auto qname = [](const char* base, int i) {
    std::ostringstream os;
    os << base << i;
    return os.str();
  };
  for (double s : cfg.thresholds) {
    for (int i : cfg.indices) {
      if (cfg.estimator_exact) plan.push_back({qname("mu", i), i, s, "exact"});
      if (cfg.estimator_polygonized && i == 1 && n == 2)
        plan.push_back({qname("mu", i), i, s, "polygonized"});
      if (cfg.estimator_vertex && i == n) plan.push_back({qname("mu", i), i, s, "vertex"});
    }
  }
  if (cfg.hadwiger) {
    for (int i : cfg.indices) {
      plan.push_back({qname("hadwiger", i), i, std::nullopt, "sweep"});
      if (cfg.estimator_vertex && i == n)
        plan.push_back({qname("hadwiger", i), i, std::nullopt, "vertex"});
    }
  }
  plan.push_back({"mean", 0, std::nullopt, "sample"});
  return plan;
}

// Trapezoid vertex weights: 1 inside, halved per boundary axis; their sum
// times h^n is exactly mu_n(M).
double vertex_quadrature(const GridFunction& g, double threshold, bool indicator) {
  const GridSpec& spec = g.grid();
  const int n = spec.dimension();
  std::vector<int> idx(static_cast<std::size_t>(n), 0);
  double acc = 0.0;
  auto values = g.values();
  for (std::size_t flat = 0; flat < values.size(); ++flat) {
    double w = 1.0;
    for (int a = 0; a < n; ++a) {
      int e = spec.dims[static_cast<std::size_t>(a)];
      if (idx[static_cast<std::size_t>(a)] == 0 || idx[static_cast<std::size_t>(a)] == e - 1)
        w *= 0.5;
    }
    acc += w * (indicator ? (values[flat] >= threshold ? 1.0 : 0.0) : values[flat]);
    for (std::size_t a = idx.size(); a-- > 0;) {
      if (++idx[a] < spec.dims[a]) break;
      idx[a] = 0;
    }
  }
  return acc * std::pow(spec.spacing, n);
}

double polygonized_mu1_of_field(const GridFunction& g, double threshold) {
  const GridSpec& spec = g.grid();
  // The vertex lattice doubles as the pixel lattice of the contour mask, so
  // the contour tracks the sampled isoline without erosion.
  std::vector<std::uint8_t> mask(g.values().size());
  auto values = g.values();
  for (std::size_t i = 0; i < mask.size(); ++i) mask[i] = values[i] >= threshold ? 1 : 0;
  GridSpec mask_grid({spec.dims[0] + 1, spec.dims[1] + 1}, spec.spacing);
  return polygonized_mu1(CubicalSet::from_pixel_mask(mask_grid, mask));
}

std::vector<double> measure_sample(const ExperimentConfig& cfg, std::uint64_t sample_index,
                                   const std::vector<RowPlan>& plan) {
  const int n = cfg.field.grid.dimension();
  std::vector<GridFunction> fields = simulate(cfg.field, sample_index);
  GridFunction g = apply_transform(cfg.transform, fields);
  LevelProfile profile(g);

  std::vector<double> sweep_values;
  if (cfg.hadwiger) sweep_values = profile.sweep(IntegralKind::lower, cfg.sweep);

  // Level volumes per distinct threshold, computed once.
  std::vector<IntrinsicVolumes> level_ivs(cfg.thresholds.size());
  for (std::size_t t = 0; t < cfg.thresholds.size(); ++t)
    level_ivs[t] = profile.level_volumes(cfg.thresholds[t], LevelConvention::closed);

  const IntrinsicVolumes domain = profile.domain_volumes();
  std::vector<double> out;
  out.reserve(plan.size());
  for (const RowPlan& row : plan) {
    if (row.estimator == "exact") {
      std::size_t t = 0;
      while (cfg.thresholds[t] != *row.threshold) ++t;
      out.push_back(level_ivs[t][row.index]);
    } else if (row.estimator == "polygonized") {
      out.push_back(polygonized_mu1_of_field(g, *row.threshold));
    } else if (row.estimator == "vertex" && row.threshold) {
      out.push_back(vertex_quadrature(g, *row.threshold, true));
    } else if (row.estimator == "vertex") {
      out.push_back(vertex_quadrature(g, 0.0, false));
    } else if (row.estimator == "sweep") {
      out.push_back(sweep_values[static_cast<std::size_t>(row.index)]);
    } else {  // sample mean of g over M
      out.push_back(vertex_quadrature(g, 0.0, false) / domain[n]);
    }
  }
  return out;
}

double predict_row(const ExperimentConfig& cfg, const DomainSummary& d, const RowPlan& row) {
  const int k = cfg.field.components;
  if (row.quantity == "mean") return transform_mean(cfg.transform, k);
  if (row.threshold)
    return expected_intrinsic_volume(row.index, d, cfg.transform, k, *row.threshold);
  return expected_hadwiger(row.index, d, cfg.transform, k);
}

}  // namespace

ExperimentConfig ExperimentConfig::from_json_text(const std::string& text) {
  return config_from_json(json::parse(text));
}

ExperimentConfig ExperimentConfig::from_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open config: " + path);
  return config_from_json(json::parse(in));
}

std::string ExperimentConfig::to_json_text() const {
  json j;
  j["field"] = {{"dims", field.grid.dims},
                {"spacing", field.grid.spacing},
                {"length_scale", field.cov.length_scale},
                {"components", field.components},
                {"seed", field.seed}};
  j["transform"] = transform_to_json(transform);
  j["thresholds"] = thresholds;
  j["indices"] = indices;
  j["samples"] = samples;
  if (sweep.step) j["sweep"] = {{"step", *sweep.step}};
  j["hadwiger"] = hadwiger;
  std::vector<std::string> est;
  if (estimator_exact) est.push_back("exact");
  if (estimator_polygonized) est.push_back("polygonized");
  if (estimator_vertex) est.push_back("vertex");
  j["estimators"] = est;
  if (!output.empty()) j["output"] = output;
  return j.dump(2);
}

void ExperimentConfig::validate() const {
  const int n = field.grid.dimension();
  if (samples < 2) throw std::invalid_argument("config: need N >= 2 for stderr");
  if (field.components < 1) throw std::invalid_argument("config: components must be >= 1");
  if (!transform.accepts_components(field.components))
    throw std::invalid_argument("config: transform incompatible with component count");
  if (thresholds.empty() && !hadwiger)
    throw std::invalid_argument("config: thresholds empty and hadwiger disabled; nothing to do");
  for (int i : indices)
    if (i < 0 || i > n) throw std::invalid_argument("config: index out of range");
  if (indices.empty()) throw std::invalid_argument("config: indices empty");
}

Aggregate aggregate_samples(std::span<const double> values) {
  Aggregate agg;
  const double n = static_cast<double>(values.size());
  for (double v : values) agg.mean += v;
  agg.mean /= n;
  if (values.size() >= 2) {
    double ss = 0.0;
    for (double v : values) ss += (v - agg.mean) * (v - agg.mean);
    agg.stderr_mean = std::sqrt(ss / (n - 1.0) / n);
  }
  return agg;
}

double z_score(const Aggregate& agg, double prediction) {
  if (agg.stderr_mean > 0.0) return (agg.mean - prediction) / agg.stderr_mean;
  return agg.mean == prediction ? 0.0 : std::numeric_limits<double>::quiet_NaN();
}

DomainSummary domain_summary(const ExperimentConfig& cfg) {
  DomainSummary d;
  const auto sides = cfg.field.grid.side_lengths();
  d.ivs = box_intrinsic_volumes(sides);
  d.lambda2 = second_spectral_moment(cfg.field.cov);
  return d;
}

std::vector<ReportRow> run_validation(const ExperimentConfig& cfg, int jobs) {
  cfg.validate();
  const std::vector<RowPlan> plan = plan_rows(cfg);
  const std::size_t nsamples = static_cast<std::size_t>(cfg.samples);
  std::vector<std::vector<double>> per_sample(nsamples);

  if (jobs <= 0) jobs = static_cast<int>(std::thread::hardware_concurrency());
  if (jobs < 1) jobs = 1;
  jobs = std::min<int>(jobs, static_cast<int>(nsamples));

  std::atomic<std::size_t> next{0};
  std::mutex err_mu;
  std::exception_ptr first_error;
  std::string error_context;

  auto worker = [&]() {
    for (;;) {
      std::size_t idx = next.fetch_add(1);
      if (idx >= nsamples) return;
      try {
        per_sample[idx] = measure_sample(cfg, idx, plan);
      } catch (...) {
        std::lock_guard<std::mutex> lock(err_mu);
        if (!first_error) {
          first_error = std::current_exception();
          error_context = "sample " + std::to_string(idx);
        }
        return;
      }
    }
  };
  std::vector<std::thread> pool;
  for (int t = 1; t < jobs; ++t) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();
  if (first_error) {
    try {
      std::rethrow_exception(first_error);
    } catch (const std::exception& e) {
      throw std::runtime_error("validation aborted at " + error_context + ": " + e.what());
    }
  }

  // Deterministic ascending-sample aggregation.
  const DomainSummary d = domain_summary(cfg);
  std::vector<ReportRow> rows;
  rows.reserve(plan.size());
  std::vector<double> column(nsamples);
  for (std::size_t r = 0; r < plan.size(); ++r) {
    for (std::size_t sidx = 0; sidx < nsamples; ++sidx) column[sidx] = per_sample[sidx][r];
    Aggregate agg = aggregate_samples(column);
    ReportRow row;
    row.quantity = plan[r].quantity;
    row.index = plan[r].index;
    row.threshold = plan[r].threshold;
    row.estimator = plan[r].estimator;
    row.empirical_mean = agg.mean;
    row.stderr_mean = agg.stderr_mean;
    row.prediction = predict_row(cfg, d, plan[r]);
    row.z = z_score(agg, row.prediction);
    row.samples = cfg.samples;
    row.seed = cfg.field.seed;
    rows.push_back(std::move(row));
  }
  return rows;
}

std::vector<ReportRow> predict_rows(const ExperimentConfig& cfg) {
  cfg.validate();
  const DomainSummary d = domain_summary(cfg);
  const std::vector<RowPlan> plan = plan_rows(cfg);
  std::vector<ReportRow> rows;
  for (const RowPlan& p : plan) {
    ReportRow row;
    row.quantity = p.quantity;
    row.index = p.index;
    row.threshold = p.threshold;
    row.estimator = p.estimator;
    row.prediction = predict_row(cfg, d, p);
    row.samples = cfg.samples;
    row.seed = cfg.field.seed;
    rows.push_back(std::move(row));
  }
  return rows;
}

namespace {

std::string num(double v) {
  std::ostringstream os;
  os << std::setprecision(12) << v;
  return os.str();
}

}  // namespace

void write_report_csv(std::ostream& out, std::span<const ReportRow> rows) {
  out << "quantity,i,s,estimator,empirical_mean,stderr,prediction,z,N,seed\n";
  for (const ReportRow& r : rows) {
    out << r.quantity << ',' << r.index << ',';
    if (r.threshold) out << num(*r.threshold);
    out << ',' << r.estimator << ',' << num(r.empirical_mean) << ',' << num(r.stderr_mean) << ','
        << num(r.prediction) << ',' << num(r.z) << ',' << r.samples << ',' << r.seed << '\n';
  }
}

void write_prediction_csv(std::ostream& out, std::span<const ReportRow> rows) {
  out << "quantity,i,s,estimator,prediction\n";
  for (const ReportRow& r : rows) {
    out << r.quantity << ',' << r.index << ',';
    if (r.threshold) out << num(*r.threshold);
    out << ',' << r.estimator << ',' << num(r.prediction) << '\n';
  }
}

}  // namespace hadrf
