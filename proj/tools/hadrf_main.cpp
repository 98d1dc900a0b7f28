// hadrf command line: kinematic predictions, field simulation, Monte Carlo
// validation, intrinsic volumes of image masks, and Hadwiger integrals of
// grid functions.

#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "hadrf/errors.hpp"
#include "hadrf/gkf.hpp"
#include "hadrf/harness.hpp"
#include "hadrf/pgm.hpp"
#include "hadrf/polygonize.hpp"
#include "hadrf/random_field.hpp"
#include "hadrf/sweep.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitNumeric = 2;

// Seed precedence: --seed flag, then HADRF_SEED, then the config value.
void apply_seed_override(hadrf::ExperimentConfig& cfg, const std::optional<std::uint64_t>& flag) {
  if (flag) {
    cfg.field.seed = *flag;
    return;
  }
  if (const char* env = std::getenv("HADRF_SEED")) {
    char* end = nullptr;
    unsigned long long v = std::strtoull(env, &end, 10);
    if (end == env || *end != '\0')
      throw std::invalid_argument("HADRF_SEED is not an unsigned integer");
    cfg.field.seed = v;
  }
}

void print_warnings(const hadrf::ExperimentConfig& cfg) {
  for (const std::string& w : cfg.field.warnings()) std::cerr << "warning: " << w << '\n';
}

std::ofstream open_output(const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::invalid_argument("cannot open output file: " + path);
  return out;
}

int run_predict(const std::string& config_path, const std::optional<std::uint64_t>& seed,
                const std::string& out_path) {
  hadrf::ExperimentConfig cfg = hadrf::ExperimentConfig::from_json_file(config_path);
  apply_seed_override(cfg, seed);
  auto rows = hadrf::predict_rows(cfg);
  if (out_path.empty()) {
    hadrf::write_prediction_csv(std::cout, rows);
  } else {
    auto out = open_output(out_path);
    hadrf::write_prediction_csv(out, rows);
  }
  return kExitOk;
}

int run_simulate(const std::string& config_path, std::uint64_t sample,
                 const std::optional<std::uint64_t>& seed, const std::string& out_path) {
  hadrf::ExperimentConfig cfg = hadrf::ExperimentConfig::from_json_file(config_path);
  apply_seed_override(cfg, seed);
  print_warnings(cfg);
  auto fields = hadrf::simulate(cfg.field, sample);
  hadrf::GridFunction g = hadrf::apply_transform(cfg.transform, fields);
  hadrf::write_grid_function_file(out_path, g);
  return kExitOk;
}

int run_validate(const std::string& config_path, const std::optional<std::uint64_t>& seed,
                 std::string out_path, int jobs) {
  hadrf::ExperimentConfig cfg = hadrf::ExperimentConfig::from_json_file(config_path);
  apply_seed_override(cfg, seed);
  print_warnings(cfg);
  if (out_path.empty()) out_path = cfg.output;
  auto rows = hadrf::run_validation(cfg, jobs);
  if (out_path.empty()) {
    hadrf::write_report_csv(std::cout, rows);
  } else {
    auto out = open_output(out_path);
    hadrf::write_report_csv(out, rows);
  }
  return kExitOk;
}

int run_intrinsic(const std::string& image_path, double spacing, bool polygonized) {
  hadrf::PixelMask mask = hadrf::read_pgm_file(image_path);
  hadrf::GridSpec grid({mask.rows + 1, mask.cols + 1}, spacing);
  hadrf::CubicalSet set = hadrf::CubicalSet::from_pixel_mask(grid, mask.pixels);
  hadrf::IntrinsicVolumes iv = hadrf::intrinsic_volumes(set);
  std::cout << std::setprecision(12);
  for (int k = 0; k <= iv.order(); ++k) std::cout << "mu" << k << ' ' << iv[k] << '\n';
  if (polygonized) std::cout << "mu1_polygonized " << hadrf::polygonized_mu1(set) << '\n';
  return kExitOk;
}

int run_integrate(const std::string& grid_path, int index, const std::string& kind,
                  const std::optional<double>& step) {
  hadrf::GridFunction f = hadrf::read_grid_function_file(grid_path);
  hadrf::SweepSettings settings;
  if (step) settings.step = *step;
  double value = kind == "upper" ? hadrf::upper_integral(f, index, settings)
                                 : hadrf::lower_integral(f, index, settings);
  std::cout << std::setprecision(12) << value << '\n';
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"intrinsic volumes, Hadwiger integrals and Gaussian-related random fields"};
  app.require_subcommand(1);

  std::string config_path, out_path, image_path, grid_path, kind = "lower";
  std::optional<std::uint64_t> seed_flag;
  std::uint64_t sample = 0;
  double spacing = 1.0;
  bool polygonized = false;
  int index = 0;
  int jobs = 0;
  std::optional<double> step;

  auto* predict = app.add_subcommand("predict", "print theory-side predictions as CSV");
  predict->add_option("--config", config_path, "experiment config (JSON)")->required();
  predict->add_option("--seed", seed_flag, "override the config seed");
  predict->add_option("--out", out_path, "output CSV path (default stdout)");

  auto* simulate = app.add_subcommand("simulate", "write one transformed field sample");
  simulate->add_option("--config", config_path, "experiment config (JSON)")->required();
  simulate->add_option("--sample", sample, "sample index")->required();
  simulate->add_option("--seed", seed_flag, "override the config seed");
  simulate->add_option("--out", out_path, "output grid text path")->required();

  auto* validate = app.add_subcommand("validate", "run the Monte Carlo campaign");
  validate->add_option("--config", config_path, "experiment config (JSON)")->required();
  validate->add_option("--seed", seed_flag, "override the config seed");
  validate->add_option("--out", out_path, "report CSV path (default: config output or stdout)");
  validate->add_option("--jobs", jobs, "worker threads (default: hardware)");

  auto* intrinsic = app.add_subcommand("intrinsic", "intrinsic volumes of a PGM mask");
  intrinsic->add_option("--image", image_path, "PGM mask (P2 or P5, nonzero = present)")
      ->required();
  intrinsic->add_option("--spacing", spacing, "grid spacing (default 1.0)");
  intrinsic->add_flag("--polygonized", polygonized, "also print the contour-based mu1");

  auto* integrate = app.add_subcommand("integrate", "Hadwiger integral of a grid function");
  integrate->add_option("--grid", grid_path, "grid text file")->required();
  integrate->add_option("--index", index, "intrinsic volume index")->required();
  integrate->add_option("--kind", kind, "lower | upper")->check(CLI::IsMember({"lower", "upper"}));
  integrate->add_option("--step", step, "level sweep step");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (predict->parsed()) return run_predict(config_path, seed_flag, out_path);
    if (simulate->parsed()) return run_simulate(config_path, sample, seed_flag, out_path);
    if (validate->parsed()) return run_validate(config_path, seed_flag, out_path, jobs);
    if (intrinsic->parsed()) return run_intrinsic(image_path, spacing, polygonized);
    if (integrate->parsed()) return run_integrate(grid_path, index, kind, step);
  } catch (const hadrf::numeric_error& e) {
    std::cerr << "numerical failure: " << e.what() << '\n';
    return kExitNumeric;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  }
  return kExitOk;
}
