// Scenario runner and analysis front-end: error-field/Table reports, sync
// bounds, synthetic calibration, and the three comparative navigation
// scenarios. Emits plot-ready CSV plus a run-metadata file; outputs are
// byte-identical for identical config + seed.

#include <filesystem>
#include <iostream>
#include <map>
#include <sstream>

#include <CLI11.hpp>

#include "varibase/control/blend.hpp"
#include "varibase/core/errors.hpp"
#include "varibase/episode/forest_episode.hpp"
#include "varibase/episode/gap_episode.hpp"
#include "varibase/episode/imo_episode.hpp"
#include "varibase/errors/sync.hpp"
#include "varibase/errors/table_report.hpp"
#include "varibase/geometry/depth.hpp"
#include "varibase/io/csv.hpp"
#include "varibase/io/grid_io.hpp"
#include "varibase/io/run_metadata.hpp"
#include "varibase/io/scene_io.hpp"
#include "varibase/rig/actuator.hpp"
#include "varibase/sim/observe.hpp"

namespace {

using namespace varibase;

constexpr int kExitOk = 0;
constexpr int kExitConfig = 2;
constexpr int kExitInternal = 3;

std::string default_out_dir() {
  if (const char* env = std::getenv("VARIBASE_OUT")) return env;
  return "out";
}

std::string make_run_id(const std::map<std::string, std::string>& config) {
  std::ostringstream canonical;
  for (const auto& [k, v] : config) canonical << k << '=' << v << ';';
  return io::run_id_from(canonical.str());
}

void ensure_dir(const std::string& dir) {
  std::filesystem::create_directories(dir);
}

int cmd_analyze_errors(const std::string& out_dir) {
  ensure_dir(out_dir);
  const errors::AnalysisSetup setup;
  const std::map<std::string, std::string> config{
      {"command", "analyze-errors"},
      {"image", "128x128"},
      {"sensor_mm", "4.24"},
      {"scalar_magnitude_percent", io::format_double(setup.scalar_magnitude_percent)},
      {"rotation_magnitude_deg", io::format_double(setup.rotation_magnitude_deg)},
  };
  const std::string run_id = make_run_id(config);

  const std::vector<double> scalar_magnitudes{0.25, 0.5, 1.0, 2.0, 4.0};
  const std::vector<double> rotation_magnitudes{0.05, 0.1, 0.25, 0.5, 1.0};
  const errors::Parameter all_params[] = {
      errors::Parameter::kFocal, errors::Parameter::kAlpha,
      errors::Parameter::kK1,    errors::Parameter::kK2,
      errors::Parameter::kK3,    errors::Parameter::kK4,
      errors::Parameter::kK5,    errors::Parameter::kTx,
      errors::Parameter::kTy,    errors::Parameter::kTz,
      errors::Parameter::kRoll,  errors::Parameter::kPitch,
      errors::Parameter::kYaw};

  for (errors::Parameter p : all_params) {
    for (double f_mm : setup.focal_lengths_mm) {
      const auto& magnitudes = errors::is_rotation(p) ? rotation_magnitudes
                                                      : scalar_magnitudes;
      const auto sweep = errors::magnitude_sweep(p, f_mm, magnitudes, setup);
      std::ostringstream name;
      name << out_dir << "/sweep_" << errors::parameter_name(p) << "_f"
           << io::format_double(f_mm) << "mm.csv";
      io::CsvWriter csv(name.str(),
                        {"magnitude", "e_x_max", "e_y_max", "e_x_mean",
                         "e_y_mean"},
                        run_id);
      for (const auto& pt : sweep) {
        csv.row({io::format_double(pt.magnitude), io::format_double(pt.ex_max),
                 io::format_double(pt.ey_max), io::format_double(pt.ex_mean),
                 io::format_double(pt.ey_mean)});
      }
    }
  }

  const errors::ErrorRatioReport report = errors::error_ratio_report(setup);
  io::CsvWriter summary(
      out_dir + "/ratio_summary.csv",
      {"block", "parameter", "ratio", "band_lo", "band_hi", "within"}, run_id);
  for (const auto& row : report.intrinsic_rows) {
    summary.row({"intrinsic", errors::parameter_name(row.parameter),
                 io::format_double(row.ratio), io::format_double(row.band_lo),
                 io::format_double(row.band_hi), row.within ? "1" : "0"});
  }
  for (const auto& row : report.extrinsic_rows) {
    summary.row({"extrinsic", errors::parameter_name(row.parameter),
                 io::format_double(row.ratio), io::format_double(row.band_lo),
                 io::format_double(row.band_hi), row.within ? "1" : "0"});
  }
  io::write_run_metadata(out_dir, "analyze-errors", run_id, config);
  std::cout << (report.all_within() ? "ratio report: all bands satisfied"
                                    : "ratio report: BAND VIOLATION")
            << "\n";
  return report.all_within() ? kExitOk : kExitInternal;
}

int cmd_sync_limits(const std::string& out_dir, double k_px, double z_m) {
  ensure_dir(out_dir);
  const std::map<std::string, std::string> config{
      {"command", "sync-limits"},
      {"k_px", io::format_double(k_px)},
      {"z_m", io::format_double(z_m)},
  };
  const std::string run_id = make_run_id(config);
  const double focal_px = 483.02;  // 16 mm lens on the reference sensor
  io::CsvWriter csv(out_dir + "/sync_limits.csv",
                    {"baseline_m", "delta_t_s", "v_max_m_s"}, run_id);
  for (int bi = 0; bi <= 20; ++bi) {
    const double b = 0.1 + 0.01 * bi;
    for (double dt : {0.001, 0.002, 0.005, 0.01, 0.02}) {
      const double v = errors::max_velocity_for_sync(k_px, z_m, b, focal_px, dt);
      csv.row({io::format_double(b), io::format_double(dt),
               io::format_double(v)});
    }
  }
  io::write_run_metadata(out_dir, "sync-limits", run_id, config);
  return kExitOk;
}

int cmd_calib(const std::string& out_dir, double noise, uint64_t seed,
              const std::string& rig_out) {
  ensure_dir(out_dir);
  const std::map<std::string, std::string> config{
      {"command", "calib"},
      {"noise", io::format_double(noise)},
      {"seed", std::to_string(seed)},
  };
  const std::string run_id = make_run_id(config);

  // Ten equally spaced baselines over the stroke, ten samples each.
  io::RigFile rig;
  const geometry::CameraModel camera = geometry::make_square_sensor_camera(
      16.0, {128, 128}, 4.24, 0.0, {});
  rig.table = rig::make_synthetic_table(camera, 0.1, 0.3, 10);
  rig.actuator = {0.1, 0.3, noise, 10};
  rig.image_size = {128, 128};
  if (!rig_out.empty()) io::save_rig(rig_out, rig);

  Rng rng(seed);
  io::CsvWriter csv(out_dir + "/calib_samples.csv",
                    {"target_m", "achieved_m", "clamped"}, run_id);
  double sum_t = 0.0, sum_a = 0.0, sum_tt = 0.0, sum_ta = 0.0;
  double max_residual = 0.0;
  int n = 0;
  for (const rig::CalibrationEntry& e : rig.table.entries()) {
    for (int s = 0; s < rig.actuator.samples_per_command; ++s) {
      const rig::CommandResult r =
          rig::command_baseline(rig.actuator, e.baseline_m, rng);
      csv.row({io::format_double(e.baseline_m),
               io::format_double(r.achieved_m), r.clamped ? "1" : "0"});
      sum_t += e.baseline_m;
      sum_a += r.achieved_m;
      sum_tt += e.baseline_m * e.baseline_m;
      sum_ta += e.baseline_m * r.achieved_m;
      max_residual =
          std::max(max_residual, std::abs(r.achieved_m - e.baseline_m));
      ++n;
    }
  }
  const double slope =
      (n * sum_ta - sum_t * sum_a) / (n * sum_tt - sum_t * sum_t);
  io::CsvWriter fit(out_dir + "/calib_fit.csv",
                    {"slope", "max_residual_m", "samples"}, run_id);
  fit.row({io::format_double(slope), io::format_double(max_residual),
           std::to_string(n)});
  io::write_run_metadata(out_dir, "calib", run_id, config);
  std::cout << "calib: slope " << io::format_double(slope) << ", max residual "
            << io::format_double(max_residual) << " m\n";
  return kExitOk;
}

struct SimArgs {
  std::string scene_path;
  std::string rig_path;
  std::string baseline = "variable:0.12";
  uint64_t seed = 1;
  int steps = 0;  // 0: scenario default
  double rate_hz = 20.0;
  std::string out_dir;
  bool compare = false;
  double compare_small = 0.0;  // 0: rig minimum
  double compare_large = 0.26;
  bool dump_grids = false;
};

// First-frame depth and quantized disparity as binary grid dumps, at the
// rig's minimum baseline from the scene origin looking forward.
void dump_initial_grids(const sim::Scene& scene, const io::RigFile& rig,
                        const std::string& out_dir) {
  sim::ObserverState observer;
  observer.heading = Vec3::UnitZ();
  const rig::StereoCalibration calib =
      rig.table.interpolate(rig.actuator.min_baseline_m);
  const DepthImage depth = sim::render_depth(
      scene, observer, calib.intrinsics_left, rig.image_size, 0.0);
  sim::DisparityOptions opts;
  opts.quantize = true;
  const DisparityImage disparity = sim::synthesize_disparity(
      depth, calib.baseline_m, calib.intrinsics_left.fx, opts);
  io::write_grid(out_dir + "/depth_t0.vbgrid", depth, "meters");
  io::write_grid(out_dir + "/disparity_t0.vbgrid", disparity, "pixels");
}

std::map<std::string, std::string> sim_config(const char* command,
                                              const SimArgs& args) {
  return {
      {"command", command},
      {"scene", args.scene_path},
      {"rig", args.rig_path},
      {"baseline", args.baseline},
      {"seed", std::to_string(args.seed)},
      {"steps", std::to_string(args.steps)},
      {"rate", io::format_double(args.rate_hz)},
      {"compare", args.compare ? "1" : "0"},
  };
}

std::vector<std::pair<std::string, episode::BaselineMode>> comparative_arms(
    const SimArgs& args, const io::RigFile& rig) {
  const double small =
      args.compare_small > 0.0 ? args.compare_small : rig.actuator.min_baseline_m;
  const episode::BaselineMode variable =
      episode::BaselineMode::parse(args.baseline);
  if (!args.compare) {
    return {{"requested", variable}};
  }
  return {{"fixed_small", episode::BaselineMode::fixed(small)},
          {"fixed_large", episode::BaselineMode::fixed(args.compare_large)},
          {"variable", variable.variable
                           ? variable
                           : episode::BaselineMode::with_gain(0.12)}};
}

int cmd_sim_forest(const SimArgs& args) {
  ensure_dir(args.out_dir);
  const auto config = sim_config("sim-forest", args);
  const std::string run_id = make_run_id(config);
  const sim::Scene scene = io::load_scene(args.scene_path);
  const io::RigFile rig = io::load_rig(args.rig_path);
  if (args.dump_grids) dump_initial_grids(scene, rig, args.out_dir);

  io::CsvWriter summary(args.out_dir + "/forest_summary.csv",
                        {"arm", "outcome", "completion_time_s", "steps"},
                        run_id);
  for (const auto& [name, mode] : comparative_arms(args, rig)) {
    episode::ForestConfig cfg;
    cfg.baseline = mode;
    cfg.seed = args.seed;
    if (args.steps > 0) cfg.max_steps = args.steps;
    cfg.step_rate_hz = args.rate_hz;
    const episode::ForestResult r = episode::run_forest_episode(scene, rig, cfg);

    io::CsvWriter log(args.out_dir + "/forest_" + name + ".csv",
                      {"time_s", "pos_x", "pos_y", "pos_z", "heading_x",
                       "heading_y", "heading_z", "vel_x", "vel_y", "vel_z",
                       "b_cmd_m", "b_achieved_m", "w", "z_close_m",
                       "z_close_lp_m", "speed_m_s", "stopped", "blocked"},
                      run_id);
    for (const auto& rec : r.records) {
      log.row({io::format_double(rec.time_s), io::format_double(rec.position.x()),
               io::format_double(rec.position.y()),
               io::format_double(rec.position.z()),
               io::format_double(rec.heading.x()),
               io::format_double(rec.heading.y()),
               io::format_double(rec.heading.z()),
               io::format_double(rec.velocity.x()),
               io::format_double(rec.velocity.y()),
               io::format_double(rec.velocity.z()),
               io::format_double(rec.commanded_baseline_m),
               io::format_double(rec.achieved_baseline_m),
               io::format_double(rec.w), io::format_double(rec.z_close_m),
               io::format_double(rec.z_close_lp_m),
               io::format_double(rec.speed_m_s), rec.stopped ? "1" : "0",
               rec.blocked ? "1" : "0"});
    }
    summary.row({name, episode::outcome_name(r.outcome),
                 io::format_double(r.completion_time_s),
                 std::to_string(r.records.size())});
    std::cout << "forest " << name << ": " << episode::outcome_name(r.outcome)
              << " at " << io::format_double(r.completion_time_s) << " s\n";
  }
  io::write_run_metadata(args.out_dir, "sim-forest", run_id, config);
  return kExitOk;
}

int cmd_sim_gap(const SimArgs& args) {
  ensure_dir(args.out_dir);
  const auto config = sim_config("sim-gap", args);
  const std::string run_id = make_run_id(config);
  const sim::Scene scene = io::load_scene(args.scene_path);
  const io::RigFile rig = io::load_rig(args.rig_path);
  if (args.dump_grids) dump_initial_grids(scene, rig, args.out_dir);

  io::CsvWriter summary(args.out_dir + "/gap_summary.csv",
                        {"arm", "outcome", "completion_time_s"}, run_id);
  for (const auto& [name, mode] : comparative_arms(args, rig)) {
    episode::GapConfig cfg;
    cfg.baseline = mode;
    cfg.seed = args.seed;
    if (args.steps > 0) cfg.max_steps = args.steps;
    cfg.step_rate_hz = args.rate_hz;
    const episode::GapResult r = episode::run_gap_episode(scene, rig, cfg);

    io::CsvWriter log(args.out_dir + "/gap_" + name + ".csv",
                      {"time_s", "pos_x", "pos_y", "pos_z", "b_cmd_m",
                       "b_achieved_m", "median_contour_depth_m", "xs_px",
                       "ys_px", "gap_visible", "re_detected"},
                      run_id);
    for (const auto& rec : r.records) {
      log.row({io::format_double(rec.time_s),
               io::format_double(rec.position.x()),
               io::format_double(rec.position.y()),
               io::format_double(rec.position.z()),
               io::format_double(rec.commanded_baseline_m),
               io::format_double(rec.achieved_baseline_m),
               io::format_double(rec.median_contour_depth_m),
               io::format_double(rec.safest_point_px.x()),
               io::format_double(rec.safest_point_px.y()),
               rec.gap_visible ? "1" : "0", rec.re_detected ? "1" : "0"});
    }
    summary.row({name, episode::outcome_name(r.outcome),
                 io::format_double(r.completion_time_s)});
    std::cout << "gap " << name << ": " << episode::outcome_name(r.outcome)
              << "\n";
  }
  io::write_run_metadata(args.out_dir, "sim-gap", run_id, config);
  return kExitOk;
}

int cmd_sim_imo(const SimArgs& args) {
  ensure_dir(args.out_dir);
  const auto config = sim_config("sim-imo", args);
  const std::string run_id = make_run_id(config);
  const sim::Scene scene = io::load_scene(args.scene_path);
  const io::RigFile rig = io::load_rig(args.rig_path);
  if (args.dump_grids) dump_initial_grids(scene, rig, args.out_dir);

  io::CsvWriter summary(
      args.out_dir + "/imo_summary.csv",
      {"arm", "tracked_steps", "lost_steps", "mean_tracked_error_m"}, run_id);
  for (const auto& [name, mode] : comparative_arms(args, rig)) {
    episode::ImoConfig cfg;
    cfg.baseline = mode;
    cfg.seed = args.seed;
    if (args.steps > 0) cfg.max_steps = args.steps;
    cfg.step_rate_hz = args.rate_hz;
    const episode::ImoResult r = episode::run_imo_episode(scene, rig, cfg);

    io::CsvWriter log(args.out_dir + "/imo_" + name + ".csv",
                      {"time_s", "status", "b_cmd_m", "b_achieved_m",
                       "measured_depth_m", "true_depth_m", "est_x", "est_y",
                       "est_z", "true_x", "true_y", "true_z"},
                      run_id);
    for (const auto& rec : r.records) {
      const char* status = !rec.detected ? "no_detection"
                           : rec.status == control::TrackStatus::kTracked
                               ? "tracked"
                           : rec.status == control::TrackStatus::kLostAccuracy
                               ? "lost_accuracy"
                           : rec.status == control::TrackStatus::kLostVisibility
                               ? "lost_visibility"
                               : "no_depth";
      log.row({io::format_double(rec.time_s), status,
               io::format_double(rec.commanded_baseline_m),
               io::format_double(rec.achieved_baseline_m),
               io::format_double(rec.measured_depth_m),
               io::format_double(rec.true_depth_m),
               io::format_double(rec.estimated_position.x()),
               io::format_double(rec.estimated_position.y()),
               io::format_double(rec.estimated_position.z()),
               io::format_double(rec.true_position.x()),
               io::format_double(rec.true_position.y()),
               io::format_double(rec.true_position.z())});
    }
    summary.row({name, std::to_string(r.tracked_steps()),
                 std::to_string(r.lost_steps()),
                 io::format_double(r.mean_tracked_error())});
    std::cout << "imo " << name << ": tracked " << r.tracked_steps()
              << " steps, lost " << r.lost_steps()
              << ", mean error " << io::format_double(r.mean_tracked_error())
              << " m\n";
  }
  io::write_run_metadata(args.out_dir, "sim-imo", run_id, config);
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Variable-baseline stereo toolkit and scenario simulator"};
  app.require_subcommand(1);

  std::string out_dir = default_out_dir();

  auto* analyze = app.add_subcommand("analyze-errors",
                                     "Calibration-error ratio study and sweeps");
  analyze->add_option("--out", out_dir, "Output directory");

  double sync_k = 1.0;
  double sync_z = 1.0;
  auto* sync = app.add_subcommand("sync-limits",
                                  "Max velocity vs baseline for sync offsets");
  sync->add_option("--out", out_dir, "Output directory");
  sync->add_option("--k", sync_k, "Disparity error bound, pixels");
  sync->add_option("--z", sync_z, "Scene depth, meters");

  double calib_noise = 0.007;
  uint64_t calib_seed = 1;
  std::string calib_rig_out;
  auto* calib = app.add_subcommand("calib",
                                   "Synthetic calibration table + actuator check");
  calib->add_option("--out", out_dir, "Output directory");
  calib->add_option("--noise", calib_noise, "Actuator relative noise");
  calib->add_option("--seed", calib_seed, "Random seed");
  calib->add_option("--write-rig", calib_rig_out, "Also write a rig JSON here");

  SimArgs sim_args;
  auto add_sim_options = [&](CLI::App* cmd) {
    cmd->add_option("--scene", sim_args.scene_path, "Scene JSON")->required();
    cmd->add_option("--rig", sim_args.rig_path, "Rig JSON")->required();
    cmd->add_option("--baseline", sim_args.baseline,
                    "fixed:<m> or variable:<K>");
    cmd->add_option("--seed", sim_args.seed, "Random seed");
    cmd->add_option("--steps", sim_args.steps, "Max steps (0 = default)");
    cmd->add_option("--rate", sim_args.rate_hz, "Step rate, Hz");
    cmd->add_option("--out", sim_args.out_dir, "Output directory");
    cmd->add_flag("--compare", sim_args.compare,
                  "Run fixed-small, fixed-large and variable arms");
    cmd->add_flag("--dump-grids", sim_args.dump_grids,
                  "Dump first-frame depth/disparity as binary grids");
    cmd->add_option("--compare-small", sim_args.compare_small,
                    "Small arm baseline (default: rig minimum)");
    cmd->add_option("--compare-large", sim_args.compare_large,
                    "Large arm baseline");
  };
  auto* forest = app.add_subcommand("sim-forest", "Forest navigation episode");
  add_sim_options(forest);
  auto* gap = app.add_subcommand("sim-gap", "Gap traversal episode");
  add_sim_options(gap);
  auto* imo = app.add_subcommand("sim-imo", "Moving-object tracking episode");
  add_sim_options(imo);

  CLI11_PARSE(app, argc, argv);
  if (sim_args.out_dir.empty()) sim_args.out_dir = out_dir;

  try {
    if (analyze->parsed()) return cmd_analyze_errors(out_dir);
    if (sync->parsed()) return cmd_sync_limits(out_dir, sync_k, sync_z);
    if (calib->parsed())
      return cmd_calib(out_dir, calib_noise, calib_seed, calib_rig_out);
    if (forest->parsed()) return cmd_sim_forest(sim_args);
    if (gap->parsed()) return cmd_sim_gap(sim_args);
    if (imo->parsed()) return cmd_sim_imo(sim_args);
  } catch (const varibase::ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInternal;
  }
  return kExitConfig;
}
