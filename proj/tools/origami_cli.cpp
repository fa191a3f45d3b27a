#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "origami/errors.hpp"
#include "origami/io.hpp"

using namespace origami;

namespace {

struct PatternOpts {
  std::vector<double> tile;
  std::optional<double> miura_theta;
  std::optional<double> cw_theta;
  std::string grid = "3x3";
  std::optional<double> len_a;
  std::optional<double> len_b;
};

void add_pattern_flags(CLI::App* cmd, PatternOpts& opts) {
  auto* source = cmd->add_option_group("pattern source");
  source->add_option("--tile", opts.tile,
                     "four interior tile angles in degrees, A,B,C,D")
      ->delimiter(',')
      ->expected(4);
  source->add_option("--miura", opts.miura_theta,
                     "parallelogram tile angle in degrees");
  source->add_option("--chicken-wire", opts.cw_theta,
                     "trapezoid base angle in degrees");
  source->require_option(1);
  cmd->add_option("--grid", opts.grid, "face grid as RxC (default 3x3)");
  cmd->add_option("--len-a", opts.len_a, "slanted side length");
  cmd->add_option("--len-b", opts.len_b, "base side length");
}

std::pair<int, int> parse_grid(const std::string& grid) {
  int rows = 0, cols = 0;
  char sep = 0;
  if (std::sscanf(grid.c_str(), "%d%c%d", &rows, &sep, &cols) != 3 ||
      (sep != 'x' && sep != 'X') || rows < 1 || cols < 1)
    throw CLI::ValidationError("--grid", "expected RxC with positive counts");
  return {rows, cols};
}

CreasePattern build_pattern(const PatternOpts& opts) {
  auto [rows, cols] = parse_grid(opts.grid);
  if (!opts.tile.empty()) {
    std::array<double, 4> angles{};
    for (int i = 0; i < 4; ++i) angles[i] = deg2rad(opts.tile[i]);
    return generate_rotationally_symmetric(QuadTile::from_angles(angles),
                                           rows, cols);
  }
  if (opts.miura_theta) {
    double theta = deg2rad(*opts.miura_theta);
    return generate_miura(theta, opts.len_a.value_or(1.0),
                          opts.len_b.value_or(1.0), rows, cols);
  }
  double theta = deg2rad(*opts.cw_theta);
  double la = opts.len_a.value_or(1.0);
  double lb = opts.len_b.value_or(1.0 + 2.0 * la * std::cos(theta));
  return generate_chicken_wire(theta, la, lb, rows, cols);
}

void write_output(const std::string& out_path, const std::string& content) {
  if (out_path.empty()) {
    std::cout << content;
    return;
  }
  std::ofstream f(out_path, std::ios::binary);
  if (!f) throw CLI::ValidationError("--out", "cannot open " + out_path);
  f << content;
}

std::vector<int> parse_mode_targets(const std::string& mode, int count) {
  if (mode == "all") {
    std::vector<int> all(count);
    for (int i = 0; i < count; ++i) all[i] = i;
    return all;
  }
  try {
    size_t used = 0;
    int idx = std::stoi(mode, &used);
    if (used == mode.size() && idx >= 1 && idx <= count) return {idx - 1};
  } catch (const std::exception&) {
  }
  throw CLI::ValidationError(
      "--mode", "expected 'all' or an index in 1.." + std::to_string(count));
}

bool ends_with(const std::string& s, const std::string& suffix) {
  return s.size() >= suffix.size() &&
         s.compare(s.size() - suffix.size(), suffix.size(), suffix) == 0;
}

nlohmann::ordered_json mode_entry(const GlobalMode& m, int index) {
  nlohmann::ordered_json entry;
  entry["index"] = index + 1;
  entry["vertex_modes"] = m.vertex_modes;
  entry["mv"] = mv_string(m.mv);
  entry["family_dim"] = m.family_dim;
  entry["driver_crease"] = mode_driver_crease(m);
  nlohmann::ordered_json tangent = nlohmann::ordered_json::array();
  for (int i = 0; i < m.tangent.size(); ++i)
    tangent.push_back(m.tangent[i] == 0.0 ? 0.0 : m.tangent[i]);
  entry["tangent"] = std::move(tangent);
  return entry;
}

int run_generate(const PatternOpts& opts, const std::string& out) {
  CreasePattern cp = build_pattern(opts);
  write_output(out, export_fold(cp));
  return 0;
}

int run_modes(const PatternOpts& opts, bool json, const std::string& out) {
  CreasePattern cp = build_pattern(opts);
  auto modes = enumerate_modes(cp);
  if (json) {
    nlohmann::ordered_json j;
    j["mode_count"] = modes.size();
    nlohmann::ordered_json list = nlohmann::ordered_json::array();
    for (size_t m = 0; m < modes.size(); ++m)
      list.push_back(mode_entry(modes[m], static_cast<int>(m)));
    j["modes"] = std::move(list);
    write_output(out, j.dump(2) + "\n");
    return 0;
  }
  std::string text = "modes: " + std::to_string(modes.size()) + "\n";
  for (size_t m = 0; m < modes.size(); ++m) {
    text += "mode " + std::to_string(m + 1) + ": mv=" +
            mv_string(modes[m].mv) +
            " family_dim=" + std::to_string(modes[m].family_dim) +
            " driver_crease=" + std::to_string(mode_driver_crease(modes[m])) +
            "\n";
  }
  write_output(out, text);
  return 0;
}

int run_analyze(const PatternOpts& opts, const std::string& mode, bool json,
                bool require_unique, const std::string& out) {
  CreasePattern cp = build_pattern(opts);
  int count = static_cast<int>(enumerate_modes(cp).size());
  std::vector<int> targets = parse_mode_targets(mode, count);
  std::vector<Analysis> verdicts;
  for (int t : targets) verdicts.push_back(analyze(cp, t));
  if (require_unique)
    for (const Analysis& an : verdicts)
      if (!an.uniquely_self_foldable)
        throw Error(ErrorCode::NotUniquelySelfFoldable,
                    "mode " + std::to_string(an.target_mode + 1) +
                        " is reachable by other branches");
  if (json) {
    write_output(out, report_json(cp, verdicts));
    return 0;
  }
  std::string text;
  text += std::string("class: ") +
          pattern_class_name(verdicts[0].pattern_class) + "\n";
  text += "mode_count: " + std::to_string(count) + "\n";
  char buf[160];
  for (const Analysis& an : verdicts) {
    std::snprintf(buf, sizeof(buf),
                  "mode %d: uniquely_self_foldable=%s span_residual=%.15g "
                  "tangent_dim=%d surrounding_span_dim=%d\n",
                  an.target_mode + 1,
                  an.uniquely_self_foldable ? "true" : "false",
                  an.span_residual, an.tangent_dim, an.surrounding_span_dim);
    text += buf;
  }
  write_output(out, text);
  return 0;
}

int run_selffold(const PatternOpts& opts, const std::string& mode, bool json,
                 const std::string& out) {
  CreasePattern cp = build_pattern(opts);
  int count = static_cast<int>(enumerate_modes(cp).size());
  std::vector<int> targets = parse_mode_targets(mode, count);
  std::vector<Analysis> verdicts;
  for (int t : targets) {
    Analysis an = analyze(cp, t);
    if (!an.force)
      throw Error(ErrorCode::NotUniquelySelfFoldable,
                  "no driving force: mode " + std::to_string(t + 1) +
                      " is reachable by other branches");
    verdicts.push_back(std::move(an));
  }
  if (json) {
    write_output(out, report_json(cp, verdicts));
    return 0;
  }
  std::string text;
  char buf[64];
  for (const Analysis& an : verdicts) {
    text += "mode " + std::to_string(an.target_mode + 1) + " torque:";
    for (int i = 0; i < an.force->torque.size(); ++i) {
      std::snprintf(buf, sizeof(buf), " %.15g", an.force->torque[i]);
      text += buf;
    }
    std::snprintf(buf, sizeof(buf), "\nforward_force_flat: %.15g\n",
                  an.force->forward_force_flat);
    text += buf;
  }
  write_output(out, text);
  return 0;
}

int run_simulate(const PatternOpts& opts, const std::string& mode,
                 double driver_deg, int steps, bool json,
                 const std::string& out, const std::string& fold_out) {
  CreasePattern cp = build_pattern(opts);
  int count = static_cast<int>(enumerate_modes(cp).size());
  std::vector<int> targets = parse_mode_targets(mode, count);
  if (targets.size() != 1)
    throw CLI::ValidationError("--mode", "simulate needs a single mode");
  Analysis an = analyze(cp, targets[0]);
  const GlobalMode& gm = an.modes[targets[0]];
  FoldPath path = fold_path(cp, gm, deg2rad(driver_deg), steps);
  PathSummary summary = summarize_path(
      cp, path, an.force ? &an.force->torque : nullptr);
  if (!fold_out.empty()) {
    Eigen::VectorXd last = path.points.back();
    write_output(fold_out, export_fold(cp, &gm, &last));
  }
  if (json) {
    write_output(out, report_json(cp, {an}, {summary}));
    return 0;
  }
  char buf[256];
  std::snprintf(buf, sizeof(buf),
                "mode %d driver_crease=%d driver_max=%.6g deg steps=%d\n"
                "arc_length=%.15g max_closure_residual=%.3g\n",
                targets[0] + 1, summary.driver_crease, summary.driver_max_deg,
                summary.steps, summary.arc_length,
                summary.max_closure_residual);
  std::string text = buf;
  if (summary.has_force) {
    std::snprintf(buf, sizeof(buf),
                  "forward_force: min=%.15g max=%.15g\n",
                  summary.min_forward_force, summary.max_forward_force);
    text += buf;
  }
  write_output(out, text);
  return 0;
}

int run_export(const PatternOpts& opts, const std::string& mode,
               std::optional<double> driver_deg, const std::string& out) {
  if (out.empty())
    throw CLI::ValidationError("--out", "export needs an output path");
  CreasePattern cp = build_pattern(opts);
  const GlobalMode* chosen = nullptr;
  GlobalMode storage;
  std::vector<GlobalMode> modes;
  if (!mode.empty() || driver_deg) {
    modes = enumerate_modes(cp);
    std::vector<int> targets =
        parse_mode_targets(mode.empty() ? "1" : mode,
                           static_cast<int>(modes.size()));
    if (targets.size() != 1)
      throw CLI::ValidationError("--mode", "export needs a single mode");
    storage = modes[targets[0]];
    chosen = &storage;
  }
  if (ends_with(out, ".svg")) {
    if (driver_deg)
      throw CLI::ValidationError("--driver",
                                 "SVG export draws the flat pattern");
    write_output(out, export_svg(cp, chosen));
    return 0;
  }
  if (driver_deg) {
    Eigen::VectorXd rho = propagate_fold(
        cp, *chosen, mode_driver_crease(*chosen), deg2rad(*driver_deg));
    write_output(out, export_fold(cp, chosen, &rho));
  } else {
    write_output(out, export_fold(cp, chosen));
  }
  return 0;
}

int exit_code_for(const Error& e) {
  switch (e.code()) {
    case ErrorCode::NotUniquelySelfFoldable:
      return 2;
    case ErrorCode::NoConvergence:
    case ErrorCode::BranchExhausted:
    case ErrorCode::RankDeficiencyAmbiguous:
    case ErrorCode::InternalInconsistency:
    case ErrorCode::InconsistentPropagation:
    case ErrorCode::InconsistentPlacement:
      return 3;
    default:
      return 1;
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"monohedral quadrilateral origami tessellations: generation, "
               "branch enumeration, unique self-foldability, folding paths"};
  app.require_subcommand(1);

  PatternOpts opts;
  std::string mode = "1";
  std::string out;
  std::string fold_out;
  bool json = false;
  bool require_unique = false;
  double driver_deg = 60.0;
  std::optional<double> export_driver;
  int steps = 50;

  auto* generate = app.add_subcommand("generate", "write a FOLD file");
  add_pattern_flags(generate, opts);
  generate->add_option("--out", out, "output path (default stdout)");

  auto* modes_cmd =
      app.add_subcommand("modes", "list branches through the flat state");
  add_pattern_flags(modes_cmd, opts);
  modes_cmd->add_flag("--json", json, "machine readable output");
  modes_cmd->add_option("--out", out, "output path (default stdout)");

  auto* analyze_cmd = app.add_subcommand(
      "analyze", "decide unique self-foldability per mode");
  add_pattern_flags(analyze_cmd, opts);
  analyze_cmd->add_option("--mode", mode, "1-based mode index or 'all'")
      ->default_val("all");
  analyze_cmd->add_flag("--json", json, "full JSON report");
  analyze_cmd->add_flag("--require-unique", require_unique,
                        "exit 2 unless every analyzed mode is unique");
  analyze_cmd->add_option("--out", out, "output path (default stdout)");

  auto* selffold_cmd = app.add_subcommand(
      "selffold", "synthesize a driving force for one mode");
  add_pattern_flags(selffold_cmd, opts);
  selffold_cmd->add_option("--mode", mode, "1-based mode index or 'all'");
  selffold_cmd->add_flag("--json", json, "full JSON report");
  selffold_cmd->add_option("--out", out, "output path (default stdout)");

  auto* simulate_cmd = app.add_subcommand(
      "simulate", "sample a rigid folding path along one mode");
  add_pattern_flags(simulate_cmd, opts);
  simulate_cmd->add_option("--mode", mode, "1-based mode index");
  simulate_cmd->add_option("--driver", driver_deg,
                           "target driver angle in degrees (default 60)");
  simulate_cmd->add_option("--steps", steps, "number of samples (default 50)");
  simulate_cmd->add_flag("--json", json, "JSON report with path summary");
  simulate_cmd->add_option("--out", out, "report path (default stdout)");
  simulate_cmd->add_option("--fold-out", fold_out,
                           "write the folded state as a FOLD file");

  auto* export_cmd = app.add_subcommand(
      "export", "write a FOLD or SVG document (by --out extension)");
  add_pattern_flags(export_cmd, opts);
  std::string export_mode;
  export_cmd->add_option("--mode", export_mode,
                         "1-based mode index for M/V assignments");
  export_cmd->add_option("--driver", export_driver,
                         "fold angle in degrees for a folded-form export");
  export_cmd->add_option("--out", out, "output path (required)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int r = app.exit(e);
    return r == 0 ? 0 : 1;
  }

  try {
    if (generate->parsed()) return run_generate(opts, out);
    if (modes_cmd->parsed()) return run_modes(opts, json, out);
    if (analyze_cmd->parsed())
      return run_analyze(opts, mode, json, require_unique, out);
    if (selffold_cmd->parsed()) return run_selffold(opts, mode, json, out);
    if (simulate_cmd->parsed())
      return run_simulate(opts, mode, driver_deg, steps, json, out, fold_out);
    if (export_cmd->parsed())
      return run_export(opts, export_mode, export_driver, out);
  } catch (const CLI::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return exit_code_for(e);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 1;
}
