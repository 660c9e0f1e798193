#include "cavur/cli.hpp"

#include <fstream>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "cavur/errors.hpp"
#include "cavur/report_io.hpp"
#include "cavur/selftest.hpp"

namespace cavur::cli {

namespace {

struct CliOptions {
  GameConfig game;
  std::string grid = "101x101";
  double u_max = 1.0;
  std::string out_path = "-";
  std::string format;
  std::int64_t rounds = 100000;
  std::uint64_t seed = 12345;
  std::string spectrum_bob;
  std::string spectrum_charlie;
};

SweepGrid parse_grid(const std::string& text, double u_max) {
  SweepGrid grid;
  grid.u_max = u_max;
  const auto sep = text.find('x');
  try {
    if (sep == std::string::npos) throw std::invalid_argument(text);
    std::size_t used = 0;
    grid.n_b = std::stoi(text.substr(0, sep), &used);
    if (used != sep) throw std::invalid_argument(text);
    grid.n_c = std::stoi(text.substr(sep + 1), &used);
    if (used != text.size() - sep - 1) throw std::invalid_argument(text);
  } catch (const std::exception&) {
    throw CLI::ValidationError("--grid", "expected ROWSxCOLS, e.g. 101x101");
  }
  if (grid.n_b < 2 || grid.n_c < 2) {
    throw CLI::ValidationError("--grid", "needs at least 2 points per axis");
  }
  return grid;
}

// Writes to the stream for "-", otherwise to the named file.
void emit(const std::string& text, const std::string& path,
          std::ostream& out) {
  if (path == "-" || path.empty()) {
    out << text;
    return;
  }
  std::ofstream file(path, std::ios::binary);
  if (!file) throw IoError("cannot open output file: " + path);
  file << text;
  if (!file) throw IoError("failed while writing: " + path);
}

void add_game_options(CLI::App* cmd, CliOptions& opts, bool with_point) {
  // The physics flag --h takes precedence over a -h help shorthand.
  cmd->set_help_flag("--help", "print help and exit");
  // Lets --config (an option of the main app) appear after the
  // subcommand name.
  cmd->fallthrough();
  cmd->add_option("--h", opts.game.h, "perturbative parameter a*L")
      ->capture_default_str()
      ->check(
          [](const std::string& value) -> std::string {
            try {
              const double v = std::stod(value);
              if (v > 0.0 && v < 2.0) return {};
            } catch (const std::exception&) {
            }
            return "h must lie in (0, 2)";
          },
          "FLOAT in (0, 2)");
  cmd->add_option("--s", opts.game.s, "wall reflection phase in [0, 1)")
      ->capture_default_str()
      ->check(CLI::Range(0.0, 1.0));
  cmd->add_option("--k-alice", opts.game.k_alice,
                  "inertial mode index (accepted, has no numerical effect)")
      ->capture_default_str();
  cmd->add_option("--k-bob", opts.game.k_bob, "Bob's cavity mode index")
      ->capture_default_str()
      ->check(CLI::NonNegativeNumber);
  cmd->add_option("--k-charlie", opts.game.k_charlie,
                  "Charlie's cavity mode index")
      ->capture_default_str()
      ->check(CLI::NonNegativeNumber);
  cmd->add_option("--strength", opts.game.synthetic.strength,
                  "synthetic spectrum line strength")
      ->capture_default_str()
      ->check(CLI::NonNegativeNumber);
  cmd->add_option("--l-max", opts.game.synthetic.l_max,
                  "spectrum truncation radius")
      ->capture_default_str()
      ->check(CLI::PositiveNumber);
  cmd->add_option("--spectrum-bob", opts.spectrum_bob,
                  "JSON spectrum file for Bob's mode");
  cmd->add_option("--spectrum-charlie", opts.spectrum_charlie,
                  "JSON spectrum file for Charlie's mode");
  cmd->add_flag("--swap-roles", opts.game.swap_roles,
                "swap the memories guessing sigma_x and sigma_y");
  if (with_point) {
    cmd->add_option("--u-b", opts.game.u_b, "Bob's acceleration factor")
        ->capture_default_str()
        ->check(CLI::NonNegativeNumber);
    cmd->add_option("--u-c", opts.game.u_c, "Charlie's acceleration factor")
        ->capture_default_str()
        ->check(CLI::NonNegativeNumber);
  }
}

void finalize_game(CliOptions& opts) {
  if (!opts.spectrum_bob.empty()) opts.game.spectrum_bob = opts.spectrum_bob;
  if (!opts.spectrum_charlie.empty()) {
    opts.game.spectrum_charlie = opts.spectrum_charlie;
  }
  opts.game.validate();
}

int run_sweep(CliOptions& opts, std::ostream& out) {
  finalize_game(opts);
  const SweepGrid grid = parse_grid(opts.grid, opts.u_max);
  const auto reports = sweep(opts.game, grid);
  if (opts.format == "json") {
    emit(to_json(reports).dump(2) + "\n", opts.out_path, out);
  } else {
    emit(to_csv(reports), opts.out_path, out);
  }
  return kExitSuccess;
}

int run_report(CliOptions& opts, std::ostream& out) {
  finalize_game(opts);
  const GameReport report = game_report(opts.game);
  if (opts.format == "json") {
    emit(to_json(report).dump(2) + "\n", opts.out_path, out);
  } else if (opts.format == "csv") {
    emit(std::string(kCsvHeader) + "\n" + csv_row(report) + "\n",
         opts.out_path, out);
  } else {
    emit(format_text(report), opts.out_path, out);
  }
  return kExitSuccess;
}

int run_simulate(CliOptions& opts, std::ostream& out) {
  finalize_game(opts);
  const SimulationReport report =
      simulate_rounds(opts.game, opts.rounds, opts.seed);
  if (opts.format == "json") {
    emit(to_json(report).dump(2) + "\n", opts.out_path, out);
  } else {
    emit(format_text(report), opts.out_path, out);
  }
  return kExitSuccess;
}

int run_check(CliOptions& opts, std::ostream& out) {
  finalize_game(opts);
  const auto results = run_all_checks(opts.game, opts.seed);
  bool all_pass = true;
  for (const auto& r : results) {
    out << (r.pass ? "[PASS] " : "[FAIL] ") << r.name << " — " << r.detail
        << "\n";
    all_pass = all_pass && r.pass;
  }
  out << (all_pass ? "all checks passed\n" : "CHECK FAILURES PRESENT\n");
  return all_pass ? kExitSuccess : kExitInvariantViolation;
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out,
            std::ostream& err) {
  CLI::App app{
      "cavur — entropic uncertainty game with accelerated cavity memories"};
  app.set_help_flag("--help", "print help and exit");
  app.set_config("--config", "",
                 "configuration file with [subcommand] sections; command-line "
                 "flags override file values");
  app.allow_config_extras(CLI::config_extras_mode::error);

  CliOptions opts;

  CLI::App* cmd_sweep = app.add_subcommand(
      "sweep", "evaluate the uncertainty bound on a (u_b, u_c) grid");
  add_game_options(cmd_sweep, opts, false);
  cmd_sweep->add_option("--grid", opts.grid, "grid size as ROWSxCOLS")
      ->capture_default_str();
  cmd_sweep->add_option("--u-max", opts.u_max, "upper end of both u ranges")
      ->capture_default_str()
      ->check(CLI::PositiveNumber);
  cmd_sweep->add_option("--out", opts.out_path, "output path ('-' = stdout)")
      ->capture_default_str();
  cmd_sweep
      ->add_option("--format", opts.format, "output format (csv or json)")
      ->default_val("csv")
      ->check(CLI::IsMember({"csv", "json"}));

  CLI::App* cmd_report =
      app.add_subcommand("report", "print one game evaluation");
  add_game_options(cmd_report, opts, true);
  cmd_report->add_option("--out", opts.out_path, "output path ('-' = stdout)")
      ->capture_default_str();
  cmd_report
      ->add_option("--format", opts.format, "output format (text, csv, json)")
      ->default_val("text")
      ->check(CLI::IsMember({"text", "csv", "json"}));

  CLI::App* cmd_simulate = app.add_subcommand(
      "simulate", "Monte Carlo rounds of the uncertainty game");
  add_game_options(cmd_simulate, opts, true);
  cmd_simulate->add_option("--rounds", opts.rounds, "number of rounds")
      ->capture_default_str()
      ->check(CLI::PositiveNumber);
  cmd_simulate->add_option("--seed", opts.seed, "random seed")
      ->capture_default_str();
  cmd_simulate
      ->add_option("--out", opts.out_path, "output path ('-' = stdout)")
      ->capture_default_str();
  cmd_simulate
      ->add_option("--format", opts.format, "output format (text or json)")
      ->default_val("text")
      ->check(CLI::IsMember({"text", "json"}));

  CLI::App* cmd_check =
      app.add_subcommand("check", "run the invariant suites");
  add_game_options(cmd_check, opts, false);
  cmd_check->add_option("--seed", opts.seed, "seed for random-state suites")
      ->capture_default_str();

  app.require_subcommand(0, 1);

  if (argc <= 1) {
    out << app.help();
    return kExitSuccess;
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitSuccess : kExitUsage;
  }

  try {
    if (cmd_sweep->parsed()) return run_sweep(opts, out);
    if (cmd_report->parsed()) return run_report(opts, out);
    if (cmd_simulate->parsed()) return run_simulate(opts, out);
    if (cmd_check->parsed()) return run_check(opts, out);
    out << app.help();
    return kExitSuccess;
  } catch (const IoError& e) {
    err << "error: " << e.what() << "\n";
    return kExitIo;
  } catch (const InvariantViolation& e) {
    err << "invariant violation: " << e.what() << "\n";
    return kExitInvariantViolation;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  }
}

}  // namespace cavur::cli
