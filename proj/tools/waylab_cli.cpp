// Command-line front end: build models, run sweeps, and execute the
// acceptance suites, emitting JSON verdicts and CSV tables.
//
// Exit codes: 0 success, 1 usage error, 2 scientific-expectation mismatch,
// 3 I/O failure.

#include <CLI11.hpp>
#include <waylab/acceptance.hpp>
#include <waylab/report.hpp>

#include <fstream>
#include <iostream>
#include <map>
#include <sstream>

namespace {

// Minimal config-file reader: `key = value` pairs inside a [run] section.
std::map<std::string, std::string> load_run_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot read config file: " + path);
  std::map<std::string, std::string> kv;
  std::string line, section;
  auto trim = [](std::string s) {
    const char* ws = " \t\r\n";
    std::size_t a = s.find_first_not_of(ws);
    if (a == std::string::npos) return std::string();
    std::size_t b = s.find_last_not_of(ws);
    return s.substr(a, b - a + 1);
  };
  while (std::getline(in, line)) {
    std::string t = trim(line);
    if (t.empty() || t[0] == '#' || t[0] == ';') continue;
    if (t.front() == '[' && t.back() == ']') {
      section = t.substr(1, t.size() - 2);
      continue;
    }
    std::size_t eq = t.find('=');
    if (eq == std::string::npos || section != "run") continue;
    kv[trim(t.substr(0, eq))] = trim(t.substr(eq + 1));
  }
  return kv;
}

std::vector<double> parse_list(const std::string& csv) {
  std::vector<double> out;
  std::stringstream ss(csv);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (!item.empty()) out.push_back(std::stod(item));
  }
  if (out.empty()) throw std::invalid_argument("empty value list: " + csv);
  return out;
}

// Writes to the path, or to stdout when the path is empty.
void emit(const std::string& out_path, const std::string& content) {
  if (out_path.empty()) {
    std::cout << content;
    return;
  }
  std::ofstream out(out_path, std::ios::binary);
  if (!out) throw std::ios_base::failure("cannot open output: " + out_path);
  out << content;
  if (!out.good())
    throw std::ios_base::failure("write failed: " + out_path);
}

struct RunConfig {
  std::string model, suite = "all", out, format;
  int n = 3, dim = 2, grid = 4096, seeds = 200;
  double ell = 1.0;
  std::string lambda = "1,2,4,8";
  std::uint64_t seed = 0;
  bool optimize = false;
};

}  // namespace

int main(int argc, char** argv) {
  RunConfig cfg;
  std::string config_path, file_command;

  // Config file values act as defaults; command-line flags override them.
  for (int i = 1; i + 1 < argc; ++i)
    if (std::string(argv[i]) == "--config") config_path = argv[i + 1];
  try {
    if (!config_path.empty()) {
      auto kv = load_run_config(config_path);
      auto get = [&](const char* k) -> const std::string* {
        auto it = kv.find(k);
        return it == kv.end() ? nullptr : &it->second;
      };
      if (const auto* v = get("command")) file_command = *v;
      if (const auto* v = get("model")) cfg.model = *v;
      if (const auto* v = get("suite")) cfg.suite = *v;
      if (const auto* v = get("out")) cfg.out = *v;
      if (const auto* v = get("format")) cfg.format = *v;
      if (const auto* v = get("n")) cfg.n = std::stoi(*v);
      if (const auto* v = get("dim")) cfg.dim = std::stoi(*v);
      if (const auto* v = get("grid")) cfg.grid = std::stoi(*v);
      if (const auto* v = get("seeds")) cfg.seeds = std::stoi(*v);
      if (const auto* v = get("ell")) cfg.ell = std::stod(*v);
      if (const auto* v = get("lambda")) cfg.lambda = *v;
      if (const auto* v = get("seed")) cfg.seed = std::stoull(*v);
      if (const auto* v = get("optimize")) cfg.optimize = (*v == "true" || *v == "1");
    }
  } catch (const std::exception& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 1;
  }

  CLI::App app{"Measurement-scheme laboratory: models, sweeps, and checks"};
  app.add_option("--config", config_path, "config file with a [run] section");

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--config", config_path,
                    "config file with a [run] section (already applied)");
    sub->add_option("--seed", cfg.seed, "base seed for all randomness");
    sub->add_option("--out", cfg.out, "output path (default: stdout)");
    sub->add_option("--format", cfg.format, "json or csv");
  };

  CLI::App* cmd_model =
      app.add_subcommand("model", "build one model and report its verdict");
  cmd_model->add_option("name", cfg.model, "registered model name");
  cmd_model->add_option("--n", cfg.n, "coupling size for wigner-approx");
  cmd_model->add_option("--dim", cfg.dim, "system dimension for swap");
  cmd_model->add_flag("--optimize", cfg.optimize,
                      "optimize the failure weight (wigner-approx always does)");
  add_common(cmd_model);

  CLI::App* cmd_sweep =
      app.add_subcommand("sweep", "parameter sweep emitted as a CSV table");
  cmd_sweep->add_option("--model", cfg.model,
                        "wigner-approx (--n max) or position (--lambda list)");
  cmd_sweep->add_option("--n", cfg.n, "largest coupling size");
  cmd_sweep->add_option("--lambda", cfg.lambda, "comma-separated couplings");
  cmd_sweep->add_option("--ell", cfg.ell, "apparatus support half-width");
  cmd_sweep->add_option("--grid", cfg.grid, "grid point count");
  add_common(cmd_sweep);

  CLI::App* cmd_check =
      app.add_subcommand("check", "run an acceptance suite");
  cmd_check->add_option("--suite", cfg.suite,
                        "all, wigner, models, theorem, inequalities, "
                        "distinguishability, cases, position, determinism");
  cmd_check->add_option("--seeds", cfg.seeds, "ensemble size for theorem suite");
  cmd_check->add_option("--grid", cfg.grid, "grid point count");
  add_common(cmd_check);

  app.require_subcommand(0, 1);
  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 1;
  }

  std::string command = file_command;
  if (cmd_model->parsed()) command = "model";
  if (cmd_sweep->parsed()) command = "sweep";
  if (cmd_check->parsed()) command = "check";
  if (command.empty()) {
    std::cerr << app.help();
    return 1;
  }

  try {
    if (command == "model") {
      if (!cfg.format.empty() && cfg.format != "json") {
        std::cerr << "model reports are json only\n";
        return 1;
      }
      waylab::ModelBundle b;
      try {
        b = waylab::make_model(cfg.model, cfg.n, cfg.dim);
      } catch (const std::invalid_argument& e) {
        std::cerr << e.what() << "\n";
        return 1;
      }
      nlohmann::ordered_json j = waylab::model_report(b);
      emit(cfg.out, j.dump(2) + "\n");
      return j["expected_match"].get<bool>() ? 0 : 2;
    }

    if (command == "sweep") {
      if (!cfg.format.empty() && cfg.format != "csv") {
        std::cerr << "sweeps are csv only\n";
        return 1;
      }
      std::string csv;
      if (cfg.model == "wigner-approx") {
        csv = waylab::wigner_sweep_csv(cfg.n);
      } else if (cfg.model == "position") {
        csv = waylab::stein_shimony_csv(
            cfg.ell, parse_list(cfg.lambda),
            waylab::Grid1D{4.0, cfg.grid});
      } else {
        std::cerr << "sweep supports models: wigner-approx, position\n";
        return 1;
      }
      emit(cfg.out, csv);
      return 0;
    }

    // check
    waylab::AcceptanceOptions opt;
    opt.ensemble_seeds = cfg.seeds;
    opt.grid_n = cfg.grid;
    opt.seed = cfg.seed;
    opt.cli_path = argv[0];
    std::vector<int> ids;
    try {
      ids = waylab::suite_criteria(cfg.suite);
    } catch (const std::invalid_argument& e) {
      std::cerr << e.what() << "\n";
      return 1;
    }
    std::string report;
    int failures = waylab::run_acceptance(ids, opt, report);
    emit(cfg.out, report);
    if (!cfg.out.empty()) std::cout << report;
    return failures == 0 ? 0 : 2;
  } catch (const std::ios_base::failure& e) {
    std::cerr << "i/o error: " << e.what() << "\n";
    return 3;
  } catch (const std::invalid_argument& e) {
    std::cerr << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}
