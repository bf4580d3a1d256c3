// projlat: run theorem suites and generate fixtures through the C interface.
//
//   projlat run [--config cfg.json] [--seed N] [--suite NAME...] [--algebra SPEC]
//               [--samples N] [--tol-scale X] [--out report.json]
//   projlat gen --spec "halmos-pair a=0.75 n=2" [--seed N] [--out-dir DIR]
//
// Exit status: 0 all checks pass, 2 a check failed, 1 usage or input error.

#include <cstdint>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "projlat/projlat.h"

namespace {

constexpr int kExitPass = 0;
constexpr int kExitUsage = 1;
constexpr int kExitCheckFailed = 2;

struct OwnedString {
  char* p = nullptr;
  ~OwnedString() { projlat_string_free(p); }
};

int report_error(projlat_status s) {
  std::cerr << "projlat: " << projlat_last_error() << "\n";
  return s == PROJLAT_OK ? kExitPass : kExitUsage;
}

std::optional<std::uint64_t> parse_seed(const std::string& text) {
  if (text.empty() || text.find_first_not_of("0123456789") != std::string::npos) return std::nullopt;
  try {
    return std::stoull(text);
  } catch (const std::out_of_range&) {
    return std::nullopt;
  }
}

bool read_file(const std::string& path, std::string& out) {
  std::ifstream in(path, std::ios::binary);
  if (!in) return false;
  std::ostringstream buf;
  buf << in.rdbuf();
  out = buf.str();
  return true;
}

struct RunOptions {
  std::string config_path;
  std::optional<std::uint64_t> seed;
  std::vector<std::string> suites;
  std::string algebra;
  std::optional<int> samples;
  std::optional<double> tol_scale;
  std::string out;
};

int run(const RunOptions& o) {
  std::string text = "{}";
  std::string origin = "config";
  if (!o.config_path.empty()) {
    if (!read_file(o.config_path, text)) {
      std::cerr << "projlat: cannot open config '" << o.config_path << "'\n";
      return kExitUsage;
    }
    origin = o.config_path;
  }
  OwnedString normalized;
  if (projlat_status s = projlat_config_normalize(text.c_str(), origin.c_str(), &normalized.p)) return report_error(s);

  nlohmann::json config = nlohmann::json::parse(normalized.p);
  const bool file_has_seed = nlohmann::json::parse(text).contains("seed");
  if (o.seed) {
    config["seed"] = *o.seed;
  } else if (!file_has_seed) {
    if (const char* env = std::getenv("PROJLAT_SEED")) {
      const auto seed = parse_seed(env);
      if (!seed) {
        std::cerr << "projlat: PROJLAT_SEED must be an unsigned 64-bit integer, got '" << env << "'\n";
        return kExitUsage;
      }
      config["seed"] = *seed;
    }
  }
  if (!o.suites.empty()) config["suites"] = o.suites;
  if (!o.algebra.empty()) config["algebra"] = o.algebra;
  if (o.samples) config["samples"] = *o.samples;
  if (o.tol_scale) config["tol_scale"] = *o.tol_scale;
  if (!o.out.empty()) config["out"] = o.out;

  OwnedString report;
  int all_pass = 0;
  if (projlat_status s = projlat_run_suite(config.dump().c_str(), &report.p, &all_pass)) return report_error(s);

  const std::string out = config.value("out", std::string());
  if (out.empty()) {
    std::cout << report.p;
  } else {
    std::ofstream f(out, std::ios::binary | std::ios::trunc);
    if (!(f << report.p)) {
      std::cerr << "projlat: cannot write '" << out << "'\n";
      return kExitUsage;
    }
  }
  if (!all_pass) std::cerr << "projlat: one or more checks failed\n";
  return all_pass ? kExitPass : kExitCheckFailed;
}

int gen(std::uint64_t seed, const std::string& spec, const std::string& out_dir) {
  std::error_code ec;
  std::filesystem::create_directories(out_dir, ec);
  if (ec) {
    std::cerr << "projlat: cannot create '" << out_dir << "': " << ec.message() << "\n";
    return kExitUsage;
  }
  OwnedString written;
  if (projlat_status s = projlat_gen_instance(seed, spec.c_str(), out_dir.c_str(), &written.p)) return report_error(s);
  for (const auto& path : nlohmann::json::parse(written.p)) std::cout << path.get<std::string>() << "\n";
  return kExitPass;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Projection-lattice theorem suites"};
  app.set_version_flag("--version", projlat_version());
  app.require_subcommand(1);

  RunOptions ro;
  std::string seed_text;
  auto* run_cmd = app.add_subcommand("run", "Run theorem suites and emit a JSON report");
  run_cmd->add_option("--config", ro.config_path, "JSON configuration file");
  run_cmd->add_option("--seed", seed_text, "64-bit seed (fallback: PROJLAT_SEED)");
  run_cmd->add_option("--suite", ro.suites, "Suites to run (default: all)");
  run_cmd->add_option("--algebra", ro.algebra, "Block sizes, e.g. 3,4, or a JSON file");
  run_cmd->add_option("--samples", ro.samples, "Sample count")->check(CLI::PositiveNumber);
  run_cmd->add_option("--tol-scale", ro.tol_scale, "Tolerance multiplier")->check(CLI::PositiveNumber);
  run_cmd->add_option("--out", ro.out, "Report path (default: stdout)");

  std::string gen_seed_text = "0";
  std::string spec;
  std::string out_dir = ".";
  auto* gen_cmd = app.add_subcommand("gen", "Write instance fixtures");
  gen_cmd->add_option("--seed", gen_seed_text, "64-bit seed");
  gen_cmd->add_option("--spec", spec, "Instance spec, e.g. \"random-proj n=5 rank=3\"");
  gen_cmd->add_option("--out-dir", out_dir, "Output directory");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitPass : kExitUsage;
  }

  if (run_cmd->parsed()) {
    if (!seed_text.empty()) {
      ro.seed = parse_seed(seed_text);
      if (!ro.seed) {
        std::cerr << "projlat: --seed must be an unsigned 64-bit integer\n";
        return kExitUsage;
      }
    }
    return run(ro);
  }
  const auto seed = parse_seed(gen_seed_text);
  if (!seed) {
    std::cerr << "projlat: --seed must be an unsigned 64-bit integer\n";
    return kExitUsage;
  }
  return gen(*seed, spec, out_dir);
}
