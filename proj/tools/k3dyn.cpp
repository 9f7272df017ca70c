// k3dyn: scenario runner and certificate tool.
//
// Exit codes: 0 all checks pass, 2 a certification failed, 3 invalid input.

#include <chrono>
#include <ctime>
#include <fstream>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "k3dyn/io.hpp"
#include "k3dyn/scenario.hpp"

namespace {

using k3dyn::Errc;
using k3dyn::Error;
namespace sc = k3dyn::scenario;

bool is_input_error(Errc c) {
  switch (c) {
    case Errc::ParseError:
    case Errc::ValidationError:
    case Errc::UnknownName:
    case Errc::UnknownCurve:
    case Errc::DimensionMismatch:
    case Errc::NotSymmetric:
    case Errc::NotSquare:
    case Errc::TooLarge:
      return true;
    default:
      return false;
  }
}

std::string utc_now() {
  const std::time_t t = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", std::gmtime(&t));
  return buf;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact lattice certificates for K3 surface automorphisms"};
  app.require_subcommand(1);
  app.fallthrough();  // global flags may follow the verb

  std::string json_path;
  bool stamp = false;
  sc::Options opt;
  app.add_option("--json", json_path, "also write the canonical JSON report here (- for stdout)");
  app.add_option("--max-word-len", opt.max_word_len, "longest word in the entropy search")->check(CLI::Range(1, 64));
  app.add_option("--free-check-len", opt.free_check_len, "longest word in the free-word check")->check(CLI::Range(1, 64));
  app.add_option("--threads", opt.threads, "worker threads for the word search")->check(CLI::Range(1, 256));
  app.add_flag("--stamp", stamp, "add a timestamp outside the canonical report");

  std::string scenario_name, config_path, divisor_path, fibrations_path, poly_path;

  auto* scen = app.add_subcommand("scenario", "run a builtin scenario");
  scen->add_option("name", scenario_name, "kummer, most-algebraic or salem-k3")->required();

  auto* lattice = app.add_subcommand("lattice", "lattice commands");
  lattice->require_subcommand(1);
  auto* info = lattice->add_subcommand("info", "rank, signature and discriminant of a configuration");
  info->add_option("config", config_path)->required();

  auto* fiber = app.add_subcommand("fiber", "fiber commands");
  fiber->require_subcommand(1);
  auto* classify = fiber->add_subcommand("classify", "Kodaira type, sections and roots of a fiber");
  classify->add_option("config", config_path)->required();
  classify->add_option("divisor", divisor_path)->required();

  auto* dyn = app.add_subcommand("dynamics", "dynamics commands");
  dyn->require_subcommand(1);
  auto* search = dyn->add_subcommand("search", "positive entropy search over translation words");
  search->add_option("config", config_path)->required();
  search->add_option("fibrations", fibrations_path)->required();

  auto* sal = app.add_subcommand("salem", "Salem polynomial commands");
  sal->require_subcommand(1);
  auto* certify = sal->add_subcommand("certify", "certify a Salem polynomial");
  certify->add_option("poly", poly_path)->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 3;
  }

  sc::Report report;
  try {
    if (*scen) {
      report = sc::run_scenario(scenario_name, opt);
    } else if (*info) {
      report = sc::lattice_info(k3dyn::io::load_config(config_path));
    } else if (*classify) {
      const auto cfg = k3dyn::io::load_config(config_path);
      report = sc::fiber_classify(cfg, k3dyn::io::load_divisor(divisor_path));
    } else if (*search) {
      const auto cfg = k3dyn::io::load_config(config_path);
      report = sc::dynamics_search(cfg, k3dyn::io::load_fibrations(fibrations_path), opt);
    } else if (*certify) {
      report = sc::salem_certify(k3dyn::io::load_poly(poly_path));
    }
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return is_input_error(e.code()) ? 3 : 2;
  }

  std::cout << sc::emit_report(report, "text");
  if (!json_path.empty()) {
    auto j = sc::report_json(report);
    if (stamp) j["stamp"] = {{"generated_at", utc_now()}, {"canonical", false}};
    const std::string out = j.dump(2) + "\n";
    if (json_path == "-") {
      std::cout << out;
    } else {
      std::ofstream f(json_path, std::ios::binary);
      if (!f) {
        std::cerr << "error: cannot write " << json_path << "\n";
        return 3;
      }
      f << out;
    }
  }
  return report.exit_code();
}
