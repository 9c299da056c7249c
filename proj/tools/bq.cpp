#include <cmath>
#include <cstdio>
#include <exception>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "bq/coefficient_model.hpp"
#include "bq/config.hpp"
#include "bq/io.hpp"
#include "bq/mms.hpp"
#include "bq/scenarios.hpp"

namespace {

constexpr int kPass = 0;
constexpr int kFail = 1;
constexpr int kUsage = 2;

std::string num(double v) {
  if (std::isnan(v)) return "-";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

void print_report(const bq::ScenarioReport& rep) {
  std::cout << "scenario " << rep.scenario << '\n';
  for (const auto& c : rep.checks) {
    std::cout << (c.passed ? "  PASS  " : "  FAIL  ") << c.name << "  value=" << num(c.value)
              << " bound=" << num(c.bound);
    if (!c.detail.empty()) std::cout << "  (" << c.detail << ')';
    std::cout << '\n';
  }
  for (const auto& [k, v] : rep.metrics) std::cout << "  metric " << k << " = " << num(v) << '\n';
  for (const auto& n : rep.notes) std::cout << "  note " << n << '\n';
  for (const auto& a : rep.artifacts) std::cout << "  wrote " << a.string() << '\n';
  std::cout << (rep.passed() ? "PASSED" : "FAILED") << '\n';
}

int cmd_run(const std::string& path, const std::string& output_dir) {
  bq::ScenarioConfig cfg = bq::load_config(path);
  if (!output_dir.empty()) cfg.output.dir = output_dir;
  const bq::ScenarioReport rep = bq::run_scenario(cfg);
  print_report(rep);
  return rep.passed() ? kPass : kFail;
}

int cmd_audit(const std::string& model_name, const bq::ModelParams& params, double tau_lo, double tau_hi,
              int samples) {
  const bq::CoefficientModel model = bq::model_from_preset(model_name, params);
  const bq::AssumptionReport rep = bq::audit_assumptions(model, tau_lo, tau_hi, samples);
  std::cout << "model " << rep.model << " on [" << num(rep.tau_lo) << ", " << num(rep.tau_hi) << "], "
            << rep.samples << " samples\n";
  std::cout << "  nu_min=" << num(model.nu_min) << " kappa_min=" << num(model.kappa_min)
            << " c0=" << num(model.c0) << " r=" << num(model.r) << " c0_tilde=" << num(model.c0_tilde) << '\n';
  for (const auto& c : rep.checks) {
    std::cout << (c.passed ? "  PASS  " : "  FAIL  ") << c.name << "  margin=" << num(c.worst_margin)
              << " at tau=" << num(c.worst_tau) << '\n';
  }
  std::cout << (rep.passed() ? "PASSED" : "FAILED") << '\n';
  return rep.passed() ? kPass : kFail;
}

int cmd_mms() {
  bq::ScenarioConfig cfg;
  cfg.scenario = "mms_convergence";
  const bq::ScenarioReport rep = bq::scenario_mms_convergence(cfg);
  print_report(rep);
  return rep.passed() ? kPass : kFail;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Boussinesq channel solver with temperature-dependent coefficients"};
  app.require_subcommand(1);

  std::string config_path;
  std::string output_dir;
  auto* run = app.add_subcommand("run", "Run the scenario described by a config file");
  run->add_option("--config", config_path, "Config file (section.key = value lines)")->required();
  run->add_option("--output-dir", output_dir, "Override output.dir");

  std::string model_name;
  bq::ModelParams params;
  double tau_lo = -20.0;
  double tau_hi = 20.0;
  int samples = 10000;
  auto* audit = app.add_subcommand("audit", "Check a coefficient model against the structural assumptions");
  audit->add_option("--model", model_name, "constant, bounded-rational or quadratic-kappa")->required();
  auto opt = [&](const char* flag, std::optional<double>& target, const char* help) {
    audit->add_option_function<double>(flag, [&target](double v) { target = v; }, help);
  };
  opt("--nu0", params.nu0, "constant: viscosity");
  opt("--kappa0", params.kappa0, "constant: diffusivity");
  opt("--a", params.a, "bounded-rational: nu = a + b/(1+tau^2)");
  opt("--b", params.b, "bounded-rational: nu = a + b/(1+tau^2)");
  opt("--c", params.c, "bounded-rational: kappa = c + d/(1+tau^2)");
  opt("--d", params.d, "bounded-rational: kappa = c + d/(1+tau^2)");
  opt("--c0", params.c0, "quadratic-kappa: structural constant");
  audit->add_option("--tau-lo", tau_lo, "Lower end of the sampled range");
  audit->add_option("--tau-hi", tau_hi, "Upper end of the sampled range");
  audit->add_option("--samples", samples, "Number of equispaced samples")->check(CLI::PositiveNumber);

  auto* mms = app.add_subcommand("mms", "Manufactured-solution convergence study");
  auto* list = app.add_subcommand("list-scenarios", "Print the scenario names");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kUsage;
  }

  try {
    if (*run) return cmd_run(config_path, output_dir);
    if (*audit) return cmd_audit(model_name, params, tau_lo, tau_hi, samples);
    if (*mms) return cmd_mms();
    if (*list) {
      for (const auto& name : bq::scenario_names()) std::cout << name << '\n';
      return kPass;
    }
  } catch (const bq::ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kUsage;
  } catch (const std::invalid_argument& e) {
    std::cerr << "usage error: " << e.what() << '\n';
    return kUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kFail;
  }
  return kUsage;
}
