#include <cstdint>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "saginet/saginet.hpp"

namespace {

saginet::KvDocument report_to_kv(const saginet::PerformanceReport& rep) {
  using saginet::format_double;
  saginet::KvDocument doc;
  auto& s = doc.add("report");
  s.entries.push_back({"sum_rate_bps_hz", format_double(rep.sum_rate_bps_hz)});
  s.entries.push_back({"sum_rate_bps", format_double(rep.sum_rate_bps)});
  s.entries.push_back({"sensing_sinr", format_double(rep.sensing_sinr)});
  s.entries.push_back({"sensing_sinr_db", format_double(rep.sensing_sinr_db)});
  s.entries.push_back({"harvested_power_w", format_double(rep.harvested_power_w)});
  s.entries.push_back({"harvested_power_dbm", format_double(rep.harvested_power_dbm)});
  s.entries.push_back({"active_users", std::to_string(rep.active_users)});
  s.entries.push_back({"active_aps", std::to_string(rep.active_aps)});
  std::string sinr_line;
  for (std::size_t k = 0; k < rep.per_user_sinr.size(); ++k) {
    if (k) sinr_line += ' ';
    sinr_line += format_double(rep.per_user_sinr[k]);
  }
  auto& per = doc.add("per_user_sinr");
  per.entries.push_back({"sinr", sinr_line});
  return doc;
}

void write_text(const std::string& path, const std::string& text) {
  std::ofstream out(path);
  if (!out) throw saginet::ConfigError("cannot open '" + path + "' for writing");
  out << text;
  if (!out) throw saginet::ConfigError("failed writing '" + path + "'");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"SAGIN joint sensing/communication/power-transfer planning toolkit"};
  app.require_subcommand(1);
  app.fallthrough();

  std::string config_path;
  std::string out_path;
  std::uint64_t seed = 0;
  app.add_option("--seed", seed, "Override the scenario seed");
  app.add_option("--config", config_path, "Scenario config file");
  app.add_option("--out", out_path, "Output file path");

  auto load_config = [&]() {
    saginet::ScenarioConfig cfg;
    if (!config_path.empty()) cfg = saginet::load_scenario_config(config_path);
    if (app.count("--seed") > 0) cfg.seed = seed;
    return cfg;
  };
  auto require_out = [&](const char* cmd) {
    if (out_path.empty()) {
      throw saginet::ConfigError(std::string("--out is required for ") + cmd);
    }
  };

  // gen-scenario
  auto* gen = app.add_subcommand("gen-scenario", "Generate a network scenario from a config");
  gen->callback([&] {
    require_out("gen-scenario");
    saginet::save_scenario(saginet::build_scenario(load_config()), out_path);
  });

  // topo
  auto* topo = app.add_subcommand("topo", "Build the visibility graph for a scenario");
  std::string topo_scenario;
  bool segment_check = false;
  topo->add_option("scenario", topo_scenario, "Scenario file")->required();
  topo->add_flag("--segment-check", segment_check,
                 "Occlude inter-satellite links only when the blocking point lies between "
                 "the endpoints");
  topo->callback([&] {
    require_out("topo");
    saginet::TopologyOptions opt;
    opt.segment_check = segment_check;
    saginet::save_topology(
        saginet::build_topology(saginet::load_scenario(topo_scenario), opt), out_path);
  });

  // solve
  auto* solve = app.add_subcommand("solve", "Solve the selection model on a graph");
  std::string solve_input;
  bool solve_mps = false;
  double tau_c = 0.5, tau_p = 0.5, tau_s = 0.5;
  long node_limit = 1000000;
  solve->add_option("input", solve_input, "Graph file (or MPS model with --mps)")->required();
  solve->add_flag("--mps", solve_mps, "Treat the input as an MPS model");
  solve->add_option("--tau-c", tau_c, "Normalized communication threshold");
  solve->add_option("--tau-p", tau_p, "Normalized power-transfer threshold");
  solve->add_option("--tau-s", tau_s, "Normalized sensing threshold");
  solve->add_option("--node-limit", node_limit, "Branch-and-bound node budget");
  solve->callback([&] {
    if (solve_mps) {
      const saginet::MilpModel model = saginet::load_mps(solve_input);
      const saginet::MilpSolution sol = saginet::solve_bnb(model, node_limit);
      std::cout << "status = " << saginet::to_string(sol.status) << "\n";
      std::cout << "objective = " << saginet::format_double(sol.objective) << "\n";
      std::cout << "nodes = " << sol.nodes << "\n";
      if (sol.status == saginet::MilpStatus::Infeasible) {
        throw saginet::InfeasibleError("MPS model is infeasible");
      }
      if (sol.status == saginet::MilpStatus::NodeLimit) {
        throw saginet::NodeLimitError("node limit reached on MPS model");
      }
      return;
    }
    saginet::IscptThresholds thr;
    thr.tau_hat_c = tau_c;
    thr.tau_hat_p = tau_p;
    thr.tau_hat_s = tau_s;
    const saginet::TopologyGraph g = saginet::load_topology(solve_input);
    const saginet::IscptResult res = saginet::solve_iscpt_full(g, thr, 0.0, node_limit);
    std::cout << "status = " << saginet::to_string(res.status) << "\n";
    std::cout << "objective = " << saginet::format_double(res.objective) << "\n";
    std::cout << "nodes = " << res.nodes << "\n";
    std::cout << "matching_value = " << res.decision.matching_value << "\n";
    if (!out_path.empty()) saginet::save_decision(res.decision, out_path);
  });

  // baseline
  auto* base = app.add_subcommand("baseline", "Run a baseline selection on a graph");
  std::string base_input, base_method;
  double corr_threshold = 0.5;
  base->add_option("input", base_input, "Graph file")->required();
  base->add_option("--method", base_method, "Baseline method")
      ->required()
      ->check(CLI::IsMember({"greedy", "none"}));
  base->add_option("--corr-threshold", corr_threshold,
                   "Correlation cutoff for the greedy method");
  base->callback([&] {
    require_out("baseline");
    const saginet::TopologyGraph g = saginet::load_topology(base_input);
    const saginet::IscptDecision d = base_method == "greedy"
                                         ? saginet::greedy_user_selection(g, corr_threshold)
                                         : saginet::no_selection(g);
    saginet::save_decision(d, out_path);
    std::cout << "matching_value = " << d.matching_value << "\n";
  });

  // eval
  auto* eval = app.add_subcommand("eval", "Evaluate a decision on a scenario");
  std::string eval_scenario, eval_graph, eval_decision, power_mode = "average";
  eval->add_option("scenario", eval_scenario, "Scenario file")->required();
  eval->add_option("graph", eval_graph, "Graph file")->required();
  eval->add_option("decision", eval_decision, "Decision file")->required();
  eval->add_option("--power-mode", power_mode, "AP power allocation rule")
      ->check(CLI::IsMember({"average", "proportional"}));
  eval->callback([&] {
    const saginet::NetworkScenario sc = saginet::load_scenario(eval_scenario);
    const saginet::TopologyGraph g = saginet::load_topology(eval_graph);
    const saginet::IscptDecision d = saginet::load_decision(eval_decision);
    saginet::EvaluateOptions opt;
    opt.mode = power_mode == "proportional" ? saginet::PowerMode::Proportional
                                            : saginet::PowerMode::Average;
    const saginet::PerformanceReport rep = saginet::evaluate_decision(sc, g, d, opt);
    const std::string text = saginet::kv_dump(report_to_kv(rep));
    if (out_path.empty()) {
      std::cout << text;
    } else {
      write_text(out_path, text);
    }
  });

  // sweep
  auto* sweep = app.add_subcommand("sweep", "Run an AP-count sweep and write CSV rows");
  std::vector<int> ap_counts;
  std::vector<std::uint64_t> seeds;
  std::vector<std::string> methods{"ta", "greedy", "none"};
  double sw_tau_c = 0.5, sw_tau_p = 0.5, sw_tau_s = 0.5, sw_corr = 0.5;
  long sw_node_limit = 1000000;
  std::string sw_power_mode = "average";
  bool measure_time = false;
  sweep->add_option("--ap-counts", ap_counts, "AP counts to sweep")
      ->required()
      ->delimiter(',');
  sweep->add_option("--seeds", seeds, "Scenario seeds")->required()->delimiter(',');
  sweep->add_option("--methods", methods, "Methods: ta, greedy, none")->delimiter(',');
  sweep->add_option("--tau-c", sw_tau_c, "Normalized communication threshold");
  sweep->add_option("--tau-p", sw_tau_p, "Normalized power-transfer threshold");
  sweep->add_option("--tau-s", sw_tau_s, "Normalized sensing threshold");
  sweep->add_option("--node-limit", sw_node_limit, "Branch-and-bound node budget per cell");
  sweep->add_option("--corr-threshold", sw_corr, "Greedy correlation cutoff");
  sweep->add_option("--power-mode", sw_power_mode, "AP power allocation rule")
      ->check(CLI::IsMember({"average", "proportional"}));
  sweep->add_flag("--measure-time", measure_time,
                  "Fill wall_ms with real timings (breaks byte determinism)");
  sweep->callback([&] {
    require_out("sweep");
    saginet::SweepSpec spec;
    spec.ap_counts = ap_counts;
    spec.seeds = seeds;
    spec.methods = methods;
    spec.output_path = out_path;
    spec.thresholds.tau_hat_c = sw_tau_c;
    spec.thresholds.tau_hat_p = sw_tau_p;
    spec.thresholds.tau_hat_s = sw_tau_s;
    spec.node_limit = sw_node_limit;
    spec.corr_threshold = sw_corr;
    spec.power_mode = sw_power_mode == "proportional" ? saginet::PowerMode::Proportional
                                                      : saginet::PowerMode::Average;
    spec.measure_time = measure_time;
    const saginet::SweepResult res = saginet::run_sweep(spec, load_config());
    write_text(out_path, saginet::sweep_to_csv(res));
  });

  // export-mps
  auto* exp = app.add_subcommand("export-mps", "Export the selection model as an MPS file");
  std::string exp_input;
  double ex_tau_c = 0.5, ex_tau_p = 0.5, ex_tau_s = 0.5;
  exp->add_option("input", exp_input, "Graph file")->required();
  exp->add_option("--tau-c", ex_tau_c, "Normalized communication threshold");
  exp->add_option("--tau-p", ex_tau_p, "Normalized power-transfer threshold");
  exp->add_option("--tau-s", ex_tau_s, "Normalized sensing threshold");
  exp->callback([&] {
    require_out("export-mps");
    saginet::IscptThresholds thr;
    thr.tau_hat_c = ex_tau_c;
    thr.tau_hat_p = ex_tau_p;
    thr.tau_hat_s = ex_tau_s;
    const saginet::TopologyGraph g = saginet::load_topology(exp_input);
    saginet::save_mps(saginet::build_p2(g, thr, 0.0), out_path);
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  } catch (const saginet::NodeLimitError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  } catch (const saginet::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
