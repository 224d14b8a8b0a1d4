// prnreduce: goal-oriented reduction of parametric regulatory networks.
//
// Subcommands:
//   reduce  compute the reduced network for a goal and report limits
//   reach   decide goal reachability, with or without reduction first
//   cover   list the minimal cover of the enabling regulator states
//   oracle  enumerate minimal traces, or run a random self-check campaign
//
// Exit codes: 0 success / goal reached, 1 goal unreached or check failed,
// 2 verdict unknown (budget exhausted), 3 bad input.

#include <CLI11.hpp>
#include <iostream>

#include "prn/commands.hpp"

int main(int argc, char** argv) {
  CLI::App app{"goal-oriented reduction of parametric regulatory networks"};
  app.require_subcommand(1);

  prn::cli::ReduceOptions reduce_opt;
  CLI::App* reduce = app.add_subcommand("reduce", "reduce the network towards a goal");
  reduce->add_option("model", reduce_opt.model_path, "model file")->required();
  reduce->add_option("--format", reduce_opt.format, "model format: text or json");
  reduce->add_option("--initial", reduce_opt.initial, "initial state, overrides the model file");
  reduce->add_option("--goal", reduce_opt.goal, "goal <component>=<value>, overrides the model file");
  reduce->add_option("--mode", reduce_opt.mode, "validity search mode: exact or approx");
  reduce->add_option("--json", reduce_opt.json_path, "write the full JSON report here ('-' for stdout)");

  prn::cli::ReachOptions reach_opt;
  CLI::App* reach = app.add_subcommand("reach", "decide whether the goal is reachable");
  reach->add_option("model", reach_opt.model_path, "model file")->required();
  reach->add_option("--format", reach_opt.format, "model format: text or json");
  reach->add_option("--initial", reach_opt.initial, "initial state, overrides the model file");
  reach->add_option("--goal", reach_opt.goal, "goal <component>=<value>, overrides the model file");
  reach->add_option("--mode", reach_opt.mode, "search mode: exact or approx");
  reach->add_option("--reduce", [&reach_opt](const std::vector<std::string>& vals) {
        if (vals[0] == "on") reach_opt.reduce_first = true;
        else if (vals[0] == "off") reach_opt.reduce_first = false;
        else return false;
        return true;
      }, "reduce before searching: on or off (default on)")->expected(1);
  reach->add_option("--budget", reach_opt.budget, "max configurations to expand (-1: unlimited)");
  reach->add_option("--dot", reach_opt.dot_path, "export the explored transition graph as DOT");

  prn::cli::CoverOptions cover_opt;
  CLI::App* cover = app.add_subcommand("cover", "minimal cover of the enabling regulator states");
  cover->add_option("model", cover_opt.model_path, "model file")->required();
  cover->add_option("--format", cover_opt.format, "model format: text or json");
  cover->add_option("--component", cover_opt.component, "target component")->required();
  cover->add_option("--change", cover_opt.change, "unit value change <from>:<to>")->required();
  cover->add_option("--json", cover_opt.json_path, "write the JSON report here ('-' for stdout)");

  prn::cli::OracleOptions oracle_opt;
  CLI::App* oracle = app.add_subcommand("oracle", "minimal traces, or a random self-check campaign");
  oracle->add_option("model", oracle_opt.model_path, "model file (omit with --campaign)");
  oracle->add_option("--format", oracle_opt.format, "model format: text or json");
  oracle->add_option("--initial", oracle_opt.initial, "initial state, overrides the model file");
  oracle->add_option("--goal", oracle_opt.goal, "goal <component>=<value>, overrides the model file");
  oracle->add_option("--max-len", oracle_opt.max_len, "maximum trace length to enumerate");
  oracle->add_option("--seed", oracle_opt.seed, "random seed for --campaign");
  oracle->add_option("--campaign", oracle_opt.campaign, "check N random instances instead of a model");
  oracle->add_option("--json", oracle_opt.json_path, "write the JSON trace report here ('-' for stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);  // prints the message, or the help text
    return rc == 0 ? 0 : prn::cli::kInputError;
  }

  try {
    if (reduce->parsed()) return prn::cli::cmd_reduce(reduce_opt, std::cout);
    if (reach->parsed()) return prn::cli::cmd_reach(reach_opt, std::cout);
    if (cover->parsed()) return prn::cli::cmd_cover(cover_opt, std::cout);
    if (oracle->parsed()) {
      if (oracle_opt.campaign <= 0 && oracle_opt.model_path.empty()) {
        std::cerr << "prnreduce: oracle needs a model file or --campaign N\n";
        return prn::cli::kInputError;
      }
      return prn::cli::cmd_oracle(oracle_opt, std::cout);
    }
  } catch (const prn::cli::CliError& e) {
    std::cerr << "prnreduce: " << e.what() << "\n";
    return e.code;
  } catch (const std::exception& e) {
    std::cerr << "prnreduce: " << e.what() << "\n";
    return prn::cli::kInputError;
  }
  return prn::cli::kInputError;
}
