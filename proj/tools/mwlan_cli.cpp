// mwlan: analytical and simulated throughput/delay tables for stations
// using one or two 802.11 interfaces across two access points.

#include <CLI11.hpp>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include "mwlan/config.hpp"
#include "mwlan/errors.hpp"
#include "mwlan/experiments.hpp"

namespace {

mwlan::LinkSpec parse_link(const std::string& text) {
  const auto colon = text.find(':');
  mwlan::LinkSpec link;
  try {
    link.capacity = std::stod(text.substr(0, colon));
    if (colon != std::string::npos) link.background_load = std::stod(text.substr(colon + 1));
  } catch (const std::exception&) {
    throw mwlan::DomainError("bad link '" + text + "', expected CAPACITY[:BACKGROUND] in bits/s");
  }
  return link;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Multi-interface WLAN model: DCF throughput, active-station chain, splitter"};
  app.require_subcommand(1);

  std::string config_path;
  std::optional<std::uint64_t> seed;
  std::string out_path;
  app.add_option("--config", config_path, "Configuration file")->check(CLI::ExistingFile);
  app.add_option("--seed", seed, "Simulation seed (overrides rng_seed and seeds)");
  app.add_option("--out", out_path, "CSV output path (default: stdout)");

  app.add_subcommand("bianchi", "Bianchi fixed point and throughput for n = 1..N");
  app.add_subcommand("fig6", "Per-station throughput S_i(M) versus active stations");
  app.add_subcommand("fig7", "Expected per-user throughput over the arrival-rate sweep");
  app.add_subcommand("fig8", "Expected file transfer time over the arrival-rate sweep");
  app.add_subcommand("sim-dcf", "Slot-level DCF simulation against the Bianchi model");
  app.add_subcommand("sim-flow", "Flow-level simulation against the Markov model");
  auto* split = app.add_subcommand("split", "Multipath split plans over ideal links");

  double file_size = 0.0;
  std::vector<std::string> link_texts;
  int chunks = 0;
  bool optimal = false;
  split->add_option("--file-size", file_size, "File size in bits");
  split->add_option("--link", link_texts, "Link as CAPACITY[:BACKGROUND] in bits/s (repeat)");
  split->add_option("--chunks", chunks, "Split factor n >= 2")->check(CLI::Range(2, 1000000));
  split->add_flag("--optimal", optimal, "Compare only 50/50 against the optimal split");

  CLI11_PARSE(app, argc, argv);

  try {
    mwlan::ExperimentConfig cfg =
        config_path.empty() ? mwlan::parse_config("") : mwlan::load_config(config_path);
    if (seed) {
      cfg.scenario.rng_seed = *seed;
      cfg.seeds = {*seed};
    }
    if (!out_path.empty()) cfg.output_path = out_path;

    const std::string command = app.get_subcommands().front()->get_name();
    cfg.figure = command;
    if (*split) {
      if (file_size > 0.0) cfg.split.file_size = file_size;
      if (!link_texts.empty()) {
        cfg.split.links.clear();
        for (const auto& text : link_texts) cfg.split.links.push_back(parse_link(text));
      }
      if (chunks > 0) cfg.split.chunks = chunks;
      if (optimal) cfg.split.optimal = true;
    }
    cfg.validate();

    mwlan::Table table;
    if (command == "bianchi") {
      table = mwlan::run_bianchi(cfg);
    } else if (command == "fig6") {
      table = mwlan::run_fig6(cfg);
    } else if (command == "fig7" || command == "fig8") {
      table = mwlan::run_fig7_fig8(cfg);
    } else if (command == "sim-dcf") {
      table = mwlan::run_sim_dcf(cfg);
    } else if (command == "sim-flow") {
      table = mwlan::run_sim_flow(cfg);
    } else {
      table = mwlan::run_split(cfg);
    }

    if (cfg.output_path.empty()) {
      table.write_csv(std::cout);
    } else {
      std::ofstream out(cfg.output_path, std::ios::binary);
      if (!out) throw mwlan::DomainError("cannot write '" + cfg.output_path + "'");
      table.write_csv(out);
    }
  } catch (const std::exception& err) {
    std::cerr << "mwlan: " << err.what() << '\n';
    return 1;
  }
  return 0;
}
