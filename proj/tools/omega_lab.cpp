// omega_lab: batch front end over the truncated machine U_L.
//
// Every artifact records the machine digest, the budget and the command line
// (minus --workers, which never changes results), so it can be regenerated.

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <thread>

#include "omegalab/artifacts.hpp"
#include "omegalab/census.hpp"
#include "omegalab/extractor.hpp"
#include "omegalab/fixedpoint.hpp"
#include "omegalab/measures.hpp"

using namespace omegalab;

namespace {

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string embedded_command(int argc, char** argv) {
  std::string cmd = "omega_lab";
  for (int i = 1; i < argc; ++i) {
    std::string arg = argv[i];
    if (arg == "--workers") {
      ++i;
      continue;
    }
    if (arg.rfind("--workers=", 0) == 0) continue;
    cmd += ' ';
    cmd += arg;
  }
  return cmd;
}

Temperature parse_T(const std::string& text) {
  try {
    return Temperature::parse(text);
  } catch (const std::invalid_argument& e) {
    throw UsageError(std::string("bad temperature: ") + e.what());
  }
}

// Where an analysis command gets its enumeration: a log, or a fresh run.
struct Source {
  std::string log;
  std::size_t max_len = 14;
  std::size_t rounds = 0;
  unsigned workers = 1;
  std::string registry = "default";

  void attach(CLI::App* app) {
    app->add_option("--log", log, "Enumeration log to replay");
    app->add_option("--max-len", max_len, "Enumerate afresh up to this program length (no --log)")
        ->check(CLI::Range(std::size_t{1}, std::size_t{40}));
    app->add_option("--rounds", rounds, "Dovetailing rounds (default max-len + 4)");
    app->add_option("--workers", workers, "Enumeration threads; results do not depend on it")
        ->check(CLI::Range(1u, 256u));
    app->add_option("--registry", registry, "Submachine registry preset (default, bare)");
  }

  LoadedLog load(const std::string& command) const {
    if (!log.empty()) {
      std::ifstream in(log);
      if (!in) throw std::runtime_error("cannot open log " + log);
      LoadedLog loaded = read_log(in);
      Machine machine(registry_preset(loaded.provenance.registry));
      if (machine.digest() != loaded.run.machine_digest()) {
        throw MalformedLog("log: machine digest does not match registry " + loaded.provenance.registry);
      }
      loaded.provenance.command = command;
      return loaded;
    }
    Machine machine(preset());
    Budget budget = Budget::for_length(max_len);
    if (rounds != 0) budget.rounds = rounds;
    return {enumerate(machine, budget, workers), Provenance{registry, command}};
  }

  SubmachineRegistry preset() const {
    try {
      return registry_preset(registry);
    } catch (const std::invalid_argument& e) {
      throw UsageError(e.what());
    }
  }
};

void emit(const std::string& path, const std::string& text) {
  if (path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << text;
  if (!out) throw std::runtime_error("write failed: " + path);
}

std::string csv_preamble(const Enumeration& run, const Provenance& p) {
  return "# machine=" + run.machine_digest() + " registry=" + p.registry +
         " max_len=" + std::to_string(run.budget().max_len) +
         " rounds=" + std::to_string(run.budget().rounds) +
         " exhaustive=" + (run.exhaustive() ? "true" : "false") + " command=" + p.command + "\n";
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Dovetailed enumeration and certified measures over a truncated prefix-free machine"};
  app.require_subcommand(1);
  const std::string command = embedded_command(argc, argv);

  // enumerate
  auto* enumerate_cmd = app.add_subcommand("enumerate", "Enumerate Dom U_L and write a JSONL log");
  std::size_t e_max_len = 0;
  std::size_t e_rounds = 0;
  unsigned e_workers = 1;
  std::string e_registry = "default";
  std::string e_out;
  enumerate_cmd->add_option("--max-len", e_max_len, "Longest program length L")
      ->required()
      ->check(CLI::Range(std::size_t{1}, std::size_t{40}));
  enumerate_cmd->add_option("--rounds", e_rounds, "Dovetailing rounds (default L + 4)");
  enumerate_cmd->add_option("--workers", e_workers, "Threads; the log does not depend on it")
      ->check(CLI::Range(1u, 256u));
  enumerate_cmd->add_option("--registry", e_registry, "Submachine registry preset (default, bare)");
  enumerate_cmd->add_option("--out", e_out, "Log path")->required();

  // measure
  auto* measure_cmd = app.add_subcommand("measure", "Evaluate a measure as a certified enclosure");
  Source m_src;
  m_src.attach(measure_cmd);
  std::string m_quantity;
  std::string m_T = "1";
  std::size_t m_prec = 64;
  std::string m_out;
  measure_cmd->add_option("--quantity", m_quantity, "omega, cs, z, cst or csbt")
      ->required()
      ->check(CLI::IsMember({"omega", "cs", "z", "cst", "csbt"}));
  measure_cmd->add_option("--T", m_T, "Temperature a/b");
  measure_cmd->add_option("--prec", m_prec, "Enclosure precision in bits")
      ->check(CLI::Range(std::size_t{1}, std::size_t{1} << 16));
  measure_cmd->add_option("--out", m_out, "Report path (default stdout)");

  // census
  auto* census_cmd = app.add_subcommand("census", "Count compressible strings per length");
  Source c_src;
  c_src.attach(census_cmd);
  std::string c_T = "1";
  std::size_t c_nmax = 64;
  std::string c_out;
  std::string c_members;
  census_cmd->add_option("--T", c_T, "Temperature a/b");
  census_cmd->add_option("--nmax", c_nmax, "Largest n in the profile");
  census_cmd->add_option("--out", c_out, "CSV path (default stdout)");
  census_cmd->add_option("--members", c_members, "Also dump members per length as JSONL");

  // extract
  auto* extract_cmd = app.add_subcommand("extract", "Recover a string outside the compressible set");
  Source x_src;
  x_src.attach(extract_cmd);
  std::size_t x_n = 0;
  std::string x_T = "1";
  std::string x_mode = "cs";
  std::size_t x_prec = 64;
  std::string x_out;
  extract_cmd->add_option("--n", x_n, "Prefix length n")->required()->check(CLI::PositiveNumber);
  extract_cmd->add_option("--T", x_T, "Temperature a/b, at most 1");
  extract_cmd->add_option("--mode", x_mode, "cs or csb")->check(CLI::IsMember({"cs", "csb"}));
  extract_cmd->add_option("--prec", x_prec, "Enclosure precision in bits");
  extract_cmd->add_option("--out", x_out, "Report path (default stdout)");

  // fixedpoint
  auto* fixed_cmd = app.add_subcommand("fixedpoint", "Fixed-point constants, inequality sweeps, round trip");
  Source f_src;
  f_src.attach(fixed_cmd);
  std::string f_T = "1/2";
  std::string f_t = "3/4";
  std::size_t f_nmax = 24;
  std::size_t f_prec = 256;
  std::string f_out;
  fixed_cmd->add_option("--T", f_T, "Temperature a/b below 1");
  fixed_cmd->add_option("--t", f_t, "Upper point t with T < t < 1");
  fixed_cmd->add_option("--nmax", f_nmax, "Round trip for n = 1..nmax")->check(CLI::PositiveNumber);
  fixed_cmd->add_option("--prec", f_prec, "Enclosure precision in bits");
  fixed_cmd->add_option("--out", f_out, "Report path (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (*enumerate_cmd) {
      Budget budget = Budget::for_length(e_max_len);
      if (e_rounds != 0) budget.rounds = e_rounds;
      SubmachineRegistry registry;
      try {
        registry = registry_preset(e_registry);
      } catch (const std::invalid_argument& e) {
        throw UsageError(e.what());
      }
      const Machine machine(std::move(registry));
      const Enumeration run = enumerate(machine, budget, e_workers);
      emit(e_out, log_text(run, Provenance{e_registry, command}));
      std::cout << "machine: " << run.machine_digest() << "\n"
                << "events: " << run.events().size() << "\n"
                << "programs_run: " << run.programs_run() << "\n"
                << "out_of_budget: " << run.out_of_budget() << "\n"
                << "exhaustive: " << (run.exhaustive() ? "true" : "false") << "\n";
      return 0;
    }

    if (*measure_cmd) {
      const bool needs_T = m_quantity == "z" || m_quantity == "cst" || m_quantity == "csbt";
      std::optional<Temperature> T;
      if (needs_T) T = parse_T(m_T);
      const LoadedLog loaded = m_src.load(command);
      const Enumeration& run = loaded.run;
      DyadicInterval value;
      if (m_quantity == "omega") value = DyadicInterval::point(omega_lower(run));
      else if (m_quantity == "cs") value = DyadicInterval::point(cs_lower(run));
      else if (m_quantity == "z") value = z_T_lower(run, *T, m_prec);
      else if (m_quantity == "cst") value = cs_T_lower(run, *T, m_prec);
      else value = DyadicInterval::point(csb_T_lower(run, *T));
      emit(m_out, measure_report(m_quantity, T, value, m_prec, run, loaded.provenance).dump(2) + "\n");
      return 0;
    }

    if (*census_cmd) {
      const Temperature T = parse_T(c_T);
      const LoadedLog loaded = c_src.load(command);
      emit(c_out, csv_preamble(loaded.run, loaded.provenance) +
                      profile_csv(census_profile(loaded.run, c_nmax, T)));
      if (!c_members.empty()) {
        std::string text;
        for (std::size_t n = 0; n <= c_nmax; ++n) {
          const CensusRow row = census(loaded.run, n, T);
          if (row.count == 0) continue;
          Json line{{"n", n}, {"count", row.count}, {"members", Json::array()}};
          for (const auto& s : row.members) line["members"].push_back(s.str());
          text += line.dump() + "\n";
        }
        emit(c_members, text);
      }
      return 0;
    }

    if (*extract_cmd) {
      const Temperature T = parse_T(x_T);
      if (!T.at_most_one()) throw UsageError("extract: T must be at most 1");
      const SumMode mode = parse_sum_mode(x_mode);
      const LoadedLog loaded = x_src.load(command);
      const Extraction result = extract_incompressible_traced(x_n, T, mode, loaded.run, x_prec);
      const bool verified = verify_incompressible(result.value, mode == SumMode::CS ? Temperature(1) : T, loaded.run);
      emit(x_out, extraction_report(result, x_n, T, mode, verified, loaded.run, loaded.provenance).dump(2) + "\n");
      return 0;
    }

    if (*fixed_cmd) {
      const Temperature T = parse_T(f_T);
      const Temperature t = parse_T(f_t);
      if (!(T < t) || !t.below_one()) throw UsageError("fixedpoint: need T < t < 1");
      const LoadedLog loaded = f_src.load(command);
      const FixedpointSummary summary = run_fixedpoint_suite(loaded.run, T, t, f_nmax, f_prec);
      emit(f_out, fixedpoint_report(summary, loaded.run, loaded.provenance).dump(2) + "\n");
      return 0;
    }
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
