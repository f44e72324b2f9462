// fanstalk: command-line driver — computes desingularization data for
// systems of binomials and prints deterministic JSON or text reports.
// Distributed under the MIT license; see LICENSE.

#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include "CLI11.hpp"

#include "fanstalk/fanstalk.hpp"

namespace {

struct Flags {
  std::string input;
  long long characteristic = 0;
  std::string format = "json";
  bool star_subdivide = false;
  bool oracle_verify = false;
  std::size_t max_subset_size = fanstalk::kMaxSubsetForms;
  std::string op = "all";
};

std::string read_input(const std::string& path) {
  std::ostringstream ss;
  if (path == "-") {
    ss << std::cin.rdbuf();
  } else {
    std::ifstream in(path, std::ios::binary);
    if (!in)
      throw std::runtime_error("cannot open input file '" + path + "'");
    ss << in.rdbuf();
  }
  return ss.str();
}

void add_common(CLI::App* cmd, Flags& f, bool with_star, bool with_verify,
                bool with_op) {
  cmd->add_option("-i,--input", f.input,
                  "input system file ('-' reads standard input)")
      ->required();
  cmd->add_option("-p,--char", f.characteristic,
                  "working characteristic (0 or a prime)")
      ->check(CLI::NonNegativeNumber);
  cmd->add_option("-f,--format", f.format, "output format")
      ->check(CLI::IsMember({"json", "text"}))
      ->capture_default_str();
  cmd->add_option("--max-subset-size", f.max_subset_size,
                  "cap for subset-enumerating verdicts")
      ->check(CLI::Range(std::size_t{1}, fanstalk::kMaxSubsetForms))
      ->capture_default_str();
  if (with_star)
    cmd->add_flag("--star-subdivide", f.star_subdivide,
                  "star-subdivide the fan at all of its rays first");
  if (with_verify)
    cmd->add_flag("--oracle-verify", f.oracle_verify,
                  "cross-check the result against brute-force oracles");
  if (with_op)
    cmd->add_option("--op", f.op, "which oracle check to run")
        ->check(CLI::IsMember(
            {"minkowski", "facets", "fan", "smoothness", "strata", "all"}))
        ->capture_default_str();
}

int dispatch(const std::string& name, const Flags& f) {
  std::string text = read_input(f.input);
  fanstalk::PipelineOptions opts;
  opts.characteristic = fanstalk::Int(f.characteristic);
  if (opts.characteristic != 0 && !fanstalk::is_prime(opts.characteristic))
    throw fanstalk::Error(fanstalk::ErrorKind::BadCharacteristic,
                          "--char must be 0 or a prime");
  opts.star_subdivide = f.star_subdivide;
  opts.oracle_verify = f.oracle_verify;
  opts.max_subset_size = f.max_subset_size;
  opts.oracle_op = f.op;

  fanstalk::RunResult result;
  if (name == "resolve")
    result = fanstalk::run_resolve(text, opts);
  else if (name == "ideal")
    result = fanstalk::run_ideal(text, opts);
  else if (name == "primes")
    result = fanstalk::run_primes(text, opts);
  else if (name == "fan")
    result = fanstalk::run_fan(text, opts);
  else
    result = fanstalk::run_oracle(text, opts);

  if (f.format == "json")
    std::cout << result.report.dump(2) << "\n";
  else
    std::cout << result.text;
  return result.exit_code;
}

} // namespace

int main(int argc, char** argv) {
  CLI::App app{"exact desingularization data for systems of binomials"};
  app.set_version_flag("--version", std::string(fanstalk::kToolName) + " " +
                                        fanstalk::kToolVersion);
  app.require_subcommand(1);

  Flags flags;
  CLI::App* resolve = app.add_subcommand(
      "resolve", "full pipeline: fan, charts, pullbacks, verdicts, schedule");
  add_common(resolve, flags, true, true, false);
  CLI::App* ideal = app.add_subcommand(
      "ideal", "stratify the subscheme cut out by all members");
  add_common(ideal, flags, true, true, false);
  CLI::App* primes =
      app.add_subcommand("primes", "problematic residue characteristics");
  add_common(primes, flags, false, false, false);
  CLI::App* fan = app.add_subcommand(
      "fan", "Newton polyhedron and dual fan of the system");
  add_common(fan, flags, true, true, false);
  CLI::App* oracle = app.add_subcommand(
      "oracle", "run the independent brute-force verifiers");
  add_common(oracle, flags, false, false, true);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  try {
    for (CLI::App* cmd : {resolve, ideal, primes, fan, oracle})
      if (cmd->parsed()) return dispatch(cmd->get_name(), flags);
    return 1;
  } catch (const fanstalk::Error& e) {
    std::cerr << "fanstalk: error: [" << fanstalk::error_kind_name(e.kind())
              << "] " << e.message() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "fanstalk: error: " << e.what() << "\n";
    return 1;
  }
}
