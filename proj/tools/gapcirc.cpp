// Copyright 2026 The gapcirc Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// gapcirc command-line driver: gen, build, simulate, verify, sweep.
//
// Exit codes: 0 success, 1 identity mismatch, 2 input or schema error, 3 resource cap exceeded.

#include <chrono>
#include <cstdio>
#include <ctime>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "gapcirc/gapcirc.hpp"

using namespace gapcirc;

namespace {

enum Exit { kOk = 0, kMismatch = 1, kInputError = 2, kResourceCap = 3 };

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InstanceError("cannot read " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void emit(const std::string& text, const std::string& out_path) {
  if (out_path.empty() || out_path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(out_path, std::ios::binary);
  if (!out) throw InstanceError("cannot write " + out_path);
  out << text;
}

std::string utc_now() {
  const auto t = std::time(nullptr);
  std::tm tm{};
  gmtime_r(&t, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

// "1..8", "1,8,64" and "1..3,10" all accepted.
std::vector<std::int64_t> parse_values(const std::string& text) {
  std::vector<std::int64_t> out;
  std::stringstream ss(text);
  std::string part;
  while (std::getline(ss, part, ',')) {
    const auto dots = part.find("..");
    try {
      if (dots == std::string::npos) {
        out.push_back(std::stoll(part));
      } else {
        const auto lo = std::stoll(part.substr(0, dots));
        const auto hi = std::stoll(part.substr(dots + 2));
        if (hi < lo) throw InstanceError("empty range '" + part + "'");
        for (auto v = lo; v <= hi; ++v) out.push_back(v);
      }
    } catch (const std::logic_error&) {
      throw InstanceError("bad value list '" + text + "'");
    }
  }
  if (out.empty()) throw InstanceError("empty value list");
  return out;
}

std::vector<LoadMode> parse_modes(const std::string& s) {
  if (s == "both") return {LoadMode::qram, LoadMode::explicit_unitary};
  return {parse_mode(s)};
}

const char* second_name(Problem p) {
  switch (p) {
    case Problem::ov:
      return "d";
    case Problem::threesum:
      return "U";
    case Problem::nwt:
      return "M";
  }
  return "?";
}

struct GenArgs {
  std::string problem;
  std::size_t n = 0;
  std::int64_t d = -1, U = -1, M = -1;
  std::uint64_t seed = 1;
  std::string out;
};

struct RunArgs {
  std::string input;
  std::string mode = "qram";
  std::string backend = "pathsum";
  std::size_t dense_cap = DenseState::kDefaultCap;
  unsigned jobs = 1;
  std::string out;
  bool json = false;
  bool no_timestamp = false;
};

struct SweepArgs {
  std::string problem;
  std::string n;
  std::string second;
  std::size_t trials = 10;
  std::uint64_t seed = 1;
  std::string mode = "both";
  std::string backend = "pathsum";
  std::size_t dense_cap = DenseState::kDefaultCap;
  unsigned jobs = 1;
  bool mutate = false;
  std::string out;
};

std::int64_t second_param(const GenArgs& g, Problem p) {
  const std::int64_t v = p == Problem::ov ? g.d : p == Problem::threesum ? g.U : g.M;
  if (v < 0) throw InstanceError(std::string("gen ") + problem_name(p) + ": --" + second_name(p) + " is required");
  return v;
}

int cmd_gen(const GenArgs& g) {
  const auto p = parse_problem(g.problem);
  const auto inst = generate_instance(p, g.n, second_param(g, p), g.seed);
  emit(instance_to_string(inst, g.seed), g.out);
  return kOk;
}

int cmd_build(const RunArgs& a) {
  const auto built = build_circuit(read_instance_file(a.input), parse_mode(a.mode));
  emit(built_to_text(built), a.out);
  return kOk;
}

Circuit built_or_plain_circuit(const std::string& text) {
  if (text.rfind("param ", 0) == 0) return built_from_text(text).circuit;
  return circuit_from_text(text);
}

// Accepts an instance file (built in --mode) or a circuit file written by `build`.
int cmd_simulate(const RunArgs& a) {
  const auto text = read_file(a.input);
  const auto start = text.find_first_not_of(" \t\r\n");
  const bool is_instance = start != std::string::npos && text[start] == '{';
  const Circuit circuit =
      is_instance ? build_circuit(parse_instance(text), parse_mode(a.mode)).circuit : built_or_plain_circuit(text);
  const auto out = simulate(circuit, SimOptions{parse_backend(a.backend), a.jobs, a.dense_cap});
  std::ostringstream o;
  o << "backend: " << backend_name(out.backend) << "\n";
  o << "qubits: " << circuit.n_qubits() << "\n";
  if (out.exact) {
    o << "p_acc: " << out.exact->to_fraction_string() << "\n";
    o << "signed_sum: " << out.signed_sum << "\n";
    o << "branches: " << out.branches << "\n";
  }
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", out.probability);
  o << "probability: " << buf << "\n";
  o << "ancilla_restored: " << (out.ancilla_restored ? "yes" : "no") << "\n";
  emit(o.str(), a.out);
  return kOk;
}

int cmd_verify(const RunArgs& a) {
  const auto inst = read_instance_file(a.input);
  VerifyOptions opts;
  opts.backend = parse_backend_choice(a.backend);
  opts.jobs = a.jobs;
  opts.dense_cap = a.dense_cap;
  const auto stamp = a.no_timestamp ? std::string() : utc_now();

  std::vector<VerifyReport> reports;
  for (auto mode : parse_modes(a.mode)) reports.push_back(verify_instance(inst, mode, opts));
  bool pass = true;
  for (const auto& r : reports) pass = pass && r.pass();

  std::string text;
  if (a.json) {
    nlohmann::ordered_json j;
    if (!stamp.empty()) j["generated"] = stamp;
    j["schema"] = "gapcirc-verify/1";
    j["pass"] = pass;
    j["reports"] = nlohmann::ordered_json::array();
    for (const auto& r : reports) j["reports"].push_back(to_json(r));
    text = j.dump(2) + "\n";
  } else {
    for (std::size_t i = 0; i < reports.size(); ++i) {
      if (i) text += "\n";
      text += to_text(reports[i], i == 0 ? stamp : "");
    }
  }
  emit(text, a.out);
  return pass ? kOk : kMismatch;
}

int cmd_sweep(const SweepArgs& a) {
  SweepConfig cfg;
  cfg.problem = parse_problem(a.problem);
  for (auto n : parse_values(a.n)) {
    if (n < 1) throw InstanceError("sweep: n must be at least 1");
    for (auto s : parse_values(a.second)) cfg.sizes.emplace_back(static_cast<std::size_t>(n), s);
  }
  cfg.trials = a.trials;
  cfg.seed = a.seed;
  cfg.modes = parse_modes(a.mode);
  cfg.verify.backend = parse_backend_choice(a.backend);
  cfg.verify.dense_cap = a.dense_cap;
  cfg.jobs = a.jobs;
  cfg.mutate = a.mutate;
  const auto sum = run_sweep(cfg);

  std::ostringstream o;
  char line[160];
  std::snprintf(line, sizeof line, "%-4s %-4s %-14s %-14s %-6s %-10s %s\n", "n", second_name(cfg.problem),
                "trials_passed", "runs_passed", "gap0", "max_ratio", "seconds");
  o << "sweep " << problem_name(cfg.problem) << " seed " << cfg.seed << " trials " << cfg.trials << " mode " << a.mode
    << " backend " << a.backend << (cfg.mutate ? " mutate" : "") << "\n"
    << line;
  for (const auto& row : sum.rows) {
    if (!row.feasible) {
      std::snprintf(line, sizeof line, "%-4zu %-4lld skipped: %zu distinct values cannot fit\n", row.n,
                    static_cast<long long>(row.second), row.n);
      o << line;
      continue;
    }
    const auto tp = std::to_string(row.trials_passed) + "/" + std::to_string(cfg.trials);
    const auto rp = std::to_string(row.passes) + "/" + std::to_string(row.runs);
    std::snprintf(line, sizeof line, "%-4zu %-4lld %-14s %-14s %-6zu %-10.3f %.3f\n", row.n,
                  static_cast<long long>(row.second), tp.c_str(), rp.c_str(), row.zero_gap, row.max_gate_ratio,
                  row.seconds);
    o << line;
    for (const auto& f : row.failures) o << "  FAIL " << f << "\n";
  }
  o << "total: " << sum.trials_passed << "/" << sum.trials << " trials passed, " << sum.passes << "/" << sum.runs
    << " runs passed\n";
  o << "result: " << (sum.ok() ? "PASS" : "FAIL") << "\n";
  emit(o.str(), a.out);
  return sum.ok() ? kOk : kMismatch;
}

void add_run_options(CLI::App* cmd, RunArgs& a, bool with_backend) {
  cmd->add_option("input", a.input, "instance file")->required();
  cmd->add_option("--mode", a.mode, "qram or explicit");
  if (with_backend) {
    cmd->add_option("--backend", a.backend, "pathsum or dense");
    cmd->add_option("--dense-cap", a.dense_cap, "largest qubit count the dense backend accepts");
    cmd->add_option("--jobs", a.jobs, "worker threads for the path sum");
  }
  cmd->add_option("--out", a.out, "output file (default stdout)");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Build and check gap-encoding circuits for OV, 3-SUM and negative weight triangle instances"};
  app.require_subcommand(1);

  GenArgs gen;
  auto* g = app.add_subcommand("gen", "generate a random instance file");
  g->add_option("problem", gen.problem, "ov, threesum or nwt")->required();
  g->add_option("--n", gen.n, "number of vectors, integers or vertices")->required();
  g->add_option("--d", gen.d, "OV vector length");
  g->add_option("--U", gen.U, "3-SUM magnitude bound");
  g->add_option("--M", gen.M, "NWT weight bound");
  g->add_option("--seed", gen.seed, "generator seed");
  g->add_option("--out", gen.out, "output file (default stdout)");

  RunArgs build, sim, ver;
  auto* b = app.add_subcommand("build", "write the circuit for an instance");
  add_run_options(b, build, false);
  auto* s = app.add_subcommand("simulate", "compute the acceptance probability of an instance or circuit file");
  add_run_options(s, sim, true);
  auto* v = app.add_subcommand("verify", "check the acceptance probability, qubit count and gate counts");
  add_run_options(v, ver, true);
  v->get_option("--mode")->description("qram, explicit or both");
  v->get_option("--backend")->description("pathsum, dense or both");
  v->add_flag("--json", ver.json, "write the report as JSON");
  v->add_flag("--no-timestamp", ver.no_timestamp, "omit the generated line");

  SweepArgs sw;
  auto* w = app.add_subcommand("sweep", "verify many seeded random instances per size");
  w->add_option("problem", sw.problem, "ov, threesum or nwt")->required();
  w->add_option("--n", sw.n, "sizes, e.g. 1..8 or 2,4")->required();
  w->add_option("--p,--d,--U,--M", sw.second, "second size parameter list (d, U or M)")->required();
  w->add_option("--trials", sw.trials, "instances per size");
  w->add_option("--seed", sw.seed, "base seed");
  w->add_option("--mode", sw.mode, "qram, explicit or both");
  w->add_option("--backend", sw.backend, "pathsum, dense or both");
  w->add_option("--dense-cap", sw.dense_cap, "largest qubit count the dense backend accepts");
  w->add_option("--jobs", sw.jobs, "worker threads");
  w->add_flag("--mutate", sw.mutate, "delete the phase gate from every circuit (harness control)");
  w->add_option("--out", sw.out, "output file (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kInputError;
  }

  try {
    if (*g) return cmd_gen(gen);
    if (*b) return cmd_build(build);
    if (*s) return cmd_simulate(sim);
    if (*v) return cmd_verify(ver);
    if (*w) return cmd_sweep(sw);
  } catch (const ResourceCapError& e) {
    std::cerr << "gapcirc: resource cap: " << e.what() << "\n";
    return kResourceCap;
  } catch (const std::invalid_argument& e) {
    // InstanceError, CircuitFormatError and bad option values all derive from invalid_argument.
    std::cerr << "gapcirc: " << e.what() << "\n";
    return kInputError;
  } catch (const std::exception& e) {
    std::cerr << "gapcirc: error: " << e.what() << "\n";
    return kMismatch;
  }
  return kInputError;
}
