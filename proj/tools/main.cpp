// Copyright 2026 The Gaussiana Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// gaussiana: run Gaussian-state circuits described in JSON.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>
#include <spdlog/sinks/stdout_color_sinks.h>
#include <spdlog/spdlog.h>

#include "circuit.hpp"
#include "gaussiana/phasespace.hpp"

namespace {

using gaussiana::cli::json;
namespace cli = gaussiana::cli;

void setup_logging() {
  auto logger = spdlog::stderr_color_mt("gaussiana");
  spdlog::set_default_logger(logger);
  spdlog::set_pattern("[%l] %v");
  spdlog::set_level(spdlog::level::warn);
  if (const char* env = std::getenv("GAUSSIANA_LOG")) {
    spdlog::set_level(spdlog::level::from_str(env));
  }
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw cli::IoError("cannot read \"" + path + "\"");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

json read_json(const std::string& path) {
  const std::string text = read_file(path);
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw cli::SchemaError("\"" + path + "\" is not valid JSON: " + e.what());
  }
}

void write_file(const std::string& path, const std::string& contents) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw cli::IoError("cannot write \"" + path + "\"");
  out << contents;
  if (!out) throw cli::IoError("failed writing \"" + path + "\"");
}

void emit(const std::string& path, const std::string& contents) {
  if (path.empty() || path == "-") {
    std::cout << contents;
  } else {
    write_file(path, contents);
  }
}

std::string dump(const json& j) { return j.dump(2) + "\n"; }

struct Flags {
  std::string in;
  std::string out;
  std::string a;
  std::string b;
  double tol = gaussiana::kPhysicalTol;
  long long seed = 0;
  int cutoff = 0;
  std::string axes = "0,1";
  double lo = -4.0;
  double hi = 4.0;
  int resolution = 64;
};

cli::Options options_from(const Flags& f, const CLI::Option* cutoff_opt) {
  cli::Options o;
  o.tol = f.tol;
  if (cutoff_opt->count() > 0) o.cutoff_check = f.cutoff > 0 ? f.cutoff : 30;
  return o;
}

int guarded(const std::function<void()>& body) {
  try {
    body();
    return cli::kOk;
  } catch (const std::exception& e) {
    const int code = cli::exit_code_for(e);
    spdlog::error("{}", e.what());
    std::cerr << "error: " << e.what() << "\n";
    return code;
  }
}

}  // namespace

int main(int argc, char** argv) {
  setup_logging();
  CLI::App app{"Gaussian-state circuits in the covariance-matrix formalism"};
  app.require_subcommand(1);
  Flags f;

  auto* run = app.add_subcommand("run", "execute a circuit and write JSON results");
  run->add_option("--in", f.in, "circuit JSON")->required();
  run->add_option("--out", f.out, "result JSON (default: stdout)");
  run->add_option("--tol", f.tol, "physicality tolerance");
  run->add_option("--seed", f.seed, "reserved");
  auto* run_cutoff = run->add_option("--cutoff-check", f.cutoff, "cross-check against a Fock cutoff")
                         ->expected(0, 1);

  auto* validate = app.add_subcommand("validate", "check a circuit without running it");
  validate->add_option("--in", f.in, "circuit JSON")->required();
  validate->add_option("--tol", f.tol, "physicality tolerance");
  validate->add_option("--seed", f.seed, "reserved");

  auto* metrics = app.add_subcommand("metrics", "all metrics of a state description");
  metrics->add_option("--in", f.in, "state JSON")->required();
  metrics->add_option("--out", f.out, "result JSON (default: stdout)");
  metrics->add_option("--tol", f.tol, "physicality tolerance");

  auto* fid = app.add_subcommand("fidelity", "overlap and fidelity of two state descriptions");
  fid->add_option("--a", f.a, "first state JSON")->required();
  fid->add_option("--b", f.b, "second state JSON")->required();
  fid->add_option("--out", f.out, "result JSON (default: stdout)");
  fid->add_option("--tol", f.tol, "physicality tolerance");

  auto* wig = app.add_subcommand("wigner", "Wigner grid of a state description as CSV");
  wig->add_option("--in", f.in, "state JSON")->required();
  wig->add_option("--out", f.out, "CSV file (default: stdout)");
  wig->add_option("--axes", f.axes, "one or two quadrature indices, e.g. 0,1");
  wig->add_option("--range", [&f](const CLI::results_t& r) {
       if (r.size() != 2) return false;
       f.lo = std::stod(r[0]);
       f.hi = std::stod(r[1]);
       return true;
     }, "lo hi (same for every axis)")->expected(2)->delimiter(',');
  wig->add_option("--resolution", f.resolution, "points per axis");
  wig->add_option("--tol", f.tol, "physicality tolerance");

  CLI11_PARSE(app, argc, argv);
  if (run->parsed() || validate->parsed()) spdlog::debug("seed {} (unused)", f.seed);

  if (run->parsed()) {
    return guarded([&] {
      const cli::Options opts = options_from(f, run_cutoff);
      const cli::Circuit circuit = cli::parse_circuit(read_json(f.in), opts);
      const cli::RunResult result = cli::run(circuit, opts);
      for (const auto& [path, contents] : result.files) write_file(path, contents);
      emit(f.out, dump(result.output));
    });
  }
  if (validate->parsed()) {
    return guarded([&] {
      cli::Options opts;
      opts.tol = f.tol;
      const cli::Circuit circuit = cli::parse_circuit(read_json(f.in), opts);
      spdlog::info("valid circuit: {} ops, {} final modes", circuit.ops.size(), circuit.final_modes);
    });
  }
  if (metrics->parsed()) {
    return guarded([&] {
      const auto state = cli::parse_state(read_json(f.in), f.tol);
      emit(f.out, dump(cli::metrics_json(state, {"all"}, f.tol)));
    });
  }
  if (fid->parsed()) {
    return guarded([&] {
      const auto a = cli::parse_state(read_json(f.a), f.tol);
      const auto b = cli::parse_state(read_json(f.b), f.tol);
      emit(f.out, dump(cli::fidelity_json(a, b)));
    });
  }
  if (wig->parsed()) {
    return guarded([&] {
      const auto state = cli::parse_state(read_json(f.in), f.tol);
      std::vector<gaussiana::GridAxis> axes;
      for (int q : cli::parse_index_list(f.axes)) {
        if (q < 0 || q >= 2 * state.modes()) {
          throw cli::SchemaError("quadrature index " + std::to_string(q) + " out of range");
        }
        axes.push_back({q, f.lo, f.hi});
      }
      if (axes.size() > 2) throw cli::SchemaError("--axes takes one or two indices");
      if (!(f.hi > f.lo)) throw cli::SchemaError("--range must satisfy lo < hi");
      if (f.resolution < 2) throw cli::SchemaError("--resolution must be >= 2");
      emit(f.out, cli::wigner_csv(gaussiana::wigner_grid(state, axes, f.resolution)));
    });
  }
  return 0;
}
