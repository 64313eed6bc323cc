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

#pragma once

#include <complex>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

#include "gaussiana/channels.hpp"
#include "gaussiana/core.hpp"
#include "gaussiana/phasespace.hpp"

// JSON circuit description, validation and execution behind the gaussiana
// command-line tool.
namespace gaussiana::cli {

using nlohmann::json;

/// Malformed input: unknown names, wrong types, bad mode indices.
class SchemaError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Failure to read or write a file.
class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum ExitCode : int { kOk = 0, kIo = 1, kSchema = 2, kPhysics = 3 };

/// Maps a caught exception to the process exit code.
int exit_code_for(const std::exception& e);

struct Options {
  double tol = kPhysicalTol;
  std::optional<int> cutoff_check;  // Fock cutoff for the oracle cross-check
};

/// Builds a state from a description such as {"twb": {"r": 0.5}} or an array of
/// descriptions (tensor product, in order).
GaussianState parse_state(const json& doc, double tol = kPhysicalTol);

struct Op {
  enum class Kind { kDisplace, kRotate, kBeamSplitter, kSqueeze1, kSqueeze2, kChannel, kMeasure };

  Kind kind = Kind::kDisplace;
  std::string name;
  std::vector<int> modes;
  double p1 = 0.0;  // theta | phi | r | Re alpha
  double p2 = 0.0;  // theta (bs) | psi | Im alpha
  std::optional<ChannelParams> channel;
  double time = 0.0;
  bool heterodyne = true;
  std::complex<double> alpha;  // heterodyne outcome
  double outcome = 0.0;        // homodyne outcome
  double angle = 0.0;
  double s = 1e-6;
};

struct GridRequest {
  std::vector<GridAxis> axes;
  int resolution = 64;
  std::string file;
};

struct PointRequest {
  Vector x;
  double s = 0.0;
};

struct ChiRequest {
  Vector lambda;
  ChiForm form = ChiForm::kPlain;
};

struct MomentRequest {
  int s = 0;
  int t = 0;
  int h = 0;
  int k = 0;
};

struct Circuit {
  explicit Circuit(GaussianState state) : initial(std::move(state)) {}

  GaussianState initial;
  std::vector<Op> ops;
  std::vector<std::string> metrics;
  std::vector<GridRequest> grids;
  std::vector<PointRequest> points;
  std::vector<ChiRequest> characteristic;
  std::vector<MomentRequest> moments;
  int final_modes = 0;
};

/// Full validation: schema, mode indices along the circuit, and physical
/// parameters (initial state, bath constraints). Nothing is executed.
Circuit parse_circuit(const json& doc, const Options& options);

struct RunResult {
  json output;
  std::vector<std::pair<std::string, std::string>> files;  // path, contents
};

RunResult run(const Circuit& circuit, const Options& options);

/// Every key accepted in "metrics" (besides "all").
const std::vector<std::string>& metric_keys();

/// Requested metrics of `state`; "all" selects every key valid for its
/// number of modes.
json metrics_json(const GaussianState& state, const std::vector<std::string>& keys,
                  double tol = kPhysicalTol);

json fidelity_json(const GaussianState& a, const GaussianState& b);

/// Header "x,y,w" and one row per grid point, shortest round-trip decimals.
std::string wigner_csv(const std::vector<GridPoint>& rows);

std::string format_double(double v);

/// Parses an axis list such as "0,1".
std::vector<int> parse_index_list(const std::string& text);

}  // namespace gaussiana::cli
