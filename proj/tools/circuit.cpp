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

#include "circuit.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <map>
#include <set>
#include <sstream>

#include <spdlog/spdlog.h>

#include "gaussiana/conditioning.hpp"
#include "gaussiana/fidelity.hpp"
#include "gaussiana/fock_oracle.hpp"
#include "gaussiana/metrics.hpp"
#include "gaussiana/states.hpp"
#include "gaussiana/transforms.hpp"

namespace gaussiana::cli {

namespace {

using Complex = std::complex<double>;

// ---------------------------------------------------------------------------
// Schema helpers

void require_object(const json& j, const std::string& where) {
  if (!j.is_object()) throw SchemaError(where + ": expected an object");
}

void allow_keys(const json& j, const std::set<std::string>& allowed, const std::string& where) {
  for (const auto& [key, value] : j.items()) {
    (void)value;
    if (!allowed.count(key)) throw SchemaError(where + ": unknown field \"" + key + "\"");
  }
}

double number(const json& j, const std::string& key, const std::string& where,
              std::optional<double> fallback = std::nullopt) {
  if (!j.contains(key)) {
    if (fallback) return *fallback;
    throw SchemaError(where + ": missing field \"" + key + "\"");
  }
  const json& v = j.at(key);
  if (!v.is_number()) throw SchemaError(where + ": field \"" + key + "\" must be a number");
  return v.get<double>();
}

int integer(const json& j, const std::string& key, const std::string& where,
            std::optional<int> fallback = std::nullopt) {
  if (!j.contains(key)) {
    if (fallback) return *fallback;
    throw SchemaError(where + ": missing field \"" + key + "\"");
  }
  const json& v = j.at(key);
  if (!v.is_number_integer()) {
    throw SchemaError(where + ": field \"" + key + "\" must be an integer");
  }
  return v.get<int>();
}

std::vector<double> numbers(const json& v, const std::string& where) {
  if (!v.is_array()) throw SchemaError(where + ": expected an array of numbers");
  std::vector<double> out;
  for (const json& x : v) {
    if (!x.is_number()) throw SchemaError(where + ": expected an array of numbers");
    out.push_back(x.get<double>());
  }
  return out;
}

Complex complex_value(const json& v, const std::string& where) {
  if (v.is_number()) return {v.get<double>(), 0.0};
  const std::vector<double> parts = numbers(v, where);
  if (parts.size() != 2) throw SchemaError(where + ": complex numbers are [re, im]");
  return {parts[0], parts[1]};
}

Vector to_vector(const std::vector<double>& v) {
  return Eigen::Map<const Vector>(v.data(), static_cast<Eigen::Index>(v.size()));
}

// A single-key object {"name": {params}}.
std::pair<std::string, json> tagged(const json& j, const std::string& where) {
  if (!j.is_object() || j.size() != 1) {
    throw SchemaError(where + ": expected an object with a single key naming the entry");
  }
  auto it = j.begin();
  json params = it.value();
  require_object(params, where + " \"" + it.key() + "\"");
  return {it.key(), params};
}

void check_mode(int mode, int n, const std::string& where) {
  if (mode < 0 || mode >= n) {
    throw SchemaError(where + ": mode index " + std::to_string(mode) + " out of range for " +
                      std::to_string(n) + " modes");
  }
}

std::vector<int> mode_pair(const json& params, int n, const std::string& where) {
  if (!params.contains("modes")) throw SchemaError(where + ": missing field \"modes\"");
  const json& m = params.at("modes");
  if (!m.is_array() || m.size() != 2 || !m[0].is_number_integer() || !m[1].is_number_integer()) {
    throw SchemaError(where + ": \"modes\" must be two integers");
  }
  std::vector<int> modes{m[0].get<int>(), m[1].get<int>()};
  check_mode(modes[0], n, where);
  check_mode(modes[1], n, where);
  if (modes[0] == modes[1]) throw SchemaError(where + ": \"modes\" must be distinct");
  return modes;
}

// ---------------------------------------------------------------------------
// States

GaussianState parse_single_state(const json& doc, double tol) {
  const auto [name, p] = tagged(doc, "state");
  const std::string where = "state \"" + name + "\"";
  if (name == "vacuum") {
    allow_keys(p, {"n"}, where);
    const int n = integer(p, "n", where, 1);
    if (n < 1) throw SchemaError(where + ": \"n\" must be positive");
    return vacuum(n);
  }
  if (name == "thermal") {
    allow_keys(p, {"N"}, where);
    if (!p.contains("N")) throw SchemaError(where + ": missing field \"N\"");
    const json& nj = p.at("N");
    const std::vector<double> photons = nj.is_number() ? std::vector<double>{nj.get<double>()}
                                                       : numbers(nj, where);
    if (photons.empty()) throw SchemaError(where + ": \"N\" is empty");
    return thermal(photons);
  }
  if (name == "coherent") {
    allow_keys(p, {"alpha"}, where);
    if (!p.contains("alpha") || !p.at("alpha").is_array() || p.at("alpha").empty()) {
      throw SchemaError(where + ": \"alpha\" must be a non-empty list of [re, im]");
    }
    std::vector<Complex> alpha;
    for (const json& a : p.at("alpha")) alpha.push_back(complex_value(a, where));
    return coherent(alpha);
  }
  if (name == "dsts") {
    allow_keys(p, {"alpha", "r", "psi", "N"}, where);
    const Complex alpha = p.contains("alpha") ? complex_value(p.at("alpha"), where) : Complex{};
    return single_mode_general(alpha, number(p, "r", where, 0.0), number(p, "psi", where, 0.0),
                               number(p, "N", where, 0.0));
  }
  if (name == "tmst") {
    allow_keys(p, {"r", "N1", "N2"}, where);
    return two_mode_squeezed_thermal(number(p, "r", where), number(p, "N1", where, 0.0),
                                     number(p, "N2", where, 0.0));
  }
  if (name == "twb") {
    allow_keys(p, {"r"}, where);
    return twb(number(p, "r", where));
  }
  if (name == "custom") {
    allow_keys(p, {"cov", "mean"}, where);
    if (!p.contains("cov") || !p.at("cov").is_array()) {
      throw SchemaError(where + ": \"cov\" must be a list of rows");
    }
    const json& rows = p.at("cov");
    const int dim = static_cast<int>(rows.size());
    if (dim == 0 || dim % 2 != 0) {
      throw SchemaError(where + ": \"cov\" must have an even, positive number of rows");
    }
    Matrix cov(dim, dim);
    for (int i = 0; i < dim; ++i) {
      const std::vector<double> row = numbers(rows[i], where);
      if (static_cast<int>(row.size()) != dim) throw SchemaError(where + ": \"cov\" is not square");
      for (int j = 0; j < dim; ++j) cov(i, j) = row[j];
    }
    Vector mean = Vector::Zero(dim);
    if (p.contains("mean")) {
      const std::vector<double> m = numbers(p.at("mean"), where);
      if (static_cast<int>(m.size()) != dim) {
        throw SchemaError(where + ": \"mean\" length does not match \"cov\"");
      }
      mean = to_vector(m);
    }
    return GaussianState(std::move(cov), std::move(mean), tol);
  }
  throw SchemaError("unknown state \"" + name + "\"");
}

// ---------------------------------------------------------------------------
// Ops

const std::map<std::string, Op::Kind>& op_names() {
  static const std::map<std::string, Op::Kind> names{
      {"displace", Op::Kind::kDisplace},   {"rotate", Op::Kind::kRotate},
      {"bs", Op::Kind::kBeamSplitter},     {"squeeze1", Op::Kind::kSqueeze1},
      {"squeeze2", Op::Kind::kSqueeze2},   {"channel", Op::Kind::kChannel},
      {"measure", Op::Kind::kMeasure}};
  return names;
}

Op parse_op(const json& doc, int index, int& n) {
  const std::string where0 = "op[" + std::to_string(index) + "]";
  const auto [name, p] = tagged(doc, where0);
  const std::string where = where0 + " (" + name + ")";
  const auto it = op_names().find(name);
  if (it == op_names().end()) throw SchemaError(where0 + ": unknown op \"" + name + "\"");
  Op op;
  op.kind = it->second;
  op.name = name;
  switch (op.kind) {
    case Op::Kind::kDisplace: {
      allow_keys(p, {"mode", "alpha"}, where);
      op.modes = {integer(p, "mode", where)};
      if (!p.contains("alpha")) throw SchemaError(where + ": missing field \"alpha\"");
      const Complex a = complex_value(p.at("alpha"), where);
      op.p1 = a.real();
      op.p2 = a.imag();
      break;
    }
    case Op::Kind::kRotate:
      allow_keys(p, {"mode", "theta"}, where);
      op.modes = {integer(p, "mode", where)};
      op.p1 = number(p, "theta", where);
      break;
    case Op::Kind::kBeamSplitter:
      allow_keys(p, {"modes", "phi", "theta"}, where);
      op.modes = mode_pair(p, n, where);
      op.p1 = number(p, "phi", where);
      op.p2 = number(p, "theta", where, 0.0);
      break;
    case Op::Kind::kSqueeze1:
      allow_keys(p, {"mode", "r", "psi"}, where);
      op.modes = {integer(p, "mode", where)};
      op.p1 = number(p, "r", where);
      op.p2 = number(p, "psi", where, 0.0);
      break;
    case Op::Kind::kSqueeze2:
      allow_keys(p, {"modes", "r", "psi"}, where);
      op.modes = mode_pair(p, n, where);
      op.p1 = number(p, "r", where);
      op.p2 = number(p, "psi", where, 0.0);
      break;
    case Op::Kind::kChannel: {
      allow_keys(p, {"mode", "gamma", "N", "M_re", "M_im", "t"}, where);
      op.modes = {integer(p, "mode", where)};
      op.time = number(p, "t", where);
      if (!(op.time >= 0.0) || !std::isfinite(op.time)) {
        throw SchemaError(where + ": \"t\" must be a finite time >= 0");
      }
      try {
        op.channel = ChannelParams(number(p, "gamma", where), number(p, "N", where, 0.0),
                                   Complex(number(p, "M_re", where, 0.0),
                                           number(p, "M_im", where, 0.0)));
      } catch (const PhysicsError& e) {
        throw PhysicsError(where + ": " + e.what());
      }
      break;
    }
    case Op::Kind::kMeasure: {
      allow_keys(p, {"mode", "kind", "outcome", "angle", "s"}, where);
      op.modes = {integer(p, "mode", where)};
      if (!p.contains("kind") || !p.at("kind").is_string()) {
        throw SchemaError(where + ": \"kind\" must be \"heterodyne\" or \"homodyne\"");
      }
      const std::string kind = p.at("kind").get<std::string>();
      if (!p.contains("outcome")) throw SchemaError(where + ": missing field \"outcome\"");
      if (kind == "heterodyne") {
        op.heterodyne = true;
        op.alpha = complex_value(p.at("outcome"), where);
        if (p.contains("angle") || p.contains("s")) {
          throw SchemaError(where + ": \"angle\" and \"s\" apply to homodyne only");
        }
      } else if (kind == "homodyne") {
        op.heterodyne = false;
        if (!p.at("outcome").is_number()) {
          throw SchemaError(where + ": homodyne \"outcome\" must be a number");
        }
        op.outcome = p.at("outcome").get<double>();
        op.angle = number(p, "angle", where, 0.0);
        op.s = number(p, "s", where, 1e-6);
        if (!(op.s > 0.0)) throw SchemaError(where + ": \"s\" must be > 0");
      } else {
        throw SchemaError(where + ": \"kind\" must be \"heterodyne\" or \"homodyne\"");
      }
      if (n < 2) throw SchemaError(where + ": measuring needs at least two modes");
      break;
    }
  }
  for (int m : op.modes) check_mode(m, n, where);
  if (op.kind == Op::Kind::kMeasure) --n;
  return op;
}

GaussianState apply_op(const GaussianState& s, const Op& op) {
  const int mode = op.modes.front();
  switch (op.kind) {
    case Op::Kind::kDisplace: {
      Vector shift(2);
      shift << std::sqrt(2.0) * op.p1, std::sqrt(2.0) * op.p2;
      return apply(s, displacement(shift), ModeSelection{mode});
    }
    case Op::Kind::kRotate:
      return apply(s, phase_rotation(op.p1), ModeSelection{mode});
    case Op::Kind::kBeamSplitter:
      return apply(s, beam_splitter(op.p1, op.p2), ModeSelection(op.modes));
    case Op::Kind::kSqueeze1:
      return apply(s, squeezer_single(op.p1, op.p2), ModeSelection{mode});
    case Op::Kind::kSqueeze2:
      return apply(s, squeezer_two_mode(op.p1, op.p2), ModeSelection(op.modes));
    case Op::Kind::kChannel:
      if (s.modes() == 1) return evolve_single(s, *op.channel, op.time);
      return evolve(s, mode, *op.channel, op.time);
    case Op::Kind::kMeasure:
      break;
  }
  throw SchemaError("measurement handled separately");
}

GaussianPovm povm_of(const Op& op) {
  return op.heterodyne ? heterodyne_povm(op.alpha) : homodyne_povm(op.angle, op.outcome, op.s);
}

// ---------------------------------------------------------------------------
// Output requests

GridAxis parse_axis(int quadrature, const json& range, const std::string& where) {
  const std::vector<double> r = numbers(range, where);
  if (r.size() != 2) throw SchemaError(where + ": a range is [lo, hi]");
  return {quadrature, r[0], r[1]};
}

GridRequest parse_grid(const json& g, int n, const std::string& where) {
  require_object(g, where);
  allow_keys(g, {"axes", "range", "resolution", "file"}, where);
  GridRequest req;
  if (!g.contains("axes") || !g.at("axes").is_array()) {
    throw SchemaError(where + ": \"axes\" must list one or two quadrature indices");
  }
  std::vector<int> axes;
  for (const json& a : g.at("axes")) {
    if (!a.is_number_integer()) throw SchemaError(where + ": quadrature indices are integers");
    axes.push_back(a.get<int>());
  }
  if (axes.empty() || axes.size() > 2) {
    throw SchemaError(where + ": \"axes\" must list one or two quadrature indices");
  }
  for (int a : axes) {
    if (a < 0 || a >= 2 * n) {
      throw SchemaError(where + ": quadrature index " + std::to_string(a) + " out of range");
    }
  }
  if (axes.size() == 2 && axes[0] == axes[1]) throw SchemaError(where + ": repeated axis");
  const json range = g.contains("range") ? g.at("range") : json::array({-4.0, 4.0});
  const bool per_axis = range.is_array() && !range.empty() && range[0].is_array();
  if (per_axis && range.size() != axes.size()) {
    throw SchemaError(where + ": one range per axis expected");
  }
  for (std::size_t i = 0; i < axes.size(); ++i) {
    req.axes.push_back(parse_axis(axes[i], per_axis ? range[i] : range, where));
    if (!(req.axes.back().hi > req.axes.back().lo)) {
      throw SchemaError(where + ": range must satisfy lo < hi");
    }
  }
  req.resolution = integer(g, "resolution", where, 64);
  if (req.resolution < 2) throw SchemaError(where + ": \"resolution\" must be >= 2");
  if (!g.contains("file") || !g.at("file").is_string()) {
    throw SchemaError(where + ": \"file\" must name the CSV output");
  }
  req.file = g.at("file").get<std::string>();
  return req;
}

void parse_outputs(const json& out, Circuit& c) {
  const int n = c.final_modes;
  require_object(out, "outputs");
  allow_keys(out, {"metrics", "wigner", "points", "characteristic", "moments"}, "outputs");
  if (out.contains("metrics")) {
    const json& m = out.at("metrics");
    if (m.is_string()) {
      c.metrics.push_back(m.get<std::string>());
    } else if (m.is_array()) {
      for (const json& k : m) {
        if (!k.is_string()) throw SchemaError("outputs.metrics: expected metric names");
        c.metrics.push_back(k.get<std::string>());
      }
    } else {
      throw SchemaError("outputs.metrics: expected a list of metric names");
    }
    const auto& keys = metric_keys();
    for (const std::string& k : c.metrics) {
      if (k != "all" && std::find(keys.begin(), keys.end(), k) == keys.end()) {
        throw SchemaError("outputs.metrics: unknown metric \"" + k + "\"");
      }
    }
  }
  auto list = [&out](const char* key) {
    if (!out.contains(key)) return json::array();
    if (!out.at(key).is_array()) throw SchemaError(std::string("outputs.") + key + ": expected a list");
    return out.at(key);
  };
  int i = 0;
  for (const json& g : list("wigner")) {
    c.grids.push_back(parse_grid(g, n, "outputs.wigner[" + std::to_string(i++) + "]"));
  }
  i = 0;
  for (const json& p : list("points")) {
    const std::string where = "outputs.points[" + std::to_string(i++) + "]";
    require_object(p, where);
    allow_keys(p, {"x", "s"}, where);
    if (!p.contains("x")) throw SchemaError(where + ": missing field \"x\"");
    const std::vector<double> x = numbers(p.at("x"), where);
    if (static_cast<int>(x.size()) != 2 * n) throw SchemaError(where + ": \"x\" has the wrong length");
    c.points.push_back({to_vector(x), number(p, "s", where, 0.0)});
  }
  i = 0;
  for (const json& p : list("characteristic")) {
    const std::string where = "outputs.characteristic[" + std::to_string(i++) + "]";
    require_object(p, where);
    allow_keys(p, {"lambda", "form"}, where);
    if (!p.contains("lambda")) throw SchemaError(where + ": missing field \"lambda\"");
    const std::vector<double> l = numbers(p.at("lambda"), where);
    if (static_cast<int>(l.size()) != 2 * n) {
      throw SchemaError(where + ": \"lambda\" has the wrong length");
    }
    ChiForm form = ChiForm::kPlain;
    if (p.contains("form")) {
      const json& f = p.at("form");
      if (f == "omega") {
        form = ChiForm::kOmega;
      } else if (f != "plain") {
        throw SchemaError(where + ": \"form\" must be \"plain\" or \"omega\"");
      }
    }
    c.characteristic.push_back({to_vector(l), form});
  }
  i = 0;
  for (const json& p : list("moments")) {
    const std::string where = "outputs.moments[" + std::to_string(i++) + "]";
    require_object(p, where);
    allow_keys(p, {"s", "t", "h", "k"}, where);
    MomentRequest m{integer(p, "s", where), integer(p, "t", where), integer(p, "h", where),
                    integer(p, "k", where)};
    check_mode(m.s, n, where);
    check_mode(m.t, n, where);
    if (m.h < 0 || m.k < 0 || m.h + m.k > 4) {
      throw SchemaError(where + ": orders must satisfy h, k >= 0 and h + k <= 4");
    }
    c.moments.push_back(m);
  }
}

// ---------------------------------------------------------------------------
// JSON encoding

json matrix_json(const Matrix& m) {
  json rows = json::array();
  for (int i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (int j = 0; j < m.cols(); ++j) row.push_back(m(i, j));
    rows.push_back(std::move(row));
  }
  return rows;
}

json vector_json(const Vector& v) {
  json out = json::array();
  for (int i = 0; i < v.size(); ++i) out.push_back(v(i));
  return out;
}

json complex_json(Complex z) { return json::array({z.real(), z.imag()}); }

bool is_two_mode_key(const std::string& key) {
  static const std::set<std::string> two{"local_invariants",
                                         "symplectic_eigenvalues_2m",
                                         "standard_form",
                                         "mutual_information",
                                         "conditional_entropy_a_given_b",
                                         "conditional_entropy_b_given_a",
                                         "ppt_symplectic_eigenvalues",
                                         "separable",
                                         "duan",
                                         "log_negativity",
                                         "eof",
                                         "discord_a_given_b",
                                         "discord_b_given_a"};
  return two.count(key) > 0;
}

json eof_json(const GaussianState& state) {
  const StandardForm sf = standard_form(state);
  if (std::abs(sf.a - sf.b) <= 1e-9 * std::max(1.0, sf.a)) return eof_symmetric(state);
  return eof_squeezed_thermal(state);
}

json metric_value(const GaussianState& state, const std::string& key, double tol) {
  if (key == "purity") return purity(state);
  if (key == "entropy") return von_neumann_entropy(state);
  if (key == "symplectic_eigenvalues") return symplectic_eigenvalues(state.cov());
  if (key == "physical") return is_physical(state.cov(), tol);
  if (key == "nonclassical_depth") return nonclassical_depth(state);
  if (key == "uncertainty_determinant") return uncertainty_determinant(state.cov());
  if (key == "williamson") {
    const WilliamsonDecomposition w = williamson(state.cov());
    return {{"symplectic", matrix_json(w.symplectic)}, {"eigenvalues", w.eigenvalues}};
  }
  if (key == "euler") {
    const EulerDecomposition e =
        euler_decomposition(SymplecticMatrix(williamson(state.cov()).symplectic, 1e-7));
    return {{"left", matrix_json(e.left)}, {"squeezing", e.squeezing}, {"right", matrix_json(e.right)}};
  }
  if (key == "local_invariants") {
    const LocalInvariants inv = local_invariants(state.cov());
    return {{"I1", inv.i1}, {"I2", inv.i2}, {"I3", inv.i3}, {"I4", inv.i4}, {"delta", inv.delta()}};
  }
  if (key == "symplectic_eigenvalues_2m") {
    const SymplecticPair d = symplectic_eigenvalues_2m(local_invariants(state.cov()));
    return json::array({d.plus, d.minus});
  }
  if (key == "standard_form") {
    const StandardForm sf = standard_form(state);
    return {{"a", sf.a}, {"b", sf.b}, {"c1", sf.c1}, {"c2", sf.c2}};
  }
  if (key == "mutual_information") return mutual_information(state);
  if (key == "conditional_entropy_a_given_b") return conditional_entropy(state, Side::kAGivenB);
  if (key == "conditional_entropy_b_given_a") return conditional_entropy(state, Side::kBGivenA);
  if (key == "ppt_symplectic_eigenvalues") {
    const SymplecticPair d = ppt_symplectic_eigenvalues(state);
    return json::array({d.plus, d.minus});
  }
  if (key == "separable") return is_separable_ppt(state, tol);
  if (key == "duan") {
    const StandardForm sf = standard_form(state);
    const DuanResult plain = duan_criterion(sf);
    const DuanResult best = duan_criterion_optimized(sf);
    json out{{"lhs", plain.lhs},
             {"entangled", plain.entangled},
             {"optimized_lhs", best.lhs},
             {"optimized_r", best.r1},
             {"optimized_entangled", best.entangled}};
    if (!plain.diagnostic.empty()) out["diagnostic"] = plain.diagnostic;
    return out;
  }
  if (key == "log_negativity") return log_negativity(state);
  if (key == "eof") return eof_json(state);
  if (key == "discord_a_given_b") return gaussian_discord(state, Side::kAGivenB);
  if (key == "discord_b_given_a") return gaussian_discord(state, Side::kBGivenA);
  throw SchemaError("unknown metric \"" + key + "\"");
}

// ---------------------------------------------------------------------------
// Fock cross-check

struct FockRun {
  fock::FockState state;
  std::vector<json> checks;
};

fock::CMatrix embedded_unitary(const SymplecticMatrix& f, const std::vector<int>& modes, int n) {
  return fock::passive_unitary(embed(f.matrix(), ModeSelection(modes), n));
}

json compare_moments(const fock::FockState& s, const GaussianState& g) {
  const fock::FockDensity rho = s.density();
  const fock::Moments m = fock::cm_of(rho);
  const double tail = fock::tail_estimate(s);
  const double cov_diff = (m.cov - g.cov()).cwiseAbs().maxCoeff();
  const double mean_diff = (m.mean - g.mean()).cwiseAbs().maxCoeff();
  const double budget = std::max(1e-6, 10.0 * tail);
  return {{"cov_max_abs_diff", cov_diff},
          {"mean_max_abs_diff", mean_diff},
          {"tail", tail},
          {"pass", cov_diff <= budget && mean_diff <= budget}};
}

json cutoff_check(const Circuit& c, int cutoff) {
  if (c.initial.modes() > 2) {
    throw SchemaError("--cutoff-check supports circuits with at most two modes");
  }
  spdlog::info("Fock cross-check at cutoff {}", cutoff);
  GaussianState g = c.initial;
  fock::FockState s = fock::build_gaussian(g, cutoff);
  json steps = json::array();
  for (std::size_t i = 0; i < c.ops.size(); ++i) {
    const Op& op = c.ops[i];
    const int n = g.modes();
    json step{{"op", static_cast<int>(i)}, {"name", op.name}};
    switch (op.kind) {
      case Op::Kind::kDisplace:
        s = fock::displace(s, op.modes[0], {op.p1, op.p2});
        break;
      case Op::Kind::kRotate:
        s = fock::passive(s, embedded_unitary(phase_rotation(op.p1), op.modes, n));
        break;
      case Op::Kind::kBeamSplitter:
        s = fock::passive(s, embedded_unitary(beam_splitter(op.p1, op.p2), op.modes, n));
        break;
      case Op::Kind::kSqueeze1:
        s = fock::squeeze(s, op.modes[0], op.p1, op.p2);
        break;
      case Op::Kind::kSqueeze2:
        s = fock::squeeze_two_mode(s, op.p1, op.p2);
        break;
      case Op::Kind::kChannel:
        break;
      case Op::Kind::kMeasure:
        break;
    }
    if (op.kind == Op::Kind::kMeasure) {
      const Conditioned out = condition(g, op.modes[0], povm_of(op));
      if (op.heterodyne) {
        const fock::Projected p = fock::project_coherent(s.density(), op.modes[0], op.alpha);
        step["density"] = out.density;
        step["oracle_density"] = p.density;
        s = fock::factor_of(p.state);
      } else {
        // Homodyne has no Fock counterpart here: restart from the Gaussian result.
        s = fock::build_gaussian(out.state, cutoff);
        step["reseeded"] = true;
      }
      g = out.state;
    } else {
      g = apply_op(g, op);
      if (op.kind == Op::Kind::kChannel) {
        s = fock::build_gaussian(g, cutoff);
        step["reseeded"] = true;
      }
    }
    steps.push_back(std::move(step));
  }
  json out = compare_moments(s, g);
  out["cutoff"] = cutoff;
  out["steps"] = std::move(steps);
  return out;
}

}  // namespace

// ---------------------------------------------------------------------------

int exit_code_for(const std::exception& e) {
  if (dynamic_cast<const IoError*>(&e)) return kIo;
  if (dynamic_cast<const SchemaError*>(&e)) return kSchema;
  if (dynamic_cast<const json::exception*>(&e)) return kSchema;
  if (dynamic_cast<const DimensionError*>(&e)) return kSchema;
  if (dynamic_cast<const DomainError*>(&e)) return kPhysics;
  return kPhysics;
}

GaussianState parse_state(const json& doc, double tol) {
  if (doc.is_array()) {
    if (doc.empty()) throw SchemaError("state: empty product");
    GaussianState out = parse_single_state(doc[0], tol);
    for (std::size_t i = 1; i < doc.size(); ++i) out = tensor(out, parse_single_state(doc[i], tol));
    return out;
  }
  return parse_single_state(doc, tol);
}

Circuit parse_circuit(const json& doc, const Options& options) {
  require_object(doc, "circuit");
  allow_keys(doc, {"initial", "ops", "outputs"}, "circuit");
  if (!doc.contains("initial")) throw SchemaError("circuit: missing field \"initial\"");
  Circuit c(parse_state(doc.at("initial"), options.tol));
  int n = c.initial.modes();
  if (doc.contains("ops")) {
    const json& ops = doc.at("ops");
    if (!ops.is_array()) throw SchemaError("circuit: \"ops\" must be a list");
    for (std::size_t i = 0; i < ops.size(); ++i) {
      c.ops.push_back(parse_op(ops[i], static_cast<int>(i), n));
    }
  }
  c.final_modes = n;
  if (doc.contains("outputs")) parse_outputs(doc.at("outputs"), c);
  for (const std::string& k : c.metrics) {
    if (k != "all" && is_two_mode_key(k) && n != 2) {
      throw SchemaError("outputs.metrics: \"" + k + "\" needs a two-mode final state, circuit ends with " +
                        std::to_string(n) + " modes");
    }
  }
  return c;
}

RunResult run(const Circuit& circuit, const Options& options) {
  GaussianState state = circuit.initial;
  json measurements = json::array();
  for (std::size_t i = 0; i < circuit.ops.size(); ++i) {
    const Op& op = circuit.ops[i];
    spdlog::debug("op[{}] {}", i, op.name);
    try {
      if (op.kind == Op::Kind::kMeasure) {
        const Conditioned out = condition(state, op.modes[0], povm_of(op));
        measurements.push_back({{"op", static_cast<int>(i)},
                                {"mode", op.modes[0]},
                                {"kind", op.heterodyne ? "heterodyne" : "homodyne"},
                                {"density", out.density}});
        state = out.state;
      } else {
        state = apply_op(state, op);
      }
    } catch (const PhysicsError& e) {
      throw PhysicsError("op[" + std::to_string(i) + "] (" + op.name + "): " + e.what());
    } catch (const DomainError& e) {
      throw DomainError("op[" + std::to_string(i) + "] (" + op.name + "): " + e.what());
    } catch (const DimensionError& e) {
      throw SchemaError("op[" + std::to_string(i) + "] (" + op.name + "): " + e.what());
    }
  }

  RunResult result;
  json& out = result.output;
  out["n_modes"] = state.modes();
  out["cov"] = matrix_json(state.cov());
  out["mean"] = vector_json(state.mean());
  if (!measurements.empty()) out["measurements"] = measurements;
  if (!circuit.metrics.empty()) out["metrics"] = metrics_json(state, circuit.metrics, options.tol);
  if (!circuit.points.empty()) {
    json pts = json::array();
    for (const PointRequest& p : circuit.points) {
      pts.push_back({{"x", vector_json(p.x)}, {"s", p.s}, {"w", wigner_s(state, p.x, p.s)}});
    }
    out["points"] = pts;
  }
  if (!circuit.characteristic.empty()) {
    json chis = json::array();
    for (const ChiRequest& r : circuit.characteristic) {
      chis.push_back({{"lambda", vector_json(r.lambda)},
                      {"form", r.form == ChiForm::kOmega ? "omega" : "plain"},
                      {"value", complex_json(characteristic(state, r.lambda, r.form))}});
    }
    out["characteristic"] = chis;
  }
  if (!circuit.moments.empty()) {
    json ms = json::array();
    for (const MomentRequest& m : circuit.moments) {
      ms.push_back({{"s", m.s},
                    {"t", m.t},
                    {"h", m.h},
                    {"k", m.k},
                    {"value", complex_json(symmetric_moment(state, m.s, m.t, m.h, m.k))}});
    }
    out["moments"] = ms;
  }
  if (!circuit.grids.empty()) {
    json files = json::array();
    for (const GridRequest& g : circuit.grids) {
      const auto rows = wigner_grid(state, g.axes, g.resolution);
      result.files.emplace_back(g.file, wigner_csv(rows));
      files.push_back({{"file", g.file}, {"rows", rows.size()}});
    }
    out["wigner"] = files;
  }
  if (options.cutoff_check) out["cutoff_check"] = cutoff_check(circuit, *options.cutoff_check);
  return result;
}

const std::vector<std::string>& metric_keys() {
  static const std::vector<std::string> keys{"purity",
                                             "entropy",
                                             "symplectic_eigenvalues",
                                             "physical",
                                             "nonclassical_depth",
                                             "uncertainty_determinant",
                                             "williamson",
                                             "euler",
                                             "local_invariants",
                                             "symplectic_eigenvalues_2m",
                                             "standard_form",
                                             "mutual_information",
                                             "conditional_entropy_a_given_b",
                                             "conditional_entropy_b_given_a",
                                             "ppt_symplectic_eigenvalues",
                                             "separable",
                                             "duan",
                                             "log_negativity",
                                             "eof",
                                             "discord_a_given_b",
                                             "discord_b_given_a"};
  return keys;
}

json metrics_json(const GaussianState& state, const std::vector<std::string>& keys, double tol) {
  std::vector<std::string> selected;
  for (const std::string& k : keys) {
    if (k == "all") {
      for (const std::string& all : metric_keys()) {
        if (all == "eof" && state.modes() == 2) {
          // Only defined for the symmetric and squeezed-thermal classes.
          try {
            eof_json(state);
          } catch (const DomainError&) {
            continue;
          }
        }
        if (!is_two_mode_key(all) || state.modes() == 2) selected.push_back(all);
      }
    } else {
      if (is_two_mode_key(k) && state.modes() != 2) {
        throw SchemaError("metric \"" + k + "\" needs a two-mode state");
      }
      selected.push_back(k);
    }
  }
  json out = json::object();
  for (const std::string& k : selected) out[k] = metric_value(state, k, tol);
  return out;
}

json fidelity_json(const GaussianState& a, const GaussianState& b) {
  if (a.modes() != b.modes()) throw SchemaError("fidelity: states have different numbers of modes");
  json out{{"n_modes", a.modes()}, {"overlap", overlap(a, b)}};
  if (a.modes() == 1) out["fidelity"] = fidelity_1m(a, b);
  if (a.modes() == 2) out["fidelity"] = fidelity_2m(a, b);
  return out;
}

std::string format_double(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

std::string wigner_csv(const std::vector<GridPoint>& rows) {
  std::string out = "x,y,w\n";
  for (const GridPoint& r : rows) {
    out += format_double(r.x);
    out += ',';
    out += format_double(r.y);
    out += ',';
    out += format_double(r.w);
    out += '\n';
  }
  return out;
}

std::vector<int> parse_index_list(const std::string& text) {
  std::vector<int> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    int v = 0;
    const auto res = std::from_chars(item.data(), item.data() + item.size(), v);
    if (res.ec != std::errc() || res.ptr != item.data() + item.size()) {
      throw SchemaError("invalid index list \"" + text + "\"");
    }
    out.push_back(v);
  }
  if (out.empty()) throw SchemaError("empty index list");
  return out;
}

}  // namespace gaussiana::cli
