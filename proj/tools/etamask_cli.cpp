// Copyright 2026 The etamask Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <array>
#include <cmath>
#include <cstdio>
#include <iostream>
#include <numbers>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "etamask/channels.hpp"
#include "etamask/errors.hpp"
#include "etamask/json_io.hpp"
#include "etamask/linalg.hpp"
#include "etamask/masking.hpp"
#include "etamask/nhqm.hpp"

namespace {

using namespace etamask;
using nlohmann::json;

// Exit codes: 0 success, 1 semantic failure (failed verification,
// infeasible synthesis, failed self-check), 2 input error.
constexpr int kExitSemanticFailure = 1;
constexpr int kExitInputError = 2;

struct RunConfig {
  double tol = 1e-10;
  std::uint64_t seed = 0;
  std::string out;
  std::string format = "json";
};

std::string g17(double x) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", x);
  return buf;
}

void emit(const RunConfig& cfg, const std::string& text) {
  if (cfg.out.empty()) {
    std::cout << text;
  } else {
    io::save_text_file(cfg.out, text);
  }
}

void emit_json(const RunConfig& cfg, const json& j) { emit(cfg, j.dump(2) + "\n"); }

// The states file may embed a metric; when a reference metric exists it must
// agree to 1e-12 relative in max norm.
void check_metric_agreement(const std::optional<ComplexMatrix>& embedded,
                            const ComplexMatrix& reference, const char* what) {
  if (!embedded) return;
  const double scale = std::max(1.0, max_abs(reference));
  if (embedded->rows() != reference.rows() || embedded->cols() != reference.cols() ||
      max_abs_diff(*embedded, reference) > 1e-12 * scale) {
    throw InputError(std::string("states file metric does not match ") + what);
  }
}

std::vector<Ket> kets_in(const MetricSpace& space,
                         const std::vector<ComplexMatrix>& vectors) {
  std::vector<Ket> kets;
  kets.reserve(vectors.size());
  for (const auto& v : vectors) kets.push_back(make_ket(space, v));
  return kets;
}

std::string format_report_csv(const MaskingReport& report) {
  std::ostringstream os;
  os << "passed,max_dev_a,max_dev_b,max_cross_term_norm\n"
     << (report.passed ? 1 : 0) << ',' << g17(report.max_marginal_deviation_a)
     << ',' << g17(report.max_marginal_deviation_b) << ','
     << g17(report.max_cross_term_norm) << '\n';
  return os.str();
}

int cmd_build_masker(const RunConfig& cfg, const std::string& states_path,
                     const std::string& metric_a_path,
                     const std::string& metric_b_path,
                     const std::string& ancilla_path) {
  if (cfg.out.empty()) throw InputError("build-masker requires --out");
  const io::StateSet set = io::state_set_from_json(io::load_json_file(states_path));

  std::optional<ComplexMatrix> metric_a;
  if (!metric_a_path.empty()) {
    metric_a = io::matrix_from_json(io::load_json_file(metric_a_path));
    check_metric_agreement(set.metric, *metric_a, "--metric-a");
  } else if (set.metric) {
    metric_a = set.metric;
  }
  const MetricSpace space_a = io::space_from_optional_metric(set.dim, metric_a);

  std::optional<ComplexMatrix> ancilla_vec;
  if (!ancilla_path.empty()) {
    ancilla_vec = io::vector_from_json(io::load_json_file(ancilla_path));
  }
  std::optional<ComplexMatrix> metric_b;
  if (!metric_b_path.empty()) {
    metric_b = io::matrix_from_json(io::load_json_file(metric_b_path));
  }
  const std::size_t dim_b = ancilla_vec ? ancilla_vec->rows()
                            : metric_b  ? metric_b->rows()
                                        : set.dim;
  const MetricSpace space_b = io::space_from_optional_metric(dim_b, metric_b);

  Ket ancilla = [&] {
    if (ancilla_vec) return make_ket(space_b, *ancilla_vec);
    ComplexMatrix e0(dim_b, 1);
    e0(0, 0) = 1.0;
    return eta_normalize(make_ket(space_b, e0));
  }();

  const Masker masker =
      deterministic_masker(kets_in(space_a, set.states), space_a, space_b, ancilla);
  io::save_json_file(cfg.out, io::masker_to_json(masker));
  return 0;
}

int cmd_verify_mask(const RunConfig& cfg, const std::string& masker_path,
                    const std::string& states_path) {
  const Masker masker = io::masker_from_json(io::load_json_file(masker_path));
  const io::StateSet set = io::state_set_from_json(io::load_json_file(states_path));
  if (set.dim != masker.space_a.dim()) {
    throw InputError("states dimension does not match the masker");
  }
  check_metric_agreement(set.metric, masker.space_a.eta(), "the masker metric");

  const MaskingReport report =
      verify_masking(masker, kets_in(masker.space_a, set.states), cfg.tol);
  if (cfg.format == "csv") {
    emit(cfg, format_report_csv(report));
  } else {
    const json j = io::report_to_json(report);
    std::cout << j.dump(2) << "\n";
    if (!cfg.out.empty()) io::save_json_file(cfg.out, j);
  }
  return report.passed ? 0 : kExitSemanticFailure;
}

int cmd_disk_masker(const RunConfig& cfg, double alpha, double theta) {
  if (cfg.out.empty()) throw InputError("disk-masker requires --out");
  const double two_pi = 2.0 * std::numbers::pi;
  double a = std::fmod(alpha, two_pi);
  if (a < 0.0) a += two_pi;
  double t = theta;
  if (a > std::numbers::pi) {
    a = two_pi - a;
    t += std::numbers::pi;
  }
  if (a != alpha || t != theta) {
    std::cerr << "warning: alpha wrapped into [0, pi] (alpha=" << g17(a)
              << ", theta=" << g17(t) << ")\n";
  }
  const Masker masker = disk_masker(a, t);
  const double residual = pseudo_unitarity_residual(masker.u, masker.composite);
  if (residual > 1e-12) {
    std::cerr << "error: self-check: unitarity residual " << g17(residual) << "\n";
    return kExitSemanticFailure;
  }
  io::save_json_file(cfg.out, io::masker_to_json(masker));
  return 0;
}

std::vector<double> doubles_from_json(const json& j, const char* what) {
  if (!j.is_array()) throw ParseError(std::string(what) + " must be an array");
  std::vector<double> out;
  out.reserve(j.size());
  for (const auto& x : j) {
    if (!x.is_number()) throw ParseError(std::string(what) + " must hold numbers");
    out.push_back(x.get<double>());
  }
  return out;
}

NoiseChannel channel_from_params(const std::string& type, const json& params) {
  if (!params.is_object()) throw ParseError("params file must hold an object");
  if (type == "pauli") {
    if (!params.contains("p")) throw ParseError("missing key: p");
    return pauli_channel(doubles_from_json(params.at("p"), "p"));
  }
  if (type == "weyl") {
    if (!params.contains("d") || !params.contains("p")) {
      throw ParseError("weyl params need d and p");
    }
    if (!params.at("d").is_number_unsigned()) {
      throw ParseError("d must be a positive integer");
    }
    const std::size_t d = params.at("d").get<std::size_t>();
    const json& rows = params.at("p");
    if (!rows.is_array() || rows.size() != d) {
      throw ParseError("p must be a d x d matrix of probabilities");
    }
    std::vector<double> p;
    p.reserve(d * d);
    for (const auto& row : rows) {
      const auto r = doubles_from_json(row, "p row");
      if (r.size() != d) throw ParseError("p must be a d x d matrix of probabilities");
      p.insert(p.end(), r.begin(), r.end());
    }
    return weyl_channel(d, p);
  }
  if (type == "depolarizing") {
    if (!params.contains("d") || !params.contains("q")) {
      throw ParseError("depolarizing params need d and q");
    }
    if (!params.at("d").is_number_unsigned()) {
      throw ParseError("d must be a positive integer");
    }
    if (!params.at("q").is_number()) throw ParseError("q must be a number");
    return depolarizing_channel(params.at("d").get<std::size_t>(),
                                params.at("q").get<double>());
  }
  throw InputError("unknown channel type: " + type);
}

int cmd_channel(const RunConfig& cfg, const std::string& type,
                const std::string& params_path, const std::string& state_path) {
  const NoiseChannel channel =
      channel_from_params(type, io::load_json_file(params_path));
  const ComplexMatrix rho = io::matrix_from_json(io::load_json_file(state_path));
  const ComplexMatrix out = apply_channel(channel, rho);
  const double trace_drift = std::abs(trace(out) - trace(rho));
  if (trace_drift > 1e-10) {
    std::cerr << "error: self-check: trace drift " << g17(trace_drift) << "\n";
    return kExitSemanticFailure;
  }
  emit_json(cfg, io::matrix_to_json(out));
  return 0;
}

std::vector<double> parse_grid(const std::string& spec) {
  std::array<double, 3> parts{};
  std::size_t pos = 0;
  for (int i = 0; i < 3; ++i) {
    const std::size_t next = spec.find(':', pos);
    const bool last = (i == 2);
    if (last != (next == std::string::npos)) {
      throw InputError("grid must be start:stop:step");
    }
    const std::string piece = spec.substr(pos, last ? std::string::npos : next - pos);
    std::size_t used = 0;
    try {
      parts[i] = std::stod(piece, &used);
    } catch (const std::exception&) {
      throw InputError("grid must hold three numbers");
    }
    if (used != piece.size()) throw InputError("grid must hold three numbers");
    pos = next + 1;
  }
  const double start = parts[0], stop = parts[1], step = parts[2];
  if (!(step > 0.0)) throw InputError("grid step must be positive");
  if (start > stop) throw InputError("grid start must not exceed stop");
  const double count = std::floor((stop - start) / step + 1e-9) + 1.0;
  if (count > 1e6) throw InputError("grid has too many points");
  std::vector<double> grid;
  grid.reserve(static_cast<std::size_t>(count));
  for (std::size_t i = 0; i < static_cast<std::size_t>(count); ++i) {
    grid.push_back(start + static_cast<double>(i) * step);
  }
  return grid;
}

int cmd_sweep(const RunConfig& cfg, const std::string& family_name,
              const std::string& grid_spec, const std::string& masker_path,
              const std::string& states_path) {
  ChannelFamily family;
  if (family_name == "depolarizing") {
    family = ChannelFamily::depolarizing;
  } else if (family_name == "uniform-weyl") {
    family = ChannelFamily::uniform_weyl_mix;
  } else {
    throw InputError("unknown channel family: " + family_name);
  }
  const std::vector<double> grid = parse_grid(grid_spec);
  const Masker masker = io::masker_from_json(io::load_json_file(masker_path));
  const io::StateSet set = io::state_set_from_json(io::load_json_file(states_path));
  if (set.dim != masker.space_a.dim()) {
    throw InputError("states dimension does not match the masker");
  }
  check_metric_agreement(set.metric, masker.space_a.eta(), "the masker metric");
  const std::vector<Ket> states = kets_in(masker.space_a, set.states);

  const std::vector<RobustnessReport> reports =
      robustness_sweep(masker, states, family, grid, cfg.tol);
  std::ostringstream os;
  os << "param,passed,max_dev_a,max_dev_b,marginal_00,marginal_11\n";
  bool all_passed = true;
  for (std::size_t i = 0; i < reports.size(); ++i) {
    const RobustnessReport& r = reports[i];
    all_passed = all_passed && r.passed;
    const double m00 = r.first_marginal_diag.size() > 0 ? r.first_marginal_diag[0] : 0.0;
    const double m11 = r.first_marginal_diag.size() > 1 ? r.first_marginal_diag[1] : 0.0;
    os << g17(grid[i]) << ',' << (r.passed ? 1 : 0) << ','
       << g17(r.worst_marginal_deviation_a) << ',' << g17(r.worst_marginal_deviation_b)
       << ',' << g17(m00) << ',' << g17(m11) << '\n';
  }
  emit(cfg, os.str());
  return all_passed ? 0 : kExitSemanticFailure;
}

void print_matrix(std::ostream& os, const ComplexMatrix& m) {
  char buf[64];
  for (std::size_t i = 0; i < m.rows(); ++i) {
    os << "  [";
    for (std::size_t j = 0; j < m.cols(); ++j) {
      std::snprintf(buf, sizeof(buf), " %9.6f%+.6fi", m(i, j).real(), m(i, j).imag());
      os << buf;
      if (j + 1 < m.cols()) os << ',';
    }
    os << " ]\n";
  }
}

int demo_eta0(const RunConfig& cfg, double beta) {
  std::ostringstream os;
  char buf[128];
  const MetricSpace space = metric_eta0(beta);
  const auto [a1, a2] = alpha_states(beta);

  std::snprintf(buf, sizeof(buf), "metric: cosh(beta) I - sinh(beta) sx at beta = %.6f\n",
                beta);
  os << buf;
  const cplx standard = standard_inner(a1.vec, a2.vec);
  std::snprintf(buf, sizeof(buf),
                "standard overlap <a1|a2>    = %.6f (tanh beta = %.6f)\n",
                standard.real(), std::tanh(beta));
  os << buf;
  const cplx skew = eta_inner(a1, a2);
  std::snprintf(buf, sizeof(buf), "metric overlap <<a1|a2>>    = %.3e\n",
                std::abs(skew));
  os << buf;
  const Ket n1 = eta_normalize(a1);
  const Ket n2 = eta_normalize(a2);
  std::snprintf(buf, sizeof(buf), "normalized metric norms     = %.6f, %.6f\n",
                std::abs(eta_inner(n1, n1)), std::abs(eta_inner(n2, n2)));
  os << buf;

  ComplexMatrix e0(2, 1);
  e0(0, 0) = 1.0;
  const Ket ancilla = eta_normalize(make_ket(space, e0));
  const Masker masker = deterministic_masker({n1, n2}, space, space, ancilla);
  std::snprintf(buf, sizeof(buf), "masker residual             = %.3e\n",
                pseudo_unitarity_residual(masker.u, masker.composite));
  os << buf;
  const MaskingReport report = verify_masking(masker, {n1, n2}, cfg.tol);
  std::snprintf(buf, sizeof(buf),
                "verification                = %s (dev a = %.3e, dev b = %.3e)\n",
                report.passed ? "PASS" : "FAIL", report.max_marginal_deviation_a,
                report.max_marginal_deviation_b);
  os << buf;
  emit(cfg, os.str());
  return report.passed ? 0 : kExitSemanticFailure;
}

int demo_r_uniform(const RunConfig& cfg, std::size_t d, std::size_t n, std::size_t r,
                   double q) {
  std::ostringstream os;
  char buf[160];
  const std::vector<ComplexMatrix> states = fourier_ghz_states(d, n);
  std::snprintf(buf, sizeof(buf),
                "%zu Fourier-phased GHZ states on %zu parties of dimension %zu\n",
                states.size(), n, d);
  os << buf;

  const MaskingReport uniform = verify_r_uniform(states, d, n, r, cfg.tol);
  std::snprintf(buf, sizeof(buf), "r = %zu uniformity           = %s (worst dev %.3e)\n",
                r, uniform.passed ? "PASS" : "FAIL",
                uniform.max_marginal_deviation_a);
  os << buf;
  os << "  " << uniform.note << "\n";

  const std::vector<double> p(d, 1.0 / std::sqrt(static_cast<double>(d)));
  const RobustnessReport robust = r_uniform_robustness(d, n, r, p, q, cfg.tol);
  os << "channel: " << robust.channel_params << "\n";
  std::snprintf(buf, sizeof(buf), "cross-branch marginal dev   = %.3e\n",
                robust.worst_marginal_deviation);
  os << buf;
  std::snprintf(buf, sizeof(buf), "closed-form residual        = %.3e\n",
                robust.marginal_formula_residual.value_or(0.0));
  os << buf;
  os << "branch weights p_k^2 divide out of every marginal before comparison;\n"
        "the success probability of the probabilistic masker is preserved.\n";

  // The physical r-party marginal of the first (unit-weight) branch.
  std::size_t dim = 1;
  for (std::size_t i = 0; i < n; ++i) dim *= d;
  ComplexMatrix sigma(dim, dim);
  for (std::size_t i = 0; i < dim; ++i) {
    for (std::size_t j = 0; j < dim; ++j) {
      sigma(i, j) = states[0](i, 0) * std::conj(states[0](j, 0));
    }
  }
  const ComplexMatrix evolved = apply_channel(depolarizing_channel(dim, 1.0 - q), sigma);
  std::vector<std::size_t> keep(r);
  for (std::size_t i = 0; i < r; ++i) keep[i] = i;
  const ComplexMatrix marginal =
      partial_trace(evolved, std::vector<std::size_t>(n, d), keep);
  os << "first-branch marginal on the first " << r << " parties:\n";
  print_matrix(os, marginal);

  emit(cfg, os.str());
  return (uniform.passed && robust.passed) ? 0 : kExitSemanticFailure;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Masking toolkit for metric (pseudo-Hermitian) quantum systems"};
  app.require_subcommand(1);

  RunConfig cfg;
  app.add_option("--tol", cfg.tol, "Verification tolerance")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  app.add_option("--seed", cfg.seed, "Random seed for sampling commands")
      ->capture_default_str();
  app.add_option("--out", cfg.out, "Output file (default: standard output)");
  app.add_option("--format", cfg.format, "Report format")
      ->check(CLI::IsMember({"json", "csv"}))
      ->capture_default_str();

  int exit_code = 0;

  auto* build = app.add_subcommand(
      "build-masker", "Synthesize a masker for mutually metric-orthogonal states");
  build->fallthrough();
  std::string build_states, build_metric_a, build_metric_b, build_ancilla;
  build->add_option("--states", build_states, "State-set JSON file")->required();
  build->add_option("--metric-a", build_metric_a, "System metric JSON file");
  build->add_option("--metric-b", build_metric_b, "Ancilla-side metric JSON file");
  build->add_option("--ancilla", build_ancilla, "Ancilla ket JSON file");
  build->callback([&] {
    exit_code =
        cmd_build_masker(cfg, build_states, build_metric_a, build_metric_b, build_ancilla);
  });

  auto* verify = app.add_subcommand("verify-mask",
                                    "Check that a masker hides a set of states");
  verify->fallthrough();
  std::string verify_masker, verify_states;
  verify->add_option("--masker", verify_masker, "Masker JSON file")->required();
  verify->add_option("--states", verify_states, "State-set JSON file")->required();
  verify->callback([&] { exit_code = cmd_verify_mask(cfg, verify_masker, verify_states); });

  auto* disk = app.add_subcommand("disk-masker",
                                  "Write the qubit masker for a Bloch-disk family");
  disk->fallthrough();
  double disk_alpha = 0.0, disk_theta = 0.0;
  disk->add_option("--alpha", disk_alpha, "Polar angle of the disk normal (radians)")
      ->required();
  disk->add_option("--theta", disk_theta, "Azimuthal angle of the disk normal (radians)");
  disk->callback([&] { exit_code = cmd_disk_masker(cfg, disk_alpha, disk_theta); });

  auto* channel = app.add_subcommand("channel", "Apply a noise channel to a density matrix");
  channel->fallthrough();
  std::string channel_type, channel_params, channel_state;
  channel->add_option("--type", channel_type, "pauli | weyl | depolarizing")
      ->required()
      ->check(CLI::IsMember({"pauli", "weyl", "depolarizing"}));
  channel->add_option("--params", channel_params, "Channel parameter JSON file")->required();
  channel->add_option("--state", channel_state, "Density matrix JSON file")->required();
  channel->callback(
      [&] { exit_code = cmd_channel(cfg, channel_type, channel_params, channel_state); });

  auto* sweep = app.add_subcommand("sweep", "Robustness curve over a channel parameter grid");
  sweep->fallthrough();
  std::string sweep_family = "depolarizing", sweep_grid, sweep_masker, sweep_states;
  sweep->add_option("--channel", sweep_family, "depolarizing | uniform-weyl")
      ->capture_default_str();
  sweep->add_option("--grid", sweep_grid, "start:stop:step (inclusive)")->required();
  sweep->add_option("--masker", sweep_masker, "Masker JSON file")->required();
  sweep->add_option("--states", sweep_states, "State-set JSON file")->required();
  sweep->callback([&] {
    exit_code = cmd_sweep(cfg, sweep_family, sweep_grid, sweep_masker, sweep_states);
  });

  auto* demo = app.add_subcommand("demo", "Built-in worked examples");
  demo->fallthrough();
  std::string demo_name;
  double demo_beta = 1.0, demo_q = 1.0;
  std::size_t demo_d = 2, demo_n = 3, demo_r = 1;
  demo->add_option("name", demo_name, "eta0 | r-uniform")->required();
  demo->add_option("--beta", demo_beta, "Metric parameter for the eta0 demo")
      ->capture_default_str();
  demo->add_option("--d", demo_d, "Local dimension for the r-uniform demo")
      ->capture_default_str();
  demo->add_option("--n", demo_n, "Party count for the r-uniform demo")
      ->capture_default_str();
  demo->add_option("--r", demo_r, "Marginal size for the r-uniform demo")
      ->capture_default_str();
  demo->add_option("--q", demo_q, "Retained weight of the depolarizing-type mixture")
      ->capture_default_str();
  demo->callback([&] {
    if (demo_name == "eta0") {
      exit_code = demo_eta0(cfg, demo_beta);
    } else if (demo_name == "r-uniform") {
      exit_code = demo_r_uniform(cfg, demo_d, demo_n, demo_r, demo_q);
    } else {
      throw etamask::InputError("unknown demo: " + demo_name);
    }
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);
    std::cerr << "error: parse-error: " << e.what() << "\n";
    return kExitInputError;
  } catch (const etamask::InfeasibilityError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitSemanticFailure;
  } catch (const etamask::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInputError;
  } catch (const nlohmann::json::exception& e) {
    std::cerr << "error: json: " << e.what() << "\n";
    return kExitInputError;
  }
  return exit_code;
}
