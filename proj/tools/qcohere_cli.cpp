// Command-line front end: compute measures on state files, sweep channel
// parameters, run verification suites, sample Haar averages, dump Unruh
// degradation curves.

#include <cstdio>
#include <functional>
#include <iostream>
#include <map>
#include <sstream>

#include <CLI11.hpp>

#include "qcohere/channels.hpp"
#include "qcohere/coherence.hpp"
#include "qcohere/discord.hpp"
#include "qcohere/min_measures.hpp"
#include "qcohere/protocols.hpp"
#include "qcohere/relativistic.hpp"
#include "qcohere/serialize.hpp"

using namespace qc;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitValidation = 2;
constexpr int kExitOptimizer = 3;

std::string fmt(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.12g", v);
  return buf;
}

struct MeasureEntry {
  std::function<bool(const DensityMatrix&)> applicable;
  std::function<MeasureResult(const DensityMatrix&, const ReferenceBasis&, Rng&)> run;
};

const std::map<std::string, MeasureEntry>& registry() {
  static const std::map<std::string, MeasureEntry> reg = [] {
    std::map<std::string, MeasureEntry> m;
    auto any = [](const DensityMatrix&) { return true; };
    auto two_qubit = [](const DensityMatrix& r) { return r.dim() == 4; };
    auto qubit_side = [](const DensityMatrix& r) { return r.dim() % 2 == 0 && r.dim() >= 4; };
    m["c_l1"] = {any, [](const DensityMatrix& r, const ReferenceBasis& b, Rng&) {
                   return c_l1(r, b);
                 }};
    m["c_r"] = {any, [](const DensityMatrix& r, const ReferenceBasis& b, Rng&) {
                  return c_rel_entropy(r, b);
                }};
    m["c_l2"] = {any, [](const DensityMatrix& r, const ReferenceBasis& b, Rng&) {
                   return c_l2(r, b);
                 }};
    m["c_tr"] = {any, [](const DensityMatrix& r, const ReferenceBasis& b, Rng& g) {
                   return c_trace(r, b, &g);
                 }};
    m["c_tr_mod"] = {any, [](const DensityMatrix& r, const ReferenceBasis& b, Rng& g) {
                       return c_trace_modified(r, b, &g);
                     }};
    m["c_rob"] = {any, [](const DensityMatrix& r, const ReferenceBasis& b, Rng& g) {
                    return robustness(r, b, &g);
                  }};
    m["c_w"] = {any, [](const DensityMatrix& r, const ReferenceBasis& b, Rng& g) {
                  return coherence_weight(r, b, &g);
                }};
    m["c_g"] = {any, [](const DensityMatrix& r, const ReferenceBasis& b, Rng& g) {
                  return geometric_coherence(r, b, &g);
                }};
    m["c_sk"] = {any, [](const DensityMatrix& r, const ReferenceBasis& b, Rng&) {
                   return c_sk(r, b);
                 }};
    m["c_max"] = {any, [](const DensityMatrix& r, const ReferenceBasis& b, Rng& g) {
                    return c_max_relative_entropy(r, b, &g);
                  }};
    m["c_form"] = {[](const DensityMatrix& r) { return r.dim() == 2; },
                   [](const DensityMatrix& r, const ReferenceBasis&, Rng&) {
                     return coherence_of_formation_qubit(r);
                   }};
    m["c_bi"] = {any, [](const DensityMatrix& r, const ReferenceBasis&, Rng&) {
                   MeasureResult res;
                   res.value = c_basis_independent(r);
                   res.method = Method::analytic;
                   res.tol = 1e-12;
                   return res;
                 }};
    m["entropic_discord"] = {two_qubit, [](const DensityMatrix& r, const ReferenceBasis&, Rng&) {
                               return entropic_discord_2q(r, Side::A);
                             }};
    m["hs_discord"] = {qubit_side, [](const DensityMatrix& r, const ReferenceBasis&, Rng&) {
                         return hs_discord(r, 2, r.dim() / 2);
                       }};
    m["trace_discord"] = {qubit_side, [](const DensityMatrix& r, const ReferenceBasis&, Rng&) {
                            return trace_discord(r, 2, r.dim() / 2);
                          }};
    m["bures_discord"] = {qubit_side, [](const DensityMatrix& r, const ReferenceBasis&, Rng&) {
                            return bures_discord(r, 2, r.dim() / 2);
                          }};
    m["hellinger_discord"] = {qubit_side, [](const DensityMatrix& r, const ReferenceBasis&, Rng&) {
                                return hellinger_discord(r, 2, r.dim() / 2);
                              }};
    m["lqu"] = {qubit_side, [](const DensityMatrix& r, const ReferenceBasis&, Rng&) {
                  return lqu(r, 2, r.dim() / 2);
                }};
    m["one_way_deficit"] = {qubit_side, [](const DensityMatrix& r, const ReferenceBasis&, Rng&) {
                              return one_way_deficit(r, 2, r.dim() / 2);
                            }};
    m["zero_way_deficit"] = {two_qubit, [](const DensityMatrix& r, const ReferenceBasis&, Rng&) {
                               return zero_way_deficit(r);
                             }};
    m["neg_quantumness"] = {qubit_side, [](const DensityMatrix& r, const ReferenceBasis&, Rng&) {
                              return negativity_of_quantumness(r, 2, r.dim() / 2, Side::A);
                            }};
    m["hs_min"] = {qubit_side, [](const DensityMatrix& r, const ReferenceBasis&, Rng&) {
                     return hs_min(r, 2, r.dim() / 2);
                   }};
    m["trace_min"] = {qubit_side, [](const DensityMatrix& r, const ReferenceBasis&, Rng&) {
                        return trace_min(r, 2, r.dim() / 2);
                      }};
    m["rel_entropy_min"] = {qubit_side, [](const DensityMatrix& r, const ReferenceBasis&, Rng&) {
                              return rel_entropy_min(r, 2, r.dim() / 2);
                            }};
    m["skew_min"] = {qubit_side, [](const DensityMatrix& r, const ReferenceBasis&, Rng&) {
                       return skew_min(r, 2, r.dim() / 2);
                     }};
    m["uin"] = {qubit_side, [](const DensityMatrix& r, const ReferenceBasis&, Rng&) {
                  return uin(r, 2, r.dim() / 2);
                }};
    m["negativity"] = {qubit_side, [](const DensityMatrix& r, const ReferenceBasis&, Rng&) {
                         MeasureResult res;
                         res.value = negativity(r, 2, r.dim() / 2);
                         res.method = Method::analytic;
                         res.tol = 1e-12;
                         return res;
                       }};
    return m;
  }();
  return reg;
}

MeasureResult run_measure(const std::string& name, const DensityMatrix& rho,
                          const ReferenceBasis& basis, Rng& rng) {
  // parametrized identifiers: tsallis:<alpha>, q_discord:<q>
  auto colon = name.find(':');
  if (colon != std::string::npos) {
    const std::string head = name.substr(0, colon);
    const double param = std::stod(name.substr(colon + 1));
    if (head == "tsallis") return tsallis_coherence(rho, basis, param);
    if (head == "q_discord") return q_discord(rho, 2, rho.dim() / 2, param);
    fail(Err::ParseError, "unknown parametrized measure: " + head);
  }
  auto it = registry().find(name);
  if (it == registry().end()) fail(Err::ParseError, "unknown measure: " + name);
  if (!it->second.applicable(rho))
    fail(Err::DimensionMismatch, "measure " + name + " does not apply to this state");
  return it->second.run(rho, basis, rng);
}

struct GridSpec {
  double start = 0.0, stop = 1.0;
  int steps = 11;
};

GridSpec parse_grid(const std::string& text) {
  GridSpec g;
  std::istringstream ss(text);
  std::string a, b, c;
  if (!std::getline(ss, a, ':') || !std::getline(ss, b, ':') || !std::getline(ss, c, ':'))
    fail(Err::ParseError, "grid must be start:stop:steps");
  g.start = std::stod(a);
  g.stop = std::stod(b);
  g.steps = std::stoi(c);
  if (g.steps < 1) fail(Err::ParseError, "grid needs at least one step");
  return g;
}

std::optional<ChannelKind> channel_kind_by_name(const std::string& name) {
  static const std::map<std::string, ChannelKind> kinds = {
      {"bit_flip", ChannelKind::bit_flip},
      {"phase_flip", ChannelKind::phase_flip},
      {"bit_phase_flip", ChannelKind::bit_phase_flip},
      {"depolarizing", ChannelKind::depolarizing},
      {"amplitude_damping", ChannelKind::amplitude_damping},
      {"phase_damping", ChannelKind::phase_damping},
      {"generalized_amplitude_damping", ChannelKind::generalized_amplitude_damping},
  };
  auto it = kinds.find(name);
  if (it == kinds.end()) return std::nullopt;
  return it->second;
}

void emit(const std::string& out_path, const std::string& content) {
  if (out_path.empty())
    std::cout << content << "\n";
  else
    write_text_file(out_path, content);
}

int cmd_compute(const std::string& state_path, const std::string& measure,
                const std::string& basis_path, const std::string& channel_path,
                const std::string& apply_mode, uint64_t seed, const std::string& out,
                const std::string& format) {
  DensityMatrix rho = state_from_json(read_text_file(state_path));
  if (!channel_path.empty()) {
    KrausChannel ch = channel_from_json(read_text_file(channel_path));
    if (apply_mode == "direct") {
      rho = apply(ch, rho);
    } else {
      const int db = rho.dim() / 2;
      if (apply_mode == "a" || apply_mode == "both")
        rho = apply_on_subsystem(ch, rho, 2, db, Side::A);
      if (apply_mode == "b" || apply_mode == "both")
        rho = apply_on_subsystem(ch, rho, 2, db, Side::B);
    }
  }
  ReferenceBasis basis = basis_path.empty()
                             ? ReferenceBasis::computational(rho.dim())
                             : ReferenceBasis(matrix_from_json(read_text_file(basis_path)));
  Rng rng(seed);
  MeasureResult res = run_measure(measure, rho, basis, rng);
  if (format == "csv") {
    std::ostringstream ss;
    ss << "measure,value,method,tol\n"
       << measure << "," << fmt(res.value) << ","
       << (res.method == Method::analytic ? "analytic" : "numeric") << "," << fmt(res.tol) << "\n";
    emit(out, ss.str());
  } else {
    emit(out, measure_result_to_json(res));
  }
  return kExitOk;
}

int cmd_sweep(const std::string& state_path, const std::string& channel_name,
              const std::string& measure, const std::string& grid_text, uint64_t seed,
              const std::string& apply_mode, const std::string& out) {
  DensityMatrix rho0 = state_from_json(read_text_file(state_path));
  GridSpec grid = parse_grid(grid_text);
  auto kind = channel_kind_by_name(channel_name);
  if (!kind) fail(Err::ParseError, "sweep needs a standard channel name, got: " + channel_name);

  std::ostringstream ss;
  ss << "param,measure,value\n";
  for (int i = 0; i < grid.steps; ++i) {
    const double p = grid.steps == 1
                         ? grid.start
                         : grid.start + (grid.stop - grid.start) * i / (grid.steps - 1.0);
    KrausChannel ch = standard_channel(*kind, p);
    DensityMatrix evolved = [&] {
      if (apply_mode == "direct") return apply(ch, rho0);
      const int db = rho0.dim() / 2;
      if (apply_mode == "a") return apply_on_subsystem(ch, rho0, 2, db, Side::A);
      if (apply_mode == "b") return apply_on_subsystem(ch, rho0, 2, db, Side::B);
      // both sides
      DensityMatrix half = apply_on_subsystem(ch, rho0, 2, db, Side::A);
      return apply_on_subsystem(ch, half, 2, db, Side::B);
    }();
    Rng rng(seed);
    ReferenceBasis basis = ReferenceBasis::computational(evolved.dim());
    MeasureResult res = run_measure(measure, evolved, basis, rng);
    ss << fmt(p) << "," << measure << "," << fmt(res.value) << "\n";
  }
  emit(out, ss.str());
  return kExitOk;
}

int cmd_haar(int dim, int samples, uint64_t seed, const std::string& kind_name,
             const std::string& out) {
  HaarKind kind;
  if (kind_name == "l1")
    kind = HaarKind::l1;
  else if (kind_name == "rel_entropy")
    kind = HaarKind::rel_entropy_nats;
  else if (kind_name == "dephased_distance")
    kind = HaarKind::dephased_distance;
  else
    fail(Err::ParseError, "unknown haar kind: " + kind_name);
  HaarAverage avg = haar_average_coherence(dim, samples, seed, kind);
  std::ostringstream ss;
  ss << "kind,dim,samples,mean,stderr,analytic\n"
     << kind_name << "," << dim << "," << samples << "," << fmt(avg.mean) << ","
     << fmt(avg.stderr_) << "," << fmt(avg.analytic) << "\n";
  if (kind == HaarKind::rel_entropy_nats)
    ss << "rel_entropy_bits," << dim << "," << samples << "," << fmt(avg.mean / std::log(2.0))
       << "," << fmt(avg.stderr_ / std::log(2.0)) << "," << fmt(avg.analytic / std::log(2.0))
       << "\n";
  emit(out, ss.str());
  return kExitOk;
}

int cmd_curve(const std::string& kind_name, const std::string& measure_name,
              const std::string& grid_text, double omega, int n_max, const std::string& out) {
  GridSpec grid = parse_grid(grid_text);
  UnruhStatistics kind;
  if (kind_name == "fermionic")
    kind = UnruhStatistics::fermionic;
  else if (kind_name == "bosonic")
    kind = UnruhStatistics::bosonic;
  else
    fail(Err::ParseError, "unknown statistics: " + kind_name);
  DegradationMeasure measure;
  if (measure_name == "negativity")
    measure = DegradationMeasure::negativity;
  else if (measure_name == "c_l1")
    measure = DegradationMeasure::c_l1;
  else if (measure_name == "c_r")
    measure = DegradationMeasure::c_rel_entropy;
  else if (measure_name == "trace_discord")
    measure = DegradationMeasure::trace_discord;
  else
    fail(Err::ParseError, "unknown curve measure: " + measure_name);

  std::vector<double> accel;
  for (int i = 0; i < grid.steps; ++i)
    accel.push_back(grid.steps == 1
                        ? grid.start
                        : grid.start + (grid.stop - grid.start) * i / (grid.steps - 1.0));
  // loosen the tail bound automatically when the requested ladder cannot meet 1e-8
  double tail = 1e-8;
  if (kind == UnruhStatistics::bosonic) {
    for (double a : accel) {
      UnruhParams up(omega, a);
      tail = std::max(tail, 2.0 * std::pow(std::tanh(up.bosonic_r()), 2.0 * (n_max - 8)));
    }
  }
  auto rows = degradation_curve(kind, measure, accel, omega, TruncationConfig(n_max, tail));
  std::ostringstream ss;
  ss << "acceleration,r,measure,value,n_max\n";
  for (const auto& row : rows)
    ss << fmt(row.acceleration) << "," << fmt(row.r) << "," << measure_name << ","
       << fmt(row.value) << "," << row.n_max << "\n";
  emit(out, ss.str());
  return kExitOk;
}

int cmd_verify(const std::string& suite, uint64_t seed, const std::string& out) {
  std::ostringstream table;
  int failures = 0;
  auto record = [&](const std::string& name, bool ok, const std::string& detail = "") {
    table << (ok ? "[PASS] " : "[FAIL] ") << name;
    if (!detail.empty()) table << " (" << detail << ")";
    table << "\n";
    if (!ok) ++failures;
  };

  Rng rng(seed);
  auto random_triple = [&]() {
    while (true) {
      BellDiagonalParams p{2 * rng.next_double() - 1, 2 * rng.next_double() - 1,
                           2 * rng.next_double() - 1};
      if (p.is_psd()) return p;
    }
  };

  if (suite == "bell-diagonal") {
    MeasurementSweep sweep{48, 96, 120};
    double worst_tr = 0.0, worst_hs = 0.0, worst_bures = 0.0;
    for (int t = 0; t < 25; ++t) {
      BellDiagonalParams p = random_triple();
      DensityMatrix rho = bell_diagonal(p);
      auto f_tr = [&](double th, double ph) {
        return trace_norm(rho.mat() - measure_qubit_a(rho.mat(), 2, th, ph));
      };
      worst_tr = std::max(worst_tr, std::abs(trace_discord_bell_formula(p) -
                                             sweep_minimize(f_tr, sweep).value));
      auto f_hs = [&](double th, double ph) {
        return std::pow(hs_norm(rho.mat() - measure_qubit_a(rho.mat(), 2, th, ph)), 2.0);
      };
      worst_hs = std::max(worst_hs, std::abs(hs_discord_2q_formula(rho) -
                                             sweep_minimize(f_hs, sweep).value));
      worst_bures = std::max(
          worst_bures, std::abs(bures_fmax_bell_formula(p) -
                                [&] {
                                  Matrix sr = matrix_sqrt(rho);
                                  auto g = [&](double th, double ph) {
                                    Vector3 n = sweep_direction(th, ph);
                                    Matrix su = Matrix::Zero(2, 2);
                                    for (int i = 0; i < 3; ++i) su += n(i) * pauli(i + 1);
                                    Matrix lam = sr * kron(su, pauli(0)) * sr;
                                    EigResult e = hermitian_eig(lam);
                                    return -0.5 * (1.0 + 2.0 * (e.values(0) + e.values(1)));
                                  };
                                  return -sweep_minimize(g, sweep).value;
                                }()));
    }
    record("trace discord analytic vs sweep <= 1e-5", worst_tr <= 1e-5, fmt(worst_tr));
    record("HS discord analytic vs sweep <= 1e-6", worst_hs <= 1e-6, fmt(worst_hs));
    record("Bures F_max analytic vs sweep <= 1e-5", worst_bures <= 1e-5, fmt(worst_bures));
  } else if (suite == "x-state") {
    MeasurementSweep sweep{48, 96, 120};
    double worst = 0.0;
    for (int t = 0; t < 25; ++t) {
      XStateParams xp;
      RealVector diag(4);
      for (int i = 0; i < 4; ++i) diag(i) = rng.next_double() + 0.05;
      diag /= diag.sum();
      xp.diagonal = diag;
      xp.rho14 = 0.9 * rng.next_double() * std::sqrt(diag(0) * diag(3));
      xp.rho23 = 0.9 * rng.next_double() * std::sqrt(diag(1) * diag(2));
      DensityMatrix rho = x_state(xp);
      auto f = [&](double th, double ph) {
        return trace_norm(rho.mat() - measure_qubit_a(rho.mat(), 2, th, ph));
      };
      worst = std::max(worst,
                       std::abs(trace_discord_x_formula(rho) - sweep_minimize(f, sweep).value));
    }
    record("X-state trace discord formula vs sweep <= 1e-5", worst <= 1e-5, fmt(worst));
  } else if (suite == "haar") {
    HaarAverage l1 = haar_average_coherence(2, 10000, seed, HaarKind::l1);
    record("qubit l1 Haar mean within 4 sigma of pi/4",
           std::abs(l1.mean - l1.analytic) <= 4 * l1.stderr_,
           fmt(l1.mean) + " vs " + fmt(l1.analytic));
    HaarAverage cr = haar_average_coherence(3, 10000, seed + 1, HaarKind::rel_entropy_nats);
    record("qutrit C_r Haar mean within 4 sigma of H_3 - 1",
           std::abs(cr.mean - cr.analytic) <= 4 * cr.stderr_,
           fmt(cr.mean) + " vs " + fmt(cr.analytic));
  } else if (suite == "freezing") {
    bool ok = true;
    for (int t = 0; t < 5 && ok; ++t) {
      double c1, c3;
      do {
        c1 = 1.8 * rng.next_double() - 0.9;
        c3 = (std::abs(c1) - 1e-3) * (2 * rng.next_double() - 1);
      } while (std::abs(c1) <= std::abs(c3) ||
               !BellDiagonalParams{c1, -c1 * c3, c3}.is_psd());
      BellDiagonalParams p{c1, -c1 * c3, c3};
      DensityMatrix rho = bell_diagonal(p);
      const double base = c_l1(rho, ReferenceBasis::computational(4)).value;
      for (double q : {0.2, 0.5, 0.8}) {
        KrausChannel bf = standard_channel(ChannelKind::bit_flip, q);
        DensityMatrix evolved =
            apply_on_subsystem(bf, apply_on_subsystem(bf, rho, 2, 2, Side::A), 2, 2, Side::B);
        if (std::abs(c_l1(evolved, ReferenceBasis::computational(4)).value - base) > 1e-6)
          ok = false;
      }
    }
    record("two-sided bit-flip keeps C_l1 frozen on c2 = -c1c3 triples", ok);
  } else {
    std::cerr << "unknown verification suite: " << suite << "\n";
    return kExitValidation;
  }

  emit(out, table.str());
  if (out.empty()) std::cout.flush();
  return failures == 0 ? kExitOk : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"coherence and geometric-correlation toolkit"};
  app.require_subcommand(1);

  std::string state_path, channel_name, measure, basis_path, out, format = "json";
  std::string grid_text = "0:1:11", apply_mode = "direct", suite, kind = "l1";
  uint64_t seed = 1;
  int dim = 2, samples = 10000, n_max = 20;
  double omega = 1.0;

  std::string channel_path;
  auto* compute = app.add_subcommand("compute", "evaluate a measure on a state file");
  compute->add_option("--state", state_path, "state JSON path")->required();
  compute->add_option("--measure", measure, "measure identifier")->required();
  compute->add_option("--basis", basis_path, "reference basis (unitary JSON)");
  compute->add_option("--channel", channel_path, "channel JSON applied before measuring");
  compute->add_option("--apply", apply_mode, "direct | a | b | both");
  compute->add_option("--seed", seed, "optimizer seed");
  compute->add_option("--out", out, "output path (stdout when empty)");
  compute->add_option("--format", format, "json or csv");

  auto* sweep = app.add_subcommand("sweep", "sweep a standard channel parameter");
  sweep->add_option("--state", state_path, "state JSON path")->required();
  sweep->add_option("--channel", channel_name, "standard channel name")->required();
  sweep->add_option("--measure", measure, "measure identifier")->required();
  sweep->add_option("--grid", grid_text, "start:stop:steps");
  sweep->add_option("--apply", apply_mode, "direct | a | b | both");
  sweep->add_option("--seed", seed, "optimizer seed");
  sweep->add_option("--out", out, "output path");

  auto* verify = app.add_subcommand("verify", "run an oracle cross-check suite");
  verify->add_option("--suite", suite, "bell-diagonal | x-state | haar | freezing")->required();
  verify->add_option("--seed", seed, "sampling seed");
  verify->add_option("--out", out, "output path");

  auto* haar = app.add_subcommand("haar", "sample Haar-average coherence");
  haar->add_option("--dim", dim, "Hilbert-space dimension");
  haar->add_option("--samples", samples, "sample count (>= 1000)");
  haar->add_option("--seed", seed, "sampling seed");
  haar->add_option("--measure", kind, "l1 | rel_entropy | dephased_distance");
  haar->add_option("--out", out, "output path");

  auto* curve = app.add_subcommand("curve", "Unruh degradation curve");
  curve->add_option("--kind", kind, "fermionic | bosonic")->required();
  curve->add_option("--measure", measure, "negativity | c_l1 | c_r | trace_discord")->required();
  curve->add_option("--grid", grid_text, "acceleration start:stop:steps");
  curve->add_option("--omega", omega, "mode frequency");
  curve->add_option("--nmax", n_max, "bosonic ladder size");
  curve->add_option("--out", out, "output path");

  CLI11_PARSE(app, argc, argv);

  try {
    if (compute->parsed())
      return cmd_compute(state_path, measure, basis_path, channel_path, apply_mode, seed, out,
                         format);
    if (sweep->parsed())
      return cmd_sweep(state_path, channel_name, measure, grid_text, seed, apply_mode, out);
    if (verify->parsed()) return cmd_verify(suite, seed, out);
    if (haar->parsed()) return cmd_haar(dim, samples, seed, kind, out);
    if (curve->parsed()) return cmd_curve(kind, measure, grid_text, omega, n_max, out);
  } catch (const Error& e) {
    std::cerr << err_name(e.code()) << ": " << e.what() << "\n";
    return e.code() == Err::OptimizerStalled ? kExitOptimizer : kExitValidation;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitValidation;
  }
  return kExitValidation;
}
