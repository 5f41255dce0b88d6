#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "qcohere/channels.hpp"
#include "qcohere/coherence.hpp"
#include "qcohere/discord.hpp"
#include "qcohere/min_measures.hpp"
#include "qcohere/protocols.hpp"
#include "qcohere/relativistic.hpp"

namespace py = pybind11;
using namespace qc;

namespace {

DensityMatrix as_state(const Matrix& m) { return DensityMatrix(m); }

ReferenceBasis basis_or_default(const std::optional<Matrix>& basis, int dim) {
  if (basis) return ReferenceBasis(*basis);
  return ReferenceBasis::computational(dim);
}

py::dict result_dict(const MeasureResult& r) {
  py::dict d;
  d["value"] = r.value;
  d["method"] = r.method == Method::analytic ? "analytic" : "numeric";
  d["tol"] = r.tol;
  return d;
}

py::dict coherence_measure(const std::function<MeasureResult(const DensityMatrix&,
                                                             const ReferenceBasis&, Rng&)>& f,
                           const Matrix& rho, const std::optional<Matrix>& basis, uint64_t seed) {
  DensityMatrix state = as_state(rho);
  Rng rng(seed);
  return result_dict(f(state, basis_or_default(basis, state.dim()), rng));
}

KrausChannel channel_from_list(const std::vector<Matrix>& kraus, const std::string& label) {
  return KrausChannel(kraus, label);
}

}  // namespace

PYBIND11_MODULE(_qcohere, m) {
  m.doc() = "coherence and geometric-correlation quantifiers on small density matrices";

  py::register_exception<Error>(m, "QcError");

  // state factories
  m.def("bell_diagonal", [](double c1, double c2, double c3) {
    return bell_diagonal({c1, c2, c3}).mat();
  });
  m.def("werner", [](double x, int d) { return werner(x, d).mat(); });
  m.def("isotropic", [](double x, int d) { return isotropic(x, d).mat(); });
  m.def("mcms", [](double p, int d) { return mcms(p, d).mat(); });
  m.def("maximally_coherent", [](int d) { return Vector(maximally_coherent(d).amps()); });
  m.def("random_density",
        [](int d, int rank, uint64_t seed) {
          Rng rng(seed);
          return random_density(d, rank, rng).mat();
        },
        py::arg("d"), py::arg("rank"), py::arg("seed"));
  m.def("random_pure",
        [](int d, uint64_t seed) {
          Rng rng(seed);
          return Vector(random_pure(d, rng).amps());
        },
        py::arg("d"), py::arg("seed"));
  m.def("validate_state", [](const Matrix& rho) {
    as_state(rho);
    return true;
  });

  // coherence measures
  m.def("c_l1",
        [](const Matrix& rho, std::optional<Matrix> basis) {
          return coherence_measure(
              [](const DensityMatrix& r, const ReferenceBasis& b, Rng&) { return c_l1(r, b); },
              rho, basis, 1);
        },
        py::arg("rho"), py::arg("basis") = py::none());
  m.def("c_rel_entropy",
        [](const Matrix& rho, std::optional<Matrix> basis) {
          return coherence_measure(
              [](const DensityMatrix& r, const ReferenceBasis& b, Rng&) {
                return c_rel_entropy(r, b);
              },
              rho, basis, 1);
        },
        py::arg("rho"), py::arg("basis") = py::none());
  m.def("c_l2",
        [](const Matrix& rho, std::optional<Matrix> basis) {
          return coherence_measure(
              [](const DensityMatrix& r, const ReferenceBasis& b, Rng&) { return c_l2(r, b); },
              rho, basis, 1);
        },
        py::arg("rho"), py::arg("basis") = py::none());
  m.def("c_trace",
        [](const Matrix& rho, std::optional<Matrix> basis, uint64_t seed) {
          return coherence_measure(
              [](const DensityMatrix& r, const ReferenceBasis& b, Rng& g) {
                return c_trace(r, b, &g);
              },
              rho, basis, seed);
        },
        py::arg("rho"), py::arg("basis") = py::none(), py::arg("seed") = 1);
  m.def("robustness",
        [](const Matrix& rho, std::optional<Matrix> basis, uint64_t seed) {
          return coherence_measure(
              [](const DensityMatrix& r, const ReferenceBasis& b, Rng& g) {
                return robustness(r, b, &g);
              },
              rho, basis, seed);
        },
        py::arg("rho"), py::arg("basis") = py::none(), py::arg("seed") = 1);
  m.def("coherence_weight",
        [](const Matrix& rho, std::optional<Matrix> basis, uint64_t seed) {
          return coherence_measure(
              [](const DensityMatrix& r, const ReferenceBasis& b, Rng& g) {
                return coherence_weight(r, b, &g);
              },
              rho, basis, seed);
        },
        py::arg("rho"), py::arg("basis") = py::none(), py::arg("seed") = 1);
  m.def("geometric_coherence",
        [](const Matrix& rho, std::optional<Matrix> basis, uint64_t seed) {
          return coherence_measure(
              [](const DensityMatrix& r, const ReferenceBasis& b, Rng& g) {
                return geometric_coherence(r, b, &g);
              },
              rho, basis, seed);
        },
        py::arg("rho"), py::arg("basis") = py::none(), py::arg("seed") = 1);
  m.def("c_sk",
        [](const Matrix& rho, std::optional<Matrix> basis) {
          return coherence_measure(
              [](const DensityMatrix& r, const ReferenceBasis& b, Rng&) { return c_sk(r, b); },
              rho, basis, 1);
        },
        py::arg("rho"), py::arg("basis") = py::none());
  m.def("tsallis_coherence",
        [](const Matrix& rho, double alpha, std::optional<Matrix> basis) {
          return coherence_measure(
              [alpha](const DensityMatrix& r, const ReferenceBasis& b, Rng&) {
                return tsallis_coherence(r, b, alpha);
              },
              rho, basis, 1);
        },
        py::arg("rho"), py::arg("alpha"), py::arg("basis") = py::none());
  m.def("c_max_relative_entropy",
        [](const Matrix& rho, std::optional<Matrix> basis, uint64_t seed) {
          return coherence_measure(
              [](const DensityMatrix& r, const ReferenceBasis& b, Rng& g) {
                return c_max_relative_entropy(r, b, &g);
              },
              rho, basis, seed);
        },
        py::arg("rho"), py::arg("basis") = py::none(), py::arg("seed") = 1);
  m.def("c_basis_independent",
        [](const Matrix& rho) { return c_basis_independent(as_state(rho)); });
  m.def("coherence_of_formation_qubit",
        [](const Matrix& rho) { return result_dict(coherence_of_formation_qubit(as_state(rho))); });
  m.def("naqc_l1", [](const Matrix& rho) {
    NaqcResult r = naqc_l1(as_state(rho));
    py::dict d;
    d["value"] = r.value;
    d["achieves_advantage"] = r.achieves_advantage;
    return d;
  });

  // discord and MIN
  m.def("entropic_discord", [](const Matrix& rho, const std::string& side) {
    return result_dict(entropic_discord_2q(as_state(rho), side == "B" ? Side::B : Side::A));
  }, py::arg("rho"), py::arg("side") = "A");
  m.def("hs_discord", [](const Matrix& rho, int dim_a, int dim_b) {
    return result_dict(hs_discord(as_state(rho), dim_a, dim_b));
  });
  m.def("trace_discord", [](const Matrix& rho, int dim_a, int dim_b) {
    return result_dict(trace_discord(as_state(rho), dim_a, dim_b));
  });
  m.def("bures_discord", [](const Matrix& rho, int dim_a, int dim_b) {
    return result_dict(bures_discord(as_state(rho), dim_a, dim_b));
  });
  m.def("hellinger_discord", [](const Matrix& rho, int dim_a, int dim_b) {
    return result_dict(hellinger_discord(as_state(rho), dim_a, dim_b));
  });
  m.def("lqu", [](const Matrix& rho, int dim_a, int dim_b) {
    return result_dict(lqu(as_state(rho), dim_a, dim_b));
  });
  m.def("one_way_deficit", [](const Matrix& rho, int dim_a, int dim_b) {
    return result_dict(one_way_deficit(as_state(rho), dim_a, dim_b));
  });
  m.def("zero_way_deficit", [](const Matrix& rho) {
    return result_dict(zero_way_deficit(as_state(rho)));
  });
  m.def("q_discord", [](const Matrix& rho, int dim_a, int dim_b, double q) {
    return result_dict(q_discord(as_state(rho), dim_a, dim_b, q));
  });
  m.def("hs_min", [](const Matrix& rho, int dim_a, int dim_b) {
    return result_dict(hs_min(as_state(rho), dim_a, dim_b));
  });
  m.def("trace_min", [](const Matrix& rho, int dim_a, int dim_b) {
    return result_dict(trace_min(as_state(rho), dim_a, dim_b));
  });
  m.def("rel_entropy_min", [](const Matrix& rho, int dim_a, int dim_b) {
    return result_dict(rel_entropy_min(as_state(rho), dim_a, dim_b));
  });
  m.def("skew_min", [](const Matrix& rho, int dim_a, int dim_b) {
    return result_dict(skew_min(as_state(rho), dim_a, dim_b));
  });
  m.def("uin", [](const Matrix& rho, int dim_a, int dim_b) {
    return result_dict(uin(as_state(rho), dim_a, dim_b));
  });
  m.def("negativity", [](const Matrix& rho, int dim_a, int dim_b) {
    return negativity(as_state(rho), dim_a, dim_b);
  });

  // channels
  m.def("standard_channel_kraus", [](const std::string& kind, double param) {
    static const std::map<std::string, ChannelKind> kinds = {
        {"bit_flip", ChannelKind::bit_flip},
        {"phase_flip", ChannelKind::phase_flip},
        {"bit_phase_flip", ChannelKind::bit_phase_flip},
        {"depolarizing", ChannelKind::depolarizing},
        {"amplitude_damping", ChannelKind::amplitude_damping},
        {"phase_damping", ChannelKind::phase_damping},
    };
    auto it = kinds.find(kind);
    if (it == kinds.end()) fail(Err::ParamOutOfRange, "unknown channel kind: " + kind);
    return standard_channel(it->second, param).kraus();
  });
  m.def("apply_channel", [](const std::vector<Matrix>& kraus, const Matrix& rho) {
    return apply(channel_from_list(kraus, "py"), as_state(rho)).mat();
  });
  m.def("classify_channel", [](const std::vector<Matrix>& kraus) {
    ChannelClassification c = classify(channel_from_list(kraus, "py"));
    py::dict d;
    d["unital"] = c.unital;
    d["semiclassical"] = c.semiclassical;
    d["incoherent"] = c.incoherent;
    d["strictly_incoherent"] = c.strictly_incoherent;
    d["coherence_breaking"] = c.coherence_breaking;
    return d;
  });
  m.def("cohering_power", [](const std::vector<Matrix>& kraus, const std::string& kind) {
    return cohering_power(channel_from_list(kraus, "py"),
                          kind == "rel_entropy" ? PowerKind::rel_entropy : PowerKind::l1);
  });
  m.def("average_cohering_power_unitary", &average_cohering_power_unitary);
  m.def("coherence_breaking_index", [](const std::vector<Matrix>& kraus, int cap) {
    auto idx = coherence_breaking_index(channel_from_list(kraus, "py"), cap);
    return idx ? py::cast(*idx) : py::none().cast<py::object>();
  }, py::arg("kraus"), py::arg("cap") = 32);

  // protocols
  m.def("dqc1_coherence_consumption", [](int n, const Matrix& u) {
    return dqc1_coherence_consumption(DQC1Instance(n, u));
  });
  m.def("grover_success", [](long n, long j, long r) { return grover_success({n, j, r}); });
  m.def("grover_coherence", [](long n, long j, long r, const std::string& kind) {
    return grover_coherence({n, j, r}, kind == "rel_entropy" ? GroverCoherenceKind::rel_entropy
                                                             : GroverCoherenceKind::l1);
  });
  m.def("grover_r_opt", &grover_r_opt);
  m.def("teleport_fidelity_bounds", [](const Matrix& rho) {
    TeleportBounds b = teleport_fidelity_bounds(as_state(rho));
    py::dict d;
    d["fidelity"] = b.fidelity;
    d["lower"] = b.lower;
    d["upper"] = b.upper;
    return d;
  });
  m.def("rsp_fidelity", [](const Matrix& rho) { return rsp_fidelity(as_state(rho)); });
  m.def("haar_average_coherence", [](int d, int samples, uint64_t seed, const std::string& kind) {
    HaarKind k = kind == "rel_entropy"          ? HaarKind::rel_entropy_nats
                 : kind == "dephased_distance" ? HaarKind::dephased_distance
                                               : HaarKind::l1;
    HaarAverage avg = haar_average_coherence(d, samples, seed, k);
    py::dict out;
    out["mean"] = avg.mean;
    out["stderr"] = avg.stderr_;
    out["analytic"] = avg.analytic;
    return out;
  });
  m.def("odlro_coherence", &odlro_coherence);

  // relativistic
  m.def("fermionic_degraded_bell", [](double omega, double acceleration) {
    return fermionic_degraded_bell(UnruhParams(omega, acceleration)).mat();
  });
  m.def("bosonic_degraded_bell", [](double omega, double acceleration, int n_max, double tail) {
    return bosonic_degraded_bell(UnruhParams(omega, acceleration), TruncationConfig(n_max, tail))
        .mat();
  }, py::arg("omega"), py::arg("acceleration"), py::arg("n_max") = 20, py::arg("tail") = 1e-8);

#ifdef VERSION_INFO
  m.attr("__version__") = VERSION_INFO;
#else
  m.attr("__version__") = "0.1.0";
#endif
}
