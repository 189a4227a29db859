#include <pybind11/complex.h>
#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "nsv/boxes.hpp"
#include "nsv/hilbert.hpp"
#include "nsv/locality.hpp"
#include "nsv/measure.hpp"
#include "nsv/partitions.hpp"
#include "nsv/qutrit.hpp"
#include "nsv/sampling.hpp"
#include "nsv/scenario.hpp"
#include "nsv/version.hpp"

namespace py = pybind11;
using namespace nsv;

namespace {

py::object json_to_py(const nlohmann::json& j) {
    switch (j.type()) {
        case nlohmann::json::value_t::null:
            return py::none();
        case nlohmann::json::value_t::boolean:
            return py::bool_(j.get<bool>());
        case nlohmann::json::value_t::number_integer:
            return py::int_(j.get<std::int64_t>());
        case nlohmann::json::value_t::number_unsigned:
            return py::int_(j.get<std::uint64_t>());
        case nlohmann::json::value_t::number_float:
            return py::float_(j.get<double>());
        case nlohmann::json::value_t::string:
            return py::str(j.get<std::string>());
        case nlohmann::json::value_t::array: {
            py::list out;
            for (const auto& item : j) {
                out.append(json_to_py(item));
            }
            return out;
        }
        case nlohmann::json::value_t::object: {
            py::dict out;
            for (const auto& [key, value] : j.items()) {
                out[py::str(key)] = json_to_py(value);
            }
            return out;
        }
        default:
            return py::none();
    }
}

Sector sector_from(const std::string& name) {
    if (name == "A" || name == "a") return Sector::A;
    if (name == "B" || name == "b") return Sector::B;
    throw Error(Errc::SameSector, "sector must be 'A' or 'B'");
}

ContextChoice context_from(const std::string& name) {
    if (name == "Y1") return ContextChoice::Y1;
    if (name == "Y2") return ContextChoice::Y2;
    throw Error(Errc::SchemaError, "context must be 'Y1' or 'Y2'");
}

py::dict distribution_dict(const Distribution& d) {
    py::dict out;
    out["labels"] = d.labels;
    out["probabilities"] = d.probabilities;
    out["complete"] = d.complete;
    return out;
}

py::dict signal_report_dict(const SignalReport& r) {
    py::dict out;
    out["block_labels"] = r.block_labels;
    out["measures"] = r.measures;
    out["deviations"] = r.deviations;
    out["max_deviation"] = r.max_deviation;
    out["tolerance"] = r.tolerance;
    out["pass"] = r.pass;
    out["contexts"] = r.contexts;
    return out;
}

Overrides overrides_from(py::object tol, py::object seed, py::object trials,
                         py::object budget) {
    Overrides ov;
    if (!tol.is_none()) ov.tol = tol.cast<double>();
    if (!seed.is_none()) ov.seed = seed.cast<std::uint64_t>();
    if (!trials.is_none()) ov.trials = trials.cast<int>();
    if (!budget.is_none()) ov.budget = budget.cast<std::uint64_t>();
    return ov;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Numerical no-signaling and non-contextuality verification toolkit";
    m.attr("__version__") = kVersion;

    py::register_exception<Error>(m, "ToolkitError");

    // ---- states and operators ----
    py::class_<DensityMatrix>(m, "DensityMatrix")
        .def_property_readonly("matrix", &DensityMatrix::matrix)
        .def_property_readonly("dim", &DensityMatrix::dim);

    m.def("make_density", &DensityMatrix::make, py::arg("matrix"),
          py::arg("tol_herm") = tol::herm, py::arg("tol_tr") = tol::tr,
          py::arg("tol_psd") = tol::psd);
    m.def("pure_state", &pure_state, py::arg("amplitudes"), py::arg("normalize") = false,
          py::arg("tol_norm") = tol::norm);
    m.def(
        "random_density",
        [](Eigen::Index dim, Eigen::Index rank, std::uint64_t seed) {
            return random_density(dim, rank, seed);
        },
        py::arg("dim"), py::arg("rank"), py::arg("seed"));
    m.def(
        "haar_random_unitary",
        [](Eigen::Index dim, std::uint64_t seed) {
            return haar_random_unitary(dim, seed).matrix();
        },
        py::arg("dim"), py::arg("seed"));
    m.def(
        "spectral_decompose",
        [](const Matrix& hermitian, double cluster_tol) {
            const Observable obs = Observable::decompose(hermitian, cluster_tol);
            py::list out;
            for (const EigenSpace& level : obs.spectrum()) {
                out.append(py::make_tuple(level.value, level.projector.matrix(),
                                          level.projector.rank()));
            }
            return out;
        },
        py::arg("matrix"), py::arg("cluster_tol") = tol::cluster);
    m.def("commutator_norm", &commutator_norm, py::arg("a"), py::arg("b"));

    // ---- partitions ----
    py::class_<ProductPartition>(m, "ProductPartition")
        .def_property_readonly("total_dim", &ProductPartition::total_dim)
        .def_property_readonly("sector_dims", &ProductPartition::sector_dims)
        .def_property_readonly("trivial", &ProductPartition::trivial)
        .def("global_index", &ProductPartition::global_index)
        .def("tuple_of", &ProductPartition::tuple_of);
    m.def("product_partition", &ProductPartition::make, py::arg("sector_dims"));

    py::class_<SumPartition>(m, "SumPartition")
        .def_property_readonly("total_dim", &SumPartition::total_dim)
        .def_property_readonly("block_count", &SumPartition::block_count)
        .def("block_basis",
             [](const SumPartition& sp, std::size_t j) { return sp.blocks().at(j).basis; })
        .def("block_indices",
             [](const SumPartition& sp, std::size_t j) -> py::object {
                 const auto& idx = sp.blocks().at(j).axis_indices;
                 if (!idx) return py::none();
                 return py::cast(*idx);
             })
        .def("block_projector",
             [](const SumPartition& sp, std::size_t j) {
                 return sp.block_projector(j).matrix();
             });
    m.def(
        "sum_partition",
        [](std::vector<Matrix> bases) { return SumPartition::make(std::move(bases)); },
        py::arg("block_bases"));
    m.def("sum_partition_from_indices", &SumPartition::from_indices, py::arg("total_dim"),
          py::arg("blocks"));
    m.def("induced_sum_partition", &induced_sum_partition, py::arg("pp"), py::arg("b_split"));
    m.def("factorizations", &factorizations, py::arg("dim"));
    m.def("embed_local", &embed_local, py::arg("op"), py::arg("pp"), py::arg("sector") = 0);

    // ---- measures ----
    m.def(
        "born_measure",
        [](const DensityMatrix& rho, const Matrix& projector) {
            return born_measure(rho, Projector::make(projector));
        },
        py::arg("rho"), py::arg("projector"));
    m.def(
        "frame_distribution",
        [](const DensityMatrix& rho, const Matrix& basis) {
            return distribution_dict(frame_distribution(rho, basis));
        },
        py::arg("rho"), py::arg("basis_columns"));
    m.def(
        "check_noncontextuality",
        [](const DensityMatrix& rho, const Matrix& subspace, const std::vector<Matrix>& contexts,
           double tolerance) {
            const MeasureReport report =
                check_noncontextuality(rho, subspace, contexts, tolerance);
            py::dict out;
            out["subspace"] = report.subspace_label;
            out["value_per_context"] = report.value_per_context;
            out["max_pairwise_deviation"] = report.max_pairwise_deviation;
            out["tolerance"] = report.tolerance;
            out["pass"] = report.pass;
            return out;
        },
        py::arg("rho"), py::arg("subspace_columns"), py::arg("contexts"), py::arg("tolerance"));
    m.def(
        "measure_under_context",
        [](const DensityMatrix& rho, const SumPartition& sp, std::vector<Matrix> kraus) {
            return distribution_dict(
                measure_under_context(rho, sp, Channel::make(std::move(kraus))));
        },
        py::arg("rho"), py::arg("sum_partition"), py::arg("kraus"));

    // ---- local operations ----
    py::class_<LocalInstrument>(m, "LocalInstrument")
        .def_property_readonly("dim", &LocalInstrument::dim)
        .def_property_readonly("outcome_labels", &LocalInstrument::outcome_labels)
        .def_property_readonly("elements", &LocalInstrument::elements)
        .def_property_readonly("projective", &LocalInstrument::projective_mode);
    m.def(
        "projective_instrument",
        [](const std::string& sector, std::vector<Matrix> projectors) {
            return LocalInstrument::projective(sector_from(sector), std::move(projectors));
        },
        py::arg("sector"), py::arg("projectors"));
    m.def(
        "kraus_instrument",
        [](const std::string& sector, std::vector<Matrix> elements) {
            return LocalInstrument::kraus(sector_from(sector), std::move(elements));
        },
        py::arg("sector"), py::arg("elements"));
    m.def(
        "trivial_instrument",
        [](const std::string& sector, Eigen::Index dim) {
            return LocalInstrument::trivial(sector_from(sector), dim);
        },
        py::arg("sector"), py::arg("dim"));

    m.def(
        "apply_channel",
        [](const DensityMatrix& rho, std::vector<Matrix> kraus) {
            return apply_channel(rho, Channel::make(std::move(kraus)));
        },
        py::arg("rho"), py::arg("kraus"));
    m.def("partial_trace", &partial_trace, py::arg("rho"), py::arg("pp"), py::arg("keep"));
    m.def(
        "joint_distribution",
        [](const DensityMatrix& rho, const LocalInstrument& a, const LocalInstrument& b,
           const ProductPartition& pp) {
            const JointTable table = joint_distribution(rho, a, b, pp);
            py::dict out;
            out["row_labels"] = table.row_labels;
            out["col_labels"] = table.col_labels;
            out["probabilities"] = table.probabilities;
            return out;
        },
        py::arg("rho"), py::arg("instrument_a"), py::arg("instrument_b"), py::arg("pp"));
    m.def(
        "bob_marginal",
        [](const DensityMatrix& rho, const LocalInstrument& a, const SumPartition& sp_b,
           const ProductPartition& pp) {
            return distribution_dict(bob_marginal(rho, a, sp_b, pp));
        },
        py::arg("rho"), py::arg("instrument_a"), py::arg("b_split"), py::arg("pp"));
    m.def(
        "check_nosignaling",
        [](const DensityMatrix& rho, const LocalInstrument& a, const LocalInstrument& a_prime,
           const SumPartition& sp_b, const ProductPartition& pp, double tolerance) {
            return signal_report_dict(
                check_nosignaling(rho, a, a_prime, sp_b, pp, tolerance));
        },
        py::arg("rho"), py::arg("instrument"), py::arg("instrument_prime"), py::arg("b_split"),
        py::arg("pp"), py::arg("tolerance"));
    m.def(
        "adversarial_signal_search",
        [](const DensityMatrix& rho, const ProductPartition& pp, const SumPartition& sp_b,
           std::uint64_t budget, std::uint64_t seed, bool allow_nonphysical) {
            SearchOptions options;
            options.allow_nonphysical = allow_nonphysical;
            const SearchResult result =
                adversarial_signal_search(rho, pp, sp_b, budget, seed, options);
            py::dict out;
            out["best_deviation"] = result.best_deviation;
            out["evaluations"] = result.evaluations;
            return out;
        },
        py::arg("rho"), py::arg("pp"), py::arg("b_split"), py::arg("budget"), py::arg("seed"),
        py::arg("allow_nonphysical") = false);

    // ---- routing scenario ----
    m.def(
        "build_x",
        [](double a, double b) { return build_x(a, b).matrix(); },
        py::arg("a"), py::arg("b"));
    m.def(
        "run_routing",
        [](const Vector& beta, double a, double b, const std::string& context) {
            const RoutingResult result =
                run_routing(QutritScenario::make(beta, a, b), context_from(context));
            py::dict out;
            out["alice_prob"] = result.alice_prob;
            out["bob_conditional"] = distribution_dict(result.bob_conditional);
            return out;
        },
        py::arg("beta"), py::arg("a"), py::arg("b"), py::arg("context"));
    m.def(
        "check_signal_free",
        [](const Vector& beta, double a, double b, double tolerance) {
            return signal_report_dict(
                check_signal_free(QutritScenario::make(beta, a, b), tolerance));
        },
        py::arg("beta"), py::arg("a"), py::arg("b"), py::arg("tolerance"));
    m.def(
        "check_nodisturbance",
        [](double a, double b, double tolerance, int trials, std::uint64_t seed) {
            const NoDisturbanceReport report =
                check_nodisturbance(a, b, tolerance, trials, seed);
            py::dict out;
            out["max_x_commutator"] = report.max_x_commutator;
            out["max_cross_commutator"] = report.max_cross_commutator;
            out["max_marginal_deviation"] = report.max_marginal_deviation;
            out["pass"] = report.pass;
            return out;
        },
        py::arg("a"), py::arg("b"), py::arg("tolerance"), py::arg("trials") = 100,
        py::arg("seed") = 1);

    // ---- boxes ----
    py::class_<Box>(m, "Box")
        .def_property_readonly("x_count", &Box::x_count)
        .def_property_readonly("y_count", &Box::y_count)
        .def_property_readonly("a_count", &Box::a_count)
        .def_property_readonly("b_count", &Box::b_count)
        .def("at", &Box::at, py::arg("x"), py::arg("y"), py::arg("a"), py::arg("b"))
        .def_property_readonly("table", &Box::table);
    m.def("make_box", &Box::make, py::arg("x_count"), py::arg("y_count"), py::arg("a_count"),
          py::arg("b_count"), py::arg("table"), py::arg("tol_p") = tol::p);
    m.def("pr_box", &pr_box);
    m.def("chsh_value", &chsh_value, py::arg("box"));
    m.def(
        "check_box_nosignaling",
        [](const Box& box, double tolerance) {
            const BoxReport report = check_box_nosignaling(box, tolerance);
            py::dict out;
            out["max_deviation"] = report.max_deviation;
            out["tolerance"] = report.tolerance;
            out["pass"] = report.pass;
            return out;
        },
        py::arg("box"), py::arg("tolerance"));
    m.def("box_from_quantum", &box_from_quantum, py::arg("rho"), py::arg("a_per_x"),
          py::arg("b_per_y"), py::arg("pp"));

    // ---- harness ----
    m.def(
        "run_scenario",
        [](const std::string& text, py::object tol, py::object seed, py::object trials,
           py::object budget) {
            return json_to_py(
                run_scenario_text(text, overrides_from(tol, seed, trials, budget)).to_json());
        },
        py::arg("text"), py::arg("tol") = py::none(), py::arg("seed") = py::none(),
        py::arg("trials") = py::none(), py::arg("budget") = py::none());
    m.def(
        "run_sweep",
        [](const std::string& kind, const std::string& dims, int trials, std::uint64_t seed,
           double tol, std::uint64_t budget, bool planted_bug) {
            SweepSpec spec;
            spec.kind = sweep_kind_from_name(kind);
            if (!dims.empty()) {
                spec.dims = parse_dims(dims, spec.kind);
            }
            spec.trials = trials;
            spec.seed = seed;
            spec.tol = tol;
            spec.budget = budget;
            spec.planted_bug = planted_bug;
            return json_to_py(run_sweep(spec).to_json());
        },
        py::arg("kind"), py::arg("dims") = "", py::arg("trials") = 0, py::arg("seed") = 7,
        py::arg("tol") = 0.0, py::arg("budget") = 10000, py::arg("planted_bug") = false);
    m.def("list_fixtures", []() {
        std::vector<std::string> names;
        for (const auto& [name, text] : bundled_fixtures()) {
            names.push_back(name);
        }
        return names;
    });
    m.def(
        "fixture_text",
        [](const std::string& name) {
            const auto& fixtures = bundled_fixtures();
            const auto it = fixtures.find(name);
            if (it == fixtures.end()) {
                throw Error(Errc::UnknownKind, "unknown fixture '" + name + "'");
            }
            return it->second;
        },
        py::arg("name"));
}
