#include "nsv/scenario.hpp"

#include <algorithm>
#include <chrono>
#include <fstream>
#include <sstream>

#include "nsv/boxes.hpp"
#include "nsv/locality.hpp"
#include "nsv/measure.hpp"
#include "nsv/qutrit.hpp"
#include "nsv/rng.hpp"
#include "nsv/version.hpp"

#include "harness_detail.hpp"

namespace nsv {

namespace {

using nlohmann::json;

[[noreturn]] void schema_error(const std::string& where, const std::string& message) {
    throw Error(Errc::SchemaError, where + ": " + message);
}

const json& require_field(const json& obj, const std::string& where, const char* field) {
    if (!obj.is_object() || !obj.contains(field)) {
        schema_error(where, std::string("missing field '") + field + "'");
    }
    return obj.at(field);
}

double number_field(const json& obj, const std::string& where, const char* field) {
    const json& v = require_field(obj, where, field);
    if (!v.is_number()) {
        schema_error(where, std::string("field '") + field + "' must be a number");
    }
    return v.get<double>();
}

double number_or(const json& obj, const char* field, double fallback) {
    if (obj.is_object() && obj.contains(field)) {
        return obj.at(field).get<double>();
    }
    return fallback;
}

Cplx parse_complex(const json& v, const std::string& where) {
    if (!v.is_array() || v.size() != 2 || !v[0].is_number() || !v[1].is_number()) {
        schema_error(where, "a complex entry is a two-element array [re, im]");
    }
    return {v[0].get<double>(), v[1].get<double>()};
}

Vector parse_vector(const json& v, const std::string& where) {
    if (!v.is_array() || v.empty()) {
        schema_error(where, "expected a non-empty array of complex entries");
    }
    Vector out(static_cast<Eigen::Index>(v.size()));
    for (std::size_t i = 0; i < v.size(); ++i) {
        out(static_cast<Eigen::Index>(i)) = parse_complex(v[i], where);
    }
    return out;
}

Matrix parse_matrix(const json& v, const std::string& where) {
    if (!v.is_array() || v.empty() || !v[0].is_array()) {
        schema_error(where, "a matrix literal is an array of row arrays");
    }
    const std::size_t rows = v.size();
    const std::size_t cols = v[0].size();
    Matrix out(static_cast<Eigen::Index>(rows), static_cast<Eigen::Index>(cols));
    for (std::size_t r = 0; r < rows; ++r) {
        if (!v[r].is_array() || v[r].size() != cols) {
            schema_error(where, "matrix rows must all have the same length");
        }
        for (std::size_t c = 0; c < cols; ++c) {
            out(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) =
                parse_complex(v[r][c], where);
        }
    }
    return out;
}

json distribution_to_json(const Distribution& dist) {
    json out;
    out["labels"] = dist.labels;
    out["probabilities"] = dist.probabilities;
    out["complete"] = dist.complete;
    return out;
}

json signal_report_to_json(const SignalReport& report) {
    json blocks = json::array();
    for (std::size_t j = 0; j < report.block_labels.size(); ++j) {
        blocks.push_back({
            {"block", report.block_labels[j]},
            {"measure_first", report.measures[j].first},
            {"measure_second", report.measures[j].second},
            {"deviation", report.deviations[j]},
        });
    }
    return {
        {"contexts", {report.contexts.first, report.contexts.second}},
        {"blocks", blocks},
        {"max_deviation", report.max_deviation},
        {"tol", report.tolerance},
        {"verdict", report.pass ? "pass" : "fail"},
    };
}

// ---- qutrit stanza ---------------------------------------------------------

EntryResult run_qutrit_stanza(const json& body, const std::string& where,
                              const Overrides& ov, std::uint64_t default_seed) {
    const Vector beta = parse_vector(require_field(body, where, "beta"), where);
    if (beta.size() != 3) {
        schema_error(where, "'beta' needs exactly three amplitudes");
    }
    const double a = number_field(body, where, "a");
    const double b = number_field(body, where, "b");
    const json& ctx_field = require_field(body, where, "context");
    if (!ctx_field.is_string()) {
        schema_error(where, "'context' must be \"Y1\" or \"Y2\"");
    }
    const std::string ctx_name = ctx_field.get<std::string>();
    ContextChoice ctx;
    if (ctx_name == "Y1") {
        ctx = ContextChoice::Y1;
    } else if (ctx_name == "Y2") {
        ctx = ContextChoice::Y2;
    } else {
        schema_error(where, "'context' must be \"Y1\" or \"Y2\"");
    }
    const double tol = ov.tol.value_or(number_or(body, "tol", 1e-12));
    const int trials = ov.trials.value_or(
        static_cast<int>(number_or(body, "trials", 100)));
    const std::uint64_t seed =
        ov.seed ? default_seed
                : (body.contains("seed") ? body.at("seed").get<std::uint64_t>()
                                         : default_seed);

    const QutritScenario sc = QutritScenario::make(beta, a, b);

    EntryResult entry;
    entry.name = "qutrit " + ctx_name;
    try {
        const RoutingResult routing = run_routing(sc, ctx);
        entry.details["alice_prob"] = routing.alice_prob;
        entry.details["bob_conditional"] = distribution_to_json(routing.bob_conditional);
    } catch (const Error& err) {
        if (err.code() != Errc::BobUnreachable) {
            throw;
        }
        entry.details["alice_prob"] = 1.0;
        entry.details["bob_conditional"] = nullptr;
    }

    const SignalReport signal = check_signal_free(sc, tol);
    const NoDisturbanceReport nodist = check_nodisturbance(a, b, tol, trials, seed);

    entry.details["signal_free"] = signal_report_to_json(signal);
    entry.details["no_disturbance"] = {
        {"max_x_commutator", nodist.max_x_commutator},
        {"max_cross_commutator", nodist.max_cross_commutator},
        {"max_marginal_deviation", nodist.max_marginal_deviation},
        {"verdict", nodist.pass ? "pass" : "fail"},
    };
    entry.max_deviation =
        std::max({signal.max_deviation, nodist.max_x_commutator,
                  nodist.max_marginal_deviation});
    entry.pass = signal.pass && nodist.pass;
    return entry;
}

// ---- bipartite stanza ------------------------------------------------------

DensityMatrix parse_state(const json& spec, const std::string& where, Eigen::Index dim) {
    if (!spec.is_object()) {
        schema_error(where, "'state' must be an object");
    }
    if (spec.contains("pure")) {
        const Vector amps = parse_vector(spec.at("pure"), where);
        if (amps.size() != dim) {
            schema_error(where, "'state.pure' has the wrong dimension");
        }
        const bool normalize = spec.contains("normalize") && spec.at("normalize").get<bool>();
        return pure_state(amps, normalize);
    }
    if (spec.contains("matrix")) {
        const Matrix m = parse_matrix(spec.at("matrix"), where);
        if (m.rows() != dim) {
            schema_error(where, "'state.matrix' has the wrong dimension");
        }
        return DensityMatrix::make(m);
    }
    if (spec.contains("bell")) {
        if (dim != 4) {
            schema_error(where, "Bell states need dims [2,2]");
        }
        const std::string name = spec.at("bell").get<std::string>();
        Vector amps = Vector::Zero(4);
        constexpr double kInvSqrt2 = 0.70710678118654752440;
        if (name == "phi+") {
            amps(0) = kInvSqrt2; amps(3) = kInvSqrt2;
        } else if (name == "phi-") {
            amps(0) = kInvSqrt2; amps(3) = -kInvSqrt2;
        } else if (name == "psi+") {
            amps(1) = kInvSqrt2; amps(2) = kInvSqrt2;
        } else if (name == "psi-") {
            amps(1) = kInvSqrt2; amps(2) = -kInvSqrt2;
        } else {
            schema_error(where, "unknown Bell state '" + name + "'");
        }
        return pure_state(amps);
    }
    schema_error(where, "'state' needs one of 'pure', 'matrix', 'bell'");
}

Matrix axis_projector(const json& indices, const std::string& where, Eigen::Index dim) {
    Matrix p = Matrix::Zero(dim, dim);
    for (const json& idx : indices) {
        if (!idx.is_number_integer()) {
            schema_error(where, "projector index lists hold integers");
        }
        const auto k = idx.get<Eigen::Index>();
        if (k < 0 || k >= dim) {
            schema_error(where, "projector index out of range");
        }
        p(k, k) = Cplx(1.0, 0.0);
    }
    return p;
}

LocalInstrument parse_instrument(const json& spec, const std::string& where, Sector sector,
                                 Eigen::Index dim) {
    if (!spec.is_object()) {
        schema_error(where, "instrument spec must be an object");
    }
    if (spec.contains("projective")) {
        const json& list = spec.at("projective");
        if (!list.is_array() || list.empty()) {
            schema_error(where, "'projective' holds a non-empty array of projector specs");
        }
        std::vector<Matrix> projectors;
        for (const json& item : list) {
            if (!item.is_array() || item.empty()) {
                schema_error(where, "projector specs are index lists or matrix literals");
            }
            if (item[0].is_number()) {
                projectors.push_back(axis_projector(item, where, dim));
            } else {
                Matrix m = parse_matrix(item, where);
                if (m.rows() != dim || m.cols() != dim) {
                    schema_error(where, "projector matrix has the wrong dimension");
                }
                projectors.push_back(std::move(m));
            }
        }
        return LocalInstrument::projective(sector, std::move(projectors));
    }
    if (spec.contains("kraus")) {
        const json& list = spec.at("kraus");
        if (!list.is_array() || list.empty()) {
            schema_error(where, "'kraus' holds a non-empty array of matrix literals");
        }
        std::vector<Matrix> elements;
        for (const json& item : list) {
            Matrix m = parse_matrix(item, where);
            if (m.rows() != dim || m.cols() != dim) {
                schema_error(where, "Kraus element has the wrong dimension");
            }
            elements.push_back(std::move(m));
        }
        return LocalInstrument::kraus(sector, std::move(elements));
    }
    schema_error(where, "instrument spec needs 'projective' or 'kraus'");
}

SumPartition parse_b_split(const json& spec, const std::string& where, Eigen::Index dim_b) {
    const json& blocks = require_field(spec, where, "blocks");
    if (!blocks.is_array() || blocks.empty()) {
        schema_error(where, "'blocks' holds a non-empty array");
    }
    // Index-list blocks and matrix-literal blocks may be mixed.
    std::vector<Matrix> bases;
    for (const json& block : blocks) {
        if (!block.is_array() || block.empty()) {
            schema_error(where, "each block is an index list or a basis-column matrix");
        }
        if (block[0].is_number_integer()) {
            Matrix basis = Matrix::Zero(dim_b, static_cast<Eigen::Index>(block.size()));
            for (std::size_t c = 0; c < block.size(); ++c) {
                const auto k = block[c].get<Eigen::Index>();
                if (k < 0 || k >= dim_b) {
                    schema_error(where, "block index out of range");
                }
                basis(k, static_cast<Eigen::Index>(c)) = Cplx(1.0, 0.0);
            }
            bases.push_back(std::move(basis));
        } else {
            Matrix basis = parse_matrix(block, where);
            if (basis.rows() != dim_b) {
                schema_error(where, "block basis has the wrong dimension");
            }
            bases.push_back(std::move(basis));
        }
    }
    return SumPartition::make(std::move(bases));
}

EntryResult run_bipartite_stanza(const json& body, const std::string& where,
                                 const Overrides& ov) {
    const json& partition = require_field(body, where, "partition");
    const json& dims = require_field(partition, where, "dims");
    if (!dims.is_array() || dims.size() != 2) {
        schema_error(where, "'partition.dims' is a two-element array");
    }
    const ProductPartition pp =
        ProductPartition::make({dims[0].get<Eigen::Index>(), dims[1].get<Eigen::Index>()});
    const Eigen::Index dim_a = pp.sector_dims()[0];
    const Eigen::Index dim_b = pp.sector_dims()[1];

    const DensityMatrix rho =
        parse_state(require_field(body, where, "state"), where, pp.total_dim());

    const json& instruments = require_field(body, where, "instruments");
    if (!instruments.is_array() || instruments.size() != 2) {
        schema_error(where, "'instruments' holds exactly the pair [E, E']");
    }
    const LocalInstrument e = parse_instrument(instruments[0], where, Sector::A, dim_a);
    const LocalInstrument e_prime = parse_instrument(instruments[1], where, Sector::A, dim_a);

    const SumPartition sp_b =
        parse_b_split(require_field(body, where, "b_split"), where, dim_b);

    const double tol = ov.tol.value_or(number_or(body, "tol", 1e-10));

    const SignalReport report = check_nosignaling(rho, e, e_prime, sp_b, pp, tol);

    // Same marginals through the generic block-measure path; agreement is
    // recorded alongside the verdict.
    const SumPartition induced = induced_sum_partition(pp, sp_b);
    const Distribution via_measure =
        measure_under_context(rho, induced, embed_instrument(e, pp));
    const Distribution via_joint = bob_marginal(rho, e, sp_b, pp);
    double bridge_dev = 0.0;
    for (std::size_t j = 0; j < via_measure.probabilities.size(); ++j) {
        bridge_dev = std::max(bridge_dev, std::abs(via_measure.probabilities[j] -
                                                   via_joint.probabilities[j]));
    }

    EntryResult entry;
    entry.name = "bipartite " + std::to_string(dim_a) + "x" + std::to_string(dim_b);
    entry.pass = report.pass;
    entry.max_deviation = report.max_deviation;
    entry.details["nosignaling"] = signal_report_to_json(report);
    entry.details["measure_bridge_deviation"] = bridge_dev;
    return entry;
}

// ---- box stanza ------------------------------------------------------------

EntryResult run_box_stanza(const json& body, const std::string& where, const Overrides& ov) {
    const int nx = static_cast<int>(number_field(body, where, "x"));
    const int ny = static_cast<int>(number_field(body, where, "y"));
    const int na = static_cast<int>(number_field(body, where, "a"));
    const int nb = static_cast<int>(number_field(body, where, "b"));
    const json& table = require_field(body, where, "table");

    std::vector<double> flat;
    flat.reserve(static_cast<std::size_t>(nx) * ny * na * nb);
    if (!table.is_array() || table.size() != static_cast<std::size_t>(nx)) {
        schema_error(where, "'table' is nested [x][y][a][b]");
    }
    for (const json& jx : table) {
        if (!jx.is_array() || jx.size() != static_cast<std::size_t>(ny)) {
            schema_error(where, "'table' is nested [x][y][a][b]");
        }
        for (const json& jy : jx) {
            if (!jy.is_array() || jy.size() != static_cast<std::size_t>(na)) {
                schema_error(where, "'table' is nested [x][y][a][b]");
            }
            for (const json& ja : jy) {
                if (!ja.is_array() || ja.size() != static_cast<std::size_t>(nb)) {
                    schema_error(where, "'table' is nested [x][y][a][b]");
                }
                for (const json& jb : ja) {
                    if (!jb.is_number()) {
                        schema_error(where, "box entries are plain numbers");
                    }
                    flat.push_back(jb.get<double>());
                }
            }
        }
    }

    const double tol = ov.tol.value_or(number_or(body, "tol", 1e-10));
    const Box box = Box::make(nx, ny, na, nb, std::move(flat));
    const BoxReport report = check_box_nosignaling(box, tol);

    EntryResult entry;
    entry.name = "box " + std::to_string(nx) + "x" + std::to_string(ny);
    entry.pass = report.pass;
    entry.max_deviation = report.max_deviation;
    entry.details["tol"] = tol;
    if (nx == 2 && ny == 2 && na == 2 && nb == 2) {
        entry.details["chsh"] = chsh_value(box);
    }
    return entry;
}

// ---- sweep stanza ----------------------------------------------------------

std::vector<EntryResult> run_sweep_stanza(const json& body, const std::string& where,
                                          const Overrides& ov, std::uint64_t default_seed) {
    SweepSpec spec;
    const json& kind = require_field(body, where, "kind");
    if (!kind.is_string()) {
        schema_error(where, "'kind' must be a string");
    }
    spec.kind = sweep_kind_from_name(kind.get<std::string>());
    if (body.contains("dims")) {
        const json& dims = body.at("dims");
        if (!dims.is_array()) {
            schema_error(where, "'dims' is an array of \"AxB\" strings or integers");
        }
        for (const json& d : dims) {
            if (d.is_string()) {
                const auto parsed = parse_dims(d.get<std::string>(), spec.kind);
                spec.dims.insert(spec.dims.end(), parsed.begin(), parsed.end());
            } else if (d.is_number_integer()) {
                spec.dims.emplace_back(d.get<int>(), 0);
            } else {
                schema_error(where, "'dims' is an array of \"AxB\" strings or integers");
            }
        }
    }
    spec.trials = ov.trials.value_or(static_cast<int>(number_or(body, "trials", 0)));
    spec.tol = ov.tol.value_or(number_or(body, "tol", 0.0));
    spec.budget = ov.budget.value_or(
        static_cast<std::uint64_t>(number_or(body, "budget", 10000)));
    spec.seed = ov.seed ? default_seed
                        : (body.contains("seed") ? body.at("seed").get<std::uint64_t>()
                                                 : default_seed);
    spec.planted_bug = body.contains("planted_bug") && body.at("planted_bug").get<bool>();
    return detail::execute_sweep(spec);
}

}  // namespace

RunReport run_scenario_json(const json& doc, const Overrides& overrides) {
    if (!doc.is_object()) {
        throw Error(Errc::SchemaError, "top level: expected an object");
    }
    const json& version = require_field(doc, "top level", "version");
    if (!version.is_string() || version.get<std::string>() != "1") {
        throw Error(Errc::SchemaError, "top level: unrecognized version");
    }
    const json& entries = require_field(doc, "top level", "entries");
    if (!entries.is_array()) {
        throw Error(Errc::SchemaError, "top level: 'entries' must be an array");
    }

    const std::uint64_t base_seed = overrides.seed.value_or(7);

    RunReport report;
    report.toolkit_version = kVersion;
    report.seed = base_seed;

    for (std::size_t i = 0; i < entries.size(); ++i) {
        const json& stanza = entries[i];
        const std::string where = "stanza " + std::to_string(i);
        if (!stanza.is_object() || stanza.size() != 1) {
            schema_error(where, "each entry holds exactly one stanza object");
        }
        const std::string kind = stanza.begin().key();
        const json& body = stanza.begin().value();
        const std::uint64_t stanza_seed = mix_seed(base_seed, i);
        const std::string full_where = where + " (" + kind + ")";

        const auto start = std::chrono::steady_clock::now();
        std::vector<EntryResult> results;
        try {
            if (kind == "qutrit") {
                results.push_back(run_qutrit_stanza(body, full_where, overrides, stanza_seed));
            } else if (kind == "bipartite") {
                results.push_back(run_bipartite_stanza(body, full_where, overrides));
            } else if (kind == "box") {
                results.push_back(run_box_stanza(body, full_where, overrides));
            } else if (kind == "sweep") {
                results = run_sweep_stanza(body, full_where, overrides, stanza_seed);
            } else {
                schema_error(where, "unknown stanza kind '" + kind + "'");
            }
        } catch (const json::exception& err) {
            schema_error(full_where, err.what());
        }
        const auto stop = std::chrono::steady_clock::now();
        const double elapsed =
            std::chrono::duration<double, std::milli>(stop - start).count();

        for (EntryResult& result : results) {
            result.index = i;
            if (results.size() == 1) {
                result.elapsed_ms = elapsed;
            }
            report.overall_pass = report.overall_pass && result.pass;
            report.entries.push_back(std::move(result));
        }
    }
    return report;
}

RunReport run_scenario_text(const std::string& text, const Overrides& overrides) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::parse_error& err) {
        throw Error(Errc::ParseError, err.what());
    }
    return run_scenario_json(doc, overrides);
}

RunReport run_scenario_file(const std::string& path, const Overrides& overrides) {
    std::ifstream in(path);
    if (!in) {
        throw Error(Errc::ParseError, "cannot open '" + path + "'");
    }
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return run_scenario_text(buffer.str(), overrides);
}

}  // namespace nsv
