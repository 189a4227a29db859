#include <algorithm>
#include <chrono>
#include <cmath>
#include <sstream>

#include "nsv/boxes.hpp"
#include "nsv/locality.hpp"
#include "nsv/measure.hpp"
#include "nsv/rng.hpp"
#include "nsv/sampling.hpp"
#include "nsv/version.hpp"

#include "harness_detail.hpp"

namespace nsv {

namespace {

constexpr double kTsirelson = 2.8284271247461903;  // 2*sqrt(2)

struct KindDefaults {
    std::vector<std::pair<int, int>> dims;
    int trials;
    double tol;
};

KindDefaults defaults_for(SweepKind kind) {
    switch (kind) {
        case SweepKind::Nosignal:
            return {{{2, 2}, {2, 3}, {3, 3}, {4, 4}}, 1000, 1e-10};
        case SweepKind::Gleason:
            return {{{3, 0}, {4, 0}, {5, 0}, {6, 0}}, 1000, 1e-10};
        case SweepKind::Boxes:
            return {{{2, 2}}, 100, 1e-10};
        case SweepKind::Search:
            return {{{3, 3}}, 1, 1e-8};
    }
    throw Error(Errc::UnknownKind, "unhandled sweep kind");
}

std::string config_name(SweepKind kind, std::pair<int, int> dims) {
    std::ostringstream os;
    os << "sweep:";
    switch (kind) {
        case SweepKind::Nosignal: os << "nosignal " << dims.first << "x" << dims.second; break;
        case SweepKind::Gleason: os << "gleason d=" << dims.first; break;
        case SweepKind::Boxes: os << "boxes"; break;
        case SweepKind::Search: os << "search " << dims.first << "x" << dims.second; break;
    }
    return os.str();
}

EntryResult nosignal_config(std::pair<int, int> dims, int trials, double tol,
                            std::uint64_t cfg_seed) {
    const Eigen::Index dim_a = dims.first;
    const Eigen::Index dim_b = dims.second;
    const ProductPartition pp = ProductPartition::make({dim_a, dim_b});

    EntryResult entry;
    entry.pass = true;
    for (int t = 0; t < trials; ++t) {
        const std::uint64_t trial_seed = mix_seed(cfg_seed, static_cast<std::uint64_t>(t));
        Prng rng(trial_seed);
        const Eigen::Index rank =
            1 + static_cast<Eigen::Index>(rng.integer(static_cast<std::uint64_t>(pp.total_dim())));
        const DensityMatrix rho = random_density(pp.total_dim(), rank, rng);
        const LocalInstrument e = random_instrument(dim_a, Sector::A, rng);
        const LocalInstrument e_prime = random_instrument(dim_a, Sector::A, rng);
        const SumPartition sp_b = random_sum_partition(dim_b, rng);

        const SignalReport report = check_nosignaling(rho, e, e_prime, sp_b, pp, tol);
        if (report.max_deviation > entry.max_deviation) {
            entry.max_deviation = report.max_deviation;
            entry.details["worst_trial"] = t;
        }
        if (!report.pass && entry.pass) {
            entry.pass = false;
            entry.details["failing_seed"] = trial_seed;
            entry.details["failing_trial"] = t;
        }
    }
    entry.details["trials"] = trials;
    entry.details["tol"] = tol;
    return entry;
}

EntryResult gleason_config(int dim, int trials, double tol, std::uint64_t cfg_seed) {
    constexpr int kContexts = 5;
    EntryResult entry;
    entry.pass = true;
    for (int t = 0; t < trials; ++t) {
        const std::uint64_t trial_seed = mix_seed(cfg_seed, static_cast<std::uint64_t>(t));
        Prng rng(trial_seed);
        const Eigen::Index rank =
            1 + static_cast<Eigen::Index>(rng.integer(static_cast<std::uint64_t>(dim)));
        const DensityMatrix rho = random_density(dim, rank, rng);
        const Eigen::Index k =
            1 + static_cast<Eigen::Index>(rng.integer(static_cast<std::uint64_t>(dim - 1)));
        const Matrix base = random_subspace(dim, k, rng);
        std::vector<Matrix> contexts;
        contexts.reserve(kContexts);
        for (int c = 0; c < kContexts; ++c) {
            contexts.push_back(base * haar_unitary(k, rng));
        }

        const MeasureReport report = check_noncontextuality(rho, base, contexts, tol);
        if (report.max_pairwise_deviation > entry.max_deviation) {
            entry.max_deviation = report.max_pairwise_deviation;
            entry.details["worst_trial"] = t;
        }
        if (!report.pass && entry.pass) {
            entry.pass = false;
            entry.details["failing_seed"] = trial_seed;
            entry.details["failing_trial"] = t;
        }
    }
    entry.details["trials"] = trials;
    entry.details["tol"] = tol;
    entry.details["contexts_per_subspace"] = kContexts;
    return entry;
}

EntryResult boxes_config(int trials, double tol, std::uint64_t cfg_seed) {
    const ProductPartition pp = ProductPartition::make({2, 2});
    EntryResult entry;
    entry.pass = true;
    double max_chsh = 0.0;
    for (int t = 0; t < trials; ++t) {
        const std::uint64_t trial_seed = mix_seed(cfg_seed, static_cast<std::uint64_t>(t));
        Prng rng(trial_seed);
        const Eigen::Index rank = 1 + static_cast<Eigen::Index>(rng.integer(4));
        const DensityMatrix rho = random_density(4, rank, rng);
        std::vector<LocalInstrument> a_side, b_side;
        for (int x = 0; x < 2; ++x) {
            a_side.push_back(random_rank1_projective(2, Sector::A, rng));
        }
        for (int y = 0; y < 2; ++y) {
            b_side.push_back(random_rank1_projective(2, Sector::B, rng));
        }

        const Box box = box_from_quantum(rho, a_side, b_side, pp);
        const BoxReport report = check_box_nosignaling(box, tol);
        const double chsh = std::abs(chsh_value(box));
        max_chsh = std::max(max_chsh, chsh);
        entry.max_deviation = std::max(entry.max_deviation, report.max_deviation);
        const bool ok = report.pass && chsh <= kTsirelson + 1e-8;
        if (!ok && entry.pass) {
            entry.pass = false;
            entry.details["failing_seed"] = trial_seed;
            entry.details["failing_trial"] = t;
        }
    }
    entry.details["trials"] = trials;
    entry.details["tol"] = tol;
    entry.details["max_abs_chsh"] = max_chsh;
    return entry;
}

EntryResult search_config(std::pair<int, int> dims, std::uint64_t budget, double tol,
                          bool planted_bug, std::uint64_t cfg_seed) {
    const Eigen::Index dim_a = dims.first;
    const Eigen::Index dim_b = dims.second;
    const ProductPartition pp = ProductPartition::make({dim_a, dim_b});

    Prng rng(cfg_seed);
    const DensityMatrix rho = random_density(pp.total_dim(), pp.total_dim(), rng);
    std::vector<std::vector<Eigen::Index>> singletons;
    for (Eigen::Index k = 0; k < dim_b; ++k) {
        singletons.push_back({k});
    }
    const SumPartition sp_b = SumPartition::from_indices(dim_b, singletons);

    SearchOptions options;
    options.allow_nonphysical = planted_bug;
    const SearchResult result =
        adversarial_signal_search(rho, pp, sp_b, budget, mix_seed(cfg_seed, 1), options);

    EntryResult entry;
    entry.max_deviation = result.best_deviation;
    entry.details["budget"] = budget;
    entry.details["evaluations"] = result.evaluations;
    entry.details["planted_bug"] = planted_bug;
    if (planted_bug) {
        // Sensitivity demonstration: the search must find the planted
        // violation.
        entry.details["detection_threshold"] = 0.1;
        entry.pass = result.best_deviation > 0.1;
    } else {
        entry.details["tol"] = tol;
        entry.pass = result.best_deviation <= tol;
    }
    return entry;
}

}  // namespace

SweepKind sweep_kind_from_name(const std::string& name) {
    if (name == "nosignal") return SweepKind::Nosignal;
    if (name == "gleason") return SweepKind::Gleason;
    if (name == "boxes") return SweepKind::Boxes;
    if (name == "search") return SweepKind::Search;
    throw Error(Errc::UnknownKind, "unknown sweep kind '" + name + "'");
}

std::vector<std::pair<int, int>> parse_dims(const std::string& spec, SweepKind kind) {
    std::vector<std::pair<int, int>> out;
    std::istringstream in(spec);
    std::string token;
    while (std::getline(in, token, ',')) {
        if (token.empty()) {
            continue;
        }
        const auto cross = token.find('x');
        try {
            if (cross == std::string::npos) {
                if (kind != SweepKind::Gleason) {
                    throw Error(Errc::ParseError,
                                "dims for this sweep kind look like '2x3', got '" + token + "'");
                }
                out.emplace_back(std::stoi(token), 0);
            } else {
                out.emplace_back(std::stoi(token.substr(0, cross)),
                                 std::stoi(token.substr(cross + 1)));
            }
        } catch (const std::invalid_argument&) {
            throw Error(Errc::ParseError, "cannot parse dims token '" + token + "'");
        } catch (const std::out_of_range&) {
            throw Error(Errc::ParseError, "dims token out of range '" + token + "'");
        }
    }
    if (out.empty()) {
        throw Error(Errc::ParseError, "empty dims specification");
    }
    return out;
}

namespace detail {

std::vector<EntryResult> execute_sweep(const SweepSpec& spec) {
    const KindDefaults defaults = defaults_for(spec.kind);
    const std::vector<std::pair<int, int>>& dims =
        spec.dims.empty() ? defaults.dims : spec.dims;
    const int trials = spec.trials > 0 ? spec.trials : defaults.trials;
    const double tol = spec.tol > 0.0 ? spec.tol : defaults.tol;

    std::vector<EntryResult> entries;
    entries.reserve(dims.size());
    for (std::size_t cfg = 0; cfg < dims.size(); ++cfg) {
        const std::uint64_t cfg_seed = mix_seed(spec.seed, cfg);
        const auto start = std::chrono::steady_clock::now();
        EntryResult entry;
        switch (spec.kind) {
            case SweepKind::Nosignal:
                entry = nosignal_config(dims[cfg], trials, tol, cfg_seed);
                break;
            case SweepKind::Gleason:
                entry = gleason_config(dims[cfg].first, trials, tol, cfg_seed);
                break;
            case SweepKind::Boxes:
                entry = boxes_config(trials, tol, cfg_seed);
                break;
            case SweepKind::Search:
                entry = search_config(dims[cfg], spec.budget, tol, spec.planted_bug, cfg_seed);
                break;
        }
        const auto stop = std::chrono::steady_clock::now();
        entry.name = config_name(spec.kind, dims[cfg]);
        entry.index = cfg;
        entry.elapsed_ms =
            std::chrono::duration<double, std::milli>(stop - start).count();
        entries.push_back(std::move(entry));
    }
    return entries;
}

}  // namespace detail

RunReport run_sweep(const SweepSpec& spec) {
    RunReport report;
    report.toolkit_version = kVersion;
    report.seed = spec.seed;
    report.entries = detail::execute_sweep(spec);
    report.overall_pass = std::all_of(report.entries.begin(), report.entries.end(),
                                      [](const EntryResult& e) { return e.pass; });
    return report;
}

}  // namespace nsv
