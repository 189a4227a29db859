#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

namespace nsv {

// One executed stanza or sweep configuration.
struct EntryResult {
    std::size_t index = 0;
    std::string name;
    bool pass = false;
    double max_deviation = 0.0;
    double elapsed_ms = 0.0;
    nlohmann::json details;  // per-kind payload (verdicts, values, failing seed)
};

struct RunReport {
    std::string toolkit_version;
    std::uint64_t seed = 0;
    std::vector<EntryResult> entries;
    bool overall_pass = true;

    nlohmann::json to_json() const;
    // Plain-text table; floats printed with 17 significant digits.
    std::string to_text() const;
};

// Command-line overrides applied on top of stanza fields.
struct Overrides {
    std::optional<double> tol;
    std::optional<std::uint64_t> seed;
    std::optional<int> trials;
    std::optional<std::uint64_t> budget;
};

// Parses and executes a scenario document. Throws Error with ParseError /
// SchemaError on malformed input.
RunReport run_scenario_file(const std::string& path, const Overrides& overrides = {});
RunReport run_scenario_json(const nlohmann::json& doc, const Overrides& overrides = {});
RunReport run_scenario_text(const std::string& text, const Overrides& overrides = {});

enum class SweepKind { Nosignal, Gleason, Boxes, Search };

SweepKind sweep_kind_from_name(const std::string& name);  // UnknownKind on miss

struct SweepSpec {
    SweepKind kind = SweepKind::Nosignal;
    // Bipartite dims for nosignal/search ("2x3"), plain dims for gleason.
    // Empty selects the kind's default set.
    std::vector<std::pair<int, int>> dims;
    int trials = 0;           // 0 = kind default
    std::uint64_t seed = 7;
    double tol = 0.0;         // 0 = kind default
    std::uint64_t budget = 10000;  // search only
    bool planted_bug = false;      // search only: demonstrate sensitivity
};

std::vector<std::pair<int, int>> parse_dims(const std::string& spec, SweepKind kind);

// Seeded randomized property sweep; reports worst deviation and the
// failing sub-seed on any failure.
RunReport run_sweep(const SweepSpec& spec);

// Bundled scenario documents, keyed by fixture name.
const std::map<std::string, std::string>& bundled_fixtures();

}  // namespace nsv
