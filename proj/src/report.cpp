#include <cstdio>
#include <sstream>

#include "nsv/scenario.hpp"

namespace nsv {

namespace {

std::string g17(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

}  // namespace

nlohmann::json RunReport::to_json() const {
    nlohmann::json entries_json = nlohmann::json::array();
    for (const EntryResult& entry : entries) {
        entries_json.push_back({
            {"index", entry.index},
            {"name", entry.name},
            {"verdict", entry.pass ? "pass" : "fail"},
            {"max_deviation", entry.max_deviation},
            {"elapsed_ms", entry.elapsed_ms},
            {"details", entry.details},
        });
    }
    return {
        {"toolkit_version", toolkit_version},
        {"seed", seed},
        {"overall", overall_pass ? "pass" : "fail"},
        {"entries", entries_json},
    };
}

std::string RunReport::to_text() const {
    std::ostringstream os;
    os << "verification report\n";
    os << "toolkit_version " << toolkit_version << "\n";
    os << "seed " << seed << "\n";
    for (const EntryResult& entry : entries) {
        os << "[" << entry.index << "] " << entry.name
           << " verdict=" << (entry.pass ? "pass" : "fail")
           << " max_deviation=" << g17(entry.max_deviation)
           << " elapsed_ms=" << g17(entry.elapsed_ms) << "\n";
        if (!entry.pass && entry.details.contains("failing_seed")) {
            os << "    failing_seed "
               << entry.details["failing_seed"].get<std::uint64_t>() << "\n";
        }
    }
    os << "overall " << (overall_pass ? "pass" : "fail") << "\n";
    return os.str();
}

}  // namespace nsv
