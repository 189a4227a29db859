#pragma once

#include <vector>

#include "nsv/scenario.hpp"

namespace nsv::detail {

// One result entry per dims configuration; shared by the sweep subcommand
// and sweep stanzas inside scenario files.
std::vector<EntryResult> execute_sweep(const SweepSpec& spec);

}  // namespace nsv::detail
