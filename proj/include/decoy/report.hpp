#pragma once
// Stable JSON renderings of regions, strategies and results. Keys keep
// insertion order and state lists are sorted by product index, so equal inputs
// give byte-identical output.

#include <json.hpp>

#include "decoy/allocate.hpp"
#include "decoy/verify.hpp"

namespace decoy::report {

using Json = nlohmann::ordered_json;

// Members (restricted to `mask` if given) with their levels.
Json region(const ProductGame& game, const Region& region, const StateSet* mask = nullptr);
Json state_list(const ProductGame& game, const StateSet& states);
Json strategy(const ProductGame& game, const Strategy& strategy, const StateSet* mask = nullptr);
Json allocation(const AllocationProblem& problem, const AllocationResult& result);
Json theorem1(const Theorem1Report& report);
Json property(const PropertyResult& result);
Json verification(const VerifyReport& report);

}  // namespace decoy::report
