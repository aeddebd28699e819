#pragma once

#include <cstdint>
#include <functional>

#include "abn/learner.hpp"

namespace abn {

/// Default enumeration cap; ~3.7e4 labeled forests at 7 attributes keeps
/// exhaustive verification sub-second.
inline constexpr std::size_t kDefaultEnumerationCap = 7;

/// Two structures at most this far apart in score are treated as tied.
inline constexpr double kMdlTieTolerance = 1e-9;

/// Streams every acyclic undirected edge set on attribute_count labeled
/// vertices exactly once (the empty set first). Throws when attribute_count
/// exceeds the cap; a cap above the default emits a runtime warning.
void enumerate_augmenting_forests(
    std::size_t attribute_count,
    const std::function<void(std::span<const UndirectedEdge>)>& visit,
    std::size_t cap = kDefaultEnumerationCap);

struct OptimalityReport {
  double optimal_mdl = 0.0;
  std::vector<std::vector<UndirectedEdge>> optimal_arc_sets;  // all optima within the tie tolerance
  double learner_mdl = 0.0;  // gain-weight learner
  bool learner_matches = false;
  double cost_mode_mdl = 0.0;  // cost-weight learner
  bool cost_mode_matches = false;
  std::uint64_t structures_examined = 0;
};

/// Scores every legal augmenting forest (lowest-index rooting; direction does
/// not affect the score) and compares the exhaustive optimum against both
/// learner weight modes.
OptimalityReport brute_force_optimal(const Dataset& dataset, LogBase base = LogBase::natural,
                                     std::size_t max_attributes = kDefaultEnumerationCap);

}  // namespace abn
