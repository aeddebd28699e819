#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "abn/dataset.hpp"
#include "abn/infotheory.hpp"

namespace abn {

/// Directed augmenting arc between two attributes (class excluded).
struct Arc {
  std::size_t parent = 0;
  std::size_t child = 0;

  bool operator==(const Arc&) const = default;
};

/// Class-augmented network over a schema: the class is an implicit parent of
/// every attribute, and the augmenting arcs give each attribute at most one
/// extra parent. The undirected projection of the arcs must be acyclic and no
/// arc may touch the class attribute; construction throws otherwise.
class NetworkStructure {
 public:
  explicit NetworkStructure(Schema schema, std::vector<Arc> augmenting_arcs = {});

  const Schema& schema() const { return schema_; }
  const std::vector<Arc>& augmenting_arcs() const { return arcs_; }
  std::optional<std::size_t> augmenting_parent(std::size_t attribute) const {
    return parents_.at(attribute);
  }

 private:
  Schema schema_;
  std::vector<Arc> arcs_;
  std::vector<std::optional<std::size_t>> parents_;  // per schema index
};

/// Total parameter count |B|: ||C||-1 for the class node, ||C||(||X||-1) per
/// attribute without an augmenting parent, and ||parent||*||C||*(||X||-1)
/// per attribute with one.
std::int64_t parameter_count(const NetworkStructure& structure);

/// Description length |B| log(N)/2 - N * sum_i I(Xi; parents of Xi), with the
/// parent information split into per-attribute class terms plus one
/// conditional term per augmenting arc. Lower is better.
double mdl_score(const NetworkStructure& structure, const Dataset& dataset,
                 LogBase base = LogBase::natural);

/// Diagnostic variant that drops the structure-independent class-information
/// term: |B| log(N)/2 - N * sum over arcs of I(child; parent | C). Score
/// differences between structures match the full score's differences.
double mdl_score_reduced(const NetworkStructure& structure, const Dataset& dataset,
                         LogBase base = LogBase::natural);

/// Minimum cost at which adding an augmenting arc between attributes i and j
/// does not worsen the score: ||C||(||Xi||-1)(||Xj||-1) log(N) / (2N).
/// Symmetric in i and j.
double edge_threshold(const Schema& schema, std::size_t i, std::size_t j,
                      std::size_t instance_count, LogBase base = LogBase::natural);

/// Exact score decrease from adding the arc in either direction:
/// N * (cost - threshold). Positive exactly when cost exceeds the threshold.
double edge_gain(const Schema& schema, std::size_t i, std::size_t j, double cost,
                 std::size_t instance_count, LogBase base = LogBase::natural);

/// Scored attribute pair: cost I(Xi;Xj|C), the pair's own threshold, and the
/// score gain from adding the arc.
struct EdgeScore {
  std::size_t i = 0;  // schema indices, i < j
  std::size_t j = 0;
  NatValue cost;
  double threshold = 0.0;
  double gain = 0.0;
};

}  // namespace abn
