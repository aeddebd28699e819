#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "abn/mdl.hpp"
#include "test_support.hpp"

using namespace abn;

namespace {

// 50 distinct-ish attribute rows duplicated under both class values: every
// attribute is exactly independent of the class, with N = 100.
Dataset class_independent_dataset() {
  std::vector<std::vector<std::string>> rows;
  for (int c = 0; c < 2; ++c)
    for (int r = 0; r < 50; ++r)
      rows.push_back({std::to_string(c), std::to_string(r % 2), std::to_string((r / 2) % 2),
                      std::to_string((r / 4) % 2)});
  return ts::make_dataset({"c", "x1", "x2", "x3"}, 0, rows);
}

}  // namespace

TEST_CASE("parameter counts by direct substitution") {
  const Schema binary = ts::digit_schema({2, 2, 2}, 2);

  CHECK(parameter_count(NetworkStructure(binary)) == 7);
  CHECK(parameter_count(NetworkStructure(binary, {{1, 2}})) == 9);

  // ternary child, binary augmenting parent, binary class
  const Schema mixed = ts::digit_schema({2, 3}, 2);
  const NetworkStructure with_arc(mixed, {{1, 2}});
  const NetworkStructure without(mixed);
  CHECK(parameter_count(with_arc) - parameter_count(without) == 8 - 2 * (3 - 1));
  CHECK(parameter_count(with_arc) == 1 + 2 * 1 + 8);
}

TEST_CASE("structure invariants are enforced") {
  const Schema schema = ts::digit_schema({2, 2, 2}, 2);
  CHECK_THROWS_AS(NetworkStructure(schema, {{1, 2}, {3, 2}}), std::invalid_argument);  // two parents
  CHECK_THROWS_AS(NetworkStructure(schema, {{1, 2}, {2, 3}, {3, 1}}), std::invalid_argument);
  CHECK_THROWS_AS(NetworkStructure(schema, {{0, 1}}), std::invalid_argument);  // class arc
  CHECK_THROWS_AS(NetworkStructure(schema, {{1, 0}}), std::invalid_argument);
  CHECK_THROWS_AS(NetworkStructure(schema, {{1, 1}}), std::invalid_argument);  // self loop
  CHECK_THROWS_AS(NetworkStructure(schema, {{1, 9}}), std::invalid_argument);  // out of range
  const NetworkStructure ok(schema, {{1, 2}, {1, 3}});
  CHECK(ok.augmenting_parent(2) == 1);
  CHECK(ok.augmenting_parent(3) == 1);
  CHECK_FALSE(ok.augmenting_parent(1).has_value());
}

TEST_CASE("score of an empty forest on class-independent data is the length term") {
  const Dataset data = class_independent_dataset();
  const NetworkStructure naive(data.schema());
  const double expected = 7.0 * std::log(100.0) / 2.0;
  CHECK(mdl_score(naive, data) == doctest::Approx(expected).epsilon(1e-12));
  CHECK(mdl_score(naive, data) == doctest::Approx(16.1181).epsilon(1e-4));
}

TEST_CASE("score equals the per-attribute decomposition with composite parents") {
  const Dataset frozen = class_independent_dataset();
  CHECK(ts::near(mdl_score(NetworkStructure(frozen.schema(), {{1, 2}}), frozen),
                 ts::mdl_by_definition(NetworkStructure(frozen.schema(), {{1, 2}}), frozen), 1e-9));

  ts::Rng rng(1001);
  for (int round = 0; round < 30; ++round) {
    const Dataset data = ts::random_abn_dataset(rng, rng.range(2, 4), rng.range(20, 200), {2, 3}, 2);
    const NetworkStructure structure = ts::random_forest_structure(rng, data.schema());
    CHECK(ts::near(mdl_score(structure, data), ts::mdl_by_definition(structure, data), 1e-9));
  }
}

TEST_CASE("score differences match reduced-score differences") {
  ts::Rng rng(1002);
  for (int round = 0; round < 20; ++round) {
    const Dataset data = ts::random_abn_dataset(rng, 4, rng.range(30, 150), {2, 3}, rng.range(2, 3));
    const NetworkStructure a = ts::random_forest_structure(rng, data.schema());
    const NetworkStructure b = ts::random_forest_structure(rng, data.schema());
    const double full_delta = mdl_score(a, data) - mdl_score(b, data);
    const double reduced_delta = mdl_score_reduced(a, data) - mdl_score_reduced(b, data);
    CHECK(ts::near(full_delta, reduced_delta, 1e-9));
  }
}

TEST_CASE("edge thresholds by direct evaluation") {
  const Schema binary = ts::digit_schema({2, 2}, 2);
  CHECK(edge_threshold(binary, 1, 2, 100) == doctest::Approx(0.0460517).epsilon(1e-5));
  CHECK(edge_threshold(binary, 1, 2, 100) ==
        doctest::Approx(std::log(100.0) / 100.0).epsilon(1e-12));
  CHECK(edge_threshold(binary, 1, 2, 100) == edge_threshold(binary, 2, 1, 100));

  const Schema ternary = ts::digit_schema({3, 3}, 2);
  CHECK(edge_threshold(ternary, 1, 2, 1000) == doctest::Approx(0.0276310).epsilon(1e-5));

  // a cardinality-1 attribute zeroes the penalty factor
  const Schema degenerate({{"c", {"0", "1"}}, {"x1", {"only"}}, {"x2", {"0", "1"}}}, 0);
  CHECK(edge_threshold(degenerate, 1, 2, 50) == 0.0);
}

TEST_CASE("edge threshold and gain reject bad arguments") {
  const Schema schema = ts::digit_schema({2, 2}, 2);
  CHECK_THROWS_AS(edge_threshold(schema, 0, 1, 100), std::invalid_argument);  // class endpoint
  CHECK_THROWS_AS(edge_threshold(schema, 1, 0, 100), std::invalid_argument);
  CHECK_THROWS_AS(edge_threshold(schema, 1, 1, 100), std::invalid_argument);
  CHECK_THROWS_AS(edge_threshold(schema, 1, 5, 100), std::invalid_argument);
  CHECK_THROWS_AS(edge_threshold(schema, 1, 2, 0), std::invalid_argument);
  CHECK_THROWS_AS(edge_gain(schema, 0, 1, 0.5, 100), std::invalid_argument);
}

TEST_CASE("edge gain against the threshold") {
  const Schema binary = ts::digit_schema({2, 2}, 2);

  // cost exactly at the threshold is gain zero, and the equivalence is exact
  const double threshold = edge_threshold(binary, 1, 2, 100);
  CHECK(edge_gain(binary, 1, 2, threshold, 100) == 0.0);
  CHECK(edge_gain(binary, 1, 2, std::nextafter(threshold, 1.0), 100) > 0.0);
  CHECK(edge_gain(binary, 1, 2, std::nextafter(threshold, 0.0), 100) < 0.0);

  CHECK(edge_gain(binary, 1, 2, 0.1, 100) == doctest::Approx(5.39483).epsilon(1e-5));
  CHECK(edge_gain(binary, 1, 2, 0.0, 100) ==
        doctest::Approx(-2.0 * std::log(100.0) / 2.0).epsilon(1e-12));
}

TEST_CASE("adding an arc changes the score by exactly minus its gain") {
  ts::Rng rng(1003);
  for (int round = 0; round < 30; ++round) {
    const Dataset data = ts::random_abn_dataset(rng, 4, rng.range(30, 200), {2, 3}, 2);
    const Schema& schema = data.schema();
    const NetworkStructure base(schema);

    const std::vector<std::size_t> attrs = ts::non_class_attributes(schema);
    const std::size_t i = attrs[rng.below(attrs.size())];
    std::size_t j = attrs[rng.below(attrs.size())];
    while (j == i) j = attrs[rng.below(attrs.size())];

    const double cost =
        conditional_mutual_information(joint_counts(data, {std::min(i, j), std::max(i, j), 0}))
            .value;
    const double gain = edge_gain(schema, i, j, cost, data.row_count());
    const double delta = mdl_score(NetworkStructure(schema, {{i, j}}), data) - mdl_score(base, data);
    CHECK(ts::near(delta, -gain, 1e-9));
  }
}

TEST_CASE("arc direction never changes the score") {
  ts::Rng rng(1004);
  for (int round = 0; round < 30; ++round) {
    const Dataset data = ts::random_abn_dataset(rng, 5, rng.range(30, 120), {2, 3}, rng.range(2, 3));
    const Schema& schema = data.schema();

    // base structure leaving two attributes untouched, so both orientations stay legal
    const std::vector<std::size_t> attrs = ts::non_class_attributes(schema);
    const std::size_t a = attrs[0], b = attrs[1];
    std::vector<Arc> base_arcs;
    if (rng.chance(0.5)) base_arcs.push_back({attrs[2], attrs[3]});

    std::vector<Arc> forward = base_arcs, backward = base_arcs;
    forward.push_back({a, b});
    backward.push_back({b, a});
    CHECK(ts::near(mdl_score(NetworkStructure(schema, forward), data),
                   mdl_score(NetworkStructure(schema, backward), data), 1e-9));
  }
}

TEST_CASE("dropping a below-threshold arc strictly improves the score") {
  ts::Rng rng(1005);
  int exercised = 0;
  for (int round = 0; round < 40; ++round) {
    // iid cells keep most pair costs under their thresholds
    const Dataset data = ts::random_cells_dataset(rng, {2, 2, 3, 2}, 2, rng.range(80, 300));
    const Schema& schema = data.schema();
    const std::vector<std::size_t> attrs = ts::non_class_attributes(schema);
    for (std::size_t k = 0; k + 1 < attrs.size(); k += 2) {
      const std::size_t i = attrs[k], j = attrs[k + 1];
      const double cost = conditional_mutual_information(joint_counts(data, {i, j, 0})).value;
      if (cost >= edge_threshold(schema, i, j, data.row_count())) continue;
      const double with_arc = mdl_score(NetworkStructure(schema, {{i, j}}), data);
      const double without = mdl_score(NetworkStructure(schema), data);
      CHECK(without < with_arc);
      ++exercised;
    }
  }
  CHECK(exercised > 20);
}

TEST_CASE("score ranking is invariant under the log base") {
  ts::Rng rng(1006);
  for (int round = 0; round < 30; ++round) {
    const Dataset data = ts::random_abn_dataset(rng, 4, rng.range(40, 150), {2, 3}, 2);
    const NetworkStructure a = ts::random_forest_structure(rng, data.schema());
    const NetworkStructure b = ts::random_forest_structure(rng, data.schema());
    const double natural_delta = mdl_score(a, data) - mdl_score(b, data);
    const double bits_delta =
        mdl_score(a, data, LogBase::base_two) - mdl_score(b, data, LogBase::base_two);
    if (std::abs(natural_delta) < 1e-12) continue;  // tied structures
    CHECK(natural_delta * bits_delta > 0.0);
  }
}

TEST_CASE("score requires matching schemas") {
  const Dataset data = class_independent_dataset();
  const Schema other = ts::digit_schema({2, 3, 2}, 2);
  CHECK_THROWS_AS(mdl_score(NetworkStructure(other), data), std::invalid_argument);
  CHECK_THROWS_AS(mdl_score_reduced(NetworkStructure(other), data), std::invalid_argument);
}
