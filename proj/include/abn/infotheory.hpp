#pragma once

#include <optional>
#include <string_view>

#include "abn/dataset.hpp"

namespace abn {

/// Logarithm base for information quantities and description lengths. Natural
/// log is the artifact-wide default; base 2 exists so callers can check that
/// learned structures do not depend on the base.
enum class LogBase { natural, base_two };

double apply_log(LogBase base, double x);
std::string_view to_string(LogBase base);
std::optional<LogBase> log_base_from(std::string_view name);

/// Non-negative, finite information value in the chosen base's units
/// (nats under LogBase::natural, bits under LogBase::base_two).
struct NatValue {
  double value = 0.0;
};

/// Empirical mutual information of a two-variable count table, with relative
/// frequencies as the probability estimates and the 0 log 0 = 0 convention.
/// The result is clamped to >= 0 against rounding.
NatValue mutual_information(const ContingencyTable& table, LogBase base = LogBase::natural);

/// Empirical conditional mutual information of a three-variable count table
/// whose last axis is the conditioning attribute.
NatValue conditional_mutual_information(const ContingencyTable& table,
                                        LogBase base = LogBase::natural);

}  // namespace abn
