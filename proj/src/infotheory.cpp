#include "abn/infotheory.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

namespace abn {

double apply_log(LogBase base, double x) {
  return base == LogBase::natural ? std::log(x) : std::log2(x);
}

std::string_view to_string(LogBase base) {
  return base == LogBase::natural ? "natural" : "base2";
}

std::optional<LogBase> log_base_from(std::string_view name) {
  if (name == "natural") return LogBase::natural;
  if (name == "base2") return LogBase::base_two;
  return std::nullopt;
}

NatValue mutual_information(const ContingencyTable& table, LogBase base) {
  if (table.arity() != 2)
    throw std::invalid_argument("mutual_information: table must cover exactly two variables");
  if (table.total == 0) throw std::invalid_argument("mutual_information: table has zero total");

  const std::size_t nx = table.extents[0];
  const std::size_t ny = table.extents[1];
  std::vector<double> margin_x(nx, 0.0), margin_y(ny, 0.0);
  for (std::size_t x = 0; x < nx; ++x)
    for (std::size_t y = 0; y < ny; ++y) {
      const double c = static_cast<double>(table.counts[x * ny + y]);
      margin_x[x] += c;
      margin_y[y] += c;
    }

  const double total = static_cast<double>(table.total);
  double sum = 0.0;
  for (std::size_t x = 0; x < nx; ++x)
    for (std::size_t y = 0; y < ny; ++y) {
      const double c = static_cast<double>(table.counts[x * ny + y]);
      if (c == 0.0) continue;  // 0 log 0 = 0
      sum += (c / total) * apply_log(base, c * total / (margin_x[x] * margin_y[y]));
    }
  return NatValue{std::max(0.0, sum)};
}

NatValue conditional_mutual_information(const ContingencyTable& table, LogBase base) {
  if (table.arity() != 3)
    throw std::invalid_argument(
        "conditional_mutual_information: table must cover exactly three variables");
  if (table.total == 0)
    throw std::invalid_argument("conditional_mutual_information: table has zero total");

  const std::size_t nx = table.extents[0];
  const std::size_t ny = table.extents[1];
  const std::size_t nc = table.extents[2];
  std::vector<double> margin_xc(nx * nc, 0.0), margin_yc(ny * nc, 0.0), margin_c(nc, 0.0);
  for (std::size_t x = 0; x < nx; ++x)
    for (std::size_t y = 0; y < ny; ++y)
      for (std::size_t c = 0; c < nc; ++c) {
        const double n = static_cast<double>(table.counts[(x * ny + y) * nc + c]);
        margin_xc[x * nc + c] += n;
        margin_yc[y * nc + c] += n;
        margin_c[c] += n;
      }

  const double total = static_cast<double>(table.total);
  double sum = 0.0;
  for (std::size_t x = 0; x < nx; ++x)
    for (std::size_t y = 0; y < ny; ++y)
      for (std::size_t c = 0; c < nc; ++c) {
        const double n = static_cast<double>(table.counts[(x * ny + y) * nc + c]);
        if (n == 0.0) continue;
        sum += (n / total) *
               apply_log(base, n * margin_c[c] / (margin_xc[x * nc + c] * margin_yc[y * nc + c]));
      }
  return NatValue{std::max(0.0, sum)};
}

}  // namespace abn
