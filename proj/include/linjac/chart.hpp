#pragma once

#include <cstddef>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace linjac {

/// Role of a coordinate on a patch.  Fiber coordinates are the linear
/// functions mu_j on a dual bundle; a time coordinate t carries the
/// exponential symbol s = exp(t) in coefficient functions.
enum class Role { base, fiber, time };

std::string_view role_name(Role r);

struct Coordinate {
  std::string name;
  Role role = Role::base;

  friend bool operator==(const Coordinate&, const Coordinate&) = default;
};

class Chart;
using ChartPtr = std::shared_ptr<const Chart>;

/// Ordered coordinate list of a patch.  The order is fixed at construction
/// and drives the canonical ordering of every term built on the chart.
class Chart {
 public:
  /// Throws InvalidInput on duplicate names, empty names or more than one
  /// time coordinate.
  explicit Chart(std::vector<Coordinate> coords);

  static ChartPtr make(std::vector<Coordinate> coords);
  static ChartPtr empty();

  std::size_t dim() const { return coords_.size(); }
  const Coordinate& operator[](std::size_t i) const { return coords_[i]; }
  const std::vector<Coordinate>& coords() const { return coords_; }

  std::optional<std::size_t> find(std::string_view name) const;
  /// Index of `name`; throws UnknownVariable.
  std::size_t index_of(std::string_view name) const;
  std::optional<std::size_t> time_index() const { return time_; }

  std::vector<std::size_t> indices_with(Role role) const;
  bool has_role(Role role) const { return !indices_with(role).empty(); }

  friend bool operator==(const Chart& a, const Chart& b) { return a.coords_ == b.coords_; }

 private:
  std::vector<Coordinate> coords_;
  std::optional<std::size_t> time_;
};

/// Identity or structural equality.
bool same_chart(const ChartPtr& a, const ChartPtr& b);

/// `chart` with `extra` appended.
ChartPtr extend_chart(const ChartPtr& chart, std::vector<Coordinate> extra);

/// `chart` with every coordinate of role `from` relabelled as `to`.
ChartPtr relabel_roles(const ChartPtr& chart, Role from, Role to);

/// Sub-chart of the coordinates whose role is not `dropped`, order kept.
ChartPtr drop_role(const ChartPtr& chart, Role dropped);

}  // namespace linjac
