#include "linjac/chart.hpp"

#include <unordered_set>

#include "linjac/error.hpp"

namespace linjac {

std::string_view role_name(Role r) {
  switch (r) {
    case Role::base: return "base";
    case Role::fiber: return "fiber";
    case Role::time: return "time";
  }
  return "?";
}

Chart::Chart(std::vector<Coordinate> coords) : coords_(std::move(coords)) {
  std::unordered_set<std::string> seen;
  for (std::size_t i = 0; i < coords_.size(); ++i) {
    const auto& c = coords_[i];
    if (c.name.empty()) throw InvalidInput("chart: empty coordinate name");
    if (!seen.insert(c.name).second) throw InvalidInput("chart: duplicate coordinate '" + c.name + "'");
    if (c.role == Role::time) {
      if (time_) throw InvalidInput("chart: more than one time coordinate");
      time_ = i;
    }
  }
}

ChartPtr Chart::make(std::vector<Coordinate> coords) {
  return std::make_shared<const Chart>(std::move(coords));
}

ChartPtr Chart::empty() {
  static const ChartPtr kEmpty = make({});
  return kEmpty;
}

std::optional<std::size_t> Chart::find(std::string_view name) const {
  for (std::size_t i = 0; i < coords_.size(); ++i)
    if (coords_[i].name == name) return i;
  return std::nullopt;
}

std::size_t Chart::index_of(std::string_view name) const {
  if (auto i = find(name)) return *i;
  throw UnknownVariable("unknown coordinate '" + std::string(name) + "'");
}

std::vector<std::size_t> Chart::indices_with(Role role) const {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < coords_.size(); ++i)
    if (coords_[i].role == role) out.push_back(i);
  return out;
}

bool same_chart(const ChartPtr& a, const ChartPtr& b) {
  return a == b || (a && b && *a == *b);
}

ChartPtr extend_chart(const ChartPtr& chart, std::vector<Coordinate> extra) {
  auto coords = chart->coords();
  coords.insert(coords.end(), extra.begin(), extra.end());
  return Chart::make(std::move(coords));
}

ChartPtr relabel_roles(const ChartPtr& chart, Role from, Role to) {
  auto coords = chart->coords();
  for (auto& c : coords)
    if (c.role == from) c.role = to;
  return Chart::make(std::move(coords));
}

ChartPtr drop_role(const ChartPtr& chart, Role dropped) {
  std::vector<Coordinate> coords;
  for (const auto& c : chart->coords())
    if (c.role != dropped) coords.push_back(c);
  return Chart::make(std::move(coords));
}

}  // namespace linjac
