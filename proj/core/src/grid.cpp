#include "maxstable/grid.hpp"

#include <cmath>
#include <ostream>

#include <json.hpp>

#include "maxstable/common.hpp"

namespace maxstable {

std::size_t GridAxes::node_count() const {
  std::size_t total = 1;
  for (const auto& axis : axes) total *= axis.size();
  return axes.empty() ? 0 : total;
}

std::vector<double> linspace(double a, double b, int count) {
  require(count >= 2, "linspace: need at least 2 points");
  require(a < b, "linspace: reversed interval");
  std::vector<double> out(static_cast<std::size_t>(count));
  for (int i = 0; i < count; ++i)
    out[static_cast<std::size_t>(i)] = a + (b - a) * i / (count - 1);
  return out;
}

GridAxes inset_unit_grid(int d, int count, double inset) {
  require(d >= 1 && d <= kDefaultMaxDimension, "inset_unit_grid: bad dimension");
  require(inset > 0.0 && inset < 0.5, "inset_unit_grid: inset in (0, 0.5)");
  GridAxes grid;
  grid.axes.assign(static_cast<std::size_t>(d),
                   linspace(inset, 1.0 - inset, count));
  return grid;
}

GridAxes negative_box_grid(int d, double x_eps, int count, double inset) {
  require(d >= 1 && d <= kDefaultMaxDimension,
          "negative_box_grid: bad dimension");
  require(x_eps < -inset, "negative_box_grid: box must reach below -inset");
  GridAxes grid;
  grid.axes.assign(static_cast<std::size_t>(d),
                   linspace(x_eps, -inset, count));
  return grid;
}

void for_each_node(
    const GridAxes& grid,
    const std::function<void(std::size_t, std::span<const double>)>& visit) {
  const int d = grid.dimension();
  require(d >= 1, "for_each_node: empty grid");
  const std::size_t total = grid.node_count();
  std::vector<double> point(static_cast<std::size_t>(d));
  for (std::size_t flat = 0; flat < total; ++flat) {
    std::size_t rem = flat;
    for (int j = d - 1; j >= 0; --j) {
      const auto& axis = grid.axes[static_cast<std::size_t>(j)];
      point[static_cast<std::size_t>(j)] = axis[rem % axis.size()];
      rem /= axis.size();
    }
    visit(flat, point);
  }
}

void DensityGrid::validate() const {
  require(grid.dimension() >= 1, "DensityGrid: empty axes");
  require(values.size() == grid.node_count(),
          "DensityGrid: value count does not match the grid");
  for (double v : values)
    if (!std::isfinite(v)) throw NumericError("DensityGrid: non-finite value");
}

void DensityGrid::write_csv(std::ostream& out) const {
  validate();
  const int d = grid.dimension();
  for (int j = 0; j < d; ++j) out << 'x' << (j + 1) << ',';
  out << "value\n";
  for_each_node(grid, [&](std::size_t flat, std::span<const double> point) {
    for (double c : point) out << format_double(c) << ',';
    out << format_double(values[flat]) << '\n';
  });
}

std::string DensityGrid::to_json() const {
  validate();
  nlohmann::json j;
  j["axes"] = grid.axes;
  j["values"] = values;
  j["metadata"] = metadata;
  return j.dump(2);
}

DensityGrid tabulate(const GridAxes& grid,
                     const std::function<double(std::span<const double>)>& f,
                     std::map<std::string, std::string> metadata) {
  DensityGrid out;
  out.grid = grid;
  out.values.resize(grid.node_count());
  out.metadata = std::move(metadata);
  for_each_node(grid, [&](std::size_t flat, std::span<const double> point) {
    out.values[flat] = f(point);
  });
  out.validate();
  return out;
}

}  // namespace maxstable
