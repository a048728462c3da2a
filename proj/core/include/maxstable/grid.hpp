#pragma once

#include <functional>
#include <iosfwd>
#include <map>
#include <span>
#include <string>
#include <vector>

namespace maxstable {

// Per-dimension evaluation points for tabulating functions on a product grid.
struct GridAxes {
  std::vector<std::vector<double>> axes;

  int dimension() const { return static_cast<int>(axes.size()); }
  std::size_t node_count() const;
};

std::vector<double> linspace(double a, double b, int count);

// count^d grid on [inset, 1-inset]^d. Several copula densities blow up or
// vanish at the cube boundary, so grids keep a small margin by default.
GridAxes inset_unit_grid(int d, int count, double inset = 5e-3);

// count^d grid on [x_eps, -inset]^d in the negative orthant.
GridAxes negative_box_grid(int d, double x_eps, int count,
                           double inset = 5e-3);

// Visits every node in row-major order (last axis fastest) with its flat
// index and coordinates.
void for_each_node(
    const GridAxes& grid,
    const std::function<void(std::size_t flat, std::span<const double> point)>&
        visit);

// Tabulated scalar field over a product grid, with free-form metadata.
// Serializes to CSV (one row per node: coordinates then value) and JSON
// (axes + row-major values + metadata).
struct DensityGrid {
  GridAxes grid;
  std::vector<double> values;  // row-major, grid.node_count() entries
  std::map<std::string, std::string> metadata;

  void validate() const;  // dimensions consistent, values finite
  void write_csv(std::ostream& out) const;
  std::string to_json() const;
};

DensityGrid tabulate(const GridAxes& grid,
                     const std::function<double(std::span<const double>)>& f,
                     std::map<std::string, std::string> metadata = {});

}  // namespace maxstable
