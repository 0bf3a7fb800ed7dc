#include "majdyn/grid.hpp"

#include <stdexcept>
#include <string>

namespace majdyn {

Grid::Grid(int n_cells) : n_(n_cells), h_(1.0 / n_cells) {
  if (n_cells < 2) {
    throw std::invalid_argument("Grid: n_cells must be >= 2, got " +
                                std::to_string(n_cells));
  }
}

}  // namespace majdyn
