#include "fvbench/grid.hpp"

#include <cmath>

#include <sstream>
#include <stdexcept>

namespace fvbench {

CartesianGrid::CartesianGrid(int ndim, std::array<int, 3> cells, std::array<double, 3> lo,
                             std::array<double, 3> hi, int ghost)
    : ndim_(ndim), cells_(cells), lo_(lo), hi_(hi), ghost_(ghost) {
  if (ndim < 1 || ndim > 3) throw std::invalid_argument("grid: ndim must be 1, 2 or 3");
  if (ghost < 0) throw std::invalid_argument("grid: negative ghost width");
  for (int d = 0; d < 3; ++d) {
    if (d >= ndim) {
      cells_[d] = 1;
      continue;
    }
    if (cells_[d] < 1) throw std::invalid_argument("grid: cell count must be positive");
    if (!(hi_[d] > lo_[d])) throw std::invalid_argument("grid: hi must exceed lo");
  }
}

CartesianGrid CartesianGrid::uniform(int ndim, int n, double lo, double hi, int ghost) {
  return CartesianGrid(ndim, {n, n, n}, {lo, lo, lo}, {hi, hi, hi}, ghost);
}

double CartesianGrid::cell_volume() const {
  double v = 1.0;
  for (int d = 0; d < ndim_; ++d) v *= dx(d);
  return v;
}

std::size_t CartesianGrid::interior_count() const {
  return static_cast<std::size_t>(cells_[0]) * cells_[1] * cells_[2];
}

std::size_t CartesianGrid::padded_count() const {
  return static_cast<std::size_t>(padded(0)) * padded(1) * padded(2);
}

bool CartesianGrid::same_shape(const CartesianGrid& other) const {
  if (ndim_ != other.ndim_) return false;
  for (int d = 0; d < 3; ++d)
    if (cells_[d] != other.cells_[d]) return false;
  return true;
}

ConservedField::ConservedField(const CartesianGrid& grid)
    : grid_(grid),
      px_(grid.padded(0)),
      py_(grid.padded(1)),
      gx_(grid.ghost(0)),
      gy_(grid.ghost(1)),
      gz_(grid.ghost(2)),
      cells_(grid.padded_count()),
      data_(static_cast<std::size_t>(grid.ndim() + 2) * grid.padded_count(), 0.0) {}

ConservedState ConservedField::state(std::size_t idx) const {
  ConservedState s;
  const int nd = grid_.ndim();
  s.density = data_[idx];
  for (int d = 0; d < nd; ++d) s.momentum[d] = data_[(1 + d) * cells_ + idx];
  s.total_energy = data_[(nd + 1) * cells_ + idx];
  return s;
}

void ConservedField::set_state(std::size_t idx, const ConservedState& s) {
  const int nd = grid_.ndim();
  data_[idx] = s.density;
  for (int d = 0; d < nd; ++d) data_[(1 + d) * cells_ + idx] = s.momentum[d];
  data_[(nd + 1) * cells_ + idx] = s.total_energy;
}

double ConservedField::integral(int c) const {
  // Neumaier summation: conservation checks compare integrals to ~1e-13.
  double sum = 0.0, comp = 0.0;
  const double* q = data_.data() + c * cells_;
  for_each_interior([&](int i, int j, int k) {
    const double v = q[index(i, j, k)];
    const double t = sum + v;
    comp += std::abs(sum) >= std::abs(v) ? (sum - t) + v : (v - t) + sum;
    sum = t;
  });
  return (sum + comp) * grid_.cell_volume();
}

void ConservedField::check_interior(const GasModel& gas, const char* context) const {
  for (int k = 0; k < grid_.cells(2); ++k)
    for (int j = 0; j < grid_.cells(1); ++j)
      for (int i = 0; i < grid_.cells(0); ++i) {
        try {
          (void)primitive_from_conserved(state(i, j, k), gas);
        } catch (const StateError& e) {
          std::ostringstream os;
          os << context << ": cell (" << i << ", " << j << ", " << k << ") at t=" << time << ": " << e.what();
          throw StateError(os.str());
        }
      }
}

}  // namespace fvbench
