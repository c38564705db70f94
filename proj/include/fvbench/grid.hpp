// Uniform Cartesian grid with ghost layers and the conserved-variable field.
#pragma once

#include <array>
#include <cstddef>
#include <span>
#include <vector>

#include "fvbench/core.hpp"

namespace fvbench {

enum class BoundaryKind {
  Periodic,
  /// Fixed state on the low side, zero-gradient extrapolation on the high side.
  InflowOutflow,
};

struct BoundarySpec {
  BoundaryKind kind = BoundaryKind::Periodic;
  ConservedState inflow_state{};
};

/// Widest stencil half-width among supported schemes (WENO-Z7).
inline constexpr int kMaxStencilHalfWidth = 4;

class CartesianGrid {
 public:
  CartesianGrid() = default;
  CartesianGrid(int ndim, std::array<int, 3> cells, std::array<double, 3> lo, std::array<double, 3> hi,
                int ghost = kMaxStencilHalfWidth);

  /// Cubic/square/line grid with n cells per active dimension on [lo, hi)^ndim.
  static CartesianGrid uniform(int ndim, int n, double lo, double hi, int ghost = kMaxStencilHalfWidth);

  int ndim() const { return ndim_; }
  int cells(int d) const { return cells_[d]; }
  int ghost() const { return ghost_; }
  /// Ghost width along d (zero for inactive dimensions).
  int ghost(int d) const { return d < ndim_ ? ghost_ : 0; }
  int padded(int d) const { return cells_[d] + 2 * ghost(d); }
  double lo(int d) const { return lo_[d]; }
  double hi(int d) const { return hi_[d]; }
  double dx(int d) const { return (hi_[d] - lo_[d]) / cells_[d]; }
  double center(int d, int i) const { return lo_[d] + (i + 0.5) * dx(d); }
  double cell_volume() const;
  std::size_t interior_count() const;
  std::size_t padded_count() const;

  const BoundarySpec& boundary(int d) const { return boundary_[d]; }
  void set_boundary(int d, BoundarySpec spec) { boundary_[d] = spec; }

  bool same_shape(const CartesianGrid& other) const;

 private:
  int ndim_ = 1;
  std::array<int, 3> cells_{1, 1, 1};
  std::array<double, 3> lo_{0.0, 0.0, 0.0};
  std::array<double, 3> hi_{1.0, 1.0, 1.0};
  int ghost_ = kMaxStencilHalfWidth;
  std::array<BoundarySpec, 3> boundary_{};
};

/// Cell-averaged conserved variables, stored component-major with ghost
/// padding. Components: density, ndim momentum components, total energy.
class ConservedField {
 public:
  ConservedField() = default;
  explicit ConservedField(const CartesianGrid& grid);

  const CartesianGrid& grid() const { return grid_; }
  CartesianGrid& grid() { return grid_; }
  int ncomp() const { return grid_.ndim() + 2; }
  int energy_index() const { return grid_.ndim() + 1; }

  double time = 0.0;

  /// Linear padded index of cell (i, j, k); indices may reach into ghosts.
  std::size_t index(int i, int j = 0, int k = 0) const {
    return (static_cast<std::size_t>(k + gz_) * py_ + static_cast<std::size_t>(j + gy_)) * px_ +
           static_cast<std::size_t>(i + gx_);
  }
  std::size_t stride(int d) const { return d == 0 ? 1 : (d == 1 ? px_ : px_ * py_); }

  std::span<double> component(int c) { return {data_.data() + c * cells_, cells_}; }
  std::span<const double> component(int c) const { return {data_.data() + c * cells_, cells_}; }
  double& at(int c, int i, int j = 0, int k = 0) { return data_[c * cells_ + index(i, j, k)]; }
  double at(int c, int i, int j = 0, int k = 0) const { return data_[c * cells_ + index(i, j, k)]; }

  ConservedState state(std::size_t idx) const;
  void set_state(std::size_t idx, const ConservedState& s);
  ConservedState state(int i, int j, int k) const { return state(index(i, j, k)); }
  void set_state(int i, int j, int k, const ConservedState& s) { set_state(index(i, j, k), s); }

  std::span<double> raw() { return data_; }
  std::span<const double> raw() const { return data_; }

  /// Sum over interior cells of component c times the cell volume.
  double integral(int c) const;

  /// Visits every interior cell as f(i, j, k).
  template <class F>
  void for_each_interior(F&& f) const {
    for (int k = 0; k < grid_.cells(2); ++k)
      for (int j = 0; j < grid_.cells(1); ++j)
        for (int i = 0; i < grid_.cells(0); ++i) f(i, j, k);
  }

  /// Throws StateError naming the first interior cell whose state is invalid.
  void check_interior(const GasModel& gas, const char* context) const;

 private:
  CartesianGrid grid_;
  std::size_t px_ = 1, py_ = 1;
  int gx_ = 0, gy_ = 0, gz_ = 0;
  std::size_t cells_ = 0;
  std::vector<double> data_;
};

}  // namespace fvbench
