#pragma once

#include <array>

#include "dengue/types.hpp"

namespace dengue {

// Compartment values in the fixed ordering
// (S, I1, I2, R1, R2, S1, S2, I12, I21, R, U, V1, V2, V12).
// The totals N and M are always recomputed from the components.
struct State {
  std::array<double, idx::count> x{};

  double& operator[](int i) { return x[i]; }
  double operator[](int i) const { return x[i]; }

  double human_total() const;   // N
  double vector_total() const;  // M

  Vec14 to_vec() const;
  static State from_vec(const Vec14& v);

  // Zero out tiny negative round-off; magnitudes at or above
  // eps_scale * max(N, M) raise ValidationError instead of being masked.
  void clamp_small_negatives(double eps_scale = 1e-12);

  // Nonnegative components, N > 0, M > 0.
  void validate() const;

  bool operator==(const State&) const = default;
};

// Time derivative of a State; same ordering and per-month units.
struct Derivative {
  std::array<double, idx::count> d{};

  double& operator[](int i) { return d[i]; }
  double operator[](int i) const { return d[i]; }

  double human_sum() const;
  double vector_sum() const;
  double max_abs() const;
  Vec14 to_vec() const;
};

// Relabel the strains: I1<->I2, R1<->R2, S1<->S2, I12<->I21, V1<->V2;
// S, R, U, V12 are fixed.
State strain_swap(const State& s);
Derivative strain_swap(const Derivative& d);
Vec14 strain_swap(const Vec14& v);

}  // namespace dengue
