#include "dengue/state.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace dengue {

double State::human_total() const {
  double n = 0.0;
  for (int i = 0; i < idx::human_count; ++i) n += x[i];
  return n;
}

double State::vector_total() const {
  double m = 0.0;
  for (int i = idx::human_count; i < idx::count; ++i) m += x[i];
  return m;
}

Vec14 State::to_vec() const {
  Vec14 v;
  for (int i = 0; i < idx::count; ++i) v(i) = x[i];
  return v;
}

State State::from_vec(const Vec14& v) {
  State s;
  for (int i = 0; i < idx::count; ++i) s.x[i] = v(i);
  return s;
}

void State::clamp_small_negatives(double eps_scale) {
  const double scale = std::max(human_total(), vector_total());
  const double thresh = eps_scale * scale;
  for (int i = 0; i < idx::count; ++i) {
    if (x[i] < 0.0) {
      if (-x[i] < thresh) {
        x[i] = 0.0;
      } else {
        throw ValidationError(std::string("component ") + kComponentNames[i] +
                              " is negative beyond round-off: " +
                              std::to_string(x[i]));
      }
    }
  }
}

void State::validate() const {
  for (int i = 0; i < idx::count; ++i) {
    if (!std::isfinite(x[i])) {
      throw ValidationError(std::string("component ") + kComponentNames[i] +
                            " is not finite");
    }
    if (x[i] < 0.0) {
      throw ValidationError(std::string("component ") + kComponentNames[i] +
                            " is negative: " + std::to_string(x[i]));
    }
  }
  if (human_total() <= 0.0) throw ValidationError("human total N must be > 0");
  if (vector_total() <= 0.0) {
    throw ValidationError("vector total M must be > 0");
  }
}

double Derivative::human_sum() const {
  double n = 0.0;
  for (int i = 0; i < idx::human_count; ++i) n += d[i];
  return n;
}

double Derivative::vector_sum() const {
  double m = 0.0;
  for (int i = idx::human_count; i < idx::count; ++i) m += d[i];
  return m;
}

double Derivative::max_abs() const {
  double v = 0.0;
  for (int i = 0; i < idx::count; ++i) v = std::max(v, std::abs(d[i]));
  return v;
}

Vec14 Derivative::to_vec() const {
  Vec14 v;
  for (int i = 0; i < idx::count; ++i) v(i) = d[i];
  return v;
}

namespace {

template <typename Array>
void swap_components(Array& a) {
  std::swap(a[idx::I1], a[idx::I2]);
  std::swap(a[idx::R1], a[idx::R2]);
  std::swap(a[idx::S1], a[idx::S2]);
  std::swap(a[idx::I12], a[idx::I21]);
  std::swap(a[idx::V1], a[idx::V2]);
}

}  // namespace

State strain_swap(const State& s) {
  State out = s;
  swap_components(out.x);
  return out;
}

Derivative strain_swap(const Derivative& d) {
  Derivative out = d;
  swap_components(out.d);
  return out;
}

Vec14 strain_swap(const Vec14& v) {
  Vec14 out = v;
  std::swap(out(idx::I1), out(idx::I2));
  std::swap(out(idx::R1), out(idx::R2));
  std::swap(out(idx::S1), out(idx::S2));
  std::swap(out(idx::I12), out(idx::I21));
  std::swap(out(idx::V1), out(idx::V2));
  return out;
}

}  // namespace dengue
