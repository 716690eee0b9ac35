#pragma once

#include <array>
#include <string_view>

#include "dengue/types.hpp"

namespace dengue {

// The ten model rates. Units are months throughout: recruitment in
// persons (or vectors) per month, every other rate in 1/month.
// Defaults are the baseline used by the shipped scenarios.
struct ParameterSet {
  double lambda_N = 12.8;  // human recruitment
  double lambda_M = 1e5;   // vector recruitment
  double mu = 0.00128;     // human natural death rate
  double kappa = 1.0;      // vector death rate
  double alpha = 0.39;     // primary human infection rate
  double sigma = 0.45;     // secondary human infection rate
  double beta = 6.0;       // vector infection rate
  double gamma = 2.0;      // human recovery rate
  double nu = 0.111;       // cross-immunity loss rate
  double delta = 0.01;     // disease-induced mortality (secondary infection)

  // Derived rate aliases used by the linearization.
  double gamma_bar() const { return gamma + mu; }
  double nu_bar() const { return nu + mu; }
  double delta_bar() const { return gamma + mu + delta; }
  double alpha_bar() const { return alpha + mu; }

  // Throws ValidationError on a violated invariant.
  void validate() const;

  static const std::array<std::string_view, 10>& names();
  double get(std::string_view name) const;
  void set(std::string_view name, double value);

  bool operator==(const ParameterSet&) const = default;
};

}  // namespace dengue
