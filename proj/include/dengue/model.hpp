#pragma once

#include <string_view>

#include "dengue/params.hpp"
#include "dengue/state.hpp"

namespace dengue {

// Right-hand side of the two-strain host-vector system. The force-of-
// infection denominators use the dynamic totals N and M of the given state.
Derivative vector_field(const State& s, const ParameterSet& p);

// Analytic Jacobian of vector_field with respect to the 14 state components.
Mat14 jacobian(const State& s, const ParameterSet& p);

// Model rates available as continuation / override targets.
enum class FreeParam { alpha, sigma, nu, beta, kappa, gamma, delta };

std::string_view to_string(FreeParam p);
FreeParam free_param_from_string(std::string_view name);

double get_param(const ParameterSet& p, FreeParam which);
void set_param(ParameterSet& p, FreeParam which, double value);

// Partial derivative of vector_field with respect to one rate, state fixed.
Vec14 parameter_derivative(const State& s, const ParameterSet& p,
                           FreeParam which);

}  // namespace dengue
