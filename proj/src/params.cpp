#include "dengue/params.hpp"

#include <cmath>
#include <string>

namespace dengue {

void ParameterSet::validate() const {
  const struct {
    const char* name;
    double value;
  } fields[] = {{"lambda_N", lambda_N}, {"lambda_M", lambda_M}, {"mu", mu},
                {"kappa", kappa},       {"alpha", alpha},       {"sigma", sigma},
                {"beta", beta},         {"gamma", gamma},       {"nu", nu},
                {"delta", delta}};
  for (const auto& f : fields) {
    if (!std::isfinite(f.value)) {
      throw ValidationError(std::string("parameter ") + f.name +
                            " is not finite");
    }
    if (f.value < 0.0) {
      throw ValidationError(std::string("parameter ") + f.name +
                            " must be nonnegative");
    }
  }
  if (mu <= 0.0) throw ValidationError("parameter mu must be positive");
  if (kappa <= 0.0) throw ValidationError("parameter kappa must be positive");
  if (gamma + mu <= 0.0) {
    throw ValidationError("gamma + mu must be positive");
  }
}

const std::array<std::string_view, 10>& ParameterSet::names() {
  static const std::array<std::string_view, 10> n = {
      "lambda_N", "lambda_M", "mu",    "kappa", "alpha",
      "sigma",    "beta",     "gamma", "nu",    "delta"};
  return n;
}

double ParameterSet::get(std::string_view name) const {
  if (name == "lambda_N") return lambda_N;
  if (name == "lambda_M") return lambda_M;
  if (name == "mu") return mu;
  if (name == "kappa") return kappa;
  if (name == "alpha") return alpha;
  if (name == "sigma") return sigma;
  if (name == "beta") return beta;
  if (name == "gamma") return gamma;
  if (name == "nu") return nu;
  if (name == "delta") return delta;
  throw ValidationError("unknown parameter name: " + std::string(name));
}

void ParameterSet::set(std::string_view name, double value) {
  if (name == "lambda_N") {
    lambda_N = value;
  } else if (name == "lambda_M") {
    lambda_M = value;
  } else if (name == "mu") {
    mu = value;
  } else if (name == "kappa") {
    kappa = value;
  } else if (name == "alpha") {
    alpha = value;
  } else if (name == "sigma") {
    sigma = value;
  } else if (name == "beta") {
    beta = value;
  } else if (name == "gamma") {
    gamma = value;
  } else if (name == "nu") {
    nu = value;
  } else if (name == "delta") {
    delta = value;
  } else {
    throw ValidationError("unknown parameter name: " + std::string(name));
  }
}

}  // namespace dengue
