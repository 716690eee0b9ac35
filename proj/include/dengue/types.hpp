#pragma once

#include <complex>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>

namespace dengue {

using Vec14 = Eigen::Matrix<double, 14, 1>;
using Mat14 = Eigen::Matrix<double, 14, 14>;
using CVec14 = Eigen::Matrix<std::complex<double>, 14, 1>;

// Error categories; the CLI maps them onto exit codes 2/3/4.
struct ValidationError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct NumericalError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct IoError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Fixed component ordering shared by State, Derivative and the Jacobian.
namespace idx {
inline constexpr int S = 0, I1 = 1, I2 = 2, R1 = 3, R2 = 4, S1 = 5, S2 = 6,
                     I12 = 7, I21 = 8, R = 9, U = 10, V1 = 11, V2 = 12,
                     V12 = 13;
inline constexpr int count = 14;
inline constexpr int human_count = 10;  // components 0..9 are human classes
}  // namespace idx

inline constexpr const char* kComponentNames[idx::count] = {
    "S",   "I1",  "I2", "R1", "R2", "S1", "S2",
    "I12", "I21", "R",  "U",  "V1", "V2", "V12"};

}  // namespace dengue
