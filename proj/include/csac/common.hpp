#pragma once

#include <Eigen/Dense>
#include <stdexcept>
#include <string>

namespace csac {

using Vec = Eigen::VectorXd;
using Mat = Eigen::MatrixXd;
using RowVec = Eigen::RowVectorXd;

/// Thrown when a numeric contract is violated (non-finite gradients,
/// diverging losses). The CLI maps this to exit code 2.
struct NumericError : std::runtime_error {
  explicit NumericError(const std::string& what) : std::runtime_error(what) {}
};

/// Thrown on malformed or constraint-violating configuration. Exit code 3.
struct ConfigError : std::runtime_error {
  explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

inline bool all_finite(const Mat& m) { return m.allFinite(); }
inline bool all_finite(const Vec& v) { return v.allFinite(); }

}  // namespace csac
