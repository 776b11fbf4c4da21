#include "memdelay/spectrum.hpp"

#include <cmath>

#include "memdelay/errors.hpp"

namespace memdelay {

OperatorSpec build_operator(OperatorKind kind, Eigen::Index modes, double length) {
  if (modes < 1)
    throw Error(ErrorCode::InvalidScenario, "mode count must be >= 1");
  if (length <= 0.0)
    throw Error(ErrorCode::InvalidScenario, "domain length must be positive");
  OperatorSpec spec;
  spec.eigenvalues.resize(modes);
  const double base = M_PI / length;
  for (Eigen::Index k = 0; k < modes; ++k) {
    const double wk = static_cast<double>(k + 1) * base;
    spec.eigenvalues[k] = (kind == OperatorKind::wave_1d) ? wk * wk
                                                          : wk * wk * wk * wk;
  }
  spec.label = (kind == OperatorKind::wave_1d) ? "wave-1d" : "petrovsky-1d";
  return spec;
}

OperatorSpec custom_operator(Eigen::VectorXd eigenvalues, std::string label) {
  if (eigenvalues.size() < 1)
    throw Error(ErrorCode::InvalidScenario, "eigenvalue list is empty");
  if (eigenvalues[0] <= 0.0)
    throw Error(ErrorCode::InvalidScenario, "lambda_1 must be positive");
  for (Eigen::Index k = 1; k < eigenvalues.size(); ++k)
    if (eigenvalues[k] <= eigenvalues[k - 1])
      throw Error(ErrorCode::InvalidScenario, "eigenvalues must strictly increase");
  OperatorSpec spec;
  spec.eigenvalues = std::move(eigenvalues);
  spec.label = std::move(label);
  return spec;
}

}  // namespace memdelay
