#pragma once

#include <Eigen/Core>
#include <string>

namespace memdelay {

enum class OperatorKind { wave_1d, petrovsky_1d };

/// Diagonal representation of the positive self-adjoint operator A: the
/// ascending eigenvalues lambda_k of its modal decomposition.
struct OperatorSpec {
  Eigen::VectorXd eigenvalues;
  std::string label = "custom";

  Eigen::Index modes() const { return eigenvalues.size(); }
};

/// wave_1d: lambda_k = (k*pi/L)^2 (Dirichlet Laplacian on (0, L));
/// petrovsky_1d: lambda_k = (k*pi/L)^4 (hinged beam).
OperatorSpec build_operator(OperatorKind kind, Eigen::Index modes, double length);

/// Arbitrary eigenvalue list; must be strictly increasing and positive.
OperatorSpec custom_operator(Eigen::VectorXd eigenvalues, std::string label = "custom");

}  // namespace memdelay
