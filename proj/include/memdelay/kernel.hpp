#pragma once

#include <utility>
#include <vector>

namespace memdelay {

enum class KernelForm { exponential, tabulated };

/// Fading-memory density mu(s). The exponential form is mu0 * exp(-delta*s);
/// the tabulated form interpolates (s, mu) samples linearly. Beyond s_max the
/// density is treated as zero.
struct MemoryKernel {
  KernelForm form = KernelForm::exponential;
  double mu0 = 0.0;    // density at s = 0 (1/time)
  double delta = 0.0;  // decay rate (1/time)
  double s_max = 0.0;  // truncation horizon; 0 selects the default 23/delta
  std::vector<std::pair<double, double>> table;  // tabulated form only

  static MemoryKernel exponential_kernel(double mu0, double delta,
                                         double s_max = 0.0);
  static MemoryKernel tabulated_kernel(std::vector<std::pair<double, double>> samples,
                                       double delta);
};

/// Kernel that passed all four admissibility checks, annotated with its
/// total mass mu_tilde = integral of mu over (0, infinity).
class ValidatedKernel {
 public:
  const MemoryKernel& kernel() const { return kernel_; }
  double mu0() const { return kernel_.mu0; }
  double delta() const { return kernel_.delta; }
  double s_max() const { return kernel_.s_max; }
  double mu_tilde() const { return mu_tilde_; }
  bool is_exponential() const { return kernel_.form == KernelForm::exponential; }

  /// Density value at s >= 0; zero beyond s_max.
  double eval(double s) const;

  friend ValidatedKernel validate_kernel(MemoryKernel kernel, double tail_tol);

 private:
  ValidatedKernel(MemoryKernel kernel, double mu_tilde)
      : kernel_(std::move(kernel)), mu_tilde_(mu_tilde) {}
  MemoryKernel kernel_;
  double mu_tilde_ = 0.0;
};

/// Checks positivity at zero, subunit total mass, the decay condition
/// mu' <= -delta*mu (discretely for tables) and tail negligibility at s_max.
ValidatedKernel validate_kernel(MemoryKernel kernel, double tail_tol = 1e-9);

}  // namespace memdelay
