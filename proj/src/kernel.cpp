#include "memdelay/kernel.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "memdelay/errors.hpp"

namespace memdelay {

MemoryKernel MemoryKernel::exponential_kernel(double mu0, double delta,
                                              double s_max) {
  MemoryKernel k;
  k.form = KernelForm::exponential;
  k.mu0 = mu0;
  k.delta = delta;
  k.s_max = s_max;
  return k;
}

MemoryKernel MemoryKernel::tabulated_kernel(
    std::vector<std::pair<double, double>> samples, double delta) {
  MemoryKernel k;
  k.form = KernelForm::tabulated;
  k.table = std::move(samples);
  k.delta = delta;
  if (!k.table.empty()) {
    k.mu0 = k.table.front().second;
    k.s_max = k.table.back().first;
  }
  return k;
}

double ValidatedKernel::eval(double s) const {
  if (s < 0.0) throw Error(ErrorCode::NegativeArgument, "kernel argument s < 0");
  if (s > kernel_.s_max) return 0.0;
  if (kernel_.form == KernelForm::exponential)
    return kernel_.mu0 * std::exp(-kernel_.delta * s);
  const auto& tab = kernel_.table;
  auto it = std::lower_bound(tab.begin(), tab.end(), s,
                             [](const auto& p, double x) { return p.first < x; });
  if (it == tab.begin()) return it->second;
  if (it == tab.end()) return tab.back().second;
  const auto [s1, m1] = *it;
  const auto [s0, m0] = *(it - 1);
  const double w = (s - s0) / (s1 - s0);
  return (1.0 - w) * m0 + w * m1;
}

ValidatedKernel validate_kernel(MemoryKernel kernel, double tail_tol) {
  if (kernel.form == KernelForm::exponential) {
    if (kernel.mu0 <= 0.0)
      throw Error(ErrorCode::NonPositiveMu0, "mu(0) must be positive");
    if (kernel.delta <= 0.0)
      throw Error(ErrorCode::DecayViolated, "delta must be positive");
    if (kernel.s_max <= 0.0) kernel.s_max = 23.0 / kernel.delta;
    const double mass = kernel.mu0 / kernel.delta;
    if (mass >= 1.0) {
      std::ostringstream os;
      os << "total mass mu_tilde = " << mass << " >= 1 (assumption iii)";
      throw Error(ErrorCode::MassNotLessThanOne, os.str());
    }
    if (kernel.mu0 * std::exp(-kernel.delta * kernel.s_max) >
        tail_tol * kernel.mu0)
      throw Error(ErrorCode::TailTooLarge,
                  "mu(s_max) exceeds tail tolerance; increase s_max");
    return ValidatedKernel(std::move(kernel), mass);
  }

  // tabulated
  const auto& tab = kernel.table;
  if (tab.size() < 2)
    throw Error(ErrorCode::NonPositiveMu0, "tabulated kernel needs >= 2 samples");
  if (tab.front().first != 0.0)
    throw Error(ErrorCode::NonPositiveMu0, "table must start at s = 0");
  if (tab.front().second <= 0.0)
    throw Error(ErrorCode::NonPositiveMu0, "mu(0) must be positive");
  if (kernel.delta <= 0.0)
    throw Error(ErrorCode::DecayViolated, "delta must be positive");
  kernel.mu0 = tab.front().second;
  kernel.s_max = tab.back().first;

  double mass = 0.0;
  for (std::size_t j = 0; j + 1 < tab.size(); ++j) {
    const auto [s0, m0] = tab[j];
    const auto [s1, m1] = tab[j + 1];
    if (s1 <= s0)
      throw Error(ErrorCode::DecayViolated, "table abscissae must increase");
    if (m0 < 0.0 || m1 < 0.0)
      throw Error(ErrorCode::DecayViolated, "table values must be nonnegative");
    // discrete form of mu' <= -delta*mu: the ratio between consecutive
    // samples may not exceed exp(-delta*(s1-s0)), up to relative tolerance
    const double cap = std::exp(-kernel.delta * (s1 - s0));
    if (m0 > 0.0 && m1 > m0 * cap * (1.0 + 1e-9))
      throw Error(ErrorCode::DecayViolated,
                  "assumption iv) fails between table samples");
    mass += 0.5 * (m0 + m1) * (s1 - s0);
  }
  if (mass >= 1.0)
    throw Error(ErrorCode::MassNotLessThanOne,
                "total mass mu_tilde >= 1 (assumption iii)");
  if (tab.back().second > tail_tol * kernel.mu0)
    throw Error(ErrorCode::TailTooLarge,
                "mu(s_max) exceeds tail tolerance; extend the table");
  return ValidatedKernel(std::move(kernel), mass);
}

}  // namespace memdelay
