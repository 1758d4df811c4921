// Copyright the fraclap authors.
// SPDX-License-Identifier: Apache-2.0

#ifndef FRACLAP_KERNEL_HPP
#define FRACLAP_KERNEL_HPP

namespace fraclap
{

// C(n, s) = 2^{2s} s Gamma(s + n/2) / (pi^{n/2} Gamma(1 - s)). Throws unless 0 < s < 1, n >= 1.
double kernel_constant(int n, double s);

// Fractional order and normalization of the kernel C(n,s) |x - y|^{-n-2s}.
struct KernelParams
{
  double s = 0.5;
  int n = 2;
  double cns = 0.0;

  // Validated parameters with cns = kernel_constant(2, s).
  static KernelParams make(double s);

  // Copy carrying an arbitrary positive normalization in place of C(n, s).
  KernelParams with_constant(double c) const;
};

}  // namespace fraclap

#endif  // FRACLAP_KERNEL_HPP
