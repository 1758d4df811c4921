// Copyright the fraclap authors.
// SPDX-License-Identifier: Apache-2.0

#include "fraclap/kernel.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "fraclap/error.hpp"

namespace fraclap
{

double kernel_constant(int n, double s)
{
  if (!(s > 0.0 && s < 1.0))
    throw InvalidArgument("kernel_constant: s must lie in (0,1), got " + std::to_string(s));
  if (n < 1)
    throw InvalidArgument("kernel_constant: dimension must be positive");
  const double half_n = 0.5 * n;
  return std::pow(2.0, 2.0 * s) * s * std::tgamma(s + half_n) /
         (std::pow(std::numbers::pi, half_n) * std::tgamma(1.0 - s));
}

KernelParams KernelParams::make(double s)
{
  KernelParams k;
  k.s = s;
  k.n = 2;
  k.cns = kernel_constant(2, s);
  return k;
}

KernelParams KernelParams::with_constant(double c) const
{
  if (!(c > 0.0))
    throw InvalidArgument("KernelParams::with_constant: constant must be positive");
  KernelParams k = *this;
  k.cns = c;
  return k;
}

}  // namespace fraclap
