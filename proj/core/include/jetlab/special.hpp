#pragma once

#include <cassert>
#include <cstdint>

namespace jetlab {

// Rising factorial (x)_k = x(x+1)...(x+k-1), with (x)_0 = 1.
inline double pochhammer(double x, int k) {
  assert(k >= 0);
  double p = 1.0;
  for (int i = 0; i < k; ++i) p *= x + i;
  return p;
}

inline double factorial(int n) {
  assert(n >= 0);
  double f = 1.0;
  for (int i = 2; i <= n; ++i) f *= i;
  return f;
}

// Exact for n <= 52 or so; derivative orders here stay below 10.
inline double binomial(int n, int k) {
  if (k < 0 || k > n) return 0.0;
  if (k > n - k) k = n - k;
  double b = 1.0;
  for (int i = 0; i < k; ++i) b = b * (n - i) / (i + 1);
  return b;
}

}  // namespace jetlab
