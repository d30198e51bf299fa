#pragma once

#include <cstdlib>
#include <stdexcept>

namespace sfqm {

// Chebyshev polynomial of the second kind, U_n(x), by the three-term
// recurrence U_{k+1} = 2x U_k - U_{k-1}.  Seeds extend downward with
// U_{-1} = 0 and U_{-2} = -1, which is what the n-cell composition needs
// for small n.  Valid for all real x, including |x| > 1.
inline double chebyshev_u(int n, double x) {
  if (n < -2) throw std::invalid_argument("chebyshev_u: n must be >= -2");
  if (n == -2) return -1.0;
  if (n == -1) return 0.0;
  double um1 = 0.0;  // U_{-1}
  double u = 1.0;    // U_0
  for (int k = 0; k < n; ++k) {
    const double next = 2.0 * x * u - um1;
    um1 = u;
    u = next;
  }
  return u;
}

// Chebyshev polynomial of the first kind, T_n(x): T_0 = 1, T_1 = x.
inline double chebyshev_t(int n, double x) {
  if (n < 0) throw std::invalid_argument("chebyshev_t: n must be >= 0");
  if (n == 0) return 1.0;
  double tm1 = 1.0;  // T_0
  double t = x;      // T_1
  for (int k = 1; k < n; ++k) {
    const double next = 2.0 * x * t - tm1;
    tm1 = t;
    t = next;
  }
  return t;
}

}  // namespace sfqm
