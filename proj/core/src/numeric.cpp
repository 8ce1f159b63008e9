#include "foodex/numeric.hpp"

#include <cmath>
#include <cstdio>
#include <stdexcept>

namespace foodex {

double golden_section_max(const std::function<double(double)>& f, double lo,
                          double hi, double xtol) {
  if (!(hi > lo)) throw std::invalid_argument("golden_section_max: hi <= lo");
  const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double a = lo, b = hi;
  double c = b - inv_phi * (b - a);
  double d = a + inv_phi * (b - a);
  double fc = f(c), fd = f(d);
  while (b - a > xtol) {
    if (fc > fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - inv_phi * (b - a);
      fc = f(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + inv_phi * (b - a);
      fd = f(d);
    }
  }
  return 0.5 * (a + b);
}

double bisect_root(const std::function<double(double)>& f, double a, double b,
                   double xtol) {
  double fa = f(a), fb = f(b);
  if (fa == 0) return a;
  if (fb == 0) return b;
  if (fa * fb > 0) throw std::invalid_argument("bisect_root: no sign change");
  while (b - a > xtol) {
    const double mid = 0.5 * (a + b);
    const double fm = f(mid);
    if (fm == 0) return mid;
    if (fa * fm < 0) {
      b = mid;
      fb = fm;
    } else {
      a = mid;
      fa = fm;
    }
  }
  // One safeguarded Newton polish with a numerical slope.
  const double x = 0.5 * (a + b);
  const double h = std::max(1e-9, 1e-9 * std::fabs(x));
  const double slope = (f(x + h) - f(x - h)) / (2 * h);
  if (slope != 0) {
    const double step = f(x) / slope;
    const double polished = x - step;
    if (polished >= a - (b - a) && polished <= b + (b - a)) return polished;
  }
  return x;
}

std::vector<Bracket> scan_sign_changes(const std::function<double(double)>& f,
                                       double lo, double hi, int n) {
  std::vector<Bracket> out;
  if (n < 2) return out;
  double x_prev = lo, f_prev = f(lo);
  for (int i = 1; i < n; ++i) {
    const double x = lo + (hi - lo) * i / (n - 1);
    const double fx = f(x);
    if (f_prev == 0 || f_prev * fx < 0) out.push_back({x_prev, x});
    x_prev = x;
    f_prev = fx;
  }
  if (f_prev == 0) out.push_back({x_prev, x_prev});
  return out;
}

double central_diff(const std::function<double(double)>& f, double x, double h) {
  return (f(x + h) - f(x - h)) / (2 * h);
}

double forward_diff3(const std::function<double(double)>& f, double x, double h) {
  return (-3 * f(x) + 4 * f(x + h) - f(x + 2 * h)) / (2 * h);
}

double second_diff(const std::function<double(double)>& f, double x, double h) {
  return (f(x + h) - 2 * f(x) + f(x - h)) / (h * h);
}

std::string format_sig12(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.12g", v);
  return buf;
}

}  // namespace foodex
