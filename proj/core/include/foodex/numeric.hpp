#ifndef FOODEX_NUMERIC_HPP
#define FOODEX_NUMERIC_HPP

#include <functional>
#include <string>
#include <vector>

namespace foodex {

/// Maximize a unimodal function on [lo, hi] by golden-section search.
/// Returns the abscissa of the maximum to within xtol.
double golden_section_max(const std::function<double(double)>& f, double lo,
                          double hi, double xtol = 1e-10);

/// Root of f on a bracket [a, b] with f(a) f(b) <= 0: bisection polished by
/// safeguarded Newton steps using a numerical derivative.
double bisect_root(const std::function<double(double)>& f, double a, double b,
                   double xtol = 1e-13);

struct Bracket {
  double lo = 0, hi = 0;
};
/// Sign-change brackets of f over an n-point uniform scan of [lo, hi].
std::vector<Bracket> scan_sign_changes(const std::function<double(double)>& f,
                                       double lo, double hi, int n);

/// Central difference df/dx with step h.
double central_diff(const std::function<double(double)>& f, double x, double h);

/// Second-order one-sided (forward) difference for domain edges.
double forward_diff3(const std::function<double(double)>& f, double x, double h);

/// Central second difference d2f/dx2.
double second_diff(const std::function<double(double)>& f, double x, double h);

/// Value formatted with 12 significant digits (CSV convention).
std::string format_sig12(double v);

}  // namespace foodex

#endif  // FOODEX_NUMERIC_HPP
