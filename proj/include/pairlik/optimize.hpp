#ifndef PAIRLIK_OPTIMIZE_HPP
#define PAIRLIK_OPTIMIZE_HPP

/** @file
 * Derivative-free bounded minimization in one and two dimensions.
 *
 * Coordinates with a positive lower bound (and the open ray) are searched
 * on the log scale, others linearly. Both routines start from a grid of
 * candidate points, refine every promising start locally and return the
 * lowest value found, ties broken by the smallest first coordinate.
 */

#include <array>
#include <cstdint>
#include <functional>

#include "pairlik/types.hpp"

namespace pairlik {

struct MinimizeOptions {
  int starts_1d = 16;   ///< interior grid points for 1-D searches
  int starts_2d = 8;    ///< per-axis interior grid points for 2-D searches
  int polish_2d = 4;    ///< number of best grid points refined in 2-D
  double f_tol = 1e-10; ///< absolute objective improvement treated as converged
  double x_rtol = 1e-8; ///< relative parameter step treated as converged
  int max_iter = 500;
  double ray_lo = 1e-4; ///< initial bracket for an open ray side
  double ray_hi = 1e6;
  int max_expansions = 3;
};

/// Result of minimize_interval / minimize_box. For 1-D results x[1] is unused.
struct BoxMinimum {
  std::array<double, 2> x{};
  double value = 0.0;
  int evaluations = 0;
  bool converged = true;
  /// ActiveBound bits; coordinate 0 maps to the theta bits, coordinate 1 to sigma2.
  std::uint8_t active = kNoBound;
};

using Objective1D = std::function<double(double)>;
using Objective2D = std::function<double(double, double)>;

/**
 * Minimizes f over an interval. Grid of starts_1d interior points plus the
 * endpoints; every grid-local minimum is refined by Brent's method within
 * its neighbouring grid cells. For the open ray the bracket
 * [ray_lo, ray_hi] is expanded tenfold on the side the optimum touches,
 * at most max_expansions times (BracketExhausted afterwards).
 * Throws NonFinite if f is not finite at a grid start.
 */
BoxMinimum minimize_interval(const Objective1D& f, const Interval& range, const MinimizeOptions& opts = {});

/**
 * Minimizes f over a rectangle: starts_2d x starts_2d interior grid, the
 * polish_2d best points refined by a bound-projected Nelder-Mead simplex
 * followed by coordinate-wise Brent sweeps until the improvement drops
 * below f_tol.
 */
BoxMinimum minimize_box(const Objective2D& f, const Interval& first, const Interval& second,
                        const MinimizeOptions& opts = {});

/// Brent's bounded scalar minimizer on [lo, hi]; returns {argmin, value, evaluations}.
struct ScalarMinimum {
  double x;
  double value;
  int evaluations;
  bool converged;
};
ScalarMinimum brent_minimize(const Objective1D& f, double lo, double hi, double abs_tol, int max_iter = 500);

}  // namespace pairlik

#endif  // PAIRLIK_OPTIMIZE_HPP
