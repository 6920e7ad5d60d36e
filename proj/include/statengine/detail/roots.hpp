// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>

namespace statengine::detail {

struct Sample {
  double f;   // residual
  double df;  // derivative of the residual
};

struct RootResult {
  double x;
  double f;
  int iterations;
  bool converged;
};

/// Grows [x, x + step], [x + step, x + 2 step], ... in the direction that
/// moves the residual towards zero until the sign changes. `increasing` is
/// the monotonic direction of the residual. Returns the bracket as
/// (lo, hi) with residuals or nullopt after `max_expansions`.
struct Bracket {
  double lo, hi;
  Sample at_lo, at_hi;
};

template <class Fn>
std::optional<Bracket> expand_bracket(Fn&& eval, double x0, Sample s0, double step, bool increasing,
                                      int max_expansions = 200) {
  if (s0.f == 0.0) return Bracket{x0, x0, s0, s0};
  // Residual below zero on an increasing function means the root lies above x0.
  const bool go_up = (s0.f < 0.0) == increasing;
  double a = x0;
  Sample sa = s0;
  for (int k = 0; k < max_expansions; ++k) {
    const double b = go_up ? a + step : a - step;
    const Sample sb = eval(b);
    if (!std::isfinite(sb.f)) return std::nullopt;
    if ((sb.f <= 0.0) != (sa.f <= 0.0) || sb.f == 0.0) {
      if (go_up) return Bracket{a, b, sa, sb};
      return Bracket{b, a, sb, sa};
    }
    a = b;
    sa = sb;
    step *= 2.0;
  }
  return std::nullopt;
}

/// Newton iteration kept inside a sign-changing bracket; any step that
/// leaves the bracket or fails to halve the residual is replaced by
/// bisection. Stops on |f| <= f_tol or when the bracket collapses to a few ulps.
template <class Fn>
RootResult safeguarded_newton(Fn&& eval, Bracket br, double x0, Sample s0, double f_tol,
                              int max_iter = 200) {
  double lo = br.lo, hi = br.hi;
  double f_lo = br.at_lo.f;
  if (std::abs(br.at_lo.f) <= f_tol) return {lo, br.at_lo.f, 0, true};
  if (std::abs(br.at_hi.f) <= f_tol) return {hi, br.at_hi.f, 0, true};

  double x = (x0 > lo && x0 < hi) ? x0 : 0.5 * (lo + hi);
  Sample s = (x == x0) ? s0 : eval(x);
  double prev_abs = std::numeric_limits<double>::infinity();
  for (int it = 1; it <= max_iter; ++it) {
    if (std::abs(s.f) <= f_tol) return {x, s.f, it, true};
    if ((s.f <= 0.0) == (f_lo <= 0.0)) {
      lo = x;
      f_lo = s.f;
    } else {
      hi = x;
    }
    const double width_tol = 4.0 * std::numeric_limits<double>::epsilon() *
                             std::max({std::abs(lo), std::abs(hi), 1e-300});
    if (hi - lo <= width_tol) return {x, s.f, it, std::abs(s.f) <= f_tol};

    double next = (s.df != 0.0 && std::isfinite(s.df)) ? x - s.f / s.df : lo - 1.0;
    const bool stalled = std::abs(s.f) > 0.5 * prev_abs;
    if (!(next > lo && next < hi) || stalled) next = 0.5 * (lo + hi);
    prev_abs = std::abs(s.f);
    x = next;
    s = eval(x);
  }
  return {x, s.f, max_iter, std::abs(s.f) <= f_tol};
}

}  // namespace statengine::detail
