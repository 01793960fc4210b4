#include "pairlik/optimize.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

namespace pairlik {

namespace {

// Search coordinate for one side of a box: log scale when the lower bound
// is positive (always for the open ray), linear otherwise.
class Axis {
 public:
  Axis(const Interval& range, const MinimizeOptions& opts) : ray_(range.ray) {
    lo_ = ray_ ? opts.ray_lo : range.lo;
    hi_ = ray_ ? opts.ray_hi : range.hi;
    log_ = lo_ > 0.0;
  }

  [[nodiscard]] bool ray() const noexcept { return ray_; }
  [[nodiscard]] double lo() const noexcept { return lo_; }
  [[nodiscard]] double hi() const noexcept { return hi_; }
  [[nodiscard]] double ulo() const noexcept { return to_u(lo_); }
  [[nodiscard]] double uhi() const noexcept { return to_u(hi_); }
  [[nodiscard]] bool degenerate() const noexcept { return lo_ == hi_; }

  [[nodiscard]] double to_u(double x) const noexcept { return log_ ? std::log(x) : x; }
  [[nodiscard]] double from_u(double u) const noexcept {
    if (u <= ulo()) return lo_;
    if (u >= uhi()) return hi_;
    return std::clamp(log_ ? std::exp(u) : u, lo_, hi_);
  }

  /// Absolute tolerance in u giving a relative step of x_rtol.
  [[nodiscard]] double u_tol(double x_rtol) const noexcept {
    return log_ ? x_rtol : x_rtol * std::max(1.0, std::max(std::abs(lo_), std::abs(hi_)));
  }

  // Edge checks report whether an optimum sits on an artificial ray bound.
  [[nodiscard]] bool at_lower(double u) const noexcept { return u - ulo() <= 1e-6 * (uhi() - ulo()); }
  [[nodiscard]] bool at_upper(double u) const noexcept { return uhi() - u <= 1e-6 * (uhi() - ulo()); }

  void expand_lower() noexcept { lo_ /= 10.0; }
  void expand_upper() noexcept { hi_ *= 10.0; }

 private:
  bool ray_;
  bool log_ = false;
  double lo_ = 0.0;
  double hi_ = 0.0;
};

std::uint8_t bound_bits(const Axis& axis, double x, std::uint8_t lower_bit, std::uint8_t upper_bit) {
  if (axis.ray()) return kNoBound;
  std::uint8_t bits = kNoBound;
  const double slack = 1e-10 * std::max(1.0, std::max(std::abs(axis.lo()), std::abs(axis.hi())));
  if (x - axis.lo() <= slack) bits |= lower_bit;
  if (axis.hi() - x <= slack) bits |= upper_bit;
  return bits;
}

struct Candidate {
  double u0;
  double u1;
  double value;
};

bool better(const Candidate& a, const Candidate& b) {
  if (a.value != b.value) return a.value < b.value;
  return a.u0 < b.u0;
}

double checked(double v) {
  if (!std::isfinite(v)) throw NonFinite("objective is not finite at a start point");
  return v;
}

}  // namespace

ScalarMinimum brent_minimize(const Objective1D& f, double lo, double hi, double abs_tol, int max_iter) {
  constexpr double golden = 0.3819660112501051;  // (3 - sqrt 5) / 2
  constexpr double rel_eps = 1e-10;
  double a = lo;
  double b = hi;
  double x = a + golden * (b - a);
  double w = x;
  double v = x;
  double fx = f(x);
  double fw = fx;
  double fv = fx;
  double d = 0.0;
  double e = 0.0;
  int evals = 1;
  bool converged = false;
  for (int iter = 0; iter < max_iter; ++iter) {
    const double m = 0.5 * (a + b);
    const double tol = rel_eps * std::abs(x) + abs_tol;
    const double t2 = 2.0 * tol;
    if (std::abs(x - m) <= t2 - 0.5 * (b - a)) {
      converged = true;
      break;
    }
    bool parabolic = false;
    if (std::abs(e) > tol) {
      double r = (x - w) * (fx - fv);
      double q = (x - v) * (fx - fw);
      double p = (x - v) * q - (x - w) * r;
      q = 2.0 * (q - r);
      if (q > 0.0) p = -p; else q = -q;
      r = e;
      e = d;
      if (std::abs(p) < std::abs(0.5 * q * r) && p > q * (a - x) && p < q * (b - x)) {
        d = p / q;
        const double u = x + d;
        if (u - a < t2 || b - u < t2) d = x < m ? tol : -tol;
        parabolic = true;
      }
    }
    if (!parabolic) {
      e = (x < m ? b : a) - x;
      d = golden * e;
    }
    const double u = x + (std::abs(d) >= tol ? d : (d > 0.0 ? tol : -tol));
    const double fu = f(u);
    ++evals;
    if (fu <= fx) {
      if (u < x) b = x; else a = x;
      v = w; fv = fw;
      w = x; fw = fx;
      x = u; fx = fu;
    } else {
      if (u < x) a = u; else b = u;
      if (fu <= fw || w == x) {
        v = w; fv = fw;
        w = u; fw = fu;
      } else if (fu <= fv || v == x || v == w) {
        v = u; fv = fu;
      }
    }
  }
  return {x, fx, evals, converged};
}

BoxMinimum minimize_interval(const Objective1D& f, const Interval& range, const MinimizeOptions& opts) {
  Axis axis(range, opts);
  int evals = 0;
  auto g = [&](double u) {
    ++evals;
    return f(axis.from_u(u));
  };

  if (axis.degenerate()) {
    BoxMinimum out;
    out.x[0] = axis.lo();
    out.value = checked(f(axis.lo()));
    out.evaluations = 1;
    out.active = kThetaLower | kThetaUpper;
    return out;
  }

  for (int expansion = 0; expansion <= opts.max_expansions; ++expansion) {
    const int m = std::max(1, opts.starts_1d);
    const int last = m + 1;
    const double ulo = axis.ulo();
    const double uhi = axis.uhi();
    std::vector<double> u(static_cast<std::size_t>(last + 1));
    std::vector<double> fu(u.size());
    for (int k = 0; k <= last; ++k) {
      u[k] = k == last ? uhi : ulo + (uhi - ulo) * static_cast<double>(k) / static_cast<double>(last);
      fu[k] = checked(g(u[k]));
    }

    Candidate best{u[0], 0.0, fu[0]};
    bool converged = true;
    for (int k = 0; k <= last; ++k) {
      const bool left_ok = k == 0 || fu[k] <= fu[k - 1];
      const bool right_ok = k == last || fu[k] <= fu[k + 1];
      if (!left_ok || !right_ok) continue;
      const Candidate grid_point{u[k], 0.0, fu[k]};
      if (better(grid_point, best)) best = grid_point;
      const double a = u[std::max(k - 1, 0)];
      const double b = u[std::min(k + 1, last)];
      const ScalarMinimum local = brent_minimize(g, a, b, axis.u_tol(opts.x_rtol), opts.max_iter);
      converged = converged && local.converged;
      if (std::isfinite(local.value)) {
        const Candidate refined{std::clamp(local.x, ulo, uhi), 0.0, local.value};
        if (better(refined, best)) best = refined;
      }
    }

    if (axis.ray() && axis.at_lower(best.u0)) {
      axis.expand_lower();
      continue;
    }
    if (axis.ray() && axis.at_upper(best.u0)) {
      axis.expand_upper();
      continue;
    }
    BoxMinimum out;
    out.x[0] = axis.from_u(best.u0);
    out.value = best.value;
    out.evaluations = evals;
    out.converged = converged;
    out.active = bound_bits(axis, out.x[0], kThetaLower, kThetaUpper);
    return out;
  }
  throw BracketExhausted("minimize_interval: optimum stayed on the edge of the expanded bracket");
}

namespace {

struct NelderMeadResult {
  Candidate best;
  bool converged;
};

NelderMeadResult nelder_mead(const std::function<double(double, double)>& g, Candidate start,
                             const std::array<double, 2>& step, const std::array<double, 2>& ulo,
                             const std::array<double, 2>& uhi, const MinimizeOptions& opts,
                             const std::array<double, 2>& utol) {
  auto project = [&](Candidate c) {
    c.u0 = std::clamp(c.u0, ulo[0], uhi[0]);
    c.u1 = std::clamp(c.u1, ulo[1], uhi[1]);
    c.value = g(c.u0, c.u1);
    return c;
  };
  auto point = [&](double u0, double u1) { return project(Candidate{u0, u1, 0.0}); };

  std::array<Candidate, 3> s{start, point(start.u0 + step[0], start.u1), point(start.u0, start.u1 + step[1])};
  for (int iter = 0; iter < opts.max_iter; ++iter) {
    std::sort(s.begin(), s.end(), better);
    const double spread = s[2].value - s[0].value;
    double size0 = 0.0;
    double size1 = 0.0;
    for (const auto& c : s) {
      size0 = std::max(size0, std::abs(c.u0 - s[0].u0));
      size1 = std::max(size1, std::abs(c.u1 - s[0].u1));
    }
    // The coordinate sweeps that follow finish the job, so a flat small simplex is enough.
    if (size0 <= utol[0] && size1 <= utol[1]) return {s[0], true};
    if (spread <= opts.f_tol && size0 <= 1e-4 && size1 <= 1e-4) return {s[0], true};

    const double c0 = 0.5 * (s[0].u0 + s[1].u0);
    const double c1 = 0.5 * (s[0].u1 + s[1].u1);
    const Candidate refl = point(2.0 * c0 - s[2].u0, 2.0 * c1 - s[2].u1);
    if (better(refl, s[0])) {
      const Candidate expd = point(3.0 * c0 - 2.0 * s[2].u0, 3.0 * c1 - 2.0 * s[2].u1);
      s[2] = better(expd, refl) ? expd : refl;
      continue;
    }
    if (better(refl, s[1])) {
      s[2] = refl;
      continue;
    }
    const bool outside = better(refl, s[2]);
    const Candidate contr = outside ? point(c0 + 0.5 * (refl.u0 - c0), c1 + 0.5 * (refl.u1 - c1))
                                    : point(c0 + 0.5 * (s[2].u0 - c0), c1 + 0.5 * (s[2].u1 - c1));
    if (better(contr, outside ? refl : s[2])) {
      s[2] = contr;
      continue;
    }
    for (int k = 1; k < 3; ++k) {
      s[k] = point(s[0].u0 + 0.5 * (s[k].u0 - s[0].u0), s[0].u1 + 0.5 * (s[k].u1 - s[0].u1));
    }
  }
  std::sort(s.begin(), s.end(), better);
  return {s[0], false};
}

}  // namespace

BoxMinimum minimize_box(const Objective2D& f, const Interval& first, const Interval& second,
                        const MinimizeOptions& opts) {
  std::array<Axis, 2> axes{Axis(first, opts), Axis(second, opts)};
  int evals = 0;
  auto g = [&](double u0, double u1) {
    ++evals;
    return f(axes[0].from_u(u0), axes[1].from_u(u1));
  };

  for (int expansion = 0; expansion <= opts.max_expansions; ++expansion) {
    const std::array<double, 2> ulo{axes[0].ulo(), axes[1].ulo()};
    const std::array<double, 2> uhi{axes[0].uhi(), axes[1].uhi()};
    const std::array<double, 2> utol{axes[0].u_tol(opts.x_rtol), axes[1].u_tol(opts.x_rtol)};
    const int m = std::max(1, opts.starts_2d);
    const std::array<double, 2> cell{(uhi[0] - ulo[0]) / (m + 1), (uhi[1] - ulo[1]) / (m + 1)};

    std::vector<Candidate> grid;
    grid.reserve(static_cast<std::size_t>(m * m));
    for (int a = 1; a <= m; ++a) {
      for (int b = 1; b <= m; ++b) {
        const double u0 = ulo[0] + cell[0] * a;
        const double u1 = ulo[1] + cell[1] * b;
        grid.push_back({u0, u1, checked(g(u0, u1))});
      }
    }
    std::sort(grid.begin(), grid.end(), better);

    Candidate best = grid.front();
    bool converged = true;
    const std::size_t starts = std::min<std::size_t>(grid.size(), static_cast<std::size_t>(std::max(1, opts.polish_2d)));
    for (std::size_t k = 0; k < starts; ++k) {
      NelderMeadResult nm = nelder_mead(g, grid[k], cell, ulo, uhi, opts, utol);
      Candidate cur = nm.best;
      converged = converged && nm.converged;
      // Coordinate sweeps: Brent within one grid cell, plus the box edge when the cell reaches it.
      for (int sweep = 0; sweep < 50; ++sweep) {
        const double before = cur.value;
        for (int c = 0; c < 2; ++c) {
          if (cell[c] == 0.0) continue;
          const double centre = c == 0 ? cur.u0 : cur.u1;
          const double a = std::max(ulo[c], centre - cell[c]);
          const double b = std::min(uhi[c], centre + cell[c]);
          auto line = [&](double u) { return c == 0 ? g(u, cur.u1) : g(cur.u0, u); };
          const ScalarMinimum local = brent_minimize(line, a, b, utol[c], opts.max_iter);
          std::array<Candidate, 3> options{cur, cur, cur};
          (c == 0 ? options[0].u0 : options[0].u1) = local.x;
          options[0].value = local.value;
          if (a == ulo[c]) {
            (c == 0 ? options[1].u0 : options[1].u1) = a;
            options[1].value = line(a);
          }
          if (b == uhi[c]) {
            (c == 0 ? options[2].u0 : options[2].u1) = b;
            options[2].value = line(b);
          }
          for (const auto& o : options) {
            if (std::isfinite(o.value) && o.value < cur.value) cur = o;
          }
        }
        if (before - cur.value < opts.f_tol) break;
      }
      if (better(cur, best)) best = cur;
    }

    bool expanded = false;
    for (int c = 0; c < 2; ++c) {
      if (!axes[c].ray()) continue;
      const double u = c == 0 ? best.u0 : best.u1;
      if (axes[c].at_lower(u)) {
        axes[c].expand_lower();
        expanded = true;
      } else if (axes[c].at_upper(u)) {
        axes[c].expand_upper();
        expanded = true;
      }
    }
    if (expanded) continue;
    BoxMinimum out;
    out.x = {axes[0].from_u(best.u0), axes[1].from_u(best.u1)};
    out.value = best.value;
    out.evaluations = evals;
    out.converged = converged;
    out.active = bound_bits(axes[0], out.x[0], kThetaLower, kThetaUpper) |
                 bound_bits(axes[1], out.x[1], kSigma2Lower, kSigma2Upper);
    return out;
  }
  throw BracketExhausted("minimize_box: optimum stayed on the edge of the expanded bracket");
}

}  // namespace pairlik
