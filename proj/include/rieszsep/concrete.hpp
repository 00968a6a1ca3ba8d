#pragma once

// Concrete realizations of partial products and convolution powers:
// trigonometric-polynomial densities sampled on the circle, exact atomic
// densities on finite Cantor-group levels, total-variation arithmetic,
// mutual-singularity profiles, and the piecewise-linear extension of a
// Z-supported transform to R.

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <map>
#include <numbers>
#include <stdexcept>
#include <vector>

#include "rieszsep/riesz.hpp"

namespace rieszsep {

// Equispaced samples on [0, 2pi). Power-of-two size, strictly more than
// twice the maximal frequency in play so the analysis is alias-free.
struct CircleGrid {
  unsigned n = 0;

  explicit CircleGrid(unsigned n_points) : n(n_points) {
    if (n < 2 || (n & (n - 1)) != 0)
      throw std::invalid_argument("grid size must be a power of two");
  }
};

struct DensityVector {
  std::vector<double> values;
  double weight = 0.0;  // quadrature weight per sample/atom
};

namespace detail {

inline long long circle_frequency(const RieszSpec& spec, std::size_t i) {
  const Letter& l = spec.letters[i];
  if (spec.group.kind() != DualGroupDescriptor::Kind::IntegerGroup)
    throw std::invalid_argument("circle evaluation requires the group Z");
  const auto& coords = l.element.coords();
  Int f = coords.empty() ? Int(0) : coords.begin()->second;
  if (f > (1LL << 40) || f < -(1LL << 40))
    throw std::invalid_argument("frequency too large for grid evaluation");
  return static_cast<long long>(f);
}

}  // namespace detail

// Density of P_Phi on the circle: product over Phi of 1 + 2 Re(a e^{ift}).
inline DensityVector eval_circle(const RieszSpec& spec,
                                 const std::vector<std::uint32_t>& phi,
                                 const CircleGrid& grid) {
  long long max_freq = 0;
  for (auto i : phi) {
    if (i >= spec.letters.size()) throw std::out_of_range("letter index");
    max_freq = std::max(max_freq, std::abs(detail::circle_frequency(spec, i)));
  }
  // Words reach frequencies up to the sum over Phi; bound by that sum.
  long long word_freq = 0;
  for (auto i : phi) word_freq += std::abs(detail::circle_frequency(spec, i));
  if (2 * word_freq + 1 >= static_cast<long long>(grid.n))
    throw std::invalid_argument("grid too coarse: aliasing bound violated");

  DensityVector d;
  d.values.assign(grid.n, 1.0);
  d.weight = 1.0 / static_cast<double>(grid.n);
  const double step = 2.0 * std::numbers::pi / static_cast<double>(grid.n);
  for (auto i : phi) {
    const long long f = detail::circle_frequency(spec, i);
    const Complex a = spec.coeffs[i];
    for (unsigned j = 0; j < grid.n; ++j) {
      double t = step * static_cast<double>(j);
      d.values[j] *= 1.0 + 2.0 * (a * std::polar(1.0, f * t)).real();
    }
  }
  return d;
}

// Discrete Fourier analysis of the samples; returns the frequencies in
// (-n/2, n/2] whose coefficient survives the 1e-12 floor.
inline std::map<long long, Complex> grid_coefficients(const DensityVector& d,
                                                      const CircleGrid& grid) {
  if (d.values.size() != grid.n)
    throw std::invalid_argument("density/grid size mismatch");
  const unsigned n = grid.n;
  std::vector<Complex> twiddle(n);
  for (unsigned j = 0; j < n; ++j)
    twiddle[j] = std::polar(1.0, -2.0 * std::numbers::pi * j / n);
  std::map<long long, Complex> out;
  for (long long f = -static_cast<long long>(n) / 2 + 1;
       f <= static_cast<long long>(n) / 2; ++f) {
    Complex c{0.0, 0.0};
    for (unsigned j = 0; j < n; ++j) {
      std::uint64_t k =
          (static_cast<std::uint64_t>((f % n + n)) * j) % n;
      c += d.values[j] * twiddle[k];
    }
    c /= static_cast<double>(n);
    if (std::abs(c) > 1e-12) out.emplace(f, c);
  }
  return out;
}

// Exact density of the n-th convolution power of P (first k letters of a
// Hermitian Rademacher spec) on the 2^k atoms of the level-k Cantor
// group: density(x) = prod_i (1 + a_i^n * chi_i(x)), chi_i(x) = +-1 by
// bit i of the atom index. Cost O(k 2^k).
inline DensityVector eval_cantor(const RieszSpec& spec, unsigned k, unsigned n,
                                 unsigned k_cap = 24) {
  if (k < 1) throw std::invalid_argument("level k must be >= 1");
  if (k > k_cap) throw std::invalid_argument("level k above configured cap");
  if (k > spec.letters.size())
    throw std::invalid_argument("level k exceeds letter count");
  if (!spec.hermitian())
    throw std::invalid_argument("cantor evaluation requires a Hermitian spec");
  for (unsigned i = 0; i < k; ++i) {
    const auto& coords = spec.letters[i].element.coords();
    if (!spec.letters[i].involution || coords.size() != 1 ||
        coords.begin()->first != i)
      throw std::invalid_argument(
          "letters must be the first k order-two generators");
  }
  RieszSpec p = n == 1 ? spec : transform_power(spec, n);
  const std::size_t atoms = std::size_t{1} << k;
  DensityVector d;
  d.values.assign(atoms, 1.0);
  d.weight = 1.0 / static_cast<double>(atoms);
  for (unsigned i = 0; i < k; ++i) {
    const double a = p.coeffs[i].real();
    for (std::size_t x = 0; x < atoms; ++x) {
      double chi = ((x >> i) & 1) ? -1.0 : 1.0;
      d.values[x] *= 1.0 + a * chi;
    }
  }
  return d;
}

inline double tv_norm(const DensityVector& d) {
  double sum = 0.0;
  for (double v : d.values) sum += std::abs(v);
  return sum * d.weight;
}

inline double tv_distance(const DensityVector& a, const DensityVector& b) {
  if (a.values.size() != b.values.size() || a.weight != b.weight)
    throw std::invalid_argument("tv_distance: incompatible densities");
  double sum = 0.0;
  for (std::size_t i = 0; i < a.values.size(); ++i)
    sum += std::abs(a.values[i] - b.values[i]);
  return sum * a.weight;
}

struct ProfileRow {
  unsigned k;
  double tv;
};

// Exact TV distance between the n-th and m-th convolution powers at each
// Cantor level in [k_lo, k_hi]; for criterion-satisfying specs the column
// climbs toward 2 (mutual singularity in the limit).
inline std::vector<ProfileRow> singularity_profile(const RieszSpec& spec,
                                                   unsigned k_lo, unsigned k_hi,
                                                   unsigned n, unsigned m,
                                                   unsigned k_cap = 24) {
  if (n == m) throw std::invalid_argument("powers must differ");
  if (k_lo < 1 || k_lo > k_hi) throw std::invalid_argument("bad level range");
  std::vector<ProfileRow> rows;
  rows.reserve(k_hi - k_lo + 1);
  for (unsigned k = k_lo; k <= k_hi; ++k) {
    DensityVector dn = eval_cantor(spec, k, n, k_cap);
    DensityVector dm = eval_cantor(spec, k, m, k_cap);
    rows.push_back({k, tv_distance(dn, dm)});
  }
  return rows;
}

// Piecewise-linear extension of integer-supported transform values:
// agrees with the stored values at the knots, linear in the gaps, zero
// outside [lo, hi].
struct PLTransform {
  long long lo = 0;
  std::vector<Complex> values;  // knot j holds value at lo + j

  long long hi() const { return lo + static_cast<long long>(values.size()) - 1; }
  Complex at_knot(long long x) const {
    if (x < lo || x > hi()) return {0.0, 0.0};
    return values[static_cast<std::size_t>(x - lo)];
  }
};

inline PLTransform pl_extend(const std::map<long long, Complex>& t,
                             long long half_width) {
  if (half_width < 0) throw std::invalid_argument("negative half width");
  PLTransform e;
  e.lo = -half_width;
  e.values.assign(static_cast<std::size_t>(2 * half_width + 1), {0.0, 0.0});
  for (const auto& [x, v] : t) {
    if (x < -half_width || x > half_width)
      throw std::out_of_range("knot outside [-N, N]");
    e.values[static_cast<std::size_t>(x + half_width)] = v;
  }
  return e;
}

inline Complex pl_eval(const PLTransform& e, double xi) {
  if (xi <= static_cast<double>(e.lo) - 1.0 ||
      xi >= static_cast<double>(e.hi()) + 1.0)
    return {0.0, 0.0};
  double fl = std::floor(xi);
  long long j = static_cast<long long>(fl);
  double t = xi - fl;
  Complex a = e.at_knot(j);
  Complex b = e.at_knot(j + 1);
  return a * (1.0 - t) + b * t;
}

namespace detail {

// Zero set of a PL interpolant on [lo, hi] as closed intervals (segments
// that vanish identically, plus the exterior) and isolated points.
struct PLZeros {
  std::vector<std::pair<double, double>> intervals;
  std::vector<double> points;
};

inline bool pl_is_zero(const Complex& v) { return v == Complex{0.0, 0.0}; }

inline PLZeros pl_zero_set(const PLTransform& e) {
  PLZeros z;
  const long long lo = e.lo, hi = e.hi();
  for (long long j = lo; j < hi; ++j) {
    Complex a = e.at_knot(j), b = e.at_knot(j + 1);
    double x0 = static_cast<double>(j), x1 = x0 + 1.0;
    if (pl_is_zero(a) && pl_is_zero(b)) {
      z.intervals.emplace_back(x0, x1);
    } else if (pl_is_zero(a)) {
      z.points.push_back(x0);
    } else if (pl_is_zero(b)) {
      z.points.push_back(x1);
    } else {
      // Interior zero exists iff a and b are anti-parallel through 0.
      double cross = a.real() * b.imag() - a.imag() * b.real();
      double dot = a.real() * b.real() + a.imag() * b.imag();
      double scale = std::abs(a) * std::abs(b);
      if (std::abs(cross) <= 1e-15 * scale && dot < 0.0) {
        double t = std::abs(a) / (std::abs(a) + std::abs(b));
        z.points.push_back(x0 + t);
      }
    }
  }
  return z;
}

}  // namespace detail

// Maximal open intervals on which both interpolants are nonzero.
inline std::vector<std::pair<double, double>> pl_product_support(
    const PLTransform& e1, const PLTransform& e2) {
  // Interpolants vanish outside their knot ranges; the one-unit linear
  // roll-off past the boundary knots belongs to the frame.
  double frame_lo = std::max(static_cast<double>(e1.lo) - 1.0,
                             static_cast<double>(e2.lo) - 1.0);
  double frame_hi = std::min(static_cast<double>(e1.hi()) + 1.0,
                             static_cast<double>(e2.hi()) + 1.0);
  if (frame_lo >= frame_hi) return {};

  auto z1 = detail::pl_zero_set(e1);
  auto z2 = detail::pl_zero_set(e2);
  // Exterior roll-off: beyond the last knot the functions are zero.
  std::vector<std::pair<double, double>> blocked;
  auto add_exterior = [&](const PLTransform& e) {
    // At the boundary knot the value may be nonzero; the interpolant hits
    // zero exactly at lo-1 and hi+1 where the implicit zero knots sit.
    if (detail::pl_is_zero(e.at_knot(e.lo)))
      blocked.emplace_back(frame_lo, static_cast<double>(e.lo));
    if (detail::pl_is_zero(e.at_knot(e.hi())))
      blocked.emplace_back(static_cast<double>(e.hi()), frame_hi);
  };
  add_exterior(e1);
  add_exterior(e2);
  for (auto& iv : z1.intervals) blocked.push_back(iv);
  for (auto& iv : z2.intervals) blocked.push_back(iv);
  std::vector<double> cuts = z1.points;
  cuts.insert(cuts.end(), z2.points.begin(), z2.points.end());
  // Boundary zeros of the implicit roll-off.
  cuts.push_back(frame_lo);
  cuts.push_back(frame_hi);

  // Merge blocked intervals, then emit the complement split at cut points.
  std::sort(blocked.begin(), blocked.end());
  std::vector<std::pair<double, double>> merged;
  for (auto& iv : blocked) {
    if (!merged.empty() && iv.first <= merged.back().second)
      merged.back().second = std::max(merged.back().second, iv.second);
    else
      merged.push_back(iv);
  }
  std::sort(cuts.begin(), cuts.end());

  std::vector<std::pair<double, double>> out;
  double cursor = frame_lo;
  auto emit = [&](double a, double b) {
    if (b - a <= 1e-15) return;
    // Split the open interval at isolated zero points inside it.
    double start = a;
    for (double c : cuts) {
      if (c <= start || c >= b) continue;
      out.emplace_back(start, c);
      start = c;
    }
    out.emplace_back(start, b);
  };
  for (auto& iv : merged) {
    if (iv.first > cursor) emit(cursor, iv.first);
    cursor = std::max(cursor, iv.second);
  }
  if (cursor < frame_hi) emit(cursor, frame_hi);
  return out;
}

}  // namespace rieszsep
