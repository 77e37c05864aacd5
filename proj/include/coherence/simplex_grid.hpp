#pragma once

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <vector>

namespace coherence {

enum class ExecPolicy { Serial, Parallel };

// Number of grid nodes on the (dim-1)-simplex with n subdivisions per
// coordinate: C(n + dim - 1, dim - 1).
inline std::size_t simplex_grid_size(int dim, int subdivisions) {
  if (dim < 2 || subdivisions < 0) throw std::invalid_argument("simplex_grid_size: dim >= 2, subdivisions >= 0");
  // C(n + d - 1, d - 1) computed without overflow at our sizes
  std::size_t result = 1;
  for (int k = 1; k <= dim - 1; ++k) result = result * static_cast<std::size_t>(subdivisions + k) / static_cast<std::size_t>(k);
  return result;
}

// Decodes a flat index into integer barycentric coordinates (length dim,
// summing to subdivisions). Flat order is lexicographic in the coordinate
// vector, so the lowest flat index is the lexicographically smallest node.
inline void simplex_grid_decode(int dim, int subdivisions, std::size_t flat, std::span<int> coords_out) {
  int remaining = subdivisions;
  for (int pos = 0; pos < dim - 1; ++pos) {
    const int tail_dim = dim - pos - 1;
    int c = 0;
    for (; c <= remaining; ++c) {
      // number of nodes whose coordinate at `pos` equals c
      const std::size_t block = tail_dim == 1 ? 1 : simplex_grid_size(tail_dim, remaining - c);
      if (flat < block) break;
      flat -= block;
    }
    coords_out[static_cast<std::size_t>(pos)] = c;
    remaining -= c;
  }
  coords_out[static_cast<std::size_t>(dim - 1)] = remaining;
}

struct GridBest {
  double value = 0.0;
  std::size_t flat_index = 0;
  std::vector<double> coords;  // barycentric, sums to 1
};

// Evaluates `eval` (callable on std::span<const double> barycentric
// coordinates) on every grid node and returns the minimum. Ties within
// 1e-12 resolve to the lowest flat index (lexicographically smallest
// coordinates) regardless of evaluation order, so the Serial and Parallel
// policies return identical results.
template <class F>
GridBest scan_simplex_grid(int dim, int subdivisions, ExecPolicy policy, F&& eval) {
  const std::size_t size = simplex_grid_size(dim, subdivisions);
  std::vector<double> values(size);
  const double inv = 1.0 / subdivisions;

  const auto evaluate_cell = [&](std::size_t flat) {
    int icoords[16];
    double coords[16];
    simplex_grid_decode(dim, subdivisions, flat, std::span<int>(icoords, static_cast<std::size_t>(dim)));
    for (int k = 0; k < dim; ++k) coords[k] = icoords[k] * inv;
    values[flat] = eval(std::span<const double>(coords, static_cast<std::size_t>(dim)));
  };

  if (policy == ExecPolicy::Parallel) {
    const std::int64_t n = static_cast<std::int64_t>(size);
#pragma omp parallel for schedule(static)
    for (std::int64_t flat = 0; flat < n; ++flat) evaluate_cell(static_cast<std::size_t>(flat));
  } else {
    for (std::size_t flat = 0; flat < size; ++flat) evaluate_cell(flat);
  }

  // two-pass reduction: exact minimum, then lowest index within the tie band
  double best = values[0];
  for (std::size_t k = 1; k < size; ++k) best = std::min(best, values[k]);
  std::size_t best_index = 0;
  while (values[best_index] > best + 1e-12) ++best_index;

  GridBest out;
  out.value = values[best_index];
  out.flat_index = best_index;
  std::vector<int> ic(static_cast<std::size_t>(dim));
  simplex_grid_decode(dim, subdivisions, best_index, ic);
  out.coords.resize(static_cast<std::size_t>(dim));
  for (int k = 0; k < dim; ++k) out.coords[static_cast<std::size_t>(k)] = ic[static_cast<std::size_t>(k)] * inv;
  return out;
}

namespace detail {

// Golden-section minimum of a unimodal f over [lo, hi] to tolerance xtol.
template <class F>
std::pair<double, double> golden_section(double lo, double hi, double xtol, F&& f) {
  constexpr double inv_phi = 0.6180339887498949;
  double x1 = hi - inv_phi * (hi - lo);
  double x2 = lo + inv_phi * (hi - lo);
  double f1 = f(x1);
  double f2 = f(x2);
  while (hi - lo > xtol) {
    if (f1 <= f2) {
      hi = x2;
      x2 = x1;
      f2 = f1;
      x1 = hi - inv_phi * (hi - lo);
      f1 = f(x1);
    } else {
      lo = x1;
      x1 = x2;
      f1 = f2;
      x2 = lo + inv_phi * (hi - lo);
      f2 = f(x2);
    }
  }
  const double xm = 0.5 * (lo + hi);
  return {xm, f(xm)};
}

}  // namespace detail

// Golden-section coordinate descent over the diagonal simplex starting
// from `start` (barycentric, sums to 1). The first dim-1 coordinates are
// free; the last absorbs the slack. Each line search runs over a bracket
// of half-width `step` clipped to the simplex; cycles stop once a full
// pass improves by less than 1e-12. Coordinate tolerance 1e-10.
template <class F>
GridBest refine_simplex_min(int dim, std::vector<double> start, double start_value, double step, F&& eval) {
  constexpr double xtol = 1e-10;
  constexpr double improvement_cut = 1e-12;
  constexpr int max_cycles = 200;

  std::vector<double> x = std::move(start);
  double fx = start_value;

  for (int cycle = 0; cycle < max_cycles; ++cycle) {
    const double before = fx;
    for (int c = 0; c < dim - 1; ++c) {
      const double slack = x[static_cast<std::size_t>(dim - 1)];
      const double xc = x[static_cast<std::size_t>(c)];
      const double lo = std::max(0.0, xc - step);
      const double hi = std::min(xc + step, xc + slack);
      if (hi - lo <= xtol) continue;
      auto line = [&](double t) {
        std::vector<double> y = x;
        y[static_cast<std::size_t>(c)] = t;
        y[static_cast<std::size_t>(dim - 1)] = slack + xc - t;
        return eval(std::span<const double>(y));
      };
      const auto [t, ft] = detail::golden_section(lo, hi, xtol, line);
      if (ft < fx) {
        x[static_cast<std::size_t>(dim - 1)] += xc - t;
        x[static_cast<std::size_t>(c)] = t;
        fx = ft;
      }
    }
    if (before - fx < improvement_cut) break;
  }

  GridBest out;
  out.value = fx;
  out.flat_index = 0;
  out.coords = std::move(x);
  return out;
}

}  // namespace coherence
