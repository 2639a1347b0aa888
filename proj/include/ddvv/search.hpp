#pragma once

// Extremal-ratio search for 2 sum_{r<s} ||[A_r,A_s]||^2 / (sum ||A_r||^2)^2
// by projected gradient ascent on the unit sphere of tuples.

#include <cmath>
#include <cstdint>
#include <limits>
#include <optional>
#include <vector>

#include "ddvv/canonical.hpp"
#include "ddvv/ddvv.hpp"
#include "ddvv/error.hpp"
#include "ddvv/linalg.hpp"
#include "ddvv/parallel.hpp"
#include "ddvv/random.hpp"

namespace ddvv {

inline double ddvv_ratio(const MatrixTuple& t) {
  const double total = t.squared_norm();
  if (total == 0.0) throw PreconditionError("ratio of the zero tuple is undefined");
  return 2.0 * commutator_sum(t) / (total * total);
}

// Gradient of sum_{r<s} ||[A_r,A_s]||^2 in A_r is 2 sum_{s!=r} [[A_r,A_s],A_s];
// the result is projected onto the tangent space of the sphere through t.
inline MatrixTuple ratio_gradient(const MatrixTuple& t) {
  const double total = t.squared_norm();
  if (total == 0.0) throw PreconditionError("gradient at the zero tuple is undefined");
  const std::size_t n = t.n();
  const std::size_t m = t.m();
  std::vector<Matrix> grad(m, Matrix(n, n));
  for (std::size_t r = 0; r < m; ++r)
    for (std::size_t s = r + 1; s < m; ++s) {
      const Matrix c = commutator(t[r], t[s]);
      // d/dA_r: 2[C, A_s]; d/dA_s: 2[A_r, C] (C antisymmetric).
      grad[r] += commutator(c, t[s]) * 2.0;
      grad[s] += commutator(t[r], c) * 2.0;
    }
  double radial = 0.0;
  for (std::size_t r = 0; r < m; ++r) radial += frobenius_inner(grad[r], t[r]);
  radial /= total;
  std::vector<SymMatrix> out;
  out.reserve(m);
  for (std::size_t r = 0; r < m; ++r) out.emplace_back(grad[r] - t[r].matrix() * radial);
  return MatrixTuple(std::move(out));
}

struct SearchConfig {
  std::size_t n = 2;
  std::size_t m = 2;
  std::size_t restarts = 20;
  std::size_t max_iters = 5000;
  double step = 0.1;
  std::uint64_t seed = 0;
  double tol = 1e-10;
  // Consecutive iterations with improvement below tol before stopping.
  std::size_t patience = 25;

  void validate() const {
    if (n < 1 || m < 1) throw PreconditionError("search dimensions must be positive");
    if (restarts < 1) throw PreconditionError("restarts must be at least 1");
    if (max_iters < 1) throw PreconditionError("max_iters must be at least 1");
    if (!(step > 0.0)) throw PreconditionError("step must be positive");
  }
};

struct SearchResult {
  double best_ratio = 0.0;
  MatrixTuple best_tuple;  // canonical form, sum ||A_r||^2 = 1
  std::size_t best_restart = 0;
  std::size_t iterations_used = 0;  // over all restarts
  bool converged = false;           // of the restart that produced best_tuple
};

struct AscentOutcome {
  double ratio = 0.0;
  MatrixTuple tuple;
  std::size_t iterations = 0;
  bool converged = false;
};

namespace detail {

inline MatrixTuple normalized(const MatrixTuple& t) { return t.scaled(1.0 / std::sqrt(t.squared_norm())); }

inline MatrixTuple step_along(const MatrixTuple& t, const MatrixTuple& g, double step) {
  std::vector<SymMatrix> out;
  out.reserve(t.m());
  for (std::size_t r = 0; r < t.m(); ++r) out.emplace_back(t[r].matrix() + g[r].matrix() * step);
  return normalized(MatrixTuple(std::move(out)));
}

}  // namespace detail

// One ascent run from `start`; accepted steps grow by 1.25, rejected steps
// halve until the ratio improves.
inline AscentOutcome ascend(const MatrixTuple& start, const SearchConfig& cfg) {
  AscentOutcome out{0.0, detail::normalized(start), 0, false};
  out.ratio = ddvv_ratio(out.tuple);
  double step = cfg.step;
  std::size_t quiet = 0;
  while (out.iterations < cfg.max_iters) {
    ++out.iterations;
    const MatrixTuple g = ratio_gradient(out.tuple);
    double improvement = 0.0;
    if (g.squared_norm() > 0.0) {
      double trial_step = step;
      while (trial_step > 1e-16) {
        MatrixTuple candidate = detail::step_along(out.tuple, g, trial_step);
        const double r = ddvv_ratio(candidate);
        if (r > out.ratio) {
          improvement = r - out.ratio;
          out.ratio = r;
          out.tuple = std::move(candidate);
          step = std::min(trial_step * 1.25, 10.0 * cfg.step);
          break;
        }
        trial_step *= 0.5;
      }
      if (trial_step <= 1e-16) step = cfg.step;
    }
    quiet = improvement < cfg.tol ? quiet + 1 : 0;
    if (quiet >= cfg.patience) {
      out.converged = true;
      break;
    }
  }
  return out;
}

// Best ratio over restarts from Gaussian starting points; the reported tuple
// is in canonical form. Deterministic for fixed cfg regardless of workers.
inline SearchResult extremal_search(const SearchConfig& cfg, std::size_t workers = 1) {
  cfg.validate();
  std::vector<std::optional<AscentOutcome>> runs(cfg.restarts);
  parallel_chunks(cfg.restarts, workers, [&](std::size_t, std::size_t begin, std::size_t end) {
    for (std::size_t k = begin; k < end; ++k) {
      Rng rng = stream_rng(cfg.seed, k);
      MatrixTuple start = gaussian_tuple(cfg.n, cfg.m, rng);
      while (start.squared_norm() == 0.0) start = gaussian_tuple(cfg.n, cfg.m, rng);
      runs[k] = ascend(start, cfg);
    }
  });

  std::size_t best = 0;
  std::size_t total_iters = 0;
  for (std::size_t k = 0; k < runs.size(); ++k) {
    total_iters += runs[k]->iterations;
    if (runs[k]->ratio > runs[best]->ratio) best = k;
  }
  const AscentOutcome& b = *runs[best];
  CanonicalForm canon = canonicalize(b.tuple);
  return SearchResult{b.ratio, std::move(canon.tuple), best, total_iters, b.converged};
}

}  // namespace ddvv
