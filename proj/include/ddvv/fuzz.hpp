#pragma once

// Randomized campaigns over every inequality oracle. Trial k draws from
// stream_rng(seed, k), so summaries are independent of the worker count.

#include <array>
#include <cstdint>
#include <cstdio>
#include <cstring>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "ddvv/bw.hpp"
#include "ddvv/canonical.hpp"
#include "ddvv/ddvv.hpp"
#include "ddvv/error.hpp"
#include "ddvv/lemmas.hpp"
#include "ddvv/parallel.hpp"
#include "ddvv/random.hpp"

namespace ddvv {

enum class Oracle {
  kDdvvMatrix,
  kDdvvCoeff,
  kConjecture1,
  kLemma1,
  kLemma2,
  kDelta,
  kRemark,
  kBw,
  kBwTrivial,
  kArrowhead,
};

enum class Distribution { kGaussian, kOrthogonalCanonical };

inline constexpr std::array<std::pair<std::string_view, Oracle>, 10> kOracleNames{{
    {"ddvv-matrix", Oracle::kDdvvMatrix},
    {"ddvv-coeff", Oracle::kDdvvCoeff},
    {"conjecture1", Oracle::kConjecture1},
    {"lemma1", Oracle::kLemma1},
    {"lemma2", Oracle::kLemma2},
    {"delta", Oracle::kDelta},
    {"remark", Oracle::kRemark},
    {"bw", Oracle::kBw},
    {"bw-trivial", Oracle::kBwTrivial},
    {"arrowhead", Oracle::kArrowhead},
}};

inline Oracle parse_oracle(std::string_view name) {
  for (const auto& [key, value] : kOracleNames)
    if (key == name) return value;
  throw PreconditionError("unknown oracle: " + std::string(name));
}

inline std::string_view oracle_name(Oracle o) {
  for (const auto& [key, value] : kOracleNames)
    if (value == o) return key;
  return "?";
}

inline Distribution parse_distribution(std::string_view name) {
  if (name == "gaussian") return Distribution::kGaussian;
  if (name == "orthogonal-canonical") return Distribution::kOrthogonalCanonical;
  throw PreconditionError("unknown distribution: " + std::string(name));
}

inline std::string_view distribution_name(Distribution d) {
  return d == Distribution::kGaussian ? "gaussian" : "orthogonal-canonical";
}

struct FuzzConfig {
  Oracle oracle = Oracle::kDdvvMatrix;
  std::size_t trials = 0;
  std::size_t n = 3;
  std::size_t m = 3;
  std::uint64_t seed = 0;
  Distribution dist = Distribution::kGaussian;
  double tol = kDefaultTol;
  bool keep_records = false;
};

struct TrialRecord {
  std::size_t index = 0;
  double ratio = 0.0;
  bool pass = true;
};

struct FuzzSummary {
  FuzzConfig config;
  std::size_t passes = 0;
  double max_ratio = 0.0;
  std::optional<std::size_t> argmax_trial;
  std::string argmax_digest;  // FNV-1a 64 of the argmax trial's inputs
  std::vector<TrialRecord> records;

  std::size_t failures() const noexcept { return config.trials - passes; }
};

// 64-bit FNV-1a over the little-endian bytes of each value.
inline std::string digest_values(const std::vector<double>& values) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (double v : values) {
    std::uint64_t bits = 0;
    std::memcpy(&bits, &v, sizeof bits);
    for (int b = 0; b < 8; ++b) {
      h ^= (bits >> (8 * b)) & 0xffU;
      h *= 0x100000001b3ULL;
    }
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

namespace detail {

inline void append(std::vector<double>& out, const Matrix& a) {
  out.insert(out.end(), a.data().begin(), a.data().end());
}
inline void append(std::vector<double>& out, const MatrixTuple& t) {
  for (const auto& a : t) append(out, a.matrix());
}

inline void require_fuzz_dims(const FuzzConfig& cfg) {
  const std::size_t n = cfg.n;
  const std::size_t m = cfg.m;
  if (n < 1 || m < 1) throw PreconditionError("fuzz dimensions must be positive");
  switch (cfg.oracle) {
    case Oracle::kConjecture1:
    case Oracle::kDdvvCoeff:
    case Oracle::kLemma1:
    case Oracle::kArrowhead:
    case Oracle::kBwTrivial:
      if (n < 2) throw PreconditionError(std::string(oracle_name(cfg.oracle)) + " needs n >= 2");
      break;
    case Oracle::kLemma2:
      if (m < 2 || m - 1 > n * (n + 1) / 2) {
        throw PreconditionError("lemma2 needs 2 <= m <= n(n+1)/2 + 1");
      }
      break;
    case Oracle::kDelta:
      if (m < 2 || m - 1 > n * (n - 1) / 2) {
        throw PreconditionError("delta needs 2 <= m <= n(n-1)/2 + 1");
      }
      break;
    default:
      break;
  }
}

}  // namespace detail

struct TrialOutcome {
  double ratio = 0.0;
  bool pass = true;
};

// Draws one valid input for the oracle, evaluates it, and optionally
// records the raw input values.
inline TrialOutcome run_trial(const FuzzConfig& cfg, std::size_t index,
                              std::vector<double>* inputs = nullptr) {
  Rng rng = stream_rng(cfg.seed, index);
  const std::size_t n = cfg.n;
  const std::size_t m = cfg.m;
  const bool canonical = cfg.dist == Distribution::kOrthogonalCanonical;
  auto maybe_canonical = [&](MatrixTuple t) {
    if (canonical && t.squared_norm() > 0.0) return canonicalize(t).tuple;
    return t;
  };
  auto record = [&](const auto&... parts) {
    if (inputs) (detail::append(*inputs, parts), ...);
  };

  switch (cfg.oracle) {
    case Oracle::kDdvvMatrix: {
      const MatrixTuple t = maybe_canonical(gaussian_tuple(n, m, rng));
      record(t);
      const auto r = evaluate_matrix_form(t, cfg.tol);
      return {r.ratio, r.pass};
    }
    case Oracle::kDdvvCoeff: {
      const MatrixTuple t = maybe_canonical(traceless_parts(gaussian_tuple(n, m, rng)));
      record(t);
      const auto r = evaluate_coefficient_form(SecondFundamentalForm{0.0, t}, cfg.tol);
      return {r.ratio, r.pass};
    }
    case Oracle::kConjecture1: {
      const double c = standard_normal(rng);
      const MatrixTuple h = maybe_canonical(gaussian_tuple(n, m, rng));
      if (inputs) inputs->push_back(c);
      record(h);
      const SecondFundamentalForm form{c, h};
      const auto r = check_conjecture1(form, cfg.tol);
      // Score rho_perp against |H|^2 + c - rho, both nonnegative.
      const auto g = geometric_quantities(form);
      const double slack = g.h_mean_sq + c - g.rho;
      return {slack > 0.0 ? g.rho_perp / slack : 0.0, r.pass};
    }
    case Oracle::kLemma1: {
      const EtaVector eta(random_eta(n, rng));
      const WeightSet w(n, random_weights(n * (n - 1) / 2, rng));
      if (inputs) {
        inputs->insert(inputs->end(), eta.values().begin(), eta.values().end());
        inputs->insert(inputs->end(), w.values().begin(), w.values().end());
      }
      const auto r = lemma1_check(eta, w, cfg.tol);
      return {r.ratio, r.pass};
    }
    case Oracle::kLemma2: {
      const SymMatrix a = random_unit_diagonal(n, rng);
      const MatrixTuple rest = orthogonal_tuple(n, m - 1, rng);
      record(a.matrix(), rest);
      const auto r = lemma2_check(a, rest, cfg.tol);
      return {r.ratio, r.pass};
    }
    case Oracle::kDelta: {
      const MatrixTuple rest = orthogonal_tuple(n, m - 1, rng, true);
      record(rest);
      const auto r = delta_bound_check(rest, cfg.tol);
      return {r.ratio, r.pass};
    }
    case Oracle::kRemark: {
      const SymMatrix a = random_unit_diagonal(n, rng);
      const SymMatrix b = gaussian_symmetric(n, rng);
      record(a.matrix(), b.matrix());
      const auto r = remark_bound_check(a, b, cfg.tol);
      return {r.sharp.ratio, r.sharp.pass && r.weak.pass};
    }
    case Oracle::kBw: {
      const Matrix x = gaussian_matrix(n, rng);
      const Matrix y = gaussian_matrix(n, rng);
      record(x, y);
      const auto r = bw_check(x, y, cfg.tol);
      return {r.sharp.ratio, r.sharp.pass && r.weak.pass};
    }
    case Oracle::kBwTrivial: {
      const Matrix x = random_trivial_regime_matrix(n, rng);
      const Matrix y = random_unit_matrix(n, rng);
      record(x, y);
      const auto r = bw_trivial_case_check(x, y, cfg.tol);
      return {r.ratio, r.pass};
    }
    case Oracle::kArrowhead: {
      const ArrowheadMatrix p(random_weights(n - 1, rng));
      if (inputs) inputs->insert(inputs->end(), p.weights().begin(), p.weights().end());
      const auto b = arrowhead_spectral_bound(p);
      const auto d = arrowhead_det_identity_check(p, b.bound + 1.0);
      return {b.bound > 0.0 ? b.lambda_max / b.bound : 0.0, b.pass && d.agree};
    }
  }
  throw PreconditionError("unknown oracle");
}

inline FuzzSummary fuzz_campaign(const FuzzConfig& cfg, std::size_t workers = 1) {
  detail::require_fuzz_dims(cfg);
  FuzzSummary summary;
  summary.config = cfg;
  if (cfg.keep_records) summary.records.resize(cfg.trials);

  struct Partial {
    std::size_t passes = 0;
    double max_ratio = -HUGE_VAL;
    std::optional<std::size_t> argmax;
  };
  const std::size_t slots = std::max<std::size_t>(1, std::min(workers, cfg.trials));
  std::vector<Partial> partials(slots);
  parallel_chunks(cfg.trials, workers, [&](std::size_t w, std::size_t begin, std::size_t end) {
    Partial& p = partials[w];
    for (std::size_t k = begin; k < end; ++k) {
      const TrialOutcome o = run_trial(cfg, k);
      if (o.pass) ++p.passes;
      if (!p.argmax || o.ratio > p.max_ratio) {
        p.max_ratio = o.ratio;
        p.argmax = k;
      }
      if (cfg.keep_records) summary.records[k] = {k, o.ratio, o.pass};
    }
  });

  for (const Partial& p : partials) {
    summary.passes += p.passes;
    if (!p.argmax) continue;
    if (!summary.argmax_trial || p.max_ratio > summary.max_ratio ||
        (p.max_ratio == summary.max_ratio && *p.argmax < *summary.argmax_trial)) {
      summary.max_ratio = p.max_ratio;
      summary.argmax_trial = p.argmax;
    }
  }
  if (summary.argmax_trial) {
    std::vector<double> inputs;
    run_trial(cfg, *summary.argmax_trial, &inputs);
    summary.argmax_digest = digest_values(inputs);
  }
  return summary;
}

}  // namespace ddvv
