#pragma once
// Grid-discretized momentum-conserving position measurement: pointer
// coordinate flow, smeared-position POVM E(X) = chi_X * e(Q), calibration
// and repeatability margins, and the error/bound comparison.

#include <unsupported/Eigen/FFT>

#include <limits>
#include <utility>

#include "linalg.hpp"

namespace waylab {

struct Grid1D {
  double extent = 4.0;  // grid covers [-extent, extent]
  int n = 4096;
  double cell() const { return 2.0 * extent / static_cast<double>(n - 1); }
  double x(int k) const { return -extent + cell() * static_cast<double>(k); }
};

enum class ApparatusProfile { box, raised_cosine };

struct PositionModelConfig {
  double lambda = 1.0;  // coupling strength
  double ell = 1.0;     // apparatus support half-width
  ApparatusProfile profile = ApparatusProfile::raised_cosine;
  Grid1D grid;

  void validate() const {
    if (lambda <= 0.0 || ell <= 0.0)
      throw std::invalid_argument("position config: lambda, ell > 0");
    if (grid.n < 512)
      throw std::invalid_argument("position config: N >= 512");
  }
  double delta() const { return ell / std::expm1(lambda); }
  double flow_coef() const {  // e^-lambda / (1 - e^-lambda)
    return std::exp(-lambda) / (-std::expm1(-lambda));
  }
};

struct Wavefunction1D {
  Grid1D grid;
  Eigen::VectorXcd values;
  bool normalized = false;

  double norm_sq() const {  // trapezoid rule
    double s = 0.0;
    for (int k = 0; k + 1 < grid.n; ++k)
      s += 0.5 * (std::norm(values(k)) + std::norm(values(k + 1)));
    return s * grid.cell();
  }
};

// |phi(y)|^2 of the apparatus profile at a point (normalized on [-ell, ell]).
inline double profile_density(const PositionModelConfig& cfg, double y) {
  if (std::abs(y) > cfg.ell) return 0.0;
  if (cfg.profile == ApparatusProfile::box) return 1.0 / (2.0 * cfg.ell);
  double c = std::cos(kPi * y / (2.0 * cfg.ell));
  // amplitude ~ cos^2 => density ~ cos^4; int_{-l}^{l} cos^4 = 3l/4
  return c * c * c * c / (0.75 * cfg.ell);
}

inline Wavefunction1D apparatus_state(const PositionModelConfig& cfg) {
  Wavefunction1D w;
  w.grid = {2.0 * cfg.ell, cfg.grid.n};
  w.values.resize(w.grid.n);
  for (int k = 0; k < w.grid.n; ++k)
    w.values(k) = std::sqrt(profile_density(cfg, w.grid.x(k)));
  w.normalized = true;
  return w;
}

// Confidence density e^(lambda)(q) = (e^lambda - 1) |phi(-q (e^lambda - 1))|^2,
// sampled on a dedicated grid adapted to its support [-delta, delta].
struct SampledDensity {
  Grid1D grid;
  Eigen::VectorXd values;
};

inline SampledDensity density_e(const PositionModelConfig& cfg) {
  cfg.validate();
  double scale = std::expm1(cfg.lambda);  // e^lambda - 1
  SampledDensity d;
  d.grid = {2.0 * cfg.delta(), cfg.grid.n};
  if (2.0 * cfg.delta() / d.grid.cell() < 32.0)
    throw std::runtime_error("density_e: grid too coarse to resolve delta");
  d.values.resize(d.grid.n);
  for (int k = 0; k < d.grid.n; ++k)
    d.values(k) = scale * profile_density(cfg, -d.grid.x(k) * scale);
  return d;
}

inline double integrate(const Grid1D& g, const Eigen::VectorXd& v) {
  double s = 0.0;
  for (int k = 0; k + 1 < g.n; ++k) s += 0.5 * (v(k) + v(k + 1));
  return s * g.cell();
}

// Scaled pointer outcome z = f(q_A(1)) = q + (e^-lambda/(1-e^-lambda)) y.
inline double pointer_map_sample(const PositionModelConfig& cfg, double q,
                                 double y) {
  return q + cfg.flow_coef() * y;
}

// Numerical support edges of e (density above a relative floor).
inline std::pair<double, double> density_support(const SampledDensity& d) {
  double floor = 1e-12 * d.values.maxCoeff();
  int lo = 0, hi = d.grid.n - 1;
  while (lo < d.grid.n && d.values(lo) <= floor) ++lo;
  while (hi >= 0 && d.values(hi) <= floor) --hi;
  if (lo > hi) throw std::runtime_error("density_support: empty density");
  return {d.grid.x(lo), d.grid.x(hi)};
}

// Smallest alpha with: system states supported in [0, inf) register raw
// pointer outcome in [-alpha, inf) with probability >= 1 - 1e-9. From the
// support edge of e mapped back through the f-scaling.
inline double calibration_error(const PositionModelConfig& cfg) {
  auto [lo, hi] = density_support(density_e(cfg));
  (void)hi;
  return std::max(0.0, -lo) * (-std::expm1(-cfg.lambda));
}

// Smallest beta with: conditional on pointer outcome in R+, a subsequent
// sharp position measurement lies in [-beta, inf) with probability >= 1-1e-9.
inline double repeatability_error(const PositionModelConfig& cfg) {
  auto [lo, hi] = density_support(density_e(cfg));
  return std::max(std::max(0.0, -lo), std::max(0.0, hi));
}

// --- Smeared-position POVM -----------------------------------------------------

struct Interval {
  double a, b;  // outcome interval [a, b)
};

struct SmearedPositionPOVM {
  SampledDensity density;
  std::vector<Interval> partition;
};

// (chi_X * e)(q) = int_X e(z - q) dz, via the cumulative of e.
inline Eigen::VectorXd smeared_effect(const PositionModelConfig& cfg,
                                      const SampledDensity& e,
                                      const Interval& x) {
  Eigen::VectorXd cum(e.grid.n);
  double s = 0.0;
  cum(0) = 0.0;
  for (int k = 1; k < e.grid.n; ++k) {
    s += 0.5 * (e.values(k - 1) + e.values(k)) * e.grid.cell();
    cum(k) = s;
  }
  double total = cum(e.grid.n - 1);
  auto cdf = [&](double z) {
    if (z <= e.grid.x(0)) return 0.0;
    if (z >= e.grid.x(e.grid.n - 1)) return total;
    double t = (z - e.grid.x(0)) / e.grid.cell();
    int k = static_cast<int>(t);
    double frac = t - static_cast<double>(k);
    return cum(k) * (1.0 - frac) + cum(k + 1) * frac;
  };
  Eigen::VectorXd out(cfg.grid.n);
  for (int k = 0; k < cfg.grid.n; ++k) {
    double q = cfg.grid.x(k);
    out(k) = cdf(x.b - q) - cdf(x.a - q);
  }
  return out;
}

// --- Momentum-space quantities ---------------------------------------------------

// <P> and <P^2> of a wavefunction via the discrete Fourier transform.
inline std::pair<double, double> momentum_moments(const Wavefunction1D& w) {
  const int n = w.grid.n;
  std::vector<cx> in(n), out(n);
  for (int k = 0; k < n; ++k) in[k] = w.values(k);
  Eigen::FFT<double> fft;
  fft.fwd(out, in);
  const double length = 2.0 * w.grid.extent + w.grid.cell();
  double p1 = 0.0, p2 = 0.0, total = 0.0;
  for (int j = 0; j < n; ++j) {
    int jj = j <= n / 2 ? j : j - n;  // wrapped frequency
    double kj = 2.0 * kPi * static_cast<double>(jj) / length;
    double wgt = std::norm(out[j]);
    total += wgt;
    p1 += kj * wgt;
    p2 += kj * kj * wgt;
  }
  return {p1 / total, p2 / total};
}

inline double momentum_variance(const Wavefunction1D& w) {
  auto [p1, p2] = momentum_moments(w);
  return p2 - p1 * p1;
}

inline double second_moment(const Wavefunction1D& w) {
  Eigen::VectorXd v(w.grid.n);
  for (int k = 0; k < w.grid.n; ++k)
    v(k) = w.grid.x(k) * w.grid.x(k) * std::norm(w.values(k));
  return integrate(w.grid, v) / w.norm_sq();
}

struct PositionOzawaReport {
  double epsilon_sq = 0.0;    // (e^-l/(1-e^-l))^2 <Q_A^2>_phi, state independent
  double bound = 0.0;         // 1 / (4 (Delta_phi P_A)^2), Yanase-form
  std::string note;
};

inline PositionOzawaReport position_ozawa_check(const PositionModelConfig& cfg) {
  cfg.validate();
  if (cfg.profile != ApparatusProfile::raised_cosine)
    throw std::invalid_argument(
        "position_ozawa_check: box profile has divergent momentum variance");
  Wavefunction1D phi = apparatus_state(cfg);
  double c = cfg.flow_coef();
  PositionOzawaReport r;
  r.epsilon_sq = c * c * second_moment(phi);
  double varp = momentum_variance(phi);
  if (!std::isfinite(varp) || varp <= 0.0)
    throw std::runtime_error("position_ozawa_check: bad momentum variance");
  r.bound = 1.0 / (4.0 * varp);
  r.note =
      "model violates the pointer/apparatus commutation condition; only the "
      "universal commutator form of the inequality is asserted";
  return r;
}

// Seeded smooth system state: superposition of a few Gaussian bumps.
inline Wavefunction1D random_system_state(const PositionModelConfig& cfg,
                                          Rng& rng) {
  Wavefunction1D w;
  w.grid = cfg.grid;
  w.values = Eigen::VectorXcd::Zero(cfg.grid.n);
  for (int b = 0; b < 4; ++b) {
    cx amp = rng.cgauss();
    double center = (rng.uniform() - 0.5) * cfg.grid.extent / 2.0;
    double width = 0.2 + 0.8 * rng.uniform();
    for (int k = 0; k < cfg.grid.n; ++k) {
      double u = (cfg.grid.x(k) - center) / width;
      w.values(k) += amp * std::exp(-0.5 * u * u);
    }
  }
  w.values /= std::sqrt(w.norm_sq());
  w.normalized = true;
  return w;
}

// min over sampled system states of epsilon_sq - universal commutator bound,
// with the conserved quantity P + P_A ([N, P + P_A] = i * flow_coef here).
inline double universal_ozawa_min_slack(const PositionModelConfig& cfg,
                                        int n_states, std::uint64_t seed) {
  PositionOzawaReport r = position_ozawa_check(cfg);
  double c = cfg.flow_coef();
  double var_pa = momentum_variance(apparatus_state(cfg));
  Rng rng(seed);
  double min_slack = std::numeric_limits<double>::infinity();
  for (int i = 0; i < n_states; ++i) {
    Wavefunction1D psi = random_system_state(cfg, rng);
    double var_p = momentum_variance(psi);
    double bound = 0.25 * c * c / (var_p + var_pa);
    min_slack = std::min(min_slack, r.epsilon_sq - bound);
  }
  return min_slack;
}

// --- Report table -----------------------------------------------------------------

struct SteinShimonyRow {
  double lambda, alpha, beta, epsilon_sq, bound;
};

inline std::vector<SteinShimonyRow> stein_shimony_report(
    double ell, const std::vector<double>& lambdas,
    const Grid1D& grid = Grid1D{}) {
  std::vector<SteinShimonyRow> rows;
  for (double lam : lambdas) {
    PositionModelConfig box{lam, ell, ApparatusProfile::box, grid};
    PositionModelConfig rc{lam, ell, ApparatusProfile::raised_cosine, grid};
    PositionOzawaReport oz = position_ozawa_check(rc);
    rows.push_back({lam, calibration_error(box), repeatability_error(box),
                    oz.epsilon_sq, oz.bound});
  }
  return rows;
}

}  // namespace waylab
