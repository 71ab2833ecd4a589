#pragma once
// Deterministic report emission shared by the CLI and the acceptance suite:
// sweep tables as CSV, model verdicts as JSON documents.

#include <cstdio>
#include <string>

#include "models.hpp"
#include "position.hpp"

namespace waylab {

inline std::string fmt_g(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

// Position sweep: one row per lambda.
inline std::string stein_shimony_csv(double ell,
                                     const std::vector<double>& lambdas,
                                     const Grid1D& grid = Grid1D{}) {
  std::string out = "lambda,alpha,beta,epsilon_sq,bound\n";
  for (const SteinShimonyRow& r : stein_shimony_report(ell, lambdas, grid))
    out += fmt_g(r.lambda) + "," + fmt_g(r.alpha) + "," + fmt_g(r.beta) + "," +
           fmt_g(r.epsilon_sq) + "," + fmt_g(r.bound) + "\n";
  return out;
}

// Failure-weight sweep: one row per coupling size n.
inline std::string wigner_sweep_csv(int n_max) {
  std::string out = "n,eta_sq,residual,best_start\n";
  for (int n = 1; n <= n_max; ++n) {
    WignerOptResult r = optimize_wigner_error(n);
    out += std::to_string(n) + "," + fmt_g(r.eta_sq) + "," +
           fmt_g(wigner_feasibility(n, r.params)) + "," +
           std::to_string(r.best_start) + "\n";
  }
  return out;
}

// Full verdict document for one model: scheme, expected signs, measured
// report, and trade-off reports on the canonical input state (the top
// eigenvector of the target observable).
inline nlohmann::ordered_json model_report(const ModelBundle& b) {
  nlohmann::ordered_json j = bundle_to_json(b);
  WayReport w = way_verdict(b.scheme, b.M, b.conserved, b.target);
  j["report"] = to_json(w);
  Eigen::SelfAdjointEigenSolver<Mat> es(b.M);
  Vec psi = es.eigenvectors().col(b.scheme.system_dim - 1);
  j["noise"] = to_json(noise_report(b.scheme, b.M, b.conserved, psi));
  j["repeatability"] =
      to_json(repeatability_report(b.scheme, b.M, b.conserved, psi));
  j["expected_match"] = matches(b.expected, w);
  return j;
}

}  // namespace waylab
