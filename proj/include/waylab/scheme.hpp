#pragma once
// Measurement scheme <K, U, phi, Z, f>: induced POVM, final states,
// conditional post-measurement states, and the defect functionals
// (repeatability, Yanase, conservation, accuracy).

#include <json.hpp>

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "linalg.hpp"

namespace waylab {

// Outcome scaling: affine z -> a z + b with a != 0 (exact inverse on range).
struct AffineMap {
  double a = 1.0;
  double b = 0.0;
  double operator()(double z) const { return a * z + b; }
  double inverse(double x) const { return (x - b) / a; }
};

struct MeasurementScheme {
  int system_dim = 0;
  int apparatus_dim = 0;
  Mat U;    // unitary on system (x) apparatus
  Vec phi;  // normalized apparatus state
  Mat Z;    // hermitian pointer on apparatus
  AffineMap f;

  int total_dim() const { return system_dim * apparatus_dim; }

  void validate() const {
    if (system_dim <= 0 || apparatus_dim <= 0)
      throw std::invalid_argument("scheme: nonpositive dimension");
    if (U.rows() != total_dim() || U.cols() != total_dim())
      throw std::invalid_argument("scheme: U dimension mismatch");
    if (!is_unitary(U)) throw std::invalid_argument("scheme: U not unitary");
    if (phi.size() != apparatus_dim)
      throw std::invalid_argument("scheme: phi dimension mismatch");
    if (std::abs(phi.squaredNorm() - 1.0) > 1e-12)
      throw std::invalid_argument("scheme: phi not normalized");
    if (Z.rows() != apparatus_dim || !is_hermitian(Z))
      throw std::invalid_argument("scheme: Z invalid");
    if (f.a == 0.0) throw std::invalid_argument("scheme: f not invertible");
  }
};

struct DiscretePOVM {
  struct Outcome {
    double label;
    Mat effect;  // on the system
  };
  std::vector<Outcome> outcomes;

  const Mat* find(double label, double tol = 1e-9) const {
    for (const auto& o : outcomes)
      if (std::abs(o.label - label) <= tol) return &o.effect;
    return nullptr;
  }
};

struct ConservedQuantity {
  Mat L1;  // on system
  Mat L2;  // on apparatus

  Mat total(int system_dim, int apparatus_dim) const {
    return tensor(L1, identity(apparatus_dim)) +
           tensor(identity(system_dim), L2);
  }
};

struct OutcomeState {
  double label;
  Mat rho;  // unnormalized conditional system state, tr(rho) = probability
  double probability;
};

// Spectral measure of a hermitian observable as a labeled POVM.
inline DiscretePOVM spectral_measure(const Mat& a) {
  DiscretePOVM p;
  Spectrum sp = eig_hermitian(a);
  for (std::size_t i = 0; i < sp.eigenvalues.size(); ++i)
    p.outcomes.push_back({sp.eigenvalues[i], sp.projectors[i]});
  return p;
}

// Embedding psi -> psi (x) phi as a (ds*da) x ds isometry.
inline Mat apparatus_embedding(const MeasurementScheme& s) {
  Mat b = Mat::Zero(s.total_dim(), s.system_dim);
  for (int j = 0; j < s.system_dim; ++j)
    b.block(j * s.apparatus_dim, j, s.apparatus_dim, 1) = s.phi;
  return b;
}

// f(Z) through the spectral calculus of Z.
inline Mat scaled_pointer(const MeasurementScheme& s) {
  Spectrum sp = eig_hermitian(s.Z);
  Mat out = Mat::Zero(s.apparatus_dim, s.apparatus_dim);
  for (std::size_t i = 0; i < sp.eigenvalues.size(); ++i)
    out += s.f(sp.eigenvalues[i]) * sp.projectors[i];
  return out;
}

inline Vec final_state(const MeasurementScheme& s, const Vec& psi) {
  if (psi.size() != s.system_dim)
    throw std::invalid_argument("final_state: dimension mismatch");
  return s.U * tensor(psi, s.phi);
}

// E(f(z)) = (1 (x) <phi|) U^dag (1 (x) P_z) U (1 (x) |phi>).
inline DiscretePOVM induced_povm(const MeasurementScheme& s) {
  Mat b = s.U * apparatus_embedding(s);
  Spectrum sp = eig_hermitian(s.Z);
  DiscretePOVM p;
  for (std::size_t i = 0; i < sp.eigenvalues.size(); ++i) {
    Mat lifted = tensor(identity(s.system_dim), sp.projectors[i]);
    p.outcomes.push_back({s.f(sp.eigenvalues[i]), b.adjoint() * lifted * b});
  }
  return p;
}

// rho_X = tr_K[(1 (x) P_z) |Psi><Psi| (1 (x) P_z)] per pointer outcome.
inline std::vector<OutcomeState> outcome_states(const MeasurementScheme& s,
                                                const Vec& psi) {
  Vec out = final_state(s, psi);
  Spectrum sp = eig_hermitian(s.Z);
  std::vector<OutcomeState> states;
  for (std::size_t i = 0; i < sp.eigenvalues.size(); ++i) {
    Vec proj = tensor(identity(s.system_dim), sp.projectors[i]) * out;
    Mat rho_full = proj * proj.adjoint();
    Mat rho = partial_trace(rho_full, {s.system_dim, s.apparatus_dim}, {0});
    states.push_back(
        {s.f(sp.eigenvalues[i]), rho, proj.squaredNorm()});
  }
  return states;
}

// Input sample for repeatability: eigenstates of the target observable
// (reconstructed from the labeled POVM) plus seeded random states.
inline std::vector<Vec> repeatability_sample(const MeasurementScheme& s,
                                             const DiscretePOVM& target,
                                             int n_random = 100,
                                             std::uint64_t seed = 20110601) {
  std::vector<Vec> sample;
  Mat obs = Mat::Zero(s.system_dim, s.system_dim);
  for (const auto& o : target.outcomes) obs += o.label * o.effect;
  Eigen::SelfAdjointEigenSolver<Mat> es(obs);
  for (int i = 0; i < s.system_dim; ++i) sample.push_back(es.eigenvectors().col(i));
  Rng rng(seed);
  for (int i = 0; i < n_random; ++i)
    sample.push_back(random_state(rng, s.system_dim));
  return sample;
}

// max over sampled inputs and outcomes X with prob > 1e-9 of
// 1 - tr[rho_X_hat E(X)], with E the induced POVM.
inline double repeatability_defect(const MeasurementScheme& s,
                                   const DiscretePOVM& target) {
  DiscretePOVM induced = induced_povm(s);
  double worst = 0.0;
  for (const Vec& psi : repeatability_sample(s, target)) {
    auto states = outcome_states(s, psi);
    for (std::size_t i = 0; i < states.size(); ++i) {
      if (states[i].probability <= 1e-9) continue;
      const Mat& e = induced.outcomes[i].effect;
      double rep =
          (states[i].rho * e).trace().real() / states[i].probability;
      worst = std::max(worst, 1.0 - rep);
    }
  }
  return worst;
}

// ||[Z, L2]|| normalized by ||Z|| ||L2|| when both are nonzero.
inline double yanase_defect(const MeasurementScheme& s,
                            const ConservedQuantity& c) {
  double raw = commutator_norm(s.Z, c.L2);
  double nz = op_norm(s.Z), nl = op_norm(c.L2);
  if (nz > 0.0 && nl > 0.0) return raw / (nz * nl);
  return raw;
}

inline double conservation_defect(const MeasurementScheme& s,
                                  const ConservedQuantity& c) {
  return commutator_norm(s.U, c.total(s.system_dim, s.apparatus_dim));
}

// max over outcome labels of ||E_induced - E_target||; labels present on one
// side only are compared against the zero effect.
inline double accuracy_error(const MeasurementScheme& s,
                             const DiscretePOVM& target) {
  DiscretePOVM induced = induced_povm(s);
  double worst = 0.0;
  Mat zero = Mat::Zero(s.system_dim, s.system_dim);
  for (const auto& o : induced.outcomes) {
    const Mat* t = target.find(o.label);
    worst = std::max(worst, op_norm(o.effect - (t ? *t : zero)));
  }
  for (const auto& o : target.outcomes)
    if (!induced.find(o.label))
      worst = std::max(worst, op_norm(o.effect));
  return worst;
}

// --- Serialization (keys: system_dim, apparatus_dim, U, phi, Z, f:{a,b}) ----

inline nlohmann::ordered_json mat_to_json(const Mat& m) {
  nlohmann::ordered_json rows = nlohmann::ordered_json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i)
    for (Eigen::Index j = 0; j < m.cols(); ++j)
      rows.push_back({m(i, j).real(), m(i, j).imag()});
  return rows;
}

inline Mat mat_from_json(const nlohmann::ordered_json& j, int rows, int cols) {
  if (static_cast<int>(j.size()) != rows * cols)
    throw std::invalid_argument("mat_from_json: size mismatch");
  Mat m(rows, cols);
  int k = 0;
  for (Eigen::Index i = 0; i < rows; ++i)
    for (Eigen::Index jj = 0; jj < cols; ++jj, ++k)
      m(i, jj) = cx(j[k][0].get<double>(), j[k][1].get<double>());
  return m;
}

inline nlohmann::ordered_json scheme_to_json(const MeasurementScheme& s) {
  nlohmann::ordered_json j;
  j["system_dim"] = s.system_dim;
  j["apparatus_dim"] = s.apparatus_dim;
  j["U"] = mat_to_json(s.U);
  j["phi"] = mat_to_json(s.phi);
  j["Z"] = mat_to_json(s.Z);
  j["f"] = {{"a", s.f.a}, {"b", s.f.b}};
  return j;
}

inline MeasurementScheme scheme_from_json(const nlohmann::ordered_json& j) {
  MeasurementScheme s;
  s.system_dim = j.at("system_dim").get<int>();
  s.apparatus_dim = j.at("apparatus_dim").get<int>();
  s.U = mat_from_json(j.at("U"), s.total_dim(), s.total_dim());
  s.phi = Vec(mat_from_json(j.at("phi"), s.apparatus_dim, 1));
  s.Z = mat_from_json(j.at("Z"), s.apparatus_dim, s.apparatus_dim);
  s.f.a = j.at("f").at("a").get<double>();
  s.f.b = j.at("f").at("b").get<double>();
  s.validate();
  return s;
}

}  // namespace waylab
