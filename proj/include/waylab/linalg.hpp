#pragma once
// Dense complex linear algebra over explicitly dimensioned tensor-product
// spaces: Kronecker composition, partial trace, spectral analysis and
// evolution primitives shared by all other modules.

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <cstdlib>
#include <random>
#include <thread>
#include <stdexcept>
#include <string>
#include <vector>

namespace waylab {

using cx = std::complex<double>;
using Mat = Eigen::MatrixXcd;
using Vec = Eigen::VectorXcd;

constexpr double kPi = 3.14159265358979323846;
constexpr double kHermTol = 1e-10;
constexpr double kDegenerateGap = 1e-9;

inline Mat identity(int d) { return Mat::Identity(d, d); }

// --- Kronecker composition -------------------------------------------------

inline Mat tensor(const Mat& a, const Mat& b) {
  Mat out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

inline Vec tensor(const Vec& a, const Vec& b) {
  Vec out(a.size() * b.size());
  for (Eigen::Index i = 0; i < a.size(); ++i)
    out.segment(i * b.size(), b.size()) = a(i) * b;
  return out;
}

// --- Partial trace ----------------------------------------------------------

// Traces out the factors not listed in `keep` (indices into `dims`).
inline Mat partial_trace(const Mat& op, const std::vector<int>& dims,
                         const std::vector<int>& keep) {
  Eigen::Index total = 1;
  for (int d : dims) total *= d;
  if (op.rows() != total || op.cols() != total)
    throw std::invalid_argument("partial_trace: dims mismatch operator size");
  for (int k : keep)
    if (k < 0 || k >= static_cast<int>(dims.size()))
      throw std::out_of_range("partial_trace: keep index out of range");

  const int nf = static_cast<int>(dims.size());
  std::vector<bool> kept(nf, false);
  for (int k : keep) kept[k] = true;

  Eigen::Index dk = 1, dt = 1;
  for (int i = 0; i < nf; ++i) (kept[i] ? dk : dt) *= dims[i];

  // strides of each factor in the flat index
  std::vector<Eigen::Index> stride(nf, 1);
  for (int i = nf - 2; i >= 0; --i) stride[i] = stride[i + 1] * dims[i + 1];

  std::vector<int> kidx, tidx;
  for (int i = 0; i < nf; ++i) (kept[i] ? kidx : tidx).push_back(i);

  auto flat = [&](Eigen::Index kpart, Eigen::Index tpart) {
    Eigen::Index idx = 0;
    Eigen::Index kq = kpart;
    for (int i = static_cast<int>(kidx.size()) - 1; i >= 0; --i) {
      idx += (kq % dims[kidx[i]]) * stride[kidx[i]];
      kq /= dims[kidx[i]];
    }
    Eigen::Index tq = tpart;
    for (int i = static_cast<int>(tidx.size()) - 1; i >= 0; --i) {
      idx += (tq % dims[tidx[i]]) * stride[tidx[i]];
      tq /= dims[tidx[i]];
    }
    return idx;
  };

  Mat out = Mat::Zero(dk, dk);
  for (Eigen::Index r = 0; r < dk; ++r)
    for (Eigen::Index c = 0; c < dk; ++c) {
      cx s = 0.0;
      for (Eigen::Index t = 0; t < dt; ++t) s += op(flat(r, t), flat(c, t));
      out(r, c) = s;
    }
  return out;
}

// --- Predicates -------------------------------------------------------------

inline bool is_hermitian(const Mat& a, double tol = kHermTol) {
  return a.rows() == a.cols() && (a - a.adjoint()).cwiseAbs().maxCoeff() <= tol;
}

inline bool is_unitary(const Mat& u, double tol = kHermTol) {
  if (u.rows() != u.cols()) return false;
  return (u.adjoint() * u - identity(static_cast<int>(u.rows())))
             .cwiseAbs()
             .maxCoeff() <= tol;
}

inline double op_norm(const Mat& a) {
  if (a.size() == 0) return 0.0;
  Eigen::JacobiSVD<Mat> svd(a);
  return svd.singularValues()(0);
}

inline bool is_projection(const Mat& p, double tol = kHermTol) {
  return is_hermitian(p, tol) && op_norm(p * p - p) <= tol;
}

inline bool is_effect(const Mat& e, double tol = kHermTol) {
  if (!is_hermitian(e, tol)) return false;
  Eigen::SelfAdjointEigenSolver<Mat> es(e);
  return es.eigenvalues().minCoeff() >= -tol &&
         es.eigenvalues().maxCoeff() <= 1.0 + tol;
}

// --- Heisenberg picture / exponential / spectrum -----------------------------

inline Mat heisenberg(const Mat& u, const Mat& a) {
  if (u.rows() != a.rows() || u.cols() != a.cols())
    throw std::invalid_argument("heisenberg: dimension mismatch");
  return u.adjoint() * a * u;
}

// exp(-i t H) for hermitian H, via eigendecomposition.
inline Mat mat_exp(const Mat& h, double t) {
  if (!is_hermitian(h)) throw std::invalid_argument("mat_exp: non-hermitian");
  Eigen::SelfAdjointEigenSolver<Mat> es(h);
  Vec phases(h.rows());
  for (Eigen::Index i = 0; i < h.rows(); ++i)
    phases(i) = std::exp(cx(0.0, -t * es.eigenvalues()(i)));
  return es.eigenvectors() * phases.asDiagonal() * es.eigenvectors().adjoint();
}

struct Spectrum {
  std::vector<double> eigenvalues;  // ascending, degeneracies merged
  std::vector<Mat> projectors;      // resolve the identity
};

inline Spectrum eig_hermitian(const Mat& a, double merge_gap = kDegenerateGap) {
  if (!is_hermitian(a))
    throw std::invalid_argument("eig_hermitian: non-hermitian");
  Eigen::SelfAdjointEigenSolver<Mat> es(a);
  Spectrum sp;
  Eigen::Index i = 0;
  while (i < a.rows()) {
    Eigen::Index j = i;
    Mat p = Mat::Zero(a.rows(), a.cols());
    double lam = 0.0;
    while (j < a.rows() &&
           es.eigenvalues()(j) - es.eigenvalues()(i) < merge_gap) {
      p += es.eigenvectors().col(j) * es.eigenvectors().col(j).adjoint();
      lam += es.eigenvalues()(j);
      ++j;
    }
    sp.eigenvalues.push_back(lam / static_cast<double>(j - i));
    sp.projectors.push_back(std::move(p));
    i = j;
  }
  return sp;
}

inline double commutator_norm(const Mat& a, const Mat& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols())
    throw std::invalid_argument("commutator_norm: dimension mismatch");
  return op_norm(a * b - b * a);
}

// --- Phase-insensitive comparison -------------------------------------------

// ||a - e^{i theta} b|| minimized over theta.
inline double phase_insensitive_distance(const Vec& a, const Vec& b) {
  cx ov = b.dot(a);  // <b,a>
  cx phase = std::abs(ov) > 1e-300 ? ov / std::abs(ov) : cx(1.0, 0.0);
  return (a - phase * b).norm();
}

inline bool equal_up_to_phase(const Vec& a, const Vec& b, double tol) {
  return phase_insensitive_distance(a, b) <= tol;
}

// --- Seeded randomness (explicit Box-Muller: stable across library versions) --

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : gen_(seed) {}

  double uniform() {  // in [0,1)
    return static_cast<double>(gen_() >> 11) * 0x1.0p-53;
  }

  double gauss() {
    if (have_spare_) {
      have_spare_ = false;
      return spare_;
    }
    double u, v, s;
    do {
      u = 2.0 * uniform() - 1.0;
      v = 2.0 * uniform() - 1.0;
      s = u * u + v * v;
    } while (s >= 1.0 || s == 0.0);
    double m = std::sqrt(-2.0 * std::log(s) / s);
    spare_ = v * m;
    have_spare_ = true;
    return u * m;
  }

  cx cgauss() { return cx(gauss(), gauss()); }

  std::uint64_t raw() { return gen_(); }

 private:
  std::mt19937_64 gen_;
  bool have_spare_ = false;
  double spare_ = 0.0;
};

inline Vec random_state(Rng& rng, int dim) {
  Vec v(dim);
  for (int i = 0; i < dim; ++i) v(i) = rng.cgauss();
  v.normalize();
  return v;
}

inline Mat random_hermitian(Rng& rng, int dim) {
  Mat g(dim, dim);
  for (int i = 0; i < dim; ++i)
    for (int j = 0; j < dim; ++j) g(i, j) = rng.cgauss();
  return (g + g.adjoint()) / 2.0;
}

inline Mat haar_unitary(Rng& rng, int dim) {
  Mat g(dim, dim);
  for (int i = 0; i < dim; ++i)
    for (int j = 0; j < dim; ++j) g(i, j) = rng.cgauss();
  Eigen::HouseholderQR<Mat> qr(g);
  Mat q = qr.householderQ();
  Mat r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (int i = 0; i < dim; ++i) {
    cx d = r(i, i);
    q.col(i) *= std::abs(d) > 1e-300 ? d / std::abs(d) : cx(1.0, 0.0);
  }
  return q;
}

// --- Thread budget (WAYLAB_THREADS, 0 = auto) --------------------------------

inline int thread_budget() {
  if (const char* env = std::getenv("WAYLAB_THREADS")) {
    int n = std::atoi(env);
    if (n > 0) return n;
  }
  unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : static_cast<int>(hw);
}

}  // namespace waylab
