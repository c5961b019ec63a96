#ifndef MAGDTN_SCHUR_EIGS_HPP
#define MAGDTN_SCHUR_EIGS_HPP

// Lowest eigenvalues of a Schur-complement pencil
//
//   S v = lambda M v,   S = A_bb - A_bi A_ii^{-1} A_ib,
//
// for a sparse Hermitian form matrix A whose last nb unknowns are the
// boundary block and a positive diagonal boundary mass M. S is never formed:
// (S - sigma M)^{-1} is applied through one sparse LDL^T factorization of the
// full shifted matrix, and the eigenvalues come from Lanczos with full
// reorthogonalization, one locked eigenpair per restart.

#include <Eigen/Dense>
#include <Eigen/Sparse>
#include <Eigen/SparseCholesky>
#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <limits>
#include <memory>
#include <random>
#include <sstream>
#include <vector>

#include "magdtn/error.hpp"

namespace magdtn {

template <class Scalar>
class ShiftInvertSchur {
 public:
  using Real = typename Eigen::NumTraits<Scalar>::Real;
  using SparseMatrix = Eigen::SparseMatrix<Scalar>;
  using Vector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;
  using Matrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
  using RealVector = Eigen::Matrix<Real, Eigen::Dynamic, 1>;
  using RealMatrix = Eigen::Matrix<Real, Eigen::Dynamic, Eigen::Dynamic>;

  struct Result {
    std::vector<Real> eigenvalues;
    std::vector<Real> residuals;  // |OP x - theta x| / theta per locked pair
    Real shift = 0;
    int applications = 0;
    /// Full-length eigenvectors (interior extension plus boundary trace),
    /// boundary traces normalized in the mass inner product. Filled only
    /// when requested.
    std::vector<Vector> vectors;
  };

  ShiftInvertSchur(const SparseMatrix& form, Eigen::Index n_interior, const RealVector& boundary_mass)
      : form_(form), ni_(n_interior), nb_(form.rows() - n_interior), sqrt_mass_(boundary_mass.cwiseSqrt()) {
    if (form.rows() != form.cols() || boundary_mass.size() != nb_ || nb_ <= 0) {
      throw Error(ErrorKind::FactorizationFailure, "Schur pencil: inconsistent block sizes");
    }
    if ((boundary_mass.array() <= 0).any()) {
      throw Error(ErrorKind::FactorizationFailure, "Schur pencil: boundary mass must be positive");
    }
  }

  /// The `count` smallest eigenvalues, ascending. `seed` fixes the random
  /// starting vectors; `tol` bounds the relative Ritz residual.
  Result lowest(int count, std::uint64_t seed = 1, Real tol = Real(1e-10), bool with_vectors = false) const {
    if (count < 1 || count > nb_) {
      std::ostringstream os;
      os << "requested " << count << " eigenvalues of a " << nb_ << "-dimensional pencil";
      throw Error(ErrorKind::ConvergenceFailure, os.str());
    }
    Result res;
    std::mt19937_64 rng(seed);

    // Every lambda is >= 0, so sigma = -1 keeps the shifted matrix definite.
    auto solver = std::make_unique<Solver>();
    Real sigma = -1;
    if (!factor(sigma, *solver)) {
      throw Error(ErrorKind::FactorizationFailure,
                  "form matrix is not positive definite on the interior block");
    }
    Matrix locked(nb_, 0);
    const Ritz rough = lanczos(*solver, random_vector(rng), locked, std::min<int>(nb_, 40), Real(1e-6), res);
    const Real estimate = sigma + 1 / rough.theta;

    // Move the shift just below the estimate; back off until definite.
    Real delta = Real(0.05) * (1 + std::abs(estimate));
    for (int attempt = 0; attempt < 8; ++attempt, delta *= 4) {
      const Real s = estimate - delta;
      if (s <= sigma) break;
      auto trial = std::make_unique<Solver>();
      if (factor(s, *trial)) {
        sigma = s;
        solver = std::move(trial);
        break;
      }
    }
    res.shift = sigma;

    const int max_steps = static_cast<int>(std::min<Eigen::Index>(nb_, 400));
    for (int k = 0; k < count; ++k) {
      const Ritz r = lanczos(*solver, random_vector(rng), locked, max_steps - k, tol, res);
      if (!r.converged) {
        std::ostringstream os;
        os << "Lanczos: eigenvalue " << k + 1 << " stalled at relative residual " << r.residual;
        throw Error(ErrorKind::ConvergenceFailure, os.str());
      }
      locked.conservativeResize(Eigen::NoChange, locked.cols() + 1);
      locked.col(locked.cols() - 1) = r.vector;
      res.eigenvalues.push_back(sigma + 1 / r.theta);
      res.residuals.push_back(r.residual);
    }
    std::vector<int> order(count);
    for (int i = 0; i < count; ++i) order[i] = i;
    std::sort(order.begin(), order.end(),
              [&](int a, int b) { return res.eigenvalues[a] < res.eigenvalues[b]; });
    Result sorted = res;
    for (int i = 0; i < count; ++i) {
      sorted.eigenvalues[i] = res.eigenvalues[order[i]];
      sorted.residuals[i] = res.residuals[order[i]];
      if (with_vectors) {
        // (S - sigma M) v = (lambda - sigma) M v, so solving with that right
        // side returns v on the boundary and its extension inside.
        Vector rhs = Vector::Zero(ni_ + nb_);
        rhs.tail(nb_) = Scalar(sorted.eigenvalues[i] - sigma) *
                        sqrt_mass_.template cast<Scalar>().cwiseProduct(locked.col(order[i]));
        sorted.vectors.push_back(solver->solve(rhs));
      }
    }
    return sorted;
  }

  Eigen::Index interior_size() const { return ni_; }
  Eigen::Index boundary_size() const { return nb_; }

 private:
  using Solver = Eigen::SimplicialLDLT<SparseMatrix, Eigen::Lower, Eigen::AMDOrdering<int>>;

  struct Ritz {
    Real theta = 0;
    Vector vector;
    Real residual = 0;
    bool converged = false;
  };

  // Factors A - sigma diag(0, M); false unless the factorization succeeds
  // with a strictly positive diagonal (i.e. the matrix is definite).
  bool factor(Real sigma, Solver& solver) const {
    SparseMatrix shifted = form_;
    for (Eigen::Index j = 0; j < nb_; ++j) {
      const Eigen::Index k = ni_ + j;
      shifted.coeffRef(k, k) -= Scalar(sigma * sqrt_mass_(j) * sqrt_mass_(j));
    }
    solver.compute(shifted);
    if (solver.info() != Eigen::Success) return false;
    const auto d = solver.vectorD();
    for (Eigen::Index i = 0; i < d.size(); ++i) {
      if (!(std::real(d(i)) > 0)) return false;
    }
    return true;
  }

  // q -> M^{1/2} (S - sigma M)^{-1} M^{1/2} q.
  Vector apply(const Solver& solver, const Vector& q, Result& res) const {
    Vector rhs = Vector::Zero(ni_ + nb_);
    rhs.tail(nb_) = sqrt_mass_.template cast<Scalar>().cwiseProduct(q);
    const Vector y = solver.solve(rhs);
    ++res.applications;
    return sqrt_mass_.template cast<Scalar>().cwiseProduct(y.tail(nb_));
  }

  Vector random_vector(std::mt19937_64& rng) const {
    std::normal_distribution<Real> g;
    Vector v(nb_);
    for (Eigen::Index i = 0; i < nb_; ++i) {
      if constexpr (Eigen::NumTraits<Scalar>::IsComplex) {
        v(i) = Scalar(g(rng), g(rng));
      } else {
        v(i) = g(rng);
      }
    }
    return v;
  }

  static void orthogonalize(Vector& w, const Matrix& basis, Eigen::Index cols) {
    if (cols == 0) return;
    for (int pass = 0; pass < 2; ++pass) {
      const Vector c = basis.leftCols(cols).adjoint() * w;
      w -= basis.leftCols(cols) * c;
    }
  }

  // Largest Ritz pair of the shift-invert operator restricted to the
  // orthogonal complement of `locked`.
  Ritz lanczos(const Solver& solver, Vector v, const Matrix& locked, int max_steps, Real tol,
               Result& res) const {
    Ritz out;
    orthogonalize(v, locked, locked.cols());
    v.normalize();
    max_steps = std::max(1, std::min<int>(max_steps, static_cast<int>(nb_ - locked.cols())));
    Matrix Q(nb_, max_steps + 1);
    Q.col(0) = v;
    std::vector<Real> alpha, beta;
    for (int k = 0; k < max_steps; ++k) {
      Vector w = apply(solver, Q.col(k), res);
      const Real a = std::real(Q.col(k).dot(w));
      w -= Scalar(a) * Q.col(k);
      if (k > 0) w -= Scalar(beta[k - 1]) * Q.col(k - 1);
      orthogonalize(w, locked, locked.cols());
      orthogonalize(w, Q, k + 1);
      const Real bk = w.norm();
      alpha.push_back(a);
      beta.push_back(bk);

      const bool exhausted = bk <= std::numeric_limits<Real>::epsilon() * std::abs(a) * 10 ||
                             k + 1 == max_steps;
      if (k % 4 == 3 || exhausted) {
        const int m = k + 1;
        RealMatrix T = RealMatrix::Zero(m, m);
        for (int i = 0; i < m; ++i) {
          T(i, i) = alpha[i];
          if (i + 1 < m) T(i, i + 1) = T(i + 1, i) = beta[i];
        }
        Eigen::SelfAdjointEigenSolver<RealMatrix> eig(T);
        const Real theta = eig.eigenvalues()(m - 1);
        const RealVector y = eig.eigenvectors().col(m - 1);
        const Real residual = std::abs(bk * y(m - 1)) / std::abs(theta);
        out.theta = theta;
        out.residual = residual;
        if (residual <= tol || exhausted) {
          out.vector = Q.leftCols(m) * y.template cast<Scalar>();
          out.vector.normalize();
          out.converged = residual <= tol || bk <= std::numeric_limits<Real>::epsilon() * std::abs(a) * 10;
          return out;
        }
      }
      Q.col(k + 1) = w / Scalar(bk);
    }
    return out;
  }

  SparseMatrix form_;
  Eigen::Index ni_;
  Eigen::Index nb_;
  RealVector sqrt_mass_;
};

}  // namespace magdtn

#endif  // MAGDTN_SCHUR_EIGS_HPP
