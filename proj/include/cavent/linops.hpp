// Copyright 2026 The cavent Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Dense linear algebra helpers shared by every other module: Kronecker
// products, partial traces, Liouville-space vectorization and density-matrix
// checks.
//
// Vectorization convention (used repo-wide): row-major stacking,
//   vec(rho)[i * d + j] = rho(i, j),
// under which vec(A * rho * B) = kron(A, B^T) * vec(rho).

#ifndef CAVENT_LINOPS_HPP_
#define CAVENT_LINOPS_HPP_

#include <complex>
#include <cstddef>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace cavent {

template <typename Scalar>
using MatrixX = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;

template <typename Scalar>
using VectorX = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

using Complex = std::complex<double>;
using ComplexMatrix = MatrixX<Complex>;
using ComplexVector = VectorX<Complex>;

inline constexpr double kDensityTolerance = 1e-9;

class DimensionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class FactorizationError : public DimensionError {
 public:
  using DimensionError::DimensionError;
};

class InvalidStateError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Ordered factor dimensions of a tensor-product space.
class TensorFactorization {
 public:
  explicit TensorFactorization(std::vector<Eigen::Index> factor_dims);

  const std::vector<Eigen::Index>& dims() const { return dims_; }
  std::size_t size() const { return dims_.size(); }
  Eigen::Index total() const { return total_; }

 private:
  std::vector<Eigen::Index> dims_;
  Eigen::Index total_ = 1;
};

template <typename DerivedA, typename DerivedB>
MatrixX<typename DerivedA::Scalar> kron(const Eigen::MatrixBase<DerivedA>& a,
                                        const Eigen::MatrixBase<DerivedB>& b) {
  using Scalar = typename DerivedA::Scalar;
  const Eigen::Index br = b.rows();
  const Eigen::Index bc = b.cols();
  MatrixX<Scalar> out(a.rows() * br, a.cols() * bc);
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index j = 0; j < a.cols(); ++j) {
      out.block(i * br, j * bc, br, bc) = a(i, j) * b.template cast<Scalar>();
    }
  }
  return out;
}

/// Reduced matrix on the `keep` factors (kept in their original order).
ComplexMatrix partial_trace(const ComplexMatrix& rho,
                            const TensorFactorization& fact,
                            std::span<const std::size_t> keep);

inline ComplexMatrix partial_trace(const ComplexMatrix& rho,
                                   const TensorFactorization& fact,
                                   std::initializer_list<std::size_t> keep) {
  return partial_trace(rho, fact,
                       std::span<const std::size_t>(keep.begin(), keep.size()));
}

template <typename Derived>
VectorX<typename Derived::Scalar> vectorize(const Eigen::MatrixBase<Derived>& m) {
  VectorX<typename Derived::Scalar> v(m.rows() * m.cols());
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    for (Eigen::Index j = 0; j < m.cols(); ++j) v(i * m.cols() + j) = m(i, j);
  }
  return v;
}

template <typename Derived>
MatrixX<typename Derived::Scalar> devectorize(const Eigen::MatrixBase<Derived>& v,
                                              Eigen::Index dim) {
  if (v.cols() != 1 || v.rows() != dim * dim) {
    throw DimensionError("devectorize: vector length " + std::to_string(v.rows()) +
                         " is not " + std::to_string(dim) + "^2");
  }
  const VectorX<typename Derived::Scalar> flat = v;  // evaluate product expressions once
  MatrixX<typename Derived::Scalar> m(dim, dim);
  for (Eigen::Index i = 0; i < dim; ++i) {
    for (Eigen::Index j = 0; j < dim; ++j) m(i, j) = flat(i * dim + j);
  }
  return m;
}

/// Superoperator of rho -> left * rho * right.
ComplexMatrix sandwich_superop(const ComplexMatrix& left, const ComplexMatrix& right);

ComplexMatrix identity_superop(Eigen::Index dim);

ComplexMatrix apply_superop(const ComplexMatrix& superop, const ComplexMatrix& rho);

/// Superoperator of (Phi_A (x) Phi_B) acting on rho over the (A, B) product
/// space, with the Liouville indices permuted so that the joint state keeps
/// the row-major convention on the dim_a * dim_b Hilbert space.
ComplexMatrix tensor_superops(const ComplexMatrix& phi_a, Eigen::Index dim_a,
                              const ComplexMatrix& phi_b, Eigen::Index dim_b);

double hermiticity_error(const ComplexMatrix& m);
double min_eigenvalue_hermitian(const ComplexMatrix& m);

struct DensityReport {
  bool square = false;
  double hermiticity_error = 0.0;
  double trace_error = 0.0;
  double min_eigenvalue = 0.0;

  bool ok(double tol = kDensityTolerance) const {
    return square && hermiticity_error <= tol && trace_error <= tol &&
           min_eigenvalue >= -tol;
  }
  std::string describe() const;
};

DensityReport inspect_density(const ComplexMatrix& rho);

/// Throws InvalidStateError naming `what` unless rho satisfies the
/// density-matrix invariants within `tol`.
void require_density(const ComplexMatrix& rho, const std::string& what,
                     double tol = kDensityTolerance);

}  // namespace cavent

#endif  // CAVENT_LINOPS_HPP_
