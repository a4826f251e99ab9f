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

#include "cavent/linops.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

namespace cavent {

TensorFactorization::TensorFactorization(std::vector<Eigen::Index> factor_dims)
    : dims_(std::move(factor_dims)) {
  if (dims_.empty()) throw FactorizationError("factorization needs at least one factor");
  for (Eigen::Index d : dims_) {
    if (d <= 0) throw FactorizationError("factor dimensions must be positive");
    total_ *= d;
  }
}

namespace {

// Splits a flat index into per-factor digits (first factor most significant).
void decompose(Eigen::Index flat, const std::vector<Eigen::Index>& dims,
               std::vector<Eigen::Index>& digits) {
  for (std::size_t k = dims.size(); k-- > 0;) {
    digits[k] = flat % dims[k];
    flat /= dims[k];
  }
}

}  // namespace

ComplexMatrix partial_trace(const ComplexMatrix& rho, const TensorFactorization& fact,
                            std::span<const std::size_t> keep) {
  if (rho.rows() != rho.cols()) throw FactorizationError("partial_trace: matrix is not square");
  if (rho.rows() != fact.total()) {
    throw FactorizationError("partial_trace: matrix dimension " + std::to_string(rho.rows()) +
                             " does not match factorization product " +
                             std::to_string(fact.total()));
  }
  std::vector<bool> kept(fact.size(), false);
  for (std::size_t k : keep) {
    if (k >= fact.size()) throw FactorizationError("partial_trace: keep index out of range");
    if (kept[k]) throw FactorizationError("partial_trace: duplicate keep index");
    kept[k] = true;
  }

  const auto& dims = fact.dims();
  Eigen::Index out_dim = 1;
  for (std::size_t k = 0; k < dims.size(); ++k) {
    if (kept[k]) out_dim *= dims[k];
  }

  ComplexMatrix out = ComplexMatrix::Zero(out_dim, out_dim);
  std::vector<Eigen::Index> ri(dims.size()), ci(dims.size());
  const Eigen::Index n = fact.total();
  for (Eigen::Index r = 0; r < n; ++r) {
    decompose(r, dims, ri);
    for (Eigen::Index c = 0; c < n; ++c) {
      decompose(c, dims, ci);
      bool diagonal_in_traced = true;
      Eigen::Index orow = 0, ocol = 0;
      for (std::size_t k = 0; k < dims.size(); ++k) {
        if (kept[k]) {
          orow = orow * dims[k] + ri[k];
          ocol = ocol * dims[k] + ci[k];
        } else if (ri[k] != ci[k]) {
          diagonal_in_traced = false;
          break;
        }
      }
      if (diagonal_in_traced) out(orow, ocol) += rho(r, c);
    }
  }
  return out;
}

ComplexMatrix sandwich_superop(const ComplexMatrix& left, const ComplexMatrix& right) {
  return kron(left, right.transpose());
}

ComplexMatrix identity_superop(Eigen::Index dim) {
  return ComplexMatrix::Identity(dim * dim, dim * dim);
}

ComplexMatrix apply_superop(const ComplexMatrix& superop, const ComplexMatrix& rho) {
  if (rho.rows() != rho.cols()) throw DimensionError("apply_superop: state is not square");
  const Eigen::Index d2 = rho.rows() * rho.rows();
  if (superop.rows() != d2 || superop.cols() != d2) {
    throw DimensionError("apply_superop: superoperator is " + std::to_string(superop.rows()) +
                         "x" + std::to_string(superop.cols()) + ", state needs " +
                         std::to_string(d2) + "x" + std::to_string(d2));
  }
  return devectorize(superop * vectorize(rho), rho.rows());
}

ComplexMatrix tensor_superops(const ComplexMatrix& phi_a, Eigen::Index dim_a,
                              const ComplexMatrix& phi_b, Eigen::Index dim_b) {
  if (phi_a.rows() != dim_a * dim_a || phi_a.cols() != dim_a * dim_a ||
      phi_b.rows() != dim_b * dim_b || phi_b.cols() != dim_b * dim_b) {
    throw DimensionError("tensor_superops: superoperator shapes do not match dimensions");
  }
  const Eigen::Index d = dim_a * dim_b;
  ComplexMatrix out(d * d, d * d);
  // Joint Liouville index (ia*db + ib) * d + (ja*db + jb) pairs with
  // subsystem indices ia*da + ja and ib*db + jb.
  for (Eigen::Index ia = 0; ia < dim_a; ++ia) {
    for (Eigen::Index ib = 0; ib < dim_b; ++ib) {
      for (Eigen::Index ja = 0; ja < dim_a; ++ja) {
        for (Eigen::Index jb = 0; jb < dim_b; ++jb) {
          const Eigen::Index row = (ia * dim_b + ib) * d + (ja * dim_b + jb);
          const Eigen::Index ra = ia * dim_a + ja;
          const Eigen::Index rb = ib * dim_b + jb;
          for (Eigen::Index ka = 0; ka < dim_a; ++ka) {
            for (Eigen::Index kb = 0; kb < dim_b; ++kb) {
              for (Eigen::Index la = 0; la < dim_a; ++la) {
                for (Eigen::Index lb = 0; lb < dim_b; ++lb) {
                  const Eigen::Index col = (ka * dim_b + kb) * d + (la * dim_b + lb);
                  out(row, col) = phi_a(ra, ka * dim_a + la) * phi_b(rb, kb * dim_b + lb);
                }
              }
            }
          }
        }
      }
    }
  }
  return out;
}

double hermiticity_error(const ComplexMatrix& m) {
  if (m.rows() != m.cols()) return INFINITY;
  return (m - m.adjoint()).cwiseAbs().maxCoeff();
}

double min_eigenvalue_hermitian(const ComplexMatrix& m) {
  const ComplexMatrix herm = 0.5 * (m + m.adjoint());
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(herm, Eigen::EigenvaluesOnly);
  return solver.eigenvalues().minCoeff();
}

std::string DensityReport::describe() const {
  if (!square) return "matrix is not square";
  char buf[160];
  std::snprintf(buf, sizeof(buf),
                "hermiticity error %.3g, trace error %.3g, min eigenvalue %.3g",
                hermiticity_error, trace_error, min_eigenvalue);
  return buf;
}

DensityReport inspect_density(const ComplexMatrix& rho) {
  DensityReport r;
  r.square = rho.rows() == rho.cols() && rho.rows() > 0;
  if (!r.square) return r;
  r.hermiticity_error = hermiticity_error(rho);
  r.trace_error = std::abs(rho.trace() - Complex(1.0, 0.0));
  r.min_eigenvalue = min_eigenvalue_hermitian(rho);
  return r;
}

void require_density(const ComplexMatrix& rho, const std::string& what, double tol) {
  const DensityReport r = inspect_density(rho);
  if (!r.ok(tol)) throw InvalidStateError(what + " is not a valid density matrix: " + r.describe());
}

}  // namespace cavent
