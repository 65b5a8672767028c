#pragma once
// Exact linear extrema over small bounded polytopes by vertex enumeration.
//
// The region is { x : lo_i <= a_i . x <= hi_i }. Every vertex lies on Dim
// linearly independent active rows, one side each, so the enumeration factors
// each Dim-subset of rows once and back-substitutes the 2^Dim side choices.
// For the four-unknown transmission-rate systems (eleven rows) this is 330
// factorisations, cheap enough to run inside the intensity search.

#include <Eigen/Dense>

#include <cmath>
#include <limits>
#include <vector>

#include "glt/errors.hpp"
#include "glt/interval.hpp"

namespace glt {

template <typename Scalar, int Dim>
struct LinearRowT {
  Eigen::Matrix<Scalar, Dim, 1> normal;
  Scalar lo = -std::numeric_limits<Scalar>::infinity();
  Scalar hi = std::numeric_limits<Scalar>::infinity();
};

template <typename Scalar, int Dim>
class PolytopeT {
 public:
  using Vec = Eigen::Matrix<Scalar, Dim, 1>;
  using Mat = Eigen::Matrix<Scalar, Dim, Dim>;
  using Row = LinearRowT<Scalar, Dim>;

  /// `tol` is the absolute slack allowed when testing a candidate vertex.
  explicit PolytopeT(std::vector<Row> rows, Scalar tol = Scalar(1e-12))
      : rows_(std::move(rows)), tol_(tol) {
    enumerate();
  }

  const std::vector<Row>& rows() const { return rows_; }
  const std::vector<Vec>& vertices() const { return vertices_; }
  bool empty() const { return vertices_.empty(); }

  bool contains(const Vec& x, Scalar tol) const {
    for (const auto& r : rows_) {
      const Scalar v = r.normal.dot(x);
      if (v < r.lo - tol || v > r.hi + tol) return false;
    }
    return true;
  }

  /// Minimum and maximum of objective . x. Throws InfeasibleRegion when empty.
  Interval extrema(const Vec& objective) const {
    if (empty()) throw InfeasibleRegion("polytope has no feasible point");
    Scalar lo = std::numeric_limits<Scalar>::infinity();
    Scalar hi = -lo;
    for (const auto& v : vertices_) {
      const Scalar f = objective.dot(v);
      lo = std::min(lo, f);
      hi = std::max(hi, f);
    }
    return {static_cast<double>(lo), static_cast<double>(hi)};
  }

 private:
  void enumerate() {
    const int m = static_cast<int>(rows_.size());
    if (m < Dim) return;
    std::vector<int> pick(Dim);
    for (int i = 0; i < Dim; ++i) pick[i] = i;
    while (true) {
      try_subset(pick);
      int k = Dim - 1;
      while (k >= 0 && pick[k] == m - Dim + k) --k;
      if (k < 0) break;
      ++pick[k];
      for (int i = k + 1; i < Dim; ++i) pick[i] = pick[i - 1] + 1;
    }
  }

  void try_subset(const std::vector<int>& pick) {
    Mat a;
    Scalar scale = 1;
    for (int i = 0; i < Dim; ++i) {
      a.row(i) = rows_[pick[i]].normal.transpose();
      scale *= a.row(i).norm();
    }
    if (!(scale > Scalar(0))) return;
    Eigen::PartialPivLU<Mat> lu(a);
    using std::abs;
    if (abs(lu.determinant()) <= Scalar(1e-10) * scale) return;

    for (unsigned mask = 0; mask < (1u << Dim); ++mask) {
      Vec rhs;
      bool finite = true;
      for (int i = 0; i < Dim; ++i) {
        const auto& r = rows_[pick[i]];
        rhs(i) = (mask >> i) & 1u ? r.hi : r.lo;
        finite = finite && std::isfinite(static_cast<double>(rhs(i)));
      }
      if (!finite) continue;
      // Two sides of a pinned row give the same point.
      bool duplicate = false;
      for (int i = 0; i < Dim && !duplicate; ++i)
        duplicate = ((mask >> i) & 1u) && rows_[pick[i]].lo == rows_[pick[i]].hi;
      if (duplicate) continue;
      const Vec x = lu.solve(rhs);
      if (contains(x, tol_)) vertices_.push_back(x);
    }
  }

  std::vector<Row> rows_;
  Scalar tol_;
  std::vector<Vec> vertices_;
};

extern template class PolytopeT<double, 4>;

using LinearRow = LinearRowT<double, 4>;
using Polytope = PolytopeT<double, 4>;

/// Extrema of a linear objective over the region cut out by `rows`.
inline Interval bound_q_extrema(const std::vector<LinearRow>& rows,
                                const Eigen::Vector4d& objective) {
  return Polytope(rows).extrema(objective);
}

}  // namespace glt
