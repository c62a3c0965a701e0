#pragma once

#include "latslice/body/polytope.hpp"

#include <variant>

namespace latslice {

/// {x : (x - c)^T G (x - c) <= level} with G symmetric positive definite.
class Ellipsoid {
 public:
  Ellipsoid(QMatrix shape, QVector center, Rational level)
      : shape_(std::move(shape)), center_(std::move(center)), level_(std::move(level)) {
    if (!shape_.square() || shape_.rows() != center_.size()) throw std::invalid_argument("ellipsoid: shape mismatch");
    if (shape_ != shape_.transpose()) throw std::invalid_argument("ellipsoid: shape matrix is not symmetric");
    // leading principal minors decide definiteness
    for (std::size_t k = 1; k <= shape_.rows(); ++k) {
      QMatrix lead(k, k);
      for (std::size_t i = 0; i < k; ++i)
        for (std::size_t j = 0; j < k; ++j) lead(i, j) = shape_(i, j);
      if (determinant(lead) <= 0) throw std::invalid_argument("ellipsoid: shape matrix is not positive definite");
    }
  }

  /// Euclidean ball of squared radius r2 centred at the origin.
  static Ellipsoid ball(std::size_t n, const Rational& r2) {
    if (r2 < 0) throw std::invalid_argument("ball: negative squared radius");
    return Ellipsoid(QMatrix::identity(n), QVector(n, Rational(0)), r2);
  }

  std::size_t ambient_dim() const { return center_.size(); }
  const QMatrix& shape() const { return shape_; }
  const QVector& center() const { return center_; }
  const Rational& level() const { return level_; }

  bool is_empty() const { return level_ < 0; }
  int intrinsic_dim() const { return level_ < 0 ? -1 : (level_ == 0 ? 0 : static_cast<int>(ambient_dim())); }
  bool centered() const { return is_zero(center_); }
  bool is_ball() const { return centered() && shape_ == QMatrix::identity(ambient_dim()); }

  Rational form(const QVector& x) const {
    QVector d = sub(x, center_);
    return dot(d, shape_ * d);
  }
  bool contains(const QVector& x) const { return form(x) <= level_; }

  bool is_diagonal() const {
    for (std::size_t i = 0; i < shape_.rows(); ++i)
      for (std::size_t j = 0; j < shape_.cols(); ++j)
        if (i != j && shape_(i, j) != 0) return false;
    return true;
  }

 private:
  QMatrix shape_;
  QVector center_;
  Rational level_;
};

struct SymmetryTag {
  bool origin_symmetric = false;
  bool unconditional = false;
};

/// A convex body: an exact polytope or an ellipsoid with rational data.
class Body {
 public:
  Body(Polytope p) : shape_(std::move(p)) {}
  Body(Ellipsoid e) : shape_(std::move(e)) {}

  static Body from_vertices(std::size_t n, std::vector<QVector> pts) {
    return Body(Polytope::from_vertices(n, std::move(pts)));
  }
  static Body from_inequalities(std::size_t n, const std::vector<HalfSpace>& rows,
                                const std::vector<HalfSpace>& eqs = {}) {
    return Body(Polytope::from_inequalities(n, rows, eqs));
  }
  static Body ball(std::size_t n, const Rational& r2) { return Body(Ellipsoid::ball(n, r2)); }

  bool is_polytope() const { return std::holds_alternative<Polytope>(shape_); }
  bool is_ellipsoid() const { return std::holds_alternative<Ellipsoid>(shape_); }

  const Polytope& polytope() const {
    if (!is_polytope()) throw std::invalid_argument("operation needs a polytope body, got an ellipsoid");
    return std::get<Polytope>(shape_);
  }
  const Ellipsoid& ellipsoid() const {
    if (!is_ellipsoid()) throw std::invalid_argument("operation needs an ellipsoid body, got a polytope");
    return std::get<Ellipsoid>(shape_);
  }

  std::size_t ambient_dim() const {
    return std::visit([](const auto& s) { return s.ambient_dim(); }, shape_);
  }
  int intrinsic_dim() const {
    return std::visit([](const auto& s) { return s.intrinsic_dim(); }, shape_);
  }
  bool is_empty() const {
    return std::visit([](const auto& s) { return s.is_empty(); }, shape_);
  }
  bool contains(const QVector& x) const {
    return std::visit([&](const auto& s) { return s.contains(x); }, shape_);
  }

  SymmetryTag symmetry() const {
    if (is_polytope()) {
      const auto& p = polytope();
      return {p.is_origin_symmetric(), p.is_unconditional()};
    }
    const auto& e = ellipsoid();
    if (e.is_empty()) return {};
    return {e.centered(), e.centered() && e.is_diagonal()};
  }

 private:
  std::variant<Polytope, Ellipsoid> shape_;
};

}  // namespace latslice
