// automorphism.cpp -- tame coordinate changes: validation, application,
// exact inversion.

#include "desing/automorphism.hpp"

#include <algorithm>

#include "desing/errors.hpp"

namespace desing {
namespace {

// Invert a square rational matrix by Gauss-Jordan elimination.  Returns
// std::nullopt when the matrix is singular.
std::optional<std::vector<std::vector<Rational>>> invert_matrix(
    const std::vector<std::vector<Rational>>& m) {
  std::size_t n = m.size();
  std::vector<std::vector<Rational>> a = m;
  std::vector<std::vector<Rational>> inv(n, std::vector<Rational>(n, 0));
  for (std::size_t i = 0; i < n; ++i) inv[i][i] = 1;
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t pivot = col;
    while (pivot < n && a[pivot][col] == 0) ++pivot;
    if (pivot == n) return std::nullopt;
    std::swap(a[pivot], a[col]);
    std::swap(inv[pivot], inv[col]);
    Rational p = a[col][col];
    for (std::size_t j = 0; j < n; ++j) {
      a[col][j] /= p;
      inv[col][j] /= p;
    }
    for (std::size_t row = 0; row < n; ++row) {
      if (row == col || a[row][col] == 0) continue;
      Rational f = a[row][col];
      for (std::size_t j = 0; j < n; ++j) {
        a[row][j] -= f * a[col][j];
        inv[row][j] -= f * inv[col][j];
      }
    }
  }
  return inv;
}

// A linear move touches coordinate i unless row i is the i-th unit vector.
bool linear_moves_coordinate(const LinearMove& mv, std::size_t i) {
  for (std::size_t j = 0; j < mv.matrix[i].size(); ++j) {
    Rational expect = (i == j) ? 1 : 0;
    if (mv.matrix[i][j] != expect) return true;
  }
  return false;
}

}  // namespace

void Automorphism::push(Move m) {
  if (std::holds_alternative<LinearMove>(m)) {
    const auto& mv = std::get<LinearMove>(m);
    std::size_t n = ring_->arity();
    if (mv.matrix.size() != n)
      throw Error(ErrorKind::InvalidInput, "linear move has wrong row count");
    for (const auto& row : mv.matrix)
      if (row.size() != n)
        throw Error(ErrorKind::InvalidInput, "linear move has wrong column count");
    if (!invert_matrix(mv.matrix))
      throw Error(ErrorKind::InvalidInput, "linear move is not invertible");
    for (std::size_t i : frozen_)
      if (linear_moves_coordinate(mv, i))
        throw Error(ErrorKind::FrozenCoordinateViolation,
                    "linear move changes frozen coordinate " + ring_->vars[i]);
  } else {
    const auto& mv = std::get<TriangularMove>(m);
    if (mv.target >= ring_->arity())
      throw Error(ErrorKind::InvalidInput, "triangular move target out of range");
    auto shift_uses_target = mv.shift.divisibility_by_var(mv.target);
    if (mv.shift.is_zero())
      throw Error(ErrorKind::InvalidInput, "triangular move with zero shift");
    // The shift must be free of the target variable, otherwise the move is
    // not syntactically invertible.
    for (const auto& [mono, c] : mv.shift.terms())
      if (mono[mv.target] != 0)
        throw Error(ErrorKind::InvalidInput,
                    "triangular shift involves its own target");
    (void)shift_uses_target;
    if (frozen_.count(mv.target))
      throw Error(ErrorKind::FrozenCoordinateViolation,
                  "triangular move changes frozen coordinate " +
                      ring_->vars[mv.target]);
  }
  moves_.push_back(std::move(m));
}

Polynomial Automorphism::apply(const Polynomial& f) const {
  if (moves_.empty()) return f;
  Polynomial cur = f;
  for (const auto& m : moves_) {
    std::vector<Polynomial> images;
    images.reserve(ring_->arity());
    if (std::holds_alternative<LinearMove>(m)) {
      const auto& mv = std::get<LinearMove>(m);
      for (std::size_t i = 0; i < ring_->arity(); ++i) {
        Polynomial img = Polynomial::zero(ring_);
        for (std::size_t j = 0; j < ring_->arity(); ++j)
          if (mv.matrix[i][j] != 0)
            img = img + Polynomial::variable(ring_, j) * mv.matrix[i][j];
        images.push_back(std::move(img));
      }
    } else {
      const auto& mv = std::get<TriangularMove>(m);
      for (std::size_t i = 0; i < ring_->arity(); ++i)
        images.push_back(Polynomial::variable(ring_, i));
      images[mv.target] = images[mv.target] + mv.shift;
    }
    cur = cur.substitute(ring_, images);
  }
  return cur;
}

Automorphism Automorphism::inverse() const {
  Automorphism inv(ring_, frozen_);
  for (auto it = moves_.rbegin(); it != moves_.rend(); ++it) {
    if (std::holds_alternative<LinearMove>(*it)) {
      const auto& mv = std::get<LinearMove>(*it);
      auto m = invert_matrix(mv.matrix);
      assert(m.has_value());  // validated at push time
      inv.moves_.push_back(LinearMove{*m});
    } else {
      const auto& mv = std::get<TriangularMove>(*it);
      inv.moves_.push_back(TriangularMove{mv.target, -mv.shift});
    }
  }
  return inv;
}

Automorphism Automorphism::then(const Automorphism& o) const {
  assert(same_ring(ring_, o.ring_));
  std::set<std::size_t> frozen = frozen_;
  frozen.insert(o.frozen_.begin(), o.frozen_.end());
  Automorphism r(ring_, std::move(frozen));
  r.moves_ = moves_;
  r.moves_.insert(r.moves_.end(), o.moves_.begin(), o.moves_.end());
  return r;
}

std::vector<Polynomial> Automorphism::variable_images() const {
  std::vector<Polynomial> images;
  images.reserve(ring_->arity());
  for (std::size_t i = 0; i < ring_->arity(); ++i)
    images.push_back(apply(Polynomial::variable(ring_, i)));
  return images;
}

}  // namespace desing
