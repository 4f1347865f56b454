#pragma once

// Piecewise linear functions on [0, 1] with exact rational breakpoints.

#include <gmpxx.h>

#include <string>
#include <vector>

namespace kkcalc {

using Rational = mpq_class;

struct PLPoint {
  Rational t;
  Rational v;
  friend bool operator==(const PLPoint&, const PLPoint&) = default;
};

class PLPath {
 public:
  // The constant 0.
  PLPath();
  // Breakpoints must start at t = 0, end at t = 1 and strictly increase in t.
  // Collinear interior points are dropped. Throws DomainError.
  explicit PLPath(std::vector<PLPoint> points);

  static PLPath constant(const Rational& v);
  static PLPath linear(const Rational& v0, const Rational& v1);

  const std::vector<PLPoint>& points() const { return points_; }
  std::vector<Rational> breakpoints() const;

  // Requires t in [0, 1].
  Rational operator()(const Rational& t) const;

  Rational at0() const { return points_.front().v; }
  Rational at1() const { return points_.back().v; }
  Rational min_value() const;
  Rational max_value() const;
  Rational total_variation() const;
  bool is_constant() const { return points_.size() == 2 && points_[0].v == points_[1].v; }

  // (*this)(inner(t)); inner must take values in [0, 1].
  PLPath after(const PLPath& inner) const;

  std::string describe() const;
  friend bool operator==(const PLPath&, const PLPath&) = default;

 private:
  std::vector<PLPoint> points_;
};

/// Parameters in [0, 1] at which p - q changes sign inside a linear piece of both.
std::vector<Rational> crossings(const PLPath& p, const PLPath& q);

/// sup { |f(x) - f(y)| : x, y in [0, 1], |x - y| <= delta }, exactly.
Rational modulus_of_continuity(const PLPath& f, const Rational& delta);

Rational parse_rational(const std::string& s);
std::string to_string(const Rational& q);

}  // namespace kkcalc
