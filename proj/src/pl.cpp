#include "kkcalc/pl.hpp"

#include "kkcalc/errors.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

namespace kkcalc {

namespace {

Rational interpolate(const PLPoint& a, const PLPoint& b, const Rational& t) {
  return a.v + (b.v - a.v) * (t - a.t) / (b.t - a.t);
}

std::vector<PLPoint> drop_collinear(std::vector<PLPoint> pts) {
  std::vector<PLPoint> out;
  for (auto& p : pts) {
    while (out.size() >= 2) {
      const PLPoint& a = out[out.size() - 2];
      const PLPoint& b = out.back();
      if ((b.v - a.v) * (p.t - a.t) == (p.v - a.v) * (b.t - a.t))
        out.pop_back();
      else
        break;
    }
    out.push_back(std::move(p));
  }
  return out;
}

void sort_unique(std::vector<Rational>& v) {
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
}

}  // namespace

PLPath::PLPath() : points_{{0, 0}, {1, 0}} {}

PLPath::PLPath(std::vector<PLPoint> points) {
  if (points.size() < 2) throw DomainError("a path needs at least two breakpoints");
  for (auto& p : points) {
    p.t.canonicalize();
    p.v.canonicalize();
  }
  if (points.front().t != 0 || points.back().t != 1) throw DomainError("path breakpoints must start at 0 and end at 1");
  for (std::size_t i = 1; i < points.size(); ++i)
    if (points[i].t <= points[i - 1].t) throw DomainError("path breakpoints must be strictly increasing");
  points_ = drop_collinear(std::move(points));
}

PLPath PLPath::constant(const Rational& v) { return PLPath({{0, v}, {1, v}}); }
PLPath PLPath::linear(const Rational& v0, const Rational& v1) { return PLPath({{0, v0}, {1, v1}}); }

std::vector<Rational> PLPath::breakpoints() const {
  std::vector<Rational> t;
  for (const auto& p : points_) t.push_back(p.t);
  return t;
}

Rational PLPath::operator()(const Rational& input) const {
  Rational t = input;
  t.canonicalize();
  if (t < 0 || t > 1) throw DomainError("parameter " + to_string(t) + " outside [0,1]");
  auto it = std::lower_bound(points_.begin(), points_.end(), t, [](const PLPoint& p, const Rational& x) { return p.t < x; });
  if (it->t == t) return it->v;
  return interpolate(*(it - 1), *it, t);
}

Rational PLPath::min_value() const {
  Rational m = points_[0].v;
  for (const auto& p : points_) m = std::min(m, p.v);
  return m;
}

Rational PLPath::max_value() const {
  Rational m = points_[0].v;
  for (const auto& p : points_) m = std::max(m, p.v);
  return m;
}

Rational PLPath::total_variation() const {
  Rational tv = 0;
  for (std::size_t i = 1; i < points_.size(); ++i) tv += abs(points_[i].v - points_[i - 1].v);
  return tv;
}

PLPath PLPath::after(const PLPath& inner) const {
  std::vector<Rational> ts = inner.breakpoints();
  const auto outer_t = breakpoints();
  const auto& ip = inner.points();
  for (std::size_t i = 1; i < ip.size(); ++i) {
    const PLPoint& a = ip[i - 1];
    const PLPoint& b = ip[i];
    if (a.v == b.v) continue;
    const Rational lo = std::min(a.v, b.v), hi = std::max(a.v, b.v);
    for (const auto& x : outer_t)
      if (x > lo && x < hi) ts.push_back(a.t + (x - a.v) * (b.t - a.t) / (b.v - a.v));
  }
  sort_unique(ts);
  std::vector<PLPoint> pts;
  for (const auto& t : ts) pts.push_back({t, (*this)(inner(t))});
  return PLPath(std::move(pts));
}

std::string PLPath::describe() const {
  std::ostringstream os;
  os << "[";
  for (std::size_t i = 0; i < points_.size(); ++i)
    os << (i ? "," : "") << "(" << to_string(points_[i].t) << "," << to_string(points_[i].v) << ")";
  os << "]";
  return os.str();
}

std::vector<Rational> crossings(const PLPath& p, const PLPath& q) {
  std::vector<Rational> ts = p.breakpoints();
  for (const auto& t : q.breakpoints()) ts.push_back(t);
  sort_unique(ts);
  std::vector<Rational> out;
  for (std::size_t i = 1; i < ts.size(); ++i) {
    const Rational d0 = p(ts[i - 1]) - q(ts[i - 1]);
    const Rational d1 = p(ts[i]) - q(ts[i]);
    if (sgn(d0) * sgn(d1) < 0) out.push_back(ts[i - 1] + (ts[i] - ts[i - 1]) * d0 / (d0 - d1));
  }
  return out;
}

Rational modulus_of_continuity(const PLPath& f, const Rational& delta) {
  if (delta < 0) throw DomainError("modulus of continuity needs delta >= 0");
  std::vector<Rational> cand{0, 1};
  for (const auto& b : f.breakpoints()) {
    cand.push_back(b);
    if (b - delta >= 0) cand.push_back(b - delta);
    if (b + delta <= 1) cand.push_back(b + delta);
  }
  sort_unique(cand);
  std::vector<Rational> val;
  for (const auto& x : cand) val.push_back(f(x));
  Rational best = 0;
  for (std::size_t i = 0; i < cand.size(); ++i)
    for (std::size_t j = i + 1; j < cand.size() && cand[j] - cand[i] <= delta; ++j)
      best = std::max(best, Rational(abs(val[i] - val[j])));
  return best;
}

Rational parse_rational(const std::string& s) {
  std::string t;
  for (char c : s)
    if (!std::isspace(static_cast<unsigned char>(c))) t += c;
  if (t.empty()) throw InputError("empty rational");
  const auto slash = t.find('/');
  auto integer = [&](const std::string& x) {
    if (x.empty()) throw InputError("malformed rational '" + s + "'");
    std::size_t i = (x[0] == '-' || x[0] == '+') ? 1 : 0;
    if (i == x.size()) throw InputError("malformed rational '" + s + "'");
    for (; i < x.size(); ++i)
      if (!std::isdigit(static_cast<unsigned char>(x[i]))) throw InputError("malformed rational '" + s + "'");
    return mpz_class(x[0] == '+' ? x.substr(1) : x);
  };
  if (slash == std::string::npos) {
    // Also accept finite decimals such as 0.3.
    const auto dot = t.find('.');
    if (dot == std::string::npos) return Rational(integer(t));
    const std::string frac = t.substr(dot + 1);
    const std::string whole = t.substr(0, dot);
    const bool neg = !whole.empty() && whole[0] == '-';
    mpz_class den = 1;
    for (std::size_t i = 0; i < frac.size(); ++i) den *= 10;
    const mpz_class w = (whole.empty() || whole == "-" || whole == "+") ? mpz_class(0) : integer(whole);
    const mpz_class f = frac.empty() ? mpz_class(0) : integer(frac);
    if (!frac.empty() && (frac[0] == '-' || frac[0] == '+')) throw InputError("malformed rational '" + s + "'");
    Rational q(abs(w) * den + f, den);
    q.canonicalize();
    return neg ? Rational(-q) : q;
  }
  const mpz_class num = integer(t.substr(0, slash));
  const mpz_class den = integer(t.substr(slash + 1));
  if (den == 0) throw InputError("zero denominator in '" + s + "'");
  Rational q(num, den);
  q.canonicalize();
  return q;
}

std::string to_string(const Rational& q) { return q.get_str(); }

}  // namespace kkcalc
