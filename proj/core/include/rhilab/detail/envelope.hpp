#pragma once

// Upper envelopes of one-sided average functions on a step function.
// Templated on the scalar: Rational for the exact path, long double for sweeps.

#include <algorithm>
#include <cstddef>
#include <optional>
#include <vector>

#include "rhilab/rational.hpp"
#include "rhilab/step_weight.hpp"

namespace rhilab::detail {

template <class T> T to_scalar(const Rational& q);
template <> inline Rational to_scalar<Rational>(const Rational& q) { return q; }
template <> inline long double to_scalar<long double>(const Rational& q) { return q.to_long_double(); }

/// Nonnegative step function: x[0..m], v[0..m-1] on (x[k], x[k+1]), W cumulative.
template <class T>
struct Steps {
  std::vector<T> x;
  std::vector<T> v;
  std::vector<T> W;

  std::size_t pieces() const { return v.size(); }

  void rebuild_cumulative() {
    W.assign(x.size(), T(0));
    for (std::size_t k = 0; k < v.size(); ++k) W[k + 1] = W[k] + v[k] * (x[k + 1] - x[k]);
  }

  static Steps from(const StepWeight& w) {
    Steps s;
    for (const auto& b : w.breakpoints()) s.x.push_back(to_scalar<T>(b));
    for (const auto& c : w.values()) s.v.push_back(to_scalar<T>(c));
    s.rebuild_cumulative();
    return s;
  }

  /// Adds zero pieces so that the domain becomes (lo, hi).
  void pad(const T& lo, const T& hi) {
    if (lo < x.front()) {
      x.insert(x.begin(), lo);
      v.insert(v.begin(), T(0));
    }
    if (x.back() < hi) {
      x.push_back(hi);
      v.push_back(T(0));
    }
    rebuild_cumulative();
  }

  /// Mirror image x -> -x.
  Steps reflected() const {
    Steps r;
    r.x.resize(x.size());
    r.v.resize(v.size());
    for (std::size_t i = 0; i < x.size(); ++i) r.x[i] = -x[x.size() - 1 - i];
    for (std::size_t i = 0; i < v.size(); ++i) r.v[i] = v[v.size() - 1 - i];
    r.rebuild_cumulative();
    return r;
  }
};

/// x -> (a - v x)/(q - x), or the constant a.
template <class T>
struct Fn {
  bool is_const = true;
  T a{0};
  T v{0};
  T q{0};

  static Fn constant(T c) { return Fn{true, std::move(c), T(0), T(0)}; }
  static Fn arc(T alpha, T val, T pole) { return Fn{false, std::move(alpha), std::move(val), std::move(pole)}; }

  T at(const T& x) const { return is_const ? a : (a - v * x) / (q - x); }

  friend bool operator==(const Fn& f, const Fn& g) {
    if (f.is_const != g.is_const) return false;
    return f.is_const ? f.a == g.a : (f.a == g.a && f.v == g.v && f.q == g.q);
  }
};

/// Crossing point of two forms; arcs are compared only when they share v.
template <class T>
std::optional<T> crossing(const Fn<T>& f, const Fn<T>& g) {
  if (f.is_const && g.is_const) return std::nullopt;
  if (f.is_const || g.is_const) {
    const Fn<T>& c = f.is_const ? f : g;
    const Fn<T>& h = f.is_const ? g : f;
    const T den = h.v - c.a;
    if (den == T(0)) return std::nullopt;
    return (h.a - c.a * h.q) / den;
  }
  const T den = g.a - f.a + f.v * (f.q - g.q);
  if (den == T(0)) return std::nullopt;
  return (g.a * f.q - f.a * g.q) / den;
}

template <class T>
struct Seg {
  T lo;
  T hi;
  Fn<T> fn;
};

/// Upper envelope of fns on [s, e]; appended to out. All fns must be finite on [s, e]
/// and pairwise cross at most once.
template <class T>
void envelope(const std::vector<Fn<T>>& fns, const T& s, const T& e, std::vector<Seg<T>>& out) {
  const std::size_t n = fns.size();
  std::vector<T> at_s(n), at_e(n);
  for (std::size_t j = 0; j < n; ++j) {
    at_s[j] = fns[j].at(s);
    at_e[j] = fns[j].at(e);
  }
  std::size_t cur = 0;
  for (std::size_t j = 1; j < n; ++j)
    if (at_s[cur] < at_s[j] || (at_s[j] == at_s[cur] && at_e[cur] < at_e[j])) cur = j;
  T x0 = s;
  for (;;) {
    std::optional<std::size_t> next;
    T best = e;
    for (std::size_t j = 0; j < n; ++j) {
      if (j == cur || !(at_e[cur] < at_e[j])) continue;
      auto t = crossing(fns[cur], fns[j]);
      T tj = t ? *t : x0;
      if (tj < x0) tj = x0;
      if (e < tj) continue;
      if (tj < best || (tj == best && (!next || at_e[*next] < at_e[j]))) {
        best = tj;
        next = j;
      }
    }
    if (x0 < best) {
      if (!out.empty() && out.back().hi == x0 && out.back().fn == fns[cur])
        out.back().hi = best;
      else
        out.push_back(Seg<T>{x0, best, fns[cur]});
    }
    if (!next) break;
    x0 = best;
    cur = *next;
  }
}

template <class T>
T cross2(const T& ox, const T& oy, const T& ax, const T& ay, const T& bx, const T& by) {
  return (ax - ox) * (by - oy) - (ay - oy) * (bx - ox);
}

/// Lower convex hull of points (x[i], W[i]) added left to right.
template <class T>
class LowerHull {
 public:
  void push(const T& x, const T& y, std::size_t id) {
    while (ids_.size() >= 2) {
      const std::size_t a = ids_.size() - 2, b = ids_.size() - 1;
      if (cross2(xs_[a], ys_[a], xs_[b], ys_[b], x, y) <= T(0)) {
        xs_.pop_back();
        ys_.pop_back();
        ids_.pop_back();
      } else {
        break;
      }
    }
    xs_.push_back(x);
    ys_.push_back(y);
    ids_.push_back(id);
  }

  std::size_t size() const { return ids_.size(); }
  std::size_t id(std::size_t i) const { return ids_[i]; }
  const T& x(std::size_t i) const { return xs_[i]; }
  const T& y(std::size_t i) const { return ys_[i]; }

  /// Vertex maximizing the slope to (qx, qy), qx to the right of all vertices.
  std::size_t tangent(const T& qx, const T& qy) const {
    std::size_t lo = 0, hi = ids_.size() - 1;
    while (lo < hi) {
      const std::size_t mid = (lo + hi) / 2;
      if (cross2(xs_[mid], ys_[mid], xs_[mid + 1], ys_[mid + 1], qx, qy) > T(0))
        lo = mid + 1;
      else
        hi = mid;
    }
    return lo;
  }

 private:
  std::vector<T> xs_, ys_;
  std::vector<std::size_t> ids_;
};

/// sup over a < x_j of the average on (a, x_j), for every breakpoint j.
/// Index 0 has no left interval and returns v[0] (the limit from inside).
template <class T>
std::vector<T> minus_at_breakpoints(const Steps<T>& s) {
  const std::size_t m = s.pieces();
  std::vector<T> out(m + 1);
  out[0] = s.v[0];
  LowerHull<T> hull;
  for (std::size_t j = 1; j <= m; ++j) {
    hull.push(s.x[j - 1], s.W[j - 1], j - 1);
    const std::size_t t = hull.tangent(s.x[j], s.W[j]);
    out[j] = (s.W[j] - hull.y(t)) / (s.x[j] - hull.x(t));
  }
  return out;
}

/// Mirror of minus_at_breakpoints: sup over b > x_j of the average on (x_j, b).
template <class T>
std::vector<T> plus_at_breakpoints(const Steps<T>& s) {
  auto r = minus_at_breakpoints(s.reflected());
  std::reverse(r.begin(), r.end());
  return r;
}

/// Arc candidates for the backward maximal function on each piece (only those
/// exceeding the piece value somewhere).
template <class T>
std::vector<std::vector<Fn<T>>> minus_arcs(const Steps<T>& s) {
  const std::size_t m = s.pieces();
  std::vector<std::vector<Fn<T>>> out(m);
  LowerHull<T> hull;
  for (std::size_t k = 1; k < m; ++k) {
    hull.push(s.x[k - 1], s.W[k - 1], k - 1);
    const T& v = s.v[k];
    for (std::size_t i = 0; i < hull.size(); ++i) {
      // slope from the vertex to the piece start must beat v for the arc to matter
      const T num = s.W[k] - hull.y(i);
      const T len = s.x[k] - hull.x(i);
      if (!(v * len < num)) continue;
      out[k].push_back(Fn<T>::arc(hull.y(i) - s.W[k] + v * s.x[k], v, hull.x(i)));
    }
  }
  return out;
}

template <class T>
std::vector<std::vector<Fn<T>>> plus_arcs(const Steps<T>& s) {
  auto r = minus_arcs(s.reflected());
  std::reverse(r.begin(), r.end());
  for (auto& piece : r)
    for (auto& f : piece) {
      f.a = -f.a;
      f.q = -f.q;
    }
  return r;
}

enum class Side { Minus, Plus, Both };

/// Exact piecewise representation of the chosen maximal function over the domain of s.
template <class T>
std::vector<Seg<T>> profile(const Steps<T>& s, Side side) {
  std::vector<std::vector<Fn<T>>> minus, plus;
  if (side != Side::Plus) minus = minus_arcs(s);
  if (side != Side::Minus) plus = plus_arcs(s);
  std::vector<Seg<T>> out;
  std::vector<Fn<T>> fns;
  for (std::size_t k = 0; k < s.pieces(); ++k) {
    fns.clear();
    fns.push_back(Fn<T>::constant(s.v[k]));
    if (!minus.empty()) fns.insert(fns.end(), minus[k].begin(), minus[k].end());
    if (!plus.empty()) fns.insert(fns.end(), plus[k].begin(), plus[k].end());
    envelope(fns, s.x[k], s.x[k + 1], out);
  }
  return out;
}

}  // namespace rhilab::detail
