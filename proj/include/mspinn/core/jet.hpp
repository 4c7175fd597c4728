#pragma once

#include <cmath>

namespace mspinn {

// Truncated forward-mode number carrying, besides the value, the first and
// pure second derivative with respect to each of C input coordinates.
// Mixed partials are dropped; pure-derivative slots are closed under the
// chain rule (for h = f(a,b): h_cc = f_a a_cc + f_b b_cc + f_aa a_c^2
// + 2 f_ab a_c b_c + f_bb b_c^2 involves only pure derivatives of a, b),
// so every tracked slot is exact.
//
// Slot layout: s[0] = value, s[1+k] = d/dc_k, s[1+C+k] = d^2/dc_k^2.
template <int C>
struct Jet {
  static constexpr int NS = 1 + 2 * C;
  double s[NS];

  Jet() {
    for (int i = 0; i < NS; ++i) s[i] = 0.0;
  }
  explicit Jet(double v) : Jet() { s[0] = v; }

  /// Seed to the k-th input coordinate with value v.
  static Jet seed(double v, int k) {
    Jet j(v);
    j.s[1 + k] = 1.0;
    return j;
  }

  double value() const { return s[0]; }
  double d1(int k) const { return s[1 + k]; }
  double d2(int k) const { return s[1 + C + k]; }

  Jet& operator+=(const Jet& b) {
    for (int i = 0; i < NS; ++i) s[i] += b.s[i];
    return *this;
  }
  Jet& operator-=(const Jet& b) {
    for (int i = 0; i < NS; ++i) s[i] -= b.s[i];
    return *this;
  }
};

template <int C>
inline Jet<C> operator+(Jet<C> a, const Jet<C>& b) { return a += b; }
template <int C>
inline Jet<C> operator-(Jet<C> a, const Jet<C>& b) { return a -= b; }
template <int C>
inline Jet<C> operator-(const Jet<C>& a) {
  Jet<C> c;
  for (int i = 0; i < Jet<C>::NS; ++i) c.s[i] = -a.s[i];
  return c;
}
template <int C>
inline Jet<C> operator*(double w, const Jet<C>& a) {
  Jet<C> c;
  for (int i = 0; i < Jet<C>::NS; ++i) c.s[i] = w * a.s[i];
  return c;
}
template <int C>
inline Jet<C> operator*(const Jet<C>& a, double w) { return w * a; }
template <int C>
inline Jet<C> operator+(const Jet<C>& a, double w) {
  Jet<C> c = a;
  c.s[0] += w;
  return c;
}
template <int C>
inline Jet<C> operator+(double w, const Jet<C>& a) { return a + w; }
template <int C>
inline Jet<C> operator-(const Jet<C>& a, double w) { return a + (-w); }
template <int C>
inline Jet<C> operator-(double w, const Jet<C>& a) { return -a + w; }

template <int C>
inline Jet<C> operator*(const Jet<C>& a, const Jet<C>& b) {
  Jet<C> c;
  c.s[0] = a.s[0] * b.s[0];
  for (int k = 0; k < C; ++k) {
    c.s[1 + k] = a.s[1 + k] * b.s[0] + a.s[0] * b.s[1 + k];
    c.s[1 + C + k] = a.s[1 + C + k] * b.s[0] + 2.0 * a.s[1 + k] * b.s[1 + k] + a.s[0] * b.s[1 + C + k];
  }
  return c;
}

template <int C>
inline Jet<C> operator/(const Jet<C>& a, const Jet<C>& b) {
  Jet<C> c;
  const double inv = 1.0 / b.s[0];
  c.s[0] = a.s[0] * inv;
  for (int k = 0; k < C; ++k) {
    c.s[1 + k] = (a.s[1 + k] - c.s[0] * b.s[1 + k]) * inv;
    c.s[1 + C + k] =
        (a.s[1 + C + k] - c.s[0] * b.s[1 + C + k] - 2.0 * c.s[1 + k] * b.s[1 + k]) * inv;
  }
  return c;
}

// Unary lift: c = f(a) with c' = f'(a0) a', c'' = f'(a0) a'' + f''(a0) a'^2.
template <int C>
inline Jet<C> unary(const Jet<C>& a, double f, double fp, double fpp) {
  Jet<C> c;
  c.s[0] = f;
  for (int k = 0; k < C; ++k) {
    const double d1 = a.s[1 + k];
    c.s[1 + k] = fp * d1;
    c.s[1 + C + k] = fp * a.s[1 + C + k] + fpp * d1 * d1;
  }
  return c;
}

template <int C>
inline Jet<C> tanh(const Jet<C>& a) {
  const double t = std::tanh(a.s[0]);
  const double fp = 1.0 - t * t;
  return unary(a, t, fp, -2.0 * t * fp);
}
template <int C>
inline Jet<C> sin(const Jet<C>& a) {
  const double sv = std::sin(a.s[0]);
  return unary(a, sv, std::cos(a.s[0]), -sv);
}
template <int C>
inline Jet<C> cos(const Jet<C>& a) {
  const double cv = std::cos(a.s[0]);
  return unary(a, cv, -std::sin(a.s[0]), -cv);
}
template <int C>
inline Jet<C> exp(const Jet<C>& a) {
  const double e = std::exp(a.s[0]);
  return unary(a, e, e, e);
}

/// Single-coordinate second-order dual: (value, df/dx_c, d2f/dx_c2).
using Dual2 = Jet<1>;

// ---------------------------------------------------------------------------
// Cotangent helpers for reverse mode over parameters. Activations computed in
// jet arithmetic have jet-valued cotangents; the rules below are the
// transposed Jacobians of the corresponding forward slot maps.
// ---------------------------------------------------------------------------

/// <a, b> over all slots; the W-gradient contraction for affine layers.
template <int C>
inline double slot_dot(const Jet<C>& a, const Jet<C>& b) {
  double acc = 0.0;
  for (int i = 0; i < Jet<C>::NS; ++i) acc += a.s[i] * b.s[i];
  return acc;
}
inline double slot_dot(double a, double b) { return a * b; }

/// Value-slot of a cotangent; the bias-gradient contribution.
template <int C>
inline double cot_value(const Jet<C>& a) { return a.s[0]; }
inline double cot_value(double a) { return a; }

/// Cotangent through a product c = a (.) p, with respect to a: transpose of
/// multiplication by p.
template <int C>
inline Jet<C> adj_mul(const Jet<C>& p, const Jet<C>& cbar) {
  Jet<C> a;
  double v = p.s[0] * cbar.s[0];
  for (int k = 0; k < C; ++k) {
    v += p.s[1 + k] * cbar.s[1 + k] + p.s[1 + C + k] * cbar.s[1 + C + k];
    a.s[1 + k] = p.s[0] * cbar.s[1 + k] + 2.0 * p.s[1 + k] * cbar.s[1 + C + k];
    a.s[1 + C + k] = p.s[0] * cbar.s[1 + C + k];
  }
  a.s[0] = v;
  return a;
}
inline double adj_mul(double p, double cbar) { return p * cbar; }

/// Cotangent through h = tanh(z): transpose of the unary slot map, given the
/// pre-activation jet z and the activation value t = tanh(z0).
template <int C>
inline Jet<C> adj_tanh(const Jet<C>& z, double t, const Jet<C>& hbar) {
  const double f1 = 1.0 - t * t;
  const double f2 = -2.0 * t * f1;
  const double f3 = -2.0 * f1 * (1.0 - 3.0 * t * t);
  Jet<C> zbar;
  double v = f1 * hbar.s[0];
  for (int k = 0; k < C; ++k) {
    const double a1 = z.s[1 + k], a2 = z.s[1 + C + k];
    v += f2 * a1 * hbar.s[1 + k] + (f2 * a2 + f3 * a1 * a1) * hbar.s[1 + C + k];
    zbar.s[1 + k] = f1 * hbar.s[1 + k] + 2.0 * f2 * a1 * hbar.s[1 + C + k];
    zbar.s[1 + C + k] = f1 * hbar.s[1 + C + k];
  }
  zbar.s[0] = v;
  return zbar;
}
inline double adj_tanh(double /*z*/, double t, double hbar) { return (1.0 - t * t) * hbar; }

template <int C>
inline bool jet_finite(const Jet<C>& a) {
  for (int i = 0; i < Jet<C>::NS; ++i)
    if (!std::isfinite(a.s[i])) return false;
  return true;
}
inline bool jet_finite(double a) { return std::isfinite(a); }

}  // namespace mspinn
