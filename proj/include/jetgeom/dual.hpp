#pragma once

#include <cmath>

#include <Eigen/Core>

namespace jetgeom {

/// Forward-mode dual number v + d·ε with ε² = 0.
///
/// Nesting gives exact higher derivatives: the ε-part of Dual<Dual<double>>
/// seeded in two directions carries the mixed second derivative. Only the
/// operations needed by the Lagrangians in this library are provided.
template <typename T>
struct Dual {
  T v{};
  T d{};

  constexpr Dual() = default;
  constexpr Dual(double c) : v(c), d(0.0) {}  // NOLINT: implicit lift of constants
  constexpr Dual(T value, T deriv) : v(std::move(value)), d(std::move(deriv)) {}

  Dual& operator+=(const Dual& o) { v += o.v; d += o.d; return *this; }
  Dual& operator-=(const Dual& o) { v -= o.v; d -= o.d; return *this; }
  Dual& operator*=(const Dual& o) { *this = *this * o; return *this; }
  Dual& operator/=(const Dual& o) { *this = *this / o; return *this; }

  friend Dual operator-(const Dual& a) { return {-a.v, -a.d}; }
  friend Dual operator+(const Dual& a, const Dual& b) { return {a.v + b.v, a.d + b.d}; }
  friend Dual operator-(const Dual& a, const Dual& b) { return {a.v - b.v, a.d - b.d}; }
  friend Dual operator*(const Dual& a, const Dual& b) { return {a.v * b.v, a.d * b.v + a.v * b.d}; }
  friend Dual operator/(const Dual& a, const Dual& b) {
    T q = a.v / b.v;
    return {q, (a.d - q * b.d) / b.v};
  }

  friend Dual operator+(const Dual& a, double b) { return {a.v + b, a.d}; }
  friend Dual operator+(double a, const Dual& b) { return {a + b.v, b.d}; }
  friend Dual operator-(const Dual& a, double b) { return {a.v - b, a.d}; }
  friend Dual operator-(double a, const Dual& b) { return {a - b.v, -b.d}; }
  friend Dual operator*(const Dual& a, double b) { return {a.v * b, a.d * b}; }
  friend Dual operator*(double a, const Dual& b) { return {a * b.v, a * b.d}; }
  friend Dual operator/(const Dual& a, double b) { return {a.v / b, a.d / b}; }
  friend Dual operator/(double a, const Dual& b) { return Dual(a) / b; }

  // Comparisons look at the value part only (Eigen needs them for products).
  friend bool operator==(const Dual& a, const Dual& b) { return a.v == b.v; }
  friend bool operator!=(const Dual& a, const Dual& b) { return a.v != b.v; }
  friend bool operator<(const Dual& a, const Dual& b) { return a.v < b.v; }
  friend bool operator>(const Dual& a, const Dual& b) { return a.v > b.v; }
  friend bool operator<=(const Dual& a, const Dual& b) { return a.v <= b.v; }
  friend bool operator>=(const Dual& a, const Dual& b) { return a.v >= b.v; }
};

inline double value_of(double a) { return a; }

template <typename T>
double value_of(const Dual<T>& a) {
  return value_of(a.v);
}

template <typename T>
Dual<T> exp(const Dual<T>& a) {
  using std::exp;
  T e = exp(a.v);
  return {e, a.d * e};
}

template <typename T>
Dual<T> log(const Dual<T>& a) {
  using std::log;
  return {log(a.v), a.d / a.v};
}

template <typename T>
Dual<T> sqrt(const Dual<T>& a) {
  using std::sqrt;
  T s = sqrt(a.v);
  return {s, a.d / (2.0 * s)};
}

template <typename T>
Dual<T> pow(const Dual<T>& a, double k) {
  using std::pow;
  return {pow(a.v, k), a.d * (k * pow(a.v, k - 1.0))};
}

template <typename T>
Dual<T> sin(const Dual<T>& a) {
  using std::cos;
  using std::sin;
  return {sin(a.v), a.d * cos(a.v)};
}

template <typename T>
Dual<T> cos(const Dual<T>& a) {
  using std::cos;
  using std::sin;
  return {cos(a.v), -(a.d * sin(a.v))};
}

/// Integer power by repeated multiplication; exact for any scalar type.
template <typename T>
T ipow(const T& base, int e) {
  T r(1.0);
  for (int i = 0; i < e; ++i) r = r * base;
  return r;
}

}  // namespace jetgeom

namespace Eigen {

template <typename T>
struct NumTraits<jetgeom::Dual<T>> : GenericNumTraits<jetgeom::Dual<T>> {
  using Real = jetgeom::Dual<T>;
  using NonInteger = jetgeom::Dual<T>;
  using Nested = jetgeom::Dual<T>;
  using Literal = jetgeom::Dual<T>;
  enum {
    IsComplex = 0,
    IsInteger = 0,
    IsSigned = 1,
    RequireInitialization = 1,
    ReadCost = 2 * NumTraits<T>::ReadCost,
    AddCost = 2 * NumTraits<T>::AddCost,
    MulCost = 3 * NumTraits<T>::MulCost + NumTraits<T>::AddCost
  };
};

template <typename T, typename BinaryOp>
struct ScalarBinaryOpTraits<jetgeom::Dual<T>, double, BinaryOp> {
  using ReturnType = jetgeom::Dual<T>;
};

template <typename T, typename BinaryOp>
struct ScalarBinaryOpTraits<double, jetgeom::Dual<T>, BinaryOp> {
  using ReturnType = jetgeom::Dual<T>;
};

}  // namespace Eigen
