#pragma once

/// \file
/// Second-order forward-mode automatic differentiation.
///
/// A Jet2 carries the truncated Taylor expansion of a scalar function of n
/// variables around a point: its value, gradient and Hessian. Arithmetic on
/// jets propagates all three by the chain rule, so evaluating an expression on
/// seeded jets yields exact first and second partial derivatives in one pass.
///
/// The coefficient type is a template parameter. Jet2<double> is the workhorse;
/// Jet2<Jet2<double>> tracks derivatives of derivatives and is used where third
/// derivatives of an immersion are needed (pulled-back metrics).
///
/// A jet with no gradient storage is a constant. Binary operations broadcast
/// constants against jets of any size, so literals never need to know n.

#include <cmath>
#include <cstddef>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace curvlab {

/// Raised for arguments outside the domain of an elementary function.
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// The elementary function tags shared by jets and expressions.
enum class Elementary { Sin, Cos, Tan, Exp, Log, Sqrt, Sinh, Cosh };

std::string_view to_string(Elementary f);

template <class T>
class Jet2;

inline double primal(double x) { return x; }

template <class T>
double primal(const Jet2<T>& x);

template <class T>
class Jet2 {
 public:
  using value_type = T;

  Jet2() : value_{} {}
  Jet2(T value) : value_(std::move(value)) {}  // NOLINT: implicit constant lift

  /// A constant carrying explicit zero storage for n variables.
  static Jet2 zero(int n) {
    Jet2 j;
    j.grad_.assign(static_cast<std::size_t>(n), T{});
    j.hess_.assign(static_cast<std::size_t>(n) * static_cast<std::size_t>(n), T{});
    return j;
  }

  /// Coordinate seed for variable i: value x, gradient e_i, Hessian 0.
  static Jet2 seed(int n, int i, T x) {
    if (i < 0 || i >= n) {
      throw std::out_of_range("jet seed index " + std::to_string(i) + " out of range for " +
                              std::to_string(n) + " variables");
    }
    Jet2 j = zero(n);
    j.value_ = std::move(x);
    j.grad_[static_cast<std::size_t>(i)] = T{1.0};
    return j;
  }

  int size() const { return static_cast<int>(grad_.size()); }
  bool is_constant() const { return grad_.empty(); }

  const T& value() const { return value_; }
  T& value() { return value_; }

  /// Gradient component; zero for constants.
  T grad(int i) const { return grad_.empty() ? T{} : grad_[static_cast<std::size_t>(i)]; }
  T hess(int i, int j) const {
    return hess_.empty() ? T{} : hess_[index(i, j)];
  }

  T& grad_ref(int i) { return grad_[static_cast<std::size_t>(i)]; }
  T& hess_ref(int i, int j) { return hess_[index(i, j)]; }

  /// Resize a constant to explicit storage; a no-op for sized jets.
  void ensure_size(int n) {
    if (grad_.empty() && n > 0) {
      grad_.assign(static_cast<std::size_t>(n), T{});
      hess_.assign(static_cast<std::size_t>(n) * static_cast<std::size_t>(n), T{});
    }
  }

  Jet2 operator-() const {
    Jet2 r;
    r.value_ = -value_;
    r.grad_.reserve(grad_.size());
    for (const auto& g : grad_) r.grad_.push_back(-g);
    r.hess_.reserve(hess_.size());
    for (const auto& h : hess_) r.hess_.push_back(-h);
    return r;
  }

  friend Jet2 operator+(const Jet2& a, const Jet2& b) { return combine(a, b, true); }
  friend Jet2 operator-(const Jet2& a, const Jet2& b) { return combine(a, b, false); }

  friend Jet2 operator*(const Jet2& a, const Jet2& b) {
    const int n = common_size(a, b);
    Jet2 r;
    r.value_ = a.value_ * b.value_;
    if (n == 0) return r;
    r.grad_.resize(static_cast<std::size_t>(n));
    r.hess_.resize(static_cast<std::size_t>(n) * static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
      r.grad_[static_cast<std::size_t>(i)] = a.grad(i) * b.value_ + a.value_ * b.grad(i);
    }
    for (int i = 0; i < n; ++i) {
      for (int j = i; j < n; ++j) {
        T h = a.hess(i, j) * b.value_ + a.grad(i) * b.grad(j) + a.grad(j) * b.grad(i) +
              a.value_ * b.hess(i, j);
        r.hess_[r.index(j, i)] = h;
        r.hess_[r.index(i, j)] = std::move(h);
      }
    }
    return r;
  }

  // Quotient rule written against q = a / b so the value matches plain division.
  friend Jet2 operator/(const Jet2& a, const Jet2& b) {
    if (primal(b.value_) == 0.0) throw DomainError("division by zero");
    const int n = common_size(a, b);
    Jet2 r;
    r.value_ = a.value_ / b.value_;
    if (n == 0) return r;
    r.grad_.resize(static_cast<std::size_t>(n));
    r.hess_.resize(static_cast<std::size_t>(n) * static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
      r.grad_[static_cast<std::size_t>(i)] = (a.grad(i) - r.value_ * b.grad(i)) / b.value_;
    }
    for (int i = 0; i < n; ++i) {
      for (int j = i; j < n; ++j) {
        T h = (a.hess(i, j) - r.grad(i) * b.grad(j) - r.grad(j) * b.grad(i) -
               r.value_ * b.hess(i, j)) /
              b.value_;
        r.hess_[r.index(j, i)] = h;
        r.hess_[r.index(i, j)] = std::move(h);
      }
    }
    return r;
  }

  Jet2& operator+=(const Jet2& o) { return *this = *this + o; }
  Jet2& operator-=(const Jet2& o) { return *this = *this - o; }
  Jet2& operator*=(const Jet2& o) { return *this = *this * o; }
  Jet2& operator/=(const Jet2& o) { return *this = *this / o; }

  friend bool operator==(const Jet2& a, const Jet2& b) {
    const int n = common_size(a, b);
    if (!(a.value_ == b.value_)) return false;
    for (int i = 0; i < n; ++i) {
      if (!(a.grad(i) == b.grad(i))) return false;
      for (int j = 0; j < n; ++j) {
        if (!(a.hess(i, j) == b.hess(i, j))) return false;
      }
    }
    return true;
  }

  /// Chain rule for u = f(x) given f(x0), f'(x0), f''(x0).
  static Jet2 chain(const Jet2& x, T f0, const T& f1, const T& f2) {
    Jet2 r;
    r.value_ = std::move(f0);
    const int n = x.size();
    if (n == 0) return r;
    r.grad_.resize(static_cast<std::size_t>(n));
    r.hess_.resize(static_cast<std::size_t>(n) * static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) r.grad_[static_cast<std::size_t>(i)] = f1 * x.grad(i);
    for (int i = 0; i < n; ++i) {
      for (int j = i; j < n; ++j) {
        T h = f2 * x.grad(i) * x.grad(j) + f1 * x.hess(i, j);
        r.hess_[r.index(j, i)] = h;
        r.hess_[r.index(i, j)] = std::move(h);
      }
    }
    return r;
  }

 private:
  std::size_t index(int i, int j) const {
    return static_cast<std::size_t>(i) * grad_.size() + static_cast<std::size_t>(j);
  }

  static int common_size(const Jet2& a, const Jet2& b) {
    if (!a.grad_.empty() && !b.grad_.empty() && a.grad_.size() != b.grad_.size()) {
      throw std::invalid_argument("jet size mismatch");
    }
    return a.grad_.empty() ? b.size() : a.size();
  }

  static Jet2 combine(const Jet2& a, const Jet2& b, bool add) {
    const int n = common_size(a, b);
    Jet2 r;
    r.value_ = add ? a.value_ + b.value_ : a.value_ - b.value_;
    if (n == 0) return r;
    r.grad_.resize(static_cast<std::size_t>(n));
    r.hess_.resize(static_cast<std::size_t>(n) * static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
      r.grad_[static_cast<std::size_t>(i)] = add ? a.grad(i) + b.grad(i) : a.grad(i) - b.grad(i);
      for (int j = 0; j < n; ++j) {
        r.hess_[r.index(i, j)] = add ? a.hess(i, j) + b.hess(i, j) : a.hess(i, j) - b.hess(i, j);
      }
    }
    return r;
  }

  T value_;
  std::vector<T> grad_;
  std::vector<T> hess_;  // row-major n x n, symmetric by construction
};

template <class T>
double primal(const Jet2<T>& x) {
  return primal(x.value());
}

// Mixed operations with plain doubles.
template <class T>
Jet2<T> operator+(const Jet2<T>& a, double b) { return a + Jet2<T>(T{b}); }
template <class T>
Jet2<T> operator+(double a, const Jet2<T>& b) { return Jet2<T>(T{a}) + b; }
template <class T>
Jet2<T> operator-(const Jet2<T>& a, double b) { return a - Jet2<T>(T{b}); }
template <class T>
Jet2<T> operator-(double a, const Jet2<T>& b) { return Jet2<T>(T{a}) - b; }
template <class T>
Jet2<T> operator*(const Jet2<T>& a, double b) { return a * Jet2<T>(T{b}); }
template <class T>
Jet2<T> operator*(double a, const Jet2<T>& b) { return Jet2<T>(T{a}) * b; }
template <class T>
Jet2<T> operator/(const Jet2<T>& a, double b) { return a / Jet2<T>(T{b}); }
template <class T>
Jet2<T> operator/(double a, const Jet2<T>& b) { return Jet2<T>(T{a}) / b; }

/// x^n for integer n by repeated squaring; shared by every ring so that real
/// and jet evaluation agree bit for bit.
template <class S>
S integer_power(const S& x, long n) {
  if (n < 0) {
    if (primal(x) == 0.0) throw DomainError("zero raised to a negative power");
    return S{1.0} / integer_power(x, -n);
  }
  S result{1.0};
  S base = x;
  bool first = true;
  while (n > 0) {
    if (n & 1) {
      if (first) {
        result = base;
        first = false;
      } else {
        result = result * base;
      }
    }
    n >>= 1;
    if (n > 0) base = base * base;
  }
  return result;
}

inline double apply(Elementary f, double x) {
  switch (f) {
    case Elementary::Sin: return std::sin(x);
    case Elementary::Cos: return std::cos(x);
    case Elementary::Tan: return std::tan(x);
    case Elementary::Exp: return std::exp(x);
    case Elementary::Log:
      if (!(x > 0.0)) throw DomainError("log of non-positive value");
      return std::log(x);
    case Elementary::Sqrt:
      if (x < 0.0) throw DomainError("sqrt of negative value");
      return std::sqrt(x);
    case Elementary::Sinh: return std::sinh(x);
    case Elementary::Cosh: return std::cosh(x);
  }
  throw std::invalid_argument("unknown elementary function");
}

template <class T>
Jet2<T> apply(Elementary f, const Jet2<T>& x) {
  const T& u = x.value();
  switch (f) {
    case Elementary::Sin: {
      T s = apply(Elementary::Sin, u);
      T c = apply(Elementary::Cos, u);
      return Jet2<T>::chain(x, s, c, -s);
    }
    case Elementary::Cos: {
      T s = apply(Elementary::Sin, u);
      T c = apply(Elementary::Cos, u);
      return Jet2<T>::chain(x, c, -s, -c);
    }
    case Elementary::Tan: {
      T t = apply(Elementary::Tan, u);
      T sec2 = T{1.0} + t * t;
      return Jet2<T>::chain(x, t, sec2, T{2.0} * t * sec2);
    }
    case Elementary::Exp: {
      T e = apply(Elementary::Exp, u);
      return Jet2<T>::chain(x, e, e, e);
    }
    case Elementary::Log: {
      if (!(primal(u) > 0.0)) throw DomainError("log of non-positive value");
      T inv = T{1.0} / u;
      return Jet2<T>::chain(x, apply(Elementary::Log, u), inv, -(inv * inv));
    }
    case Elementary::Sqrt: {
      if (!(primal(u) > 0.0)) throw DomainError("sqrt of non-positive value");
      T s = apply(Elementary::Sqrt, u);
      T d1 = T{0.5} / s;
      T d2 = -(d1 / (T{2.0} * u));
      return Jet2<T>::chain(x, s, d1, d2);
    }
    case Elementary::Sinh: {
      T sh = apply(Elementary::Sinh, u);
      T ch = apply(Elementary::Cosh, u);
      return Jet2<T>::chain(x, sh, ch, sh);
    }
    case Elementary::Cosh: {
      T sh = apply(Elementary::Sinh, u);
      T ch = apply(Elementary::Cosh, u);
      return Jet2<T>::chain(x, ch, sh, ch);
    }
  }
  throw std::invalid_argument("unknown elementary function");
}

/// x^n for integer n with the analytic chain rule (n x^{n-1}, n(n-1) x^{n-2}).
template <class T>
Jet2<T> integer_power(const Jet2<T>& x, long n) {
  if (n < 0 && primal(x) == 0.0) throw DomainError("zero raised to a negative power");
  if (n == 0) return Jet2<T>(T{1.0});
  if (n == 1) return x;
  const T& u = x.value();
  T f0 = integer_power(u, n);
  T f1 = T{static_cast<double>(n)} * integer_power(u, n - 1);
  T f2 = T{static_cast<double>(n) * static_cast<double>(n - 1)} * integer_power(u, n - 2);
  return Jet2<T>::chain(x, f0, f1, f2);
}

using Jet = Jet2<double>;

/// Seeds for every coordinate of p.
template <class T = double>
std::vector<Jet2<T>> seed_all(std::span<const double> p) {
  std::vector<Jet2<T>> out;
  out.reserve(p.size());
  const int n = static_cast<int>(p.size());
  for (int i = 0; i < n; ++i) out.push_back(Jet2<T>::seed(n, i, T{p[static_cast<std::size_t>(i)]}));
  return out;
}

/// Seeds of a nested jet: the outer layer differentiates the inner one, so the
/// gradient of a result holds jets of its first partial derivatives.
std::vector<Jet2<Jet>> seed_all_nested(std::span<const double> p);

/// Re-expresses a jet over m variables as a jet over n >= m variables, placing
/// variable k at position offset + k.
Jet embed(const Jet& j, int n, int offset);

}  // namespace curvlab
