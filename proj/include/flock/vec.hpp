#pragma once

#include <cmath>
#include <cstddef>
#include <initializer_list>
#include <vector>

namespace flock {

// Dense m-dimensional real vector. The dimension is fixed at construction;
// every vector participating in one run has the same dimension. Units depend
// on context (m, m/s, or m/s^2).
class VecM {
 public:
  VecM() = default;
  explicit VecM(std::size_t dim) : c_(dim, 0.0) {}
  VecM(std::initializer_list<double> xs) : c_(xs) {}

  static VecM zero(std::size_t dim) { return VecM(dim); }

  std::size_t dim() const { return c_.size(); }
  double operator[](std::size_t i) const { return c_[i]; }
  double& operator[](std::size_t i) { return c_[i]; }

  double norm_sq() const {
    double s = 0.0;
    for (double x : c_) s += x * x;
    return s;
  }
  double norm() const { return std::sqrt(norm_sq()); }

  double dot(const VecM& o) const {
    double s = 0.0;
    for (std::size_t i = 0; i < c_.size(); ++i) s += c_[i] * o.c_[i];
    return s;
  }

  bool all_finite() const {
    for (double x : c_) {
      if (!std::isfinite(x)) return false;
    }
    return true;
  }

  VecM& operator+=(const VecM& o) {
    for (std::size_t i = 0; i < c_.size(); ++i) c_[i] += o.c_[i];
    return *this;
  }
  VecM& operator-=(const VecM& o) {
    for (std::size_t i = 0; i < c_.size(); ++i) c_[i] -= o.c_[i];
    return *this;
  }
  VecM& operator*=(double s) {
    for (double& x : c_) x *= s;
    return *this;
  }

  friend VecM operator+(VecM a, const VecM& b) { return a += b; }
  friend VecM operator-(VecM a, const VecM& b) { return a -= b; }
  friend VecM operator*(VecM a, double s) { return a *= s; }
  friend VecM operator*(double s, VecM a) { return a *= s; }

  friend bool operator==(const VecM&, const VecM&) = default;

 private:
  std::vector<double> c_;
};

inline double distance_sq(const VecM& a, const VecM& b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.dim(); ++i) {
    const double d = a[i] - b[i];
    s += d * d;
  }
  return s;
}

inline double distance(const VecM& a, const VecM& b) {
  return std::sqrt(distance_sq(a, b));
}

}  // namespace flock
