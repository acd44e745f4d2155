#pragma once

#include <cmath>
#include <complex>
#include <random>

#include "doctest.h"
#include "tempscat/error.hpp"
#include "tempscat/types.hpp"

namespace support {

using tempscat::Complex;
using tempscat::CVec3;
using tempscat::Vec3;

// Relative closeness with an absolute floor at `scale`.
inline bool close(double a, double b, double rel, double scale = 1.0) {
  return std::abs(a - b) <= rel * std::max({std::abs(a), std::abs(b), scale});
}

inline bool close(Complex a, Complex b, double rel, double scale = 1.0) {
  return std::abs(a - b) <= rel * std::max({std::abs(a), std::abs(b), scale});
}

inline bool close(const CVec3& a, const CVec3& b, double rel, double scale = 1.0) {
  return (a - b).norm() <= rel * std::max({a.norm(), b.norm(), scale});
}

// Log-uniform in [lo, hi].
inline double log_uniform(std::mt19937_64& rng, double lo, double hi) {
  std::uniform_real_distribution<double> u(std::log(lo), std::log(hi));
  return std::exp(u(rng));
}

inline Vec3 random_unit(std::mt19937_64& rng) {
  std::normal_distribution<double> n;
  Vec3 v(n(rng), n(rng), n(rng));
  return v.normalized();
}

// Random complex amplitude transverse to k.
inline CVec3 random_transverse(std::mt19937_64& rng, const Vec3& k) {
  std::normal_distribution<double> n;
  Vec3 axis = std::abs(k(0)) < 0.9 ? Vec3::UnitX() : Vec3::UnitY();
  const Vec3 e1 = k.cross(axis).normalized();
  const Vec3 e2 = k.cross(e1);
  const Complex a(n(rng), n(rng));
  const Complex b(n(rng), n(rng));
  return a * e1.cast<Complex>() + b * e2.cast<Complex>();
}

template <class F>
tempscat::ErrorCode error_code_of(F&& f) {
  try {
    f();
  } catch (const tempscat::Error& e) {
    return e.code();
  }
  FAIL("expected tempscat::Error");
  return tempscat::ErrorCode::io;
}

}  // namespace support

#define CHECK_ERROR_CODE(expr, code) CHECK(support::error_code_of([&] { (void)(expr); }) == (code))
