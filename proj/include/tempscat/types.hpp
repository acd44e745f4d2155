#pragma once

#include <complex>

#include <Eigen/Dense>

namespace tempscat {

using Complex = std::complex<double>;
using Vec3 = Eigen::Vector3d;
using CVec3 = Eigen::Vector3cd;

inline Complex dot(const CVec3& a, const Vec3& k) {
  return a(0) * k(0) + a(1) * k(1) + a(2) * k(2);
}

// Eigen's cross() conjugates complex results, so these are spelled out.
inline CVec3 cross(const CVec3& a, const Vec3& k) {
  return CVec3(a(1) * k(2) - a(2) * k(1), a(2) * k(0) - a(0) * k(2), a(0) * k(1) - a(1) * k(0));
}

inline CVec3 cross(const Vec3& k, const CVec3& a) { return -cross(a, k); }

}  // namespace tempscat
