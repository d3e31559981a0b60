#pragma once

// Worked matrices from the reference sessions, transcribed into normal
// order (x before D).

#include "opgp/orealg/operator_matrix.hpp"

namespace opgp::testing {

inline RingPtr weyl_xyz() { return RingSpec::weyl({"x", "y", "z"}); }
inline RingPtr weyl_xy() { return RingSpec::weyl({"x", "y"}); }

/// Sphere: tangent and divergence free.
inline OperatorMatrix sphere_a(const RingPtr& r) {
  return OperatorMatrix::parse(r, {{"x", "y", "z"}, {"Dx", "Dy", "Dz"}});
}

inline OperatorMatrix sphere_b(const RingPtr& r) {
  return OperatorMatrix::parse(r, {{"z*Dy - y*Dz"}, {"-z*Dx + x*Dz"}, {"y*Dx - x*Dy"}});
}

/// Curl parametrization of divergence-free fields (columns reordered).
inline OperatorMatrix curl_b(const RingPtr& r) {
  return OperatorMatrix::parse(r, {{"Dz", "Dy", "0"}, {"0", "-Dx", "Dz"}, {"-Dx", "0", "-Dy"}});
}

/// Fields tangent to spheres around the origin.
inline OperatorMatrix tangent_b(const RingPtr& r) {
  return OperatorMatrix::parse(r, {{"0", "z", "-y"}, {"-z", "0", "x"}, {"y", "-x", "0"}});
}

inline OperatorMatrix curl_tangent_c(const RingPtr& r) {
  return OperatorMatrix::parse(r, {{"x", "Dx", "0"},
                                   {"y", "Dy", "0"},
                                   {"z", "Dz", "0"},
                                   {"Dx", "0", "x"},
                                   {"Dy", "0", "y"},
                                   {"Dz", "0", "z"}});
}

/// The displayed C's upper block is written for B1 before the column
/// reorder; mapping it through the reorder gives [B1 B2]*C = 0.
inline OperatorMatrix curl_tangent_c_consistent(const RingPtr& r) {
  const auto c = curl_tangent_c(r);
  const auto reorder = OperatorMatrix::parse(r, {{"0", "1", "0"}, {"0", "0", "-1"}, {"-1", "0", "0"}});
  return vstack(mat_mul(reorder, c.block(0, 3, 0, 3)), c.block(3, 3, 0, 3));
}

inline OperatorMatrix equator_b1(const RingPtr& r) {
  return OperatorMatrix::parse(r, {{"y*Dz - z*Dy"}, {"-x*Dz + z*Dx"}, {"-y*Dx + x*Dy"}});
}

inline OperatorMatrix equator_b2(const RingPtr& r) {
  return OperatorMatrix::parse(r, {{"z", "0", "0"}, {"0", "z", "0"}, {"0", "0", "z"}});
}

inline OperatorMatrix equator_c(const RingPtr& r) {
  return OperatorMatrix::parse(
      r, {{"z^2"}, {"z^2*Dy - y*z*Dz - 2*y"}, {"-z^2*Dx + x*z*Dz + 2*x"}, {"y*z*Dx - x*z*Dy"}});
}

/// B1*C1 of the equator intersection.
inline OperatorMatrix equator_p(const RingPtr& r) {
  return OperatorMatrix::parse(r, {{"z*(-z^2*Dy + y*z*Dz + 2*y)"},
                                   {"z*(z^2*Dx - x*z*Dz - 2*x)"},
                                   {"(-y*Dx + x*Dy)*z^2"}});
}

inline OperatorMatrix square_b1(const RingPtr& r) { return OperatorMatrix::parse(r, {{"Dy"}, {"-Dx"}}); }

inline OperatorMatrix square_b2(const RingPtr& r) {
  return OperatorMatrix::parse(r, {{"(x-1)*x", "0"}, {"0", "(y-1)*y"}});
}

inline OperatorMatrix square_c(const RingPtr& r) {
  return OperatorMatrix::parse(r, {{"x^2*y^2 - x^2*y - x*y^2 + x*y"},
                                   {"-y^2*Dy + y*Dy - 2*y + 1"},
                                   {"x^2*Dx - x*Dx + 2*x - 1"}});
}

inline OperatorMatrix square_p(const RingPtr& r) {
  return OperatorMatrix::parse(r, {{"x*(-1 + y^2*Dy + y*(-Dy + 2))*(x-1)"},
                                   {"-(y-1)*y*(-1 + x^2*Dx + x*(-Dx + 2))"}});
}

}  // namespace opgp::testing
