#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <array>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace plumbcalc {

using Int = boost::multiprecision::cpp_int;
using Rat = boost::multiprecision::cpp_rational;

// 2x2 integer matrix, row major.
struct Mat2 {
  std::array<Int, 4> a{Int(1), Int(0), Int(0), Int(1)};

  static Mat2 identity() { return Mat2{}; }
  static Mat2 J() { return Mat2{{Int(0), Int(1), Int(1), Int(0)}}; }

  Int& operator()(int r, int c) { return a[2 * r + c]; }
  const Int& operator()(int r, int c) const { return a[2 * r + c]; }

  Int det() const { return a[0] * a[3] - a[1] * a[2]; }

  Mat2 operator*(const Mat2& o) const {
    Mat2 r;
    r.a[0] = a[0] * o.a[0] + a[1] * o.a[2];
    r.a[1] = a[0] * o.a[1] + a[1] * o.a[3];
    r.a[2] = a[2] * o.a[0] + a[3] * o.a[2];
    r.a[3] = a[2] * o.a[1] + a[3] * o.a[3];
    return r;
  }

  bool operator==(const Mat2& o) const { return a == o.a; }
  bool operator!=(const Mat2& o) const { return a != o.a; }

  // Adjugate, so that *this * adj() == det() * identity.
  Mat2 adj() const { return Mat2{{a[3], -a[1], -a[2], a[0]}}; }
};

// Column-style Hermite form of the lattice spanned by the columns; used to
// compare column lattices of 2x2 integer matrices.
Mat2 column_hermite(const Mat2& m);

inline long long to_ll(const Int& v) {
  if (v > Int(std::numeric_limits<long long>::max()) ||
      v < Int(std::numeric_limits<long long>::min()))
    throw std::overflow_error("integer out of range: " + v.str());
  return static_cast<long long>(v);
}

}  // namespace plumbcalc
