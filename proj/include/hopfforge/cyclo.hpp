#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "hopfforge/rational.hpp"

namespace hopfforge {

/**
 * Element of the cyclotomic field Q(zeta_N), stored exactly.
 *
 * Representation: conductor N plus phi(N) rational coordinates in the power
 * basis {zeta_N^0, ..., zeta_N^{phi(N)-1}}, reduced modulo the N-th
 * cyclotomic polynomial. Every value is kept in canonical form: N is the
 * smallest conductor whose field contains the value, so equality is
 * component-wise comparison. Values are immutable once constructed and safe
 * to share across threads; the internal cyclotomic tables are built lazily
 * under a lock.
 */
class CycloNumber {
 public:
  CycloNumber();  // zero
  CycloNumber(long v);
  explicit CycloNumber(const Rational& v);

  // zeta_N^k. Requires N >= 1; k may be any integer (reduced mod N).
  static CycloNumber root_of_unity(long n, long k);

  long conductor() const { return n_; }
  const std::vector<Rational>& coeffs() const { return c_; }

  bool is_zero() const;
  bool is_one() const;
  bool is_rational() const { return n_ == 1; }
  // Requires is_rational().
  const Rational& rational_value() const;

  CycloNumber operator+(const CycloNumber& o) const;
  CycloNumber operator-(const CycloNumber& o) const;
  CycloNumber operator*(const CycloNumber& o) const;
  CycloNumber operator-() const;
  CycloNumber& operator+=(const CycloNumber& o) { return *this = *this + o; }
  CycloNumber& operator-=(const CycloNumber& o) { return *this = *this - o; }
  CycloNumber& operator*=(const CycloNumber& o) { return *this = *this * o; }

  // Multiplicative inverse; throws DivisionByZero on zero.
  CycloNumber inverse() const;
  // Integer power; pow(0) = 1, negative exponents invert first.
  CycloNumber pow(long e) const;
  // Complex conjugate (zeta^k -> zeta^{N-k}).
  CycloNumber conjugate() const;

  bool operator==(const CycloNumber& o) const;
  bool operator!=(const CycloNumber& o) const { return !(*this == o); }
  // Total order on representations (conductor, then coordinates); used for
  // deterministic containers, not a field order.
  bool operator<(const CycloNumber& o) const;

  // Human-readable form, e.g. "-1/2", "1 + 2*z4", "z12^5".
  std::string str() const;

 private:
  long n_;
  std::vector<Rational> c_;

  static CycloNumber raw(long n, std::vector<Rational> c);
  void canonicalize();
};

inline CycloNumber operator*(long a, const CycloNumber& b) {
  return CycloNumber(a) * b;
}

}  // namespace hopfforge
