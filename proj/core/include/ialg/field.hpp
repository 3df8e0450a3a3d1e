#pragma once

#include <cstdint>
#include <string>

#include <gmpxx.h>

namespace ialg {

/// Field elements are stored as GMP rationals. Over F_p the stored value is
/// always an integer in [0, p).
using Scalar = mpq_class;

/// The exact coefficient field shared by every diagonal component A_ii.
class Field {
 public:
  enum class Kind { Rationals, PrimeField };

  static Field rationals() { return Field(Kind::Rationals, 0); }
  /// Throws std::invalid_argument unless p is a prime below 2^31.
  static Field prime(std::uint32_t p);

  Kind kind() const { return kind_; }
  bool is_prime_field() const { return kind_ == Kind::PrimeField; }
  std::uint32_t characteristic() const { return p_; }

  /// Maps an arbitrary rational into the field (reducing a/b mod p when needed).
  Scalar from_rational(const mpq_class& q) const;
  Scalar from_int(long v) const { return from_rational(mpq_class(v)); }

  Scalar zero() const { return Scalar(0); }
  Scalar one() const { return Scalar(1); }

  Scalar add(const Scalar& a, const Scalar& b) const;
  Scalar sub(const Scalar& a, const Scalar& b) const;
  Scalar mul(const Scalar& a, const Scalar& b) const;
  Scalar neg(const Scalar& a) const;
  /// Throws std::domain_error on zero.
  Scalar inv(const Scalar& a) const;
  Scalar div(const Scalar& a, const Scalar& b) const { return mul(a, inv(b)); }

  static bool is_zero(const Scalar& a) { return sgn(a) == 0; }

  /// "Q" or "Fp <p>", the same spelling the input format uses.
  std::string name() const;
  static std::string format(const Scalar& a) { return a.get_str(); }

  friend bool operator==(const Field& a, const Field& b) {
    return a.kind_ == b.kind_ && a.p_ == b.p_;
  }

 private:
  Field(Kind k, std::uint32_t p) : kind_(k), p_(p) {}

  std::int64_t residue(const mpz_class& z) const;

  Kind kind_;
  std::uint32_t p_;
};

bool is_prime(std::uint64_t n);

}  // namespace ialg
