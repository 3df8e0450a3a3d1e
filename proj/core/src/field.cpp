#include "ialg/field.hpp"

#include <stdexcept>

namespace ialg {

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  if (n % 2 == 0) return n == 2;
  for (std::uint64_t d = 3; d * d <= n; d += 2) {
    if (n % d == 0) return false;
  }
  return true;
}

Field Field::prime(std::uint32_t p) {
  if (p >= (1u << 31) || !is_prime(p)) {
    throw std::invalid_argument("field characteristic must be a prime below 2^31, got " +
                                std::to_string(p));
  }
  return Field(Kind::PrimeField, p);
}

std::int64_t Field::residue(const mpz_class& z) const {
  mpz_class r = z % p_;
  if (r < 0) r += p_;
  return r.get_si();
}

Scalar Field::from_rational(const mpq_class& q) const {
  if (kind_ == Kind::Rationals) {
    Scalar out(q);
    out.canonicalize();
    return out;
  }
  const std::int64_t num = residue(q.get_num());
  const std::int64_t den = residue(q.get_den());
  if (den == 0) throw std::domain_error("denominator vanishes in " + name());
  return mul(Scalar(static_cast<long>(num)), inv(Scalar(static_cast<long>(den))));
}

Scalar Field::add(const Scalar& a, const Scalar& b) const {
  if (kind_ == Kind::Rationals) return Scalar(a + b);
  std::int64_t s = a.get_num().get_si() + b.get_num().get_si();
  if (s >= p_) s -= p_;
  return Scalar(static_cast<long>(s));
}

Scalar Field::sub(const Scalar& a, const Scalar& b) const {
  if (kind_ == Kind::Rationals) return Scalar(a - b);
  std::int64_t s = a.get_num().get_si() - b.get_num().get_si();
  if (s < 0) s += p_;
  return Scalar(static_cast<long>(s));
}

Scalar Field::mul(const Scalar& a, const Scalar& b) const {
  if (kind_ == Kind::Rationals) return Scalar(a * b);
  const std::int64_t m = (a.get_num().get_si() * b.get_num().get_si()) % p_;
  return Scalar(static_cast<long>(m));
}

Scalar Field::neg(const Scalar& a) const {
  if (kind_ == Kind::Rationals) return Scalar(-a);
  const std::int64_t v = a.get_num().get_si();
  return Scalar(static_cast<long>(v == 0 ? 0 : p_ - v));
}

Scalar Field::inv(const Scalar& a) const {
  if (is_zero(a)) throw std::domain_error("division by zero");
  if (kind_ == Kind::Rationals) return Scalar(1 / a);
  // Extended Euclid on machine integers.
  std::int64_t t = 0, new_t = 1;
  std::int64_t r = p_, new_r = a.get_num().get_si();
  while (new_r != 0) {
    const std::int64_t q = r / new_r;
    t = t - q * new_t;
    std::swap(t, new_t);
    r = r - q * new_r;
    std::swap(r, new_r);
  }
  if (t < 0) t += p_;
  return Scalar(static_cast<long>(t));
}

std::string Field::name() const {
  if (kind_ == Kind::Rationals) return "Q";
  return "Fp " + std::to_string(p_);
}

}  // namespace ialg
