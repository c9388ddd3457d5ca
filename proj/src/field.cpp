#include "ncmf/field.hpp"

#include "ncmf/error.hpp"

namespace ncmf {

namespace {

std::uint64_t mod_pow(std::uint64_t b, std::uint64_t e, std::uint64_t p) {
  std::uint64_t r = 1 % p;
  b %= p;
  while (e) {
    if (e & 1) r = r * b % p;
    b = b * b % p;
    e >>= 1;
  }
  return r;
}

bool is_prime_u32(std::uint32_t n) {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

std::uint32_t residue_of(const mpz_class& z, std::uint32_t p) {
  mpz_class r = z % p;
  if (r < 0) r += p;
  return static_cast<std::uint32_t>(r.get_ui());
}

}  // namespace

bool Scalar::is_zero() const {
  if (is_residue()) return residue_value() == 0;
  return sgn(std::get<mpq_class>(v_)) == 0;
}

mpq_class Scalar::as_rational() const {
  if (is_residue()) return mpq_class(static_cast<unsigned long>(residue_value()));
  return std::get<mpq_class>(v_);
}

bool operator==(const Scalar& a, const Scalar& b) {
  if (a.is_residue() && b.is_residue()) return a.residue_value() == b.residue_value();
  return a.as_rational() == b.as_rational();
}

Field Field::prime(std::uint32_t p) {
  if (p >= (1u << 31) || !is_prime_u32(p))
    throw Error(ErrorKind::InvalidArgument, "field characteristic " + std::to_string(p) +
                                                " is not a prime below 2^31");
  return Field(p);
}

Scalar Field::zero() const {
  if (p_) return Scalar::residue(0);
  return Scalar::rational(mpq_class(0));
}

Scalar Field::one() const {
  if (p_) return Scalar::residue(1);
  return Scalar::rational(mpq_class(1));
}

Scalar Field::from_int(long long n) const {
  if (p_) {
    long long r = n % static_cast<long long>(p_);
    if (r < 0) r += p_;
    return Scalar::residue(static_cast<std::uint32_t>(r));
  }
  mpz_class z;
  mpz_set_si(z.get_mpz_t(), static_cast<long>(n));
  return Scalar::rational(mpq_class(z));
}

Scalar Field::from_rational(const mpq_class& q) const {
  if (!p_) return Scalar::rational(q);
  std::uint32_t den = residue_of(q.get_den(), p_);
  if (den == 0)
    throw Error(ErrorKind::InvalidArgument, "denominator divisible by the characteristic");
  return mul(Scalar::residue(residue_of(q.get_num(), p_)), inv(Scalar::residue(den)));
}

Scalar Field::add(const Scalar& a, const Scalar& b) const {
  if (p_) {
    std::uint64_t s = std::uint64_t(a.residue_value()) + b.residue_value();
    return Scalar::residue(static_cast<std::uint32_t>(s >= p_ ? s - p_ : s));
  }
  return Scalar::rational(a.as_rational() + b.as_rational());
}

Scalar Field::sub(const Scalar& a, const Scalar& b) const { return add(a, neg(b)); }

Scalar Field::mul(const Scalar& a, const Scalar& b) const {
  if (p_)
    return Scalar::residue(
        static_cast<std::uint32_t>(std::uint64_t(a.residue_value()) * b.residue_value() % p_));
  return Scalar::rational(a.as_rational() * b.as_rational());
}

Scalar Field::neg(const Scalar& a) const {
  if (p_) {
    std::uint32_t r = a.residue_value();
    return Scalar::residue(r == 0 ? 0 : p_ - r);
  }
  return Scalar::rational(-a.as_rational());
}

Scalar Field::inv(const Scalar& a) const {
  if (a.is_zero()) throw Error(ErrorKind::InvalidArgument, "division by zero");
  if (p_) return Scalar::residue(static_cast<std::uint32_t>(mod_pow(a.residue_value(), p_ - 2, p_)));
  return Scalar::rational(1 / a.as_rational());
}

Scalar Field::pow(const Scalar& a, long long e) const {
  Scalar base = e < 0 ? inv(a) : a;
  unsigned long long n = e < 0 ? static_cast<unsigned long long>(-(e + 1)) + 1
                               : static_cast<unsigned long long>(e);
  Scalar r = one();
  while (n) {
    if (n & 1) r = mul(r, base);
    base = mul(base, base);
    n >>= 1;
  }
  return r;
}

long long Field::multiplicative_order(const Scalar& a, long long limit) const {
  if (a.is_zero()) return 0;
  Scalar x = a;
  for (long long k = 1; k <= limit; ++k) {
    if (x == one()) return k;
    x = mul(x, a);
  }
  return 0;
}

std::string Field::format(const Scalar& a) const {
  if (p_) {
    std::uint32_t r = a.residue_value();
    if (r > p_ / 2) return "-" + std::to_string(p_ - r);
    return std::to_string(r);
  }
  return a.as_rational().get_str();
}

std::string Field::name() const { return p_ ? "F" + std::to_string(p_) : "Q"; }

}  // namespace ncmf
