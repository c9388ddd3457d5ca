#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <string>
#include <variant>

namespace ncmf {

// A field element. Prime-field residues are stored as machine words, rationals
// through GMP. Which one is meaningful depends on the Field doing the arithmetic.
class Scalar {
 public:
  Scalar() = default;
  static Scalar residue(std::uint32_t r) { return Scalar(r); }
  static Scalar rational(mpq_class q) { return Scalar(std::move(q)); }

  bool is_zero() const;
  bool is_residue() const { return std::holds_alternative<std::uint32_t>(v_); }
  std::uint32_t residue_value() const { return std::get<std::uint32_t>(v_); }
  mpq_class as_rational() const;

  friend bool operator==(const Scalar& a, const Scalar& b);

 private:
  explicit Scalar(std::uint32_t r) : v_(r) {}
  explicit Scalar(mpq_class q) : v_(std::move(q)) {}
  std::variant<std::uint32_t, mpq_class> v_{std::uint32_t{0}};
};

class Field {
 public:
  static Field rationals() { return Field(0); }
  static Field prime(std::uint32_t p);

  bool is_prime() const { return p_ != 0; }
  std::uint32_t characteristic() const { return p_; }

  Scalar zero() const;
  Scalar one() const;
  Scalar from_int(long long n) const;
  Scalar from_rational(const mpq_class& q) const;

  Scalar add(const Scalar& a, const Scalar& b) const;
  Scalar sub(const Scalar& a, const Scalar& b) const;
  Scalar mul(const Scalar& a, const Scalar& b) const;
  Scalar neg(const Scalar& a) const;
  Scalar inv(const Scalar& a) const;
  Scalar div(const Scalar& a, const Scalar& b) const { return mul(a, inv(b)); }
  Scalar pow(const Scalar& a, long long e) const;

  // Multiplicative order of a nonzero element, or 0 if infinite / above limit.
  long long multiplicative_order(const Scalar& a, long long limit) const;

  // Residues print with the symmetric representative, so -1 in F7 is "-1".
  std::string format(const Scalar& a) const;
  std::string name() const;

  friend bool operator==(const Field& a, const Field& b) { return a.p_ == b.p_; }

 private:
  explicit Field(std::uint32_t p) : p_(p) {}
  std::uint32_t p_ = 0;
};

}  // namespace ncmf
