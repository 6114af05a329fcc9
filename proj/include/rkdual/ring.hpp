#pragma once

#include <gmpxx.h>

#include <stdexcept>
#include <string>
#include <string_view>

namespace rkdual {

using Integer = mpz_class;

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Coefficient ring. Matrix entries are stored as integers; the ring decides
/// how they are reduced and which elements are units.
class Ring {
 public:
  enum class Kind { integers, rationals, integers_mod_p };

  static Ring integers() { return Ring(Kind::integers, 0); }
  static Ring rationals() { return Ring(Kind::rationals, 0); }
  /// Throws Error unless p is prime.
  static Ring mod(unsigned long p);
  /// Accepts "Z", "Q" or "Z/p".
  static Ring parse(std::string_view text);

  Kind kind() const { return kind_; }
  unsigned long modulus() const { return p_; }
  bool is_field() const { return kind_ != Kind::integers; }

  Integer reduce(const Integer& x) const;
  bool is_zero(const Integer& x) const;
  bool is_unit(const Integer& x) const;
  /// Inverse of a unit; only meaningful for integers_mod_p and for +-1 over Z.
  Integer inverse(const Integer& x) const;

  std::string name() const;

  friend bool operator==(const Ring&, const Ring&) = default;

 private:
  Ring(Kind k, unsigned long p) : kind_(k), p_(p) {}
  Kind kind_;
  unsigned long p_;
};

}  // namespace rkdual
