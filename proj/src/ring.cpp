#include "rkdual/ring.hpp"

#include <charconv>

namespace rkdual {

namespace {

bool is_prime(unsigned long p) {
  if (p < 2) return false;
  for (unsigned long d = 2; d * d <= p; ++d)
    if (p % d == 0) return false;
  return true;
}

}  // namespace

Ring Ring::mod(unsigned long p) {
  if (!is_prime(p))
    throw Error("ring Z/" + std::to_string(p) + ": modulus is not prime");
  return Ring(Kind::integers_mod_p, p);
}

Ring Ring::parse(std::string_view text) {
  if (text == "Z") return integers();
  if (text == "Q") return rationals();
  if (text.size() > 2 && text.substr(0, 2) == "Z/") {
    unsigned long p = 0;
    auto digits = text.substr(2);
    auto [ptr, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), p);
    if (ec == std::errc() && ptr == digits.data() + digits.size()) return mod(p);
  }
  throw Error("unknown ring '" + std::string(text) + "' (expected Z, Q or Z/p)");
}

Integer Ring::reduce(const Integer& x) const {
  if (kind_ != Kind::integers_mod_p) return x;
  Integer r;
  mpz_fdiv_r_ui(r.get_mpz_t(), x.get_mpz_t(), p_);
  return r;
}

bool Ring::is_zero(const Integer& x) const {
  if (kind_ != Kind::integers_mod_p) return sgn(x) == 0;
  return mpz_divisible_ui_p(x.get_mpz_t(), p_) != 0;
}

bool Ring::is_unit(const Integer& x) const {
  switch (kind_) {
    case Kind::integers: return x == 1 || x == -1;
    case Kind::rationals: return sgn(x) != 0;
    case Kind::integers_mod_p: return !is_zero(x);
  }
  return false;
}

Integer Ring::inverse(const Integer& x) const {
  if (!is_unit(x)) throw Error("inverse of a non-unit");
  if (kind_ == Kind::integers_mod_p) {
    Integer r;
    Integer m = p_;
    mpz_invert(r.get_mpz_t(), reduce(x).get_mpz_t(), m.get_mpz_t());
    return r;
  }
  if (x == 1 || x == -1) return x;
  throw Error("rational inverse is not integral");
}

std::string Ring::name() const {
  switch (kind_) {
    case Kind::integers: return "Z";
    case Kind::rationals: return "Q";
    case Kind::integers_mod_p: return "Z/" + std::to_string(p_);
  }
  return "?";
}

}  // namespace rkdual
