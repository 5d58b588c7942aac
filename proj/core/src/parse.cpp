#include "pqcat/parse.hpp"

#include <algorithm>
#include <cctype>
#include <string>

#include "pqcat/errors.hpp"

namespace pqcat {
namespace {

BigInt parse_decimal(std::string_view text, std::string_view whole) {
  const bool digits_only = !text.empty() && std::all_of(text.begin(), text.end(), [](char c) {
    return std::isdigit(static_cast<unsigned char>(c)) != 0;
  });
  if (!digits_only) throw DomainError("not a nonnegative integer: '" + std::string(whole) + "'");
  return BigInt(std::string(text), 10);
}

}  // namespace

BigInt parse_integer(std::string_view text) {
  const auto caret = text.find('^');
  if (caret == std::string_view::npos) return parse_decimal(text, text);
  const BigInt base = parse_decimal(text.substr(0, caret), text);
  const BigInt exponent = parse_decimal(text.substr(caret + 1), text);
  if (!exponent.fits_ulong_p() || exponent > 1'000'000) {
    throw DomainError("exponent too large in '" + std::string(text) + "'");
  }
  BigInt out;
  mpz_pow_ui(out.get_mpz_t(), base.get_mpz_t(), exponent.get_ui());
  return out;
}

}  // namespace pqcat
