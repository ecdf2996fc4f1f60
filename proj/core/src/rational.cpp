#include "matising/rational.hpp"

#include <cctype>
#include <stdexcept>

#include "matising/errors.hpp"

namespace matising {

Rat parse_rational(const std::string& text) {
  if (text.empty()) throw ParseError("empty number");
  for (char ch : text) {
    if (!std::isdigit(static_cast<unsigned char>(ch)) && ch != '/' &&
        ch != '.' && ch != '-' && ch != '+') {
      throw ParseError("bad character in number '" + text + "'");
    }
  }
  try {
    const auto dot = text.find('.');
    if (dot != std::string::npos) {
      if (text.find('/') != std::string::npos) {
        throw ParseError("number mixes '.' and '/': '" + text + "'");
      }
      // Finite decimal: digits before and after the point, exact scaling.
      const std::string whole = text.substr(0, dot);
      const std::string frac = text.substr(dot + 1);
      if (frac.empty()) throw ParseError("trailing '.' in '" + text + "'");
      for (char ch : frac) {
        if (!std::isdigit(static_cast<unsigned char>(ch))) {
          throw ParseError("bad decimal '" + text + "'");
        }
      }
      const bool negative = !whole.empty() && whole[0] == '-';
      std::string digits = whole.empty() || whole == "-" || whole == "+"
                               ? "0"
                               : whole.substr(whole[0] == '-' || whole[0] == '+'
                                                  ? 1
                                                  : 0);
      mpz_class num(digits + frac);
      mpz_class den = 1;
      for (std::size_t i = 0; i < frac.size(); ++i) den *= 10;
      Rat value(num, den);
      value.canonicalize();
      if (negative) value = -value;
      return value;
    }
    Rat value(text);
    if (value.get_den() == 0) throw ParseError("zero denominator in '" + text + "'");
    value.canonicalize();
    return value;
  } catch (const std::invalid_argument&) {
    throw ParseError("unparsable number '" + text + "'");
  }
}

std::string to_string(const Rat& value) {
  return value.get_str();
}

double to_double(const Rat& value) {
  return value.get_d();
}

Rat div_pow2(const Rat& value, unsigned k) {
  Rat den(1);
  mpz_mul_2exp(den.get_num_mpz_t(), den.get_num_mpz_t(), k);
  return value / den;
}

}  // namespace matising
