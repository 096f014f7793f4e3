#include "lbs/rational.hpp"

#include "lbs/errors.hpp"

namespace lbs {

namespace {

BigInt parse_int(const std::string& s) {
  if (s.empty()) throw InputError("empty number");
  std::size_t start = (s[0] == '-' || s[0] == '+') ? 1 : 0;
  if (start == s.size()) throw InputError("bad number: " + s);
  for (std::size_t i = start; i < s.size(); ++i)
    if (!std::isdigit(static_cast<unsigned char>(s[i])))
      throw InputError("bad number: " + s);
  return BigInt(s);
}

}  // namespace

Rat parse_rat(const std::string& text) {
  auto slash = text.find('/');
  if (slash != std::string::npos) {
    BigInt num = parse_int(text.substr(0, slash));
    BigInt den = parse_int(text.substr(slash + 1));
    if (den == 0) throw InputError("zero denominator: " + text);
    return Rat(num, den);
  }
  auto dot = text.find('.');
  if (dot != std::string::npos) {
    std::string digits = text.substr(0, dot) + text.substr(dot + 1);
    BigInt num = parse_int(digits);
    BigInt den = 1;
    for (std::size_t i = dot + 1; i < text.size(); ++i) den *= 10;
    return Rat(num, den);
  }
  return Rat(parse_int(text));
}

}  // namespace lbs
