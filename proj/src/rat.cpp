#include "linjac/rat.hpp"

#include <cctype>
#include <stdexcept>

namespace linjac {

Rat::Rat(long num, long den) {
  if (den == 0) throw std::invalid_argument("Rat: zero denominator");
  value_ = mpq_class(num, den);
  value_.canonicalize();
}

Rat& Rat::operator/=(const Rat& o) {
  if (o.is_zero()) throw std::domain_error("Rat: division by zero");
  value_ /= o.value_;
  return *this;
}

Rat Rat::parse(std::string_view text) {
  auto digits = [](std::string_view s) {
    if (s.empty()) return false;
    for (char c : s)
      if (!std::isdigit(static_cast<unsigned char>(c))) return false;
    return true;
  };
  std::string_view body = text;
  if (!body.empty() && (body.front() == '-' || body.front() == '+')) body.remove_prefix(1);
  const auto slash = body.find('/');
  const std::string_view num = body.substr(0, slash);
  const std::string_view den = slash == std::string_view::npos ? std::string_view{"1"}
                                                               : body.substr(slash + 1);
  if (!digits(num) || !digits(den)) throw std::invalid_argument("Rat: malformed literal");
  mpz_class n(std::string(num), 10);
  mpz_class d(std::string(den), 10);
  if (d == 0) throw std::invalid_argument("Rat: zero denominator");
  if (!text.empty() && text.front() == '-') n = -n;
  mpq_class q(n, d);
  q.canonicalize();
  return Rat(std::move(q));
}

}  // namespace linjac
