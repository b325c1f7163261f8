#include "dsgames/rational.hpp"

namespace dsg {

Rat rat_parse(const std::string& text) {
  const char* s = text.c_str();
  std::size_t i = 0;
  if (text.empty()) throw ParseError("empty rational literal");
  if (s[i] == '-') ++i;
  std::size_t num_begin = i;
  while (i < text.size() && s[i] >= '0' && s[i] <= '9') ++i;
  if (i == num_begin)
    throw ParseError("invalid rational literal '" + text + "': expected digits");
  if (i < text.size()) {
    if (s[i] != '/')
      throw ParseError("invalid rational literal '" + text + "': unexpected character at offset " +
                       std::to_string(i));
    ++i;
    // Denominator: positive, no leading zero.
    if (i >= text.size() || s[i] < '1' || s[i] > '9')
      throw ParseError("invalid rational literal '" + text +
                       "': denominator must start with a nonzero digit");
    while (i < text.size() && s[i] >= '0' && s[i] <= '9') ++i;
    if (i != text.size())
      throw ParseError("invalid rational literal '" + text + "': unexpected character at offset " +
                       std::to_string(i));
  }
  Rat r;
  if (mpq_set_str(r.get_mpq_t(), text.c_str(), 10) != 0)
    throw ParseError("invalid rational literal '" + text + "'");
  r.canonicalize();
  return r;
}

std::string rat_str(const Rat& r) { return r.get_str(); }

Rat rat_pow(const Rat& base, unsigned long e) {
  Rat out;
  mpz_pow_ui(mpq_numref(out.get_mpq_t()), mpq_numref(base.get_mpq_t()), e);
  mpz_pow_ui(mpq_denref(out.get_mpq_t()), mpq_denref(base.get_mpq_t()), e);
  // base is canonical, so num^e / den^e is already canonical.
  return out;
}

double rat_approx(const Rat& r) { return r.get_d(); }

}  // namespace dsg
