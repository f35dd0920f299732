#pragma once

// Text <-> RingElement.
//
//   expr   := ['+'|'-'] term (('+'|'-') term)*
//   term   := integer ['*'] factor (['*'] factor)* | factor (['*'] factor)* | integer
//   factor := ('x'|'y'|'z') ['^' ( ['-'] integer | '(' ['-'] integer ')' )]
//
// Factors multiply left to right under the group law, so "y*x" is x*y*z^-1.
// Juxtaposed factors ("xy") multiply the same way as starred ones.

#include <cctype>
#include <cerrno>
#include <cstdint>
#include <cstdlib>
#include <string>
#include <string_view>

#include <gmpxx.h>

#include "heisendyn/error.hpp"
#include "heisendyn/ring.hpp"

namespace heisendyn {

namespace detail {

class PolyParser {
 public:
  explicit PolyParser(std::string_view s) : s_(s) {}

  ZElement run() {
    ZElement result;
    skip();
    if (at_end()) throw ParseError("empty expression", pos_);
    int sign = 1;
    if (peek() == '+' || peek() == '-') {
      sign = peek() == '-' ? -1 : 1;
      ++pos_;
    }
    for (;;) {
      auto [g, c] = term();
      if (sign < 0) c = -c;
      result.add(g, c);
      skip();
      if (at_end()) break;
      if (peek() == '+' || peek() == '-') {
        sign = peek() == '-' ? -1 : 1;
        ++pos_;
        continue;
      }
      throw ParseError(std::string("unexpected character '") + peek() + "'", pos_);
    }
    return result;
  }

 private:
  bool at_end() const { return pos_ >= s_.size(); }
  char peek() const { return s_[pos_]; }
  void skip() {
    while (!at_end() && std::isspace(static_cast<unsigned char>(peek()))) ++pos_;
  }
  bool at_var() {
    skip();
    return !at_end() && (peek() == 'x' || peek() == 'y' || peek() == 'z');
  }

  std::pair<GroupElement, mpz_class> term() {
    skip();
    if (at_end()) throw ParseError("expected a term", pos_);
    mpz_class coeff(1);
    bool have_int = false;
    if (std::isdigit(static_cast<unsigned char>(peek()))) {
      coeff = integer();
      have_int = true;
      skip();
      if (!at_end() && peek() == '*') {
        ++pos_;
        if (!at_var()) throw ParseError("expected x, y or z after '*'", pos_);
      }
    }
    GroupElement g = GroupElement::identity();
    if (!at_var()) {
      if (!have_int) throw ParseError("expected a term", pos_);
      return {g, coeff};
    }
    for (;;) {
      g = group_mul(g, factor());
      skip();
      if (!at_end() && peek() == '*') {
        ++pos_;
        if (!at_var()) throw ParseError("expected x, y or z after '*'", pos_);
        continue;
      }
      if (at_var()) continue;
      break;
    }
    return {g, coeff};
  }

  GroupElement factor() {
    skip();
    const char v = peek();
    ++pos_;
    std::int64_t e = 1;
    skip();
    if (!at_end() && peek() == '^') {
      ++pos_;
      skip();
      bool paren = false;
      if (!at_end() && peek() == '(') {
        paren = true;
        ++pos_;
        skip();
      }
      bool neg = false;
      if (!at_end() && peek() == '-') {
        neg = true;
        ++pos_;
        skip();
      }
      const std::size_t start = pos_;
      if (at_end() || !std::isdigit(static_cast<unsigned char>(peek())))
        throw ParseError("malformed exponent", pos_);
      mpz_class m = integer();
      if (neg) m = -m;
      if (!m.fits_slong_p()) throw ParseError("exponent out of range", start);
      e = m.get_si();
      if (paren) {
        skip();
        if (at_end() || peek() != ')') throw ParseError("expected ')'", pos_);
        ++pos_;
      }
    }
    switch (v) {
      case 'x': return GroupElement::x(e);
      case 'y': return GroupElement::y(e);
      default: return GroupElement::z(e);
    }
  }

  mpz_class integer() {
    const std::size_t start = pos_;
    while (!at_end() && std::isdigit(static_cast<unsigned char>(peek()))) ++pos_;
    return mpz_class(std::string(s_.substr(start, pos_ - start)));
  }

  std::string_view s_;
  std::size_t pos_ = 0;
};

inline std::string coeff_to_string(const mpz_class& v) { return v.get_str(); }
inline std::string coeff_to_string(const mpq_class& v) { return v.get_str(); }
inline std::string coeff_to_string(const cplx& v) {
  char buf[96];
  std::snprintf(buf, sizeof buf, "(%.17g%+.17gi)", v.real(), v.imag());
  return buf;
}

inline void append_power(std::string& out, char var, std::int64_t e) {
  if (e == 0) return;
  if (!out.empty() && out.back() != ' ') out += '*';
  out += var;
  if (e != 1) out += "^" + std::to_string(e);
}

}  // namespace detail

inline ZElement parse_poly(std::string_view text) { return detail::PolyParser(text).run(); }

inline std::string format_monomial(const GroupElement& g) {
  std::string s;
  detail::append_power(s, 'x', g.a);
  detail::append_power(s, 'y', g.b);
  detail::append_power(s, 'z', g.c);
  return s;
}

/// Canonical text: terms in lexicographic (a,b,c) order, coefficient first.
template <Coefficient C>
std::string format_poly(const RingElement<C>& f) {
  if (f.is_zero()) return "0";
  std::string out;
  bool first = true;
  for (const auto& [g, c] : f) {
    C v = c;
    bool neg = false;
    if constexpr (!std::is_same_v<C, cplx>) {
      neg = sgn(v) < 0;
      if (neg) v = -v;
    }
    if (first) {
      if (neg) out += "-";
    } else {
      out += neg ? " - " : " + ";
    }
    first = false;
    const std::string mono = format_monomial(g);
    bool unit = false;
    if constexpr (!std::is_same_v<C, cplx>) unit = (v == 1);
    if (mono.empty()) {
      out += detail::coeff_to_string(v);
    } else if (unit) {
      out += mono;
    } else {
      out += detail::coeff_to_string(v) + "*" + mono;
    }
  }
  return out;
}

}  // namespace heisendyn
