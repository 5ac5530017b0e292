#include "fnx/bounds/constants.hpp"

namespace fnx {

namespace {

EnclosedConstant compute_e_squared() {
  // sum_{i<=N} 2^i/i!, tail after N is below 2^(N+1)/(N+1)! * 1/(1 - 2/(N+2))
  Rational sum = 0;
  Rational term = 1;
  int i = 0;
  const Rational target(Integer(1), Integer("1" + std::string(66, '0')));
  for (;; ++i) {
    sum += term;
    Rational next = term * 2 / (i + 1);
    if (i < 1) {
      term = next;
      continue;
    }
    Rational tail = next / (1 - Rational(2) / (i + 2));
    if (tail < target) {
      Integer scale = Integer("1" + std::string(64, '0'));
      Rational lo(floor(sum * scale), scale);
      Rational hi(ceil((sum + tail) * scale), scale);
      lo.canonicalize();
      hi.canonicalize();
      return {"e^2", lo, hi};
    }
    term = next;
  }
}

}  // namespace

const EnclosedConstant& e_squared() {
  static const EnclosedConstant c = compute_e_squared();
  return c;
}

EnclosedConstant affine_e2(const std::string& name, const Rational& a, const Rational& b, const Rational& c) {
  const auto& e = e_squared();
  Rational x = (a * e.lower + b) / c;
  Rational y = (a * e.upper + b) / c;
  if (x > y) std::swap(x, y);
  return {name, x, y};
}

const EnclosedConstant& e2_minus_1_over_2() {
  static const EnclosedConstant c = affine_e2("(e^2-1)/2", 1, -1, 2);
  return c;
}
const EnclosedConstant& e2_plus_3_over_4() {
  static const EnclosedConstant c = affine_e2("(e^2+3)/4", 1, 3, 4);
  return c;
}
const EnclosedConstant& e2_plus_1_over_8() {
  static const EnclosedConstant c = affine_e2("(e^2+1)/8", 1, 1, 8);
  return c;
}
const EnclosedConstant& e2_over_8() {
  static const EnclosedConstant c = affine_e2("e^2/8", 1, 0, 8);
  return c;
}
const EnclosedConstant& e2_minus_3_over_4() {
  static const EnclosedConstant c = affine_e2("(e^2-3)/4", 1, -3, 4);
  return c;
}
const EnclosedConstant& e2_plus_3_over_8() {
  static const EnclosedConstant c = affine_e2("(e^2+3)/8", 1, 3, 8);
  return c;
}

std::vector<EnclosedConstant> all_constants() {
  return {e_squared(),   e2_minus_1_over_2(), e2_plus_3_over_4(), e2_plus_1_over_8(),
          e2_over_8(),   e2_minus_3_over_4(), e2_plus_3_over_8()};
}

}  // namespace fnx
