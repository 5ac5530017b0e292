#pragma once

#include <string>
#include <vector>

#include "fnx/core/rational.hpp"

namespace fnx {

// Rational bracket lower < value < upper of an irrational constant.
struct EnclosedConstant {
  std::string name;
  Rational lower;
  Rational upper;

  Rational width() const { return upper - lower; }
};

// e^2 from its Taylor series with a geometric tail bound, rounded outward
// to 64 decimal digits. Computed once.
const EnclosedConstant& e_squared();

// Affine images (a e^2 + b) / c of the e^2 bracket, c > 0.
EnclosedConstant affine_e2(const std::string& name, const Rational& a, const Rational& b, const Rational& c);

const EnclosedConstant& e2_minus_1_over_2();   // (e^2-1)/2
const EnclosedConstant& e2_plus_3_over_4();    // (e^2+3)/4
const EnclosedConstant& e2_plus_1_over_8();    // (e^2+1)/8
const EnclosedConstant& e2_over_8();           // e^2/8
const EnclosedConstant& e2_minus_3_over_4();   // (e^2-3)/4
const EnclosedConstant& e2_plus_3_over_8();    // (e^2+3)/8

std::vector<EnclosedConstant> all_constants();

}  // namespace fnx
