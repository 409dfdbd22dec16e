#include <catch2/catch_amalgamated.hpp>

#include "k3sym/cyclotomic.hpp"

using k3sym::Rat;
using namespace k3sym::cyclo;

TEST_CASE("cyclotomic basics") {
  auto z8 = CyclotomicNumber::zeta(8);
  auto i = CyclotomicNumber::zeta(8, 2);
  CHECK(i * i == CyclotomicNumber(Rat(-1)));
  CHECK(z8 * z8 == CyclotomicNumber::zeta(4));  // lifts to common conductor
  // zeta_8^4 = -1
  auto z4th = z8 * z8 * z8 * z8;
  CHECK(z4th == CyclotomicNumber(Rat(-1)));
  // sum over primitive: zeta_5 + ... + zeta_5^4 = -1
  CyclotomicNumber s;
  for (int k = 1; k <= 4; ++k) s = s + CyclotomicNumber::zeta(5, k);
  CHECK(s.is_rational());
  CHECK(s.as_rational() == -1);
  // inverse
  auto x = CyclotomicNumber::zeta(7) + CyclotomicNumber(Rat(2));
  CHECK(x * x.inverse() == CyclotomicNumber(Rat(1)));
  CHECK_THROWS_AS(CyclotomicNumber().inverse(), std::domain_error);
  CHECK_THROWS_AS(CyclotomicNumber::zeta(33), std::invalid_argument);
}

TEST_CASE("cot exact values") {
  CHECK(cot(1, 2).as_rational() == 0);
  CHECK(cot(1, 4).as_rational() == 1);
  CHECK(cot(3, 4).as_rational() == -1);
  CHECK_THROWS_AS(cot(0, 5), std::domain_error);
  CHECK_THROWS_AS(cot(5, 5), std::domain_error);
  // cot(pi/3) is irrational but its square is 1/3
  auto c = cot(1, 3);
  CHECK_FALSE(c.is_rational());
  CHECK((c * c).as_rational() == Rat(1, 3));
  // cot and cot_pair agree where both are representable
  for (int p : {3, 4, 5, 6, 7, 8}) {
    for (int a = 1; a < p; ++a) {
      for (int b = 1; b < p; ++b) {
        CAPTURE(p, a, b);
        CHECK(cot(a, p) * cot(b, p) == cot_pair(a, b, p));
      }
    }
  }
  // single cot for order 11 needs conductor 44: rejected, while pair products work
  CHECK_THROWS_AS(cot(1, 11), std::invalid_argument);
  CHECK_NOTHROW(cot_pair(1, 1, 11));
}

TEST_CASE("cotangent square sum identity") {
  // sum_{j=1}^{(p-1)/2} cot^2(j pi / p) = (p-1)(p-2)/6
  for (int p : {3, 5, 7, 11}) {
    CAPTURE(p);
    CHECK(cot_square_half_sum(p) == Rat((p - 1) * (p - 2), 6));
  }
}

TEST_CASE("signature defect table") {
  CHECK(signature_defect(1, 1, 2) == 0);
  CHECK(signature_defect(1, 3, 4) == 2);
  CHECK(signature_defect(1, 1, 4) == -2);
  CHECK(signature_defect(3, 3, 4) == -2);
  CHECK(signature_defect(1, 2, 3) == Rat(2, 3));
  CHECK(signature_defect(1, 1, 3) == Rat(-2, 3));
}

TEST_CASE("signature defect symmetries") {
  // weights prime to p (otherwise some power of the rotation has a
  // non-isolated fixed locus and the cotangent sum has a pole)
  for (int p = 2; p <= 12; ++p) {
    for (int a = 1; a < p; ++a) {
      if (std::gcd(a, p) != 1) continue;
      for (int b = a; b < p; ++b) {
        if (std::gcd(b, p) != 1) continue;
        CAPTURE(p, a, b);
        Rat d = signature_defect(a, b, p);
        CHECK(d == signature_defect(b, a, p));
        CHECK(d == signature_defect(p - a, p - b, p));
      }
    }
  }
  // pole weights are rejected, not mis-summed
  CHECK_THROWS_AS(signature_defect(2, 1, 4), std::domain_error);
}

TEST_CASE("SL2-type defects are positive cotangent-square sums") {
  // defect(a, p-a) = + sum_j cot^2(j a pi / p) = 2 * half sum for a = 1
  CHECK(signature_defect(1, 6, 7) == 10);
  CHECK(signature_defect(1, 4, 5) == 4);
  CHECK(signature_defect(1, 2, 3) == Rat(2, 3));
  for (int p : {3, 5, 7, 11}) {
    CAPTURE(p);
    CHECK(signature_defect(1, p - 1, p) == 2 * cot_square_half_sum(p));
  }
}

TEST_CASE("order 7 group totals") {
  // type (2): two points of type (2k,3k), (-k,6k); total -8 for every k
  for (long k = 1; k <= 6; ++k) {
    CAPTURE(k);
    Rat total = signature_defect(2 * k, 3 * k, 7) + signature_defect(-k, 6 * k, 7);
    CHECK(total == -8);
  }
  CHECK(signature_defect(2, 3, 7) == 2);
  CHECK(signature_defect(6, 6, 7) == -10);
}

TEST_CASE("order 5 group totals") {
  // type (2): points (k,2k), (-k,4k), (-k,4k); total -8 for every k
  for (long k = 1; k <= 4; ++k) {
    CAPTURE(k);
    Rat total = signature_defect(k, 2 * k, 5) + 2 * signature_defect(-k, 4 * k, 5);
    CHECK(total == -8);
  }
  CHECK(signature_defect(1, 2, 5) == 0);
  CHECK(signature_defect(4, 4, 5) == -4);
}

TEST_CASE("order 3 type totals with surface term") {
  // (I) 2/3 ; (II) three (k,k) points: -2 ; (III) point + (-2)-sphere: -6
  CHECK(signature_defect(1, 2, 3) == Rat(2, 3));
  CHECK(3 * signature_defect(1, 1, 3) == -2);
  CHECK(signature_defect(1, 1, 3) + surface_defect_term(3, -2) == -6);
  CHECK(surface_defect_term(3, -2) == Rat(-16, 3));
  // involution fixed-surface coefficient (2^2-1)/3
  CHECK(surface_defect_term(2, 1) == 1);
}

TEST_CASE("spin contributions") {
  auto s0 = spin_contribution(2, 1, 1, 0);
  CHECK(s0.k == 1);
  CHECK(s0.rational_value() == Rat(1, 4));
  auto s1 = spin_contribution(2, 1, 1, 1);
  CHECK(s1.k == 2);
  CHECK(s1.rational_value() == Rat(-1, 4));
  auto s2 = spin_contribution(4, 1, 3, 0);
  CHECK(s2.k == 1);
  CHECK(s2.rational_value() == Rat(1, 2));
  CHECK_THROWS_AS(spin_contribution(4, 1, 1, 0), std::invalid_argument);
}

TEST_CASE("spin number feasibility") {
  CHECK(spin_number_feasible(8, -16) == std::set<long>{-2, 2});
  CHECK(spin_number_feasible(0, 0) == std::set<long>{0});
  CHECK(spin_number_feasible(4, -16).empty());
  CHECK_THROWS_AS(spin_number_feasible(8, -15), std::invalid_argument);
}
