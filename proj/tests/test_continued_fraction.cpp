#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <gmpxx.h>

#include <cmath>

#include "recdim/continued_fraction.hpp"

using namespace recdim;

namespace {

/// Independent value oracle: floor((sqrt(5)-1)/2 * 2^128) computed exactly
/// as isqrt(5 * 2^254) - 2^127.
u128 golden_fixed_oracle() {
  mpz_class five_shifted;
  mpz_ui_pow_ui(five_shifted.get_mpz_t(), 2, 254);
  five_shifted *= 5;
  mpz_class val = sqrt(five_shifted) - (mpz_class(1) << 127);
  std::uint64_t buf[3] = {0, 0, 0};
  std::size_t words = 0;
  mpz_export(buf, &words, -1, sizeof(std::uint64_t), 0, 0, val.get_mpz_t());
  return (static_cast<u128>(buf[1]) << 64) | buf[0];
}

double log2_mpz(const mpz_class& v) {
  signed long e = 0;
  double d = mpz_get_d_2exp(&e, v.get_mpz_t());
  return std::log2(d) + static_cast<double>(e);
}

}  // namespace

TEST_CASE("finite fraction values") {
  // [0;2] = 1/2 exactly
  CHECK(cf_value(ContinuedFraction::from_terms({2}), 1).raw == (static_cast<u128>(1) << 127));
  // [0;1,2,3] = 7/10
  u128 v = cf_value(ContinuedFraction::from_terms({1, 2, 3}), 3).raw;
  mpz_class expect = (mpz_class(7) << 128) / 10;
  std::uint64_t buf[3] = {0, 0, 0};
  std::size_t words = 0;
  mpz_export(buf, &words, -1, sizeof(std::uint64_t), 0, 0, expect.get_mpz_t());
  CHECK(v == ((static_cast<u128>(buf[1]) << 64) | buf[0]));
}

TEST_CASE("golden value matches the square-root oracle") {
  u128 oracle = golden_fixed_oracle();
  CHECK(raw_to_double(oracle) == doctest::Approx(0.6180339887).epsilon(1e-10));

  // depth 40 truncation error is pinned by 1/(2 q40 q41) < err < 1/(q40 q41),
  // i.e. between 2^-56.4 and 2^-55.3 (q40 = F41, q41 = F42)
  u128 v40 = cf_value(ContinuedFraction::golden(), 40).raw;
  u128 diff40 = v40 > oracle ? v40 - oracle : oracle - v40;
  CHECK(diff40 <= dyadic_raw(55));
  CHECK(diff40 >= dyadic_raw(57));

  u128 v190 = cf_value(ContinuedFraction::golden(), 190).raw;
  u128 diff190 = v190 > oracle ? v190 - oracle : oracle - v190;
  CHECK(diff190 <= 2);  // exact to the last fixed-point bit
}

TEST_CASE("convergent sequences") {
  auto golden = convergents(ContinuedFraction::golden(), 5);
  REQUIRE(golden.size() == 5);
  CHECK(golden[0].q == 1);
  CHECK(golden[1].q == 2);
  CHECK(golden[2].q == 3);
  CHECK(golden[3].q == 5);
  CHECK(golden[4].q == 8);

  auto silver3 = convergents(ContinuedFraction::from_terms({2, 2, 2}), 3);
  CHECK(silver3[0].p == 1);
  CHECK(silver3[0].q == 2);
  CHECK(silver3[1].p == 2);
  CHECK(silver3[1].q == 5);
  CHECK(silver3[2].p == 5);
  CHECK(silver3[2].q == 12);

  // base case: p_1 = 1, q_1 = a_1
  auto base = convergents(ContinuedFraction::from_terms({7, 3}), 1);
  CHECK(base[0].p == 1);
  CHECK(base[0].q == 7);
}

TEST_CASE("convergents: coprimality, growth, alternation, quality") {
  auto conv = convergents(ContinuedFraction::golden(), 60);
  mpz_class alpha_num;  // alpha as val/2^128 from the oracle
  {
    u128 o = golden_fixed_oracle();
    alpha_num = mpz_class(static_cast<unsigned long>(static_cast<std::uint64_t>(o >> 64)));
    alpha_num <<= 64;
    alpha_num += mpz_class(static_cast<unsigned long>(static_cast<std::uint64_t>(o)));
  }
  mpz_class one_shift = mpz_class(1) << 128;
  mpz_class prev_err_abs = 0;
  int prev_sign = 0;
  for (std::size_t i = 0; i < conv.size(); ++i) {
    mpz_class g;
    mpz_gcd(g.get_mpz_t(), conv[i].p.get_mpz_t(), conv[i].q.get_mpz_t());
    CHECK(g == 1);
    if (i > 0) CHECK(conv[i].q > conv[i - 1].q);
    // err = q*alpha - p, scaled by 2^128
    mpz_class err = conv[i].q * alpha_num - conv[i].p * one_shift;
    int sign = sgn(err);
    if (i > 0 && i + 1 < conv.size()) CHECK(sign == -prev_sign);
    prev_sign = sign;
    mpz_class err_abs = abs(err);
    if (i > 0 && i + 2 < conv.size()) CHECK(err_abs < prev_err_abs);  // |q a - p| strictly decreases
    prev_err_abs = err_abs;
    // |alpha - p/q| < 1/q^2  <=>  |q*alpha*2^128 - p*2^128| * q < 2^128
    CHECK(err_abs * conv[i].q < one_shift);
  }
}

TEST_CASE("successive truncations bracket the limit alternately") {
  u128 oracle = golden_fixed_oracle();
  for (int depth = 2; depth <= 12; ++depth) {
    u128 lo = cf_value(ContinuedFraction::golden(), depth).raw;
    u128 hi = cf_value(ContinuedFraction::golden(), depth + 1).raw;
    bool lo_below = lo <= oracle;
    bool hi_below = hi <= oracle;
    CHECK(lo_below != hi_below);
  }
}

TEST_CASE("explicit term list shorter than depth is an error") {
  CHECK_THROWS_AS(cf_value(ContinuedFraction::from_terms({1, 2}), 3), InsufficientDepthError);
  CHECK_THROWS_AS(convergents(ContinuedFraction::from_terms({5}), 4), InsufficientDepthError);
}

TEST_CASE("irrational type: bounded partial quotients give type near 1") {
  // Expected values derive from the convergent recurrence directly.
  auto expected_nu = [](const ContinuedFraction& cf, int depth) {
    auto conv = convergents(cf, depth);
    std::vector<std::pair<int, double>> ratios;
    for (std::size_t i = 0; i + 1 < conv.size(); ++i) {
      if (conv[i].q < 2) continue;
      ratios.emplace_back(conv[i].k, log2_mpz(conv[i + 1].q) / log2_mpz(conv[i].q));
    }
    std::size_t take = (ratios.size() + 1) / 2;
    double nu = 1.0;
    for (std::size_t i = ratios.size() - take; i < ratios.size(); ++i)
      nu = std::max(nu, ratios[i].second);
    return nu;
  };

  auto golden = irrational_type(ContinuedFraction::golden(), 30);
  CHECK(golden.nu == doctest::Approx(expected_nu(ContinuedFraction::golden(), 30)).epsilon(1e-12));
  // Finite-depth tail-max carries a ~1/k_t bias above the limit value 1;
  // at depth 30 the window opens at k = 15.
  CHECK(golden.nu > 1.0);
  CHECK(golden.nu < 1.08);
  auto golden80 = irrational_type(ContinuedFraction::golden(), 80);
  CHECK(golden80.nu < 1.03);

  auto silver = irrational_type(ContinuedFraction::silver(), 30);
  CHECK(silver.nu < 1.08);
  CHECK(silver.nu >= 1.0);
}

TEST_CASE("irrational type: quadratic growth rule gives type 2") {
  auto t2 = irrational_type(ContinuedFraction::power(2.0), 12);
  CHECK(std::abs(t2.nu - 2.0) <= 0.1);
  auto t15 = irrational_type(ContinuedFraction::power(1.5), 16);
  CHECK(std::abs(t15.nu - 1.5) <= 0.1);
}

TEST_CASE("irrational type requires depth >= 4") {
  CHECK_THROWS_AS(irrational_type(ContinuedFraction::golden(), 3), std::invalid_argument);
}

TEST_CASE("type oracle on the golden angle") {
  auto alpha = cf_value(ContinuedFraction::golden(), 190);

  // Independent long-double scan for cross-checking the fixed-point path.
  auto independent = [](double beta, std::uint64_t j_max) {
    long double a = (sqrtl(5.0L) - 1.0L) / 2.0L;
    long double acc = 0.0L;
    long double best = 1e30L;
    for (std::uint64_t j = 1; j <= j_max; ++j) {
      acc += a;
      if (acc >= 1.0L) acc -= 1.0L;
      long double dist = acc < 0.5L ? acc : 1.0L - acc;
      long double v = powl(static_cast<long double>(j), static_cast<long double>(beta)) * dist;
      if (v < best) best = v;
    }
    return static_cast<double>(best);
  };

  double v_10 = type_bruteforce_oracle(alpha, 1.0, 100'000);
  CHECK(v_10 == doctest::Approx(independent(1.0, 100'000)).epsilon(1e-9));
  // the minimum sits at j = 1: ||alpha|| = 1 - alpha = (3-sqrt(5))/2, above
  // the scale-invariant floor 1/(phi+2) = 0.2764 and the convergent limit
  // 1/sqrt(5) = 0.4472 never undercuts it
  CHECK(v_10 >= 0.3);
  CHECK(v_10 == doctest::Approx(0.3819660113).epsilon(1e-9));

  double v_09 = type_bruteforce_oracle(alpha, 0.9, 100'000);
  CHECK(v_09 == doctest::Approx(independent(0.9, 100'000)).epsilon(1e-9));
  // bounded below by (1e5)^-0.1 / (phi+2) = 0.0874; stays well away from 0
  CHECK(v_09 > 0.087);
  CHECK(v_09 < 0.5);
}

TEST_CASE("type oracle detects the quadratic approximations of a type-2 angle") {
  auto cf = ContinuedFraction::power(2.0);
  auto alpha = cf_value(cf, 10);
  auto conv = convergents(cf, 6);
  // running minimum of j^1.5 ||j alpha|| drops by >= 10x across successive
  // convergent denominators q_4 = 734 and q_5 = 538783
  std::uint64_t q4 = conv[3].q.get_ui();
  std::uint64_t q5 = conv[4].q.get_ui();
  double at_q4 = type_bruteforce_oracle(alpha, 1.5, q4);
  double at_q5 = type_bruteforce_oracle(alpha, 1.5, q5);
  CHECK(at_q5 <= at_q4 / 10.0);
}

TEST_CASE("bisected oracle threshold agrees with the convergent-ratio type") {
  auto golden_alpha = cf_value(ContinuedFraction::golden(), 190);
  double nu_golden = irrational_type(ContinuedFraction::golden(), 80).nu;
  double beta_golden = type_threshold_bisection(golden_alpha, 1'000'000);
  CHECK(std::abs(beta_golden - nu_golden) <= 0.2);

  auto t2_alpha = cf_value(ContinuedFraction::power(2.0), 10);
  double nu_t2 = irrational_type(ContinuedFraction::power(2.0), 12).nu;
  double beta_t2 = type_threshold_bisection(t2_alpha, 1'000'000);
  CHECK(std::abs(beta_t2 - nu_t2) <= 0.2);
}
