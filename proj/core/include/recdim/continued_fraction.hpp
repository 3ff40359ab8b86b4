#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "recdim/fixed128.hpp"

namespace recdim {

enum class CfRule : std::uint8_t {
  Golden,    // all partial quotients 1
  Silver,    // all partial quotients 2
  Power,     // a_{k+1} = round(q_k^{exponent-1}); Diophantine type -> exponent
  Explicit,  // caller-supplied term list
};

/// A continued fraction [0; a_1, a_2, ...] given either by an explicit term
/// list or by a generation rule.  Terms are positive integers; under the
/// Power rule they grow beyond 64 bits quickly, hence GMP integers.
struct ContinuedFraction {
  CfRule rule = CfRule::Golden;
  double exponent = 2.0;                  // Power rule only, >= 1
  std::vector<std::uint64_t> terms;       // Explicit rule only
  std::string label;

  static ContinuedFraction golden() { return {CfRule::Golden, 0.0, {}, "golden"}; }
  static ContinuedFraction silver() { return {CfRule::Silver, 0.0, {}, "silver"}; }
  static ContinuedFraction power(double nu) {
    if (nu < 1.0) throw std::invalid_argument("power rule exponent must be >= 1");
    return {CfRule::Power, nu, {}, "power" + std::to_string(nu)};
  }
  static ContinuedFraction from_terms(std::vector<std::uint64_t> t) {
    if (t.empty()) throw std::invalid_argument("explicit continued fraction needs >= 1 term");
    for (auto a : t)
      if (a == 0) throw std::invalid_argument("continued fraction terms must be >= 1");
    return {CfRule::Explicit, 0.0, std::move(t), "explicit"};
  }
};

/// Convergent p_k/q_k of a continued fraction.  gcd(p,q) = 1 and
/// |alpha - p/q| < 1/q^2 hold by construction.
struct Convergent {
  mpz_class p;
  mpz_class q;
  int k = 0;

  double log2_q() const;
  std::string p_str() const { return p.get_str(); }
  std::string q_str() const { return q.get_str(); }
};

/// Diophantine type estimate: nu = max over the tail window (last half of
/// available indices) of log q_{k+1} / log q_k.
struct IrrationalType {
  double nu = 1.0;
  int window_lo = 0;
  int window_hi = 0;
  std::vector<std::pair<int, double>> per_k_exponents;
};

/// Partial quotients a_1..a_depth.  Throws if an explicit list is shorter
/// than depth.
std::vector<mpz_class> cf_terms(const ContinuedFraction& cf, int depth);

/// Convergents (p_k, q_k) for k = 1..depth via the standard recurrence.
std::vector<Convergent> convergents(const ContinuedFraction& cf, int depth);

/// Value of the depth-truncated fraction [0; a_1..a_depth] in fixed point,
/// floor(p * 2^128 / q).  Successive depths bracket the limit alternately.
FixedPointAngle cf_value(const ContinuedFraction& cf, int depth);

/// Requires depth >= 4.
IrrationalType irrational_type(const ContinuedFraction& cf, int depth);

/// min over 1 <= j <= j_max of j^beta * ||j*alpha||; independent check of
/// irrational_type (the type is the sup of beta for which this tends to 0).
double type_bruteforce_oracle(FixedPointAngle alpha, double beta, std::uint64_t j_max);

/// Bisection on beta in [lo,hi]: largest beta whose oracle value at j_max
/// drops below vanish_threshold.  Agreement with irrational_type within 0.2
/// is a module property.
double type_threshold_bisection(FixedPointAngle alpha, std::uint64_t j_max,
                                double lo = 1.0, double hi = 4.0,
                                double vanish_threshold = 0.1, int iterations = 24);

struct InsufficientDepthError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace recdim
