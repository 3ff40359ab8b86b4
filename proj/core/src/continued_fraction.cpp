#include "recdim/continued_fraction.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace recdim {

namespace {

double mpz_log2(const mpz_class& v) {
  signed long exp = 0;
  double d = mpz_get_d_2exp(&exp, v.get_mpz_t());
  return std::log2(d) + static_cast<double>(exp);
}

/// round(q^s) for s >= 0 as a big integer.  Exact for integer s in {0,1};
/// otherwise built from the top 53 bits of 2^{s*log2(q)}, which is all the
/// type computation ever looks at.
mpz_class round_pow(const mpz_class& q, double s) {
  if (s == 0.0) return 1;
  if (s == 1.0) return q;
  double t = s * mpz_log2(q);
  if (t <= 52.0) {
    double v = std::exp2(t);
    return mpz_class(static_cast<unsigned long>(std::llround(v)));
  }
  double fl = std::floor(t) - 52.0;
  double mant = std::exp2(t - std::floor(t) + 52.0);  // in [2^52, 2^53)
  mpz_class out(static_cast<unsigned long>(std::llround(mant)));
  mpz_mul_2exp(out.get_mpz_t(), out.get_mpz_t(), static_cast<mp_bitcnt_t>(fl));
  return out;
}

}  // namespace

double Convergent::log2_q() const { return mpz_log2(q); }

std::vector<mpz_class> cf_terms(const ContinuedFraction& cf, int depth) {
  if (depth < 1) throw std::invalid_argument("depth must be >= 1");
  std::vector<mpz_class> out;
  out.reserve(static_cast<std::size_t>(depth));
  switch (cf.rule) {
    case CfRule::Golden:
      out.assign(static_cast<std::size_t>(depth), mpz_class(1));
      break;
    case CfRule::Silver:
      out.assign(static_cast<std::size_t>(depth), mpz_class(2));
      break;
    case CfRule::Explicit:
      if (static_cast<int>(cf.terms.size()) < depth)
        throw InsufficientDepthError("continued fraction has " +
                                     std::to_string(cf.terms.size()) + " terms, depth " +
                                     std::to_string(depth) + " requested");
      for (int i = 0; i < depth; ++i) out.emplace_back(static_cast<unsigned long>(cf.terms[i]));
      break;
    case CfRule::Power: {
      // a_1 = 2, then a_{k+1} = round(q_k^{nu-1}) so log q_{k+1}/log q_k -> nu.
      mpz_class q_prev = 1, q = 2;
      out.emplace_back(2);
      for (int k = 2; k <= depth; ++k) {
        mpz_class a = round_pow(q, cf.exponent - 1.0);
        if (a < 1) a = 1;
        out.push_back(a);
        mpz_class q_next = a * q + q_prev;
        q_prev = q;
        q = q_next;
      }
      break;
    }
  }
  return out;
}

std::vector<Convergent> convergents(const ContinuedFraction& cf, int depth) {
  auto terms = cf_terms(cf, depth);
  std::vector<Convergent> out;
  out.reserve(terms.size());
  mpz_class p_prev2 = 1, p_prev1 = 0;  // p_{-1}, p_0
  mpz_class q_prev2 = 0, q_prev1 = 1;  // q_{-1}, q_0
  int k = 1;
  for (const auto& a : terms) {
    mpz_class p = a * p_prev1 + p_prev2;
    mpz_class q = a * q_prev1 + q_prev2;
    out.push_back(Convergent{p, q, k++});
    p_prev2 = p_prev1;
    p_prev1 = p;
    q_prev2 = q_prev1;
    q_prev1 = q;
  }
  return out;
}

FixedPointAngle cf_value(const ContinuedFraction& cf, int depth) {
  auto conv = convergents(cf, depth);
  const mpz_class& p = conv.back().p;
  const mpz_class& q = conv.back().q;
  if (p == q) return FixedPointAngle{~static_cast<u128>(0)};  // [0;1] = 1, clamp
  mpz_class scaled;
  mpz_mul_2exp(scaled.get_mpz_t(), p.get_mpz_t(), 128);
  mpz_class value = scaled / q;
  // export the 128-bit little-endian limbs
  u128 raw = 0;
  std::size_t words = 0;
  std::uint64_t buf[3] = {0, 0, 0};
  mpz_export(buf, &words, -1, sizeof(std::uint64_t), 0, 0, value.get_mpz_t());
  raw = static_cast<u128>(buf[1]) << 64 | buf[0];
  return FixedPointAngle{raw};
}

IrrationalType irrational_type(const ContinuedFraction& cf, int depth) {
  if (depth < 4) throw std::invalid_argument("irrational_type requires depth >= 4");
  auto conv = convergents(cf, depth);
  IrrationalType out;
  // Ratios log q_{k+1}/log q_k for every k with q_k >= 2.
  for (std::size_t i = 0; i + 1 < conv.size(); ++i) {
    if (conv[i].q < 2) continue;
    double lo = mpz_log2(conv[i].q);
    double hi = mpz_log2(conv[i + 1].q);
    out.per_k_exponents.emplace_back(conv[i].k, hi / lo);
  }
  if (out.per_k_exponents.empty())
    throw std::invalid_argument("irrational_type: no usable convergent ratios");
  // Tail window: last half of the available ratio indices.
  std::size_t m = out.per_k_exponents.size();
  std::size_t take = (m + 1) / 2;
  std::size_t first = m - take;
  out.window_lo = out.per_k_exponents[first].first;
  out.window_hi = out.per_k_exponents.back().first;
  double nu = 0.0;
  for (std::size_t i = first; i < m; ++i) nu = std::max(nu, out.per_k_exponents[i].second);
  out.nu = std::max(nu, 1.0);
  return out;
}

double type_bruteforce_oracle(FixedPointAngle alpha, double beta, std::uint64_t j_max) {
  if (j_max < 1) throw std::invalid_argument("j_max must be >= 1");
  u128 acc = 0;
  double best = std::numeric_limits<double>::infinity();
  for (std::uint64_t j = 1; j <= j_max; ++j) {
    acc += alpha.raw;
    double dist = raw_to_double(nearest_int_dist_raw(acc));
    double v = std::exp2(beta * std::log2(static_cast<double>(j))) * dist;
    if (v < best) best = v;
  }
  return best;
}

double type_threshold_bisection(FixedPointAngle alpha, std::uint64_t j_max, double lo,
                                double hi, double vanish_threshold, int iterations) {
  auto vanishes = [&](double beta) {
    return type_bruteforce_oracle(alpha, beta, j_max) < vanish_threshold;
  };
  if (!vanishes(lo)) return lo;
  if (vanishes(hi)) return hi;
  for (int i = 0; i < iterations; ++i) {
    double mid = 0.5 * (lo + hi);
    (vanishes(mid) ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

}  // namespace recdim
