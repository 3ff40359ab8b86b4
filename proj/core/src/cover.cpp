#include "recdim/cover.hpp"

#include <cmath>
#include <stdexcept>

namespace recdim {

double cover_tail_bound_analytic(double h, double epsilon, double d, int k0) {
  double rate = h + epsilon - d;  // < 0 required
  return std::exp2(1.0 + d) * std::exp2(rate * k0) / (1.0 - std::exp2(rate));
}

double cover_tail_bound_direct(double h, double epsilon, double d, int k0) {
  double rate = h + epsilon - d;
  double sum = 0.0;
  for (int k = k0;; ++k) {
    double term = std::exp2(1.0 + d + rate * k);
    sum += term;
    if (term < 1e-14 * sum) break;
    if (k - k0 > 100000) break;
  }
  return sum;
}

CoverEstimate cover_dimension_bound(const std::vector<HittingProfile>& profiles, double h,
                                    double epsilon, double d, int k0, double tail_fraction) {
  if (profiles.empty()) throw std::invalid_argument("cover bound needs target profiles");
  if (epsilon <= 0.0) throw std::invalid_argument("epsilon must be positive");
  if (d <= h + epsilon)
    throw std::invalid_argument("cover bound requires d > h + epsilon (series diverges)");

  CoverEstimate cov;
  cov.h = h;
  cov.epsilon = epsilon;
  cov.d = d;
  cov.k0 = k0;
  cov.analytic_tail_bound = cover_tail_bound_analytic(h, epsilon, d, k0);
  cov.direct_tail_sum = cover_tail_bound_direct(h, epsilon, d, k0);

  const auto& first = profiles.front();
  cov.grid_k = first.k_max;

  // Membership: lower slope proxy at or below h.  Profiles with too few
  // observed scales cannot be classified and are reported separately.
  std::vector<char> member(profiles.size(), 0);
  std::vector<SlopeEstimate> ests(profiles.size());
  for (std::size_t i = 0; i < profiles.size(); ++i) {
    try {
      ests[i] = slope_from_profile(profiles[i], tail_fraction);
    } catch (const InsufficientScalesError&) {
      ++cov.y_h_insufficient;
      continue;
    }
    if (ests[i].infinite || ests[i].window_uncensored == 0) continue;
    if (ests[i].inf_proxy <= h) {
      member[i] = 1;
      ++cov.y_h_size;
    }
  }

  // Ball budget 2^{(h+eps)k}: a member is covered at scale k when its first
  // entrance fits inside the budget.
  for (int k = first.k_min; k <= first.k_max; ++k) {
    CoverEstimate::PerScale row;
    row.k = k;
    row.mass_bound = std::exp2(k * (h + epsilon - d) + 1.0 + d);
    double budget = std::exp2((h + epsilon) * k);
    row.ball_budget = budget >= 1e18 ? ~0ULL : static_cast<std::uint64_t>(budget);
    for (std::size_t i = 0; i < profiles.size(); ++i) {
      if (!member[i] || profiles[i].censored(k)) continue;
      ++row.members;
      if (profiles[i].tau_at(k) <= row.ball_budget) ++row.covered;
    }
    cov.per_scale.push_back(row);
  }

  // Coverage at each member's deepest observed scale.
  std::size_t covered = 0, total = 0;
  for (std::size_t i = 0; i < profiles.size(); ++i) {
    if (!member[i]) continue;
    const auto& p = profiles[i];
    for (int k = p.k_max; k >= p.k_min; --k) {
      if (p.censored(k)) continue;
      ++total;
      double budget = std::exp2((h + epsilon) * k);
      std::uint64_t cap = budget >= 1e18 ? ~0ULL : static_cast<std::uint64_t>(budget);
      if (p.tau_at(k) <= cap) ++covered;
      break;
    }
  }
  cov.covered_fraction_deepest = total ? static_cast<double>(covered) / total : 1.0;
  return cov;
}

}  // namespace recdim
