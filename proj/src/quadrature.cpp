#include "casimir/quadrature.hpp"

namespace casimir::quad {

// Counter-diagonal form of the epsilon table (Weniger's layout): after
// pushing s_N, row_[0] holds the column-N entry, so even N reads row_[0]
// and odd N reads row_[1].
// Once two successive estimates agree to rounding the table is frozen:
// further columns are pure noise and 1/diff blows up.
double WynnEpsilon::push(double partial_sum) {
  const std::size_t n = count_++;
  if (frozen_) return estimate_;
  row_.push_back(partial_sum);
  double aux2 = 0.0;
  for (std::size_t j = n; j >= 1; --j) {
    const double aux1 = aux2;
    aux2 = row_[j - 1];
    const double diff = row_[j] - aux2;
    row_[j - 1] = (std::abs(diff) > 1e-300) ? aux1 + 1.0 / diff : 1e300;
  }
  double est = (n % 2 == 0) ? row_[0] : row_[1];
  if (!std::isfinite(est) || std::abs(est) > 1e299) est = n >= 1 ? estimate_ : partial_sum;
  previous_ = estimate_;
  estimate_ = est;
  if (n >= 2) {
    error_ = std::abs(estimate_ - previous_);
    const bool tiny = error_ <= 4.0 * std::numeric_limits<double>::epsilon() * std::abs(estimate_);
    frozen_ = tiny && settled_;
    settled_ = tiny;
  }
  return estimate_;
}

}  // namespace casimir::quad
