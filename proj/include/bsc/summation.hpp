#pragma once

#include <cmath>

namespace bsc {

/// Neumaier's variant of Kahan summation.
template <typename Scalar>
class CompensatedSum {
public:
  CompensatedSum() = default;
  explicit CompensatedSum(Scalar init) : sum_(init) {}

  CompensatedSum& operator+=(Scalar x)
  {
    using std::abs;
    const Scalar t = sum_ + x;
    if (abs(sum_) >= abs(x))
      comp_ += (sum_ - t) + x;
    else
      comp_ += (x - t) + sum_;
    sum_ = t;
    return *this;
  }

  Scalar value() const { return sum_ + comp_; }

private:
  Scalar sum_{0};
  Scalar comp_{0};
};

} // namespace bsc
