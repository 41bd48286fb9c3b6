#pragma once

#include <cmath>
#include <cstddef>
#include <functional>

namespace weylkit {

/// Compensated accumulator (Kahan-Babuska / Neumaier variant). The
/// result depends only on the order of `add` calls.
class CompensatedSum {
 public:
  void add(double x) noexcept {
    const double t = sum_ + x;
    if (std::abs(sum_) >= std::abs(x)) {
      comp_ += (sum_ - t) + x;
    } else {
      comp_ += (x - t) + sum_;
    }
    sum_ = t;
  }
  CompensatedSum& operator+=(double x) noexcept {
    add(x);
    return *this;
  }
  double value() const noexcept { return sum_ + comp_; }

 private:
  double sum_ = 0.0;
  double comp_ = 0.0;
};

/// Upper limit on worker threads for internal reductions. 0 means one
/// per hardware thread. Read from WEYLKIT_THREADS by the CLI.
void set_thread_cap(unsigned cap) noexcept;
unsigned thread_cap() noexcept;

/// Entries per reduction chunk. Chunk boundaries never depend on the
/// thread count, so results are bit-identical for any cap.
inline constexpr std::size_t kReductionChunk = 4096;

/// Sums term(i) for i in [begin, end). Each fixed-size chunk is summed
/// with compensation in ascending order, then chunk partials are combined
/// in ascending chunk order.
double ordered_sum(std::size_t begin, std::size_t end,
                   const std::function<double(std::size_t)>& term);

}  // namespace weylkit
