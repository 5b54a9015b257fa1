#include "rng.hpp"

#include <cmath>
#include <numbers>

namespace ccnorm {

std::uint64_t CounterRng::below(std::uint64_t n) noexcept
{
    const std::uint64_t limit = ~std::uint64_t{0} - (~std::uint64_t{0} % n);
    std::uint64_t x = next_u64();
    while (x >= limit)
        x = next_u64();
    return x % n;
}

double CounterRng::normal() noexcept
{
    if (has_spare_) {
        has_spare_ = false;
        return spare_;
    }
    const double radius = std::sqrt(-2.0 * std::log(uniform()));
    const double angle = 2.0 * std::numbers::pi * uniform();
    spare_ = radius * std::sin(angle);
    has_spare_ = true;
    return radius * std::cos(angle);
}

} // namespace ccnorm
