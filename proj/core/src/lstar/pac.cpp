#include "pdv/lstar/pac.hpp"

#include <cmath>
#include <numbers>

#include "pdv/errors.hpp"

namespace pdv {

std::uint64_t pac_sample_count(double epsilon, double gamma, std::uint64_t completed_queries) {
    if (!(epsilon > 0.0 && epsilon < 1.0)) {
        throw input_error("epsilon must lie in (0, 1)");
    }
    if (!(gamma > 0.0 && gamma <= 1.0)) {
        throw input_error("gamma must lie in (0, 1]");
    }
    double n = static_cast<double>(completed_queries) + 1.0;
    double count = (1.0 / epsilon) * (std::log(1.0 / gamma) + std::numbers::ln2 * n);
    return static_cast<std::uint64_t>(std::ceil(count));
}

} // namespace pdv
