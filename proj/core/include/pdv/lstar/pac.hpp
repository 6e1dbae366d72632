#pragma once

#include <cstdint>

namespace pdv {

/// Sample size for the n-th PAC equivalence query (n counts completed
/// queries, starting at 0):
///
///   ceil( (1/epsilon) * (ln(1/gamma) + ln(2) * (n + 1)) )
///
/// Natural logarithm throughout. Throws input_error unless epsilon lies in
/// (0, 1) and gamma in (0, 1]; gamma = 1 makes the log term vanish.
std::uint64_t pac_sample_count(double epsilon, double gamma, std::uint64_t completed_queries);

} // namespace pdv
