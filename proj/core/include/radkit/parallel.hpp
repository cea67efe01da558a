#pragma once

#include <cstddef>

namespace radkit {

/// Worker cap: min(hardware_concurrency, RADKIT_THREADS) with a floor of 1.
std::size_t thread_limit();

} // namespace radkit
