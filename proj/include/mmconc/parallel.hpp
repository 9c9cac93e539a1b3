#pragma once

#include <cstddef>
#include <functional>

namespace mmconc {

/// Runs fn(i) for i in [0, count). Work items must be independent; each
/// writes only its own output slot, so results are identical whatever the
/// thread count. Exceptions from workers are rethrown on the caller.
void parallel_for(std::size_t count, const std::function<void(std::size_t)>& fn);

} // namespace mmconc
