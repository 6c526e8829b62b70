#pragma once

#include <string>

namespace tsbench {

/// Canonical float formatting: the shortest decimal string that round-trips
/// to the same double. Used everywhere numbers are serialized so re-exports
/// are byte-identical.
std::string format_double(double value);

} // namespace tsbench
