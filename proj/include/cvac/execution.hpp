#pragma once

namespace cvac {

/// Selects the OpenMP kernel or the serial reference loop. Both produce
/// bit-identical results.
enum class Execution { serial, parallel };

} // namespace cvac
