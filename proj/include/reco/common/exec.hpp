#pragma once

namespace reco {

// Kernel selector. Every parallel kernel keeps its serial twin as the
// reference implementation; tests assert bit-identical results.
enum class Exec { serial, parallel };

int max_threads();

} // namespace reco
