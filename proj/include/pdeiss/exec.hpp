#pragma once

namespace pdeiss {

/// Execution policy for the data-parallel kernels. The serial path is the
/// reference implementation; the OpenMP path must produce bit-identical
/// results (loops are elementwise, reductions limited to max).
enum class Exec { serial, parallel };

}  // namespace pdeiss
