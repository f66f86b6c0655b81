#pragma once

namespace kirchhoff {

inline constexpr const char* kVersion = "0.1.0";

// Execution policy for the field kernels.  Both policies produce bitwise
// identical results: parallel reductions run over fixed-size blocks whose
// partial sums are combined in index order, independent of the schedule.
enum class Exec { serial, parallel };

Exec default_execution();
void set_default_execution(Exec exec);

}  // namespace kirchhoff
