#pragma once

#include <cstdint>

namespace semdist {

// Execution policy for the data-parallel kernels. Every kernel computes each
// output element independently from the same inputs, so serial and parallel
// runs of the same call produce bit-identical results; the serial path is the
// reference implementation used by the tests and the benchmark.
enum class Exec { serial, parallel };

template <typename Body>
void par_for(std::int64_t n, Exec exec, const Body& body) {
  if (exec == Exec::parallel) {
#pragma omp parallel for schedule(dynamic, 8)
    for (std::int64_t i = 0; i < n; ++i) body(i);
  } else {
    for (std::int64_t i = 0; i < n; ++i) body(i);
  }
}

}  // namespace semdist
