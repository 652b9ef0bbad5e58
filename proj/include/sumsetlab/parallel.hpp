#pragma once

namespace sumsetlab {

/// Worker cap for the parallel kernels. Defaults to SUMSETLAB_THREADS when
/// set, otherwise to the available hardware parallelism.
int thread_limit();
void set_thread_limit(int threads);

} // namespace sumsetlab
