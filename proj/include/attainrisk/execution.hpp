#pragma once

namespace attainrisk {

// Selects the OpenMP kernel or the serial reference path. Both return
// identical results; the serial path is kept for testing and benchmarking.
enum class ExecutionPolicy { kSerial, kParallel };

inline constexpr ExecutionPolicy kDefaultPolicy = ExecutionPolicy::kParallel;

}  // namespace attainrisk
