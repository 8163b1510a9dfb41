#pragma once

#include <cstdint>
#include <string_view>

namespace qumf {

/// Derives an independent 64-bit seed for a tagged sub-stream.
///
/// Every random component takes its generator seed from here, so a single
/// top-level seed fixes a whole run. Tags in use: "anneal", "partition",
/// "data", "pool", "shuffle", "trial".
[[nodiscard]] std::uint64_t derive_seed(std::uint64_t seed, std::string_view tag, std::uint64_t index = 0) noexcept;

}  // namespace qumf
