#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace phragmen {

inline constexpr std::uint64_t kDefaultEnumerationCap = 1'000'000;

struct EnumerationCapError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

enum class TieMode { Canonical, ExploreAll };

/// Options for tie-exploring sequential rules.
struct ExploreOptions {
    std::uint64_t explorationCap = kDefaultEnumerationCap;
    /// Expand tie branches collapsed across candidates with identical
    /// supporter sets back into the full committee set.
    bool expandSymmetric = true;
};

} // namespace phragmen
