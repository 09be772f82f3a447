#pragma once

#include <cstdint>
#include <string>

#include <gtest/gtest.h>

#include "ncsym/mat.hpp"
#include "ncsym/rng.hpp"

namespace ncsym::testing {

inline double diff_norm(const CMatrix& a, const CMatrix& b) {
    EXPECT_EQ(a.rows(), b.rows());
    EXPECT_EQ(a.cols(), b.cols());
    if (a.rows() != b.rows() || a.cols() != b.cols()) return 1e300;
    return op_norm((a - b).eval());
}

/// Seed for trial `i` of a named property test.
inline std::uint64_t case_seed(const char* property, int i) {
    return CounterRng(20240611).split(property).split(static_cast<std::uint64_t>(i)).next_u64();
}

inline int draw_int(CounterRng& rng, int lo, int hi) {
    return lo + static_cast<int>(rng.next_u64() % static_cast<std::uint64_t>(hi - lo + 1));
}

}  // namespace ncsym::testing
