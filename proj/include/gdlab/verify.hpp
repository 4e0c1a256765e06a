#pragma once

#include <iosfwd>

#include "gdlab/arith_tables.hpp"

namespace gdlab {

struct VerifyOptions {
    u64 limit = 10'000; // table limit the suite runs at (>= 2000)
    unsigned threads = 0;
};

// Runs the cross-module invariant suite: oracle agreement, the exact
// identities, series convergence trends, cache round-trip. Prints one line
// per check (failures carry both sides) and returns the failure count.
int run_verify(const VerifyOptions& opts, std::ostream& out);

} // namespace gdlab
