/*
 * query_counters.hpp
 *
 * Thread-local instrumentation. Query structures are immutable, so the
 * counters live outside them; benchmarks and tests reset before a query
 * and read after.
 */

#pragma once

#include <cstdint>

namespace snt {

struct query_counters {
    uint64_t bv_ranks = 0;      // bit-level rank calls inside wavelet nodes
    uint64_t wt_ranks = 0;      // symbol rank calls on a wavelet tree
    uint64_t wt_accesses = 0;   // symbol access calls on a wavelet tree
    uint64_t pseudo_ranks = 0;  // simulated BWT ranks

    void reset() { *this = query_counters{}; }
};

query_counters& tls_counters();

}  // namespace snt
