#pragma once

#include <functional>
#include <vector>

namespace soficdim {

// Kahan compensated accumulator. Every sum that feeds a reported number goes
// through one of these, always in a fixed traversal order, so results are
// byte-identical across runs and thread counts.
struct KahanSum {
    double sum = 0.0;
    double comp = 0.0;

    void add(double x) {
        const double y = x - comp;
        const double t = sum + y;
        comp = (t - sum) - y;
        sum = t;
    }
    double value() const { return sum; }
};

// Runs fn(i) for i in [0, count), on up to `threads` workers. Callers give
// each index its own output slot and combine slots in index order afterwards;
// that keeps results independent of the scheduling.
void run_indexed_tasks(int count, int threads,
                       const std::function<void(int)>& fn);

// Reads a positive thread count from the SOFICDIM_THREADS environment
// variable; defaults to 1 (fully sequential) when unset or malformed.
int thread_count_from_env();

}  // namespace soficdim
