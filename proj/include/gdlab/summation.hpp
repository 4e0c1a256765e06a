#pragma once

namespace gdlab {

// Neumaier-compensated accumulator. All series and identity sums in this
// project are accumulated through this so that results are reproducible
// across platforms to ~1e-13 and the fixed 1e-6*N identity tolerances have
// plenty of headroom.
struct CompensatedSum {
    double sum = 0.0;
    double comp = 0.0;

    void add(double x) {
        double t = sum + x;
        if ((sum >= 0 ? sum : -sum) >= (x >= 0 ? x : -x))
            comp += (sum - t) + x;
        else
            comp += (x - t) + sum;
        sum = t;
    }

    double value() const { return sum + comp; }
};

} // namespace gdlab
