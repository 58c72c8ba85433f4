#pragma once

#include <map>
#include <string>
#include <vector>

namespace dampwave {

struct TimeSeries {
    std::vector<double> times;
    std::vector<double> values;
    std::string quantity;
    std::string mode = "grid";  // "grid" or "oracle"

    // Equal lengths, nonnegative strictly increasing times, finite values.
    void validate() const;
    std::size_t size() const { return times.size(); }
    void push(double t, double v) {
        times.push_back(t);
        values.push_back(v);
    }
};

// Named series sharing one time axis (keys are quantity names).
using SeriesBundle = std::map<std::string, TimeSeries>;

}  // namespace dampwave
