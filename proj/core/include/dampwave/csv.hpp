#pragma once

#include "dampwave/analysis.hpp"
#include "dampwave/exponents.hpp"
#include "dampwave/series.hpp"

#include <ostream>
#include <string>
#include <vector>

namespace dampwave {

// 17 significant digits, "inf"/"-inf"/"nan" for non-finite values.
std::string format_double(double x);

// Header `t,value,quantity,mode`; LF line endings.
void write_series_csv(std::ostream& os, const TimeSeries& series);

// Header `quantity,predicted,measured,tol,pass`.
void write_verdicts_csv(std::ostream& os, const std::vector<Verdict>& verdicts);

// Header `sigma,n,m,threshold,lo,hi,regime`.
void write_ranges_csv(std::ostream& os, const std::vector<RangeReport>& rows);

}  // namespace dampwave
