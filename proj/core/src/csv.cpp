#include "dampwave/csv.hpp"

#include <cmath>
#include <cstdio>

namespace dampwave {

std::string format_double(double x) {
    if (std::isnan(x)) return "nan";
    if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

void write_series_csv(std::ostream& os, const TimeSeries& s) {
    os << "t,value,quantity,mode\n";
    for (std::size_t i = 0; i < s.times.size(); ++i)
        os << format_double(s.times[i]) << ',' << format_double(s.values[i]) << ',' << s.quantity << ',' << s.mode
           << '\n';
}

void write_verdicts_csv(std::ostream& os, const std::vector<Verdict>& verdicts) {
    os << "quantity,predicted,measured,tol,pass\n";
    for (const auto& v : verdicts)
        os << v.quantity << ',' << format_double(v.predicted) << ',' << format_double(v.measured) << ','
           << format_double(v.tol) << ',' << (v.pass ? "true" : "false") << '\n';
}

void write_ranges_csv(std::ostream& os, const std::vector<RangeReport>& rows) {
    os << "sigma,n,m,threshold,lo,hi,regime\n";
    for (const auto& r : rows)
        os << format_rational(r.sigma) << ',' << r.n << ',' << format_rational(r.m) << ','
           << format_rational(r.existence_threshold) << ',' << r.admissible.lo_text() << ',' << r.admissible.hi_text()
           << ',' << to_string(r.regime_tag) << '\n';
}

}  // namespace dampwave
