#pragma once

#include "dampwave/grid.hpp"
#include "dampwave/kernels.hpp"

#include <boost/rational.hpp>

#include <map>
#include <optional>
#include <string>

namespace dampwave {

using Rational = boost::rational<long long>;

// Accepts "3", "-2", "1/4" and finite decimals such as "0.25".
Rational parse_rational(const std::string& text);
double to_double(const Rational& q);
std::string format_rational(const Rational& q);

// Interval of p values; an absent upper end means unbounded above.
struct Interval {
    bool empty = true;
    Rational lo{0};
    bool lo_closed = false;
    std::optional<Rational> hi;
    bool hi_closed = false;

    static Interval none() { return Interval{}; }
    static Interval closed(Rational a, std::optional<Rational> b);

    bool contains(const Rational& p) const;
    bool is_point() const { return !empty && hi && *hi == lo && lo_closed && hi_closed; }
    // Points strictly above the threshold.
    Interval above(const Rational& threshold) const;
    // "empty", "{2}", "(3,4]", "[2,inf)"
    std::string to_string() const;
    std::string lo_text() const;  // "(3" or "[2"; "empty" when empty
    std::string hi_text() const;  // "4]" or "inf)"; "empty" when empty

    bool operator==(const Interval& o) const;
};

enum class RegimeTag { half, visco, parabolic_like, hyperbolic_like };
std::string to_string(RegimeTag r);
RegimeTag regime_of(const Rational& sigma);

struct RangeReport {
    Rational sigma{1, 2};
    int n = 2;
    Rational m{2};
    Rational existence_threshold{0};
    Interval integrability_interval;
    Interval admissible;
    RegimeTag regime_tag = RegimeTag::half;
    bool within_hypothesis = true;
    std::string note;
};

// Strict lower bound on p for small-data global existence. Throws DomainError
// when (sigma, n, m) violates the hypotheses of the corresponding result.
Rational existence_threshold(const Rational& sigma, int n, const Rational& m);

RangeReport admissible_range(const Rational& sigma, int n, const Rational& m);

struct BlowupThreshold {
    std::optional<Rational> value;  // absent: every p > 1 is covered (n small)
    std::optional<Rational> low_sigma_branch;
    std::optional<Rational> high_sigma_branch;
    bool at_junction = false;  // sigma = 1/2, where both branches apply
    bool branches_agree = false;
};

BlowupThreshold blowup_threshold(const Rational& sigma, int n);

struct GapReport {
    Rational existence{0};
    Rational blowup{0};
    Rational gap{0};
};

GapReport gap_report(const Rational& sigma, int n);

struct GnTheta {
    double theta = 0.0;
    bool admissible = false;
};

struct GnThetaExact {
    Rational theta{0};
    bool admissible = false;
};

GnTheta gn_theta(int n, double k, double m, double q);
GnThetaExact gn_theta(int n, const Rational& k, const Rational& m, const Rational& q);

struct RateEntry {
    Rational exponent{0};  // value ~ (1+t)^exponent
    bool log_flag = false;
    std::string data_class;
};

// Keys: u_Lm, ut_Lm, grad_Lm, and where defined hdot2sigma, grad2_L2.
using RateTable = std::map<std::string, RateEntry>;

RateTable predicted_rates(const Rational& sigma, int n, const Rational& m);

// int (u1 + mu (-Laplace)^sigma u0) dx on the grid.
double blowdata_value(const ModelSpec& model, const RealField& u0, const RealField& u1);

double dm_norm(const RealField& u0, const RealField& u1, double m, double k);

}  // namespace dampwave
