#include "dampwave/exponents.hpp"

#include "dampwave/errors.hpp"
#include "dampwave/spectral.hpp"

#include <cctype>
#include <cmath>
#include <limits>

namespace dampwave {

Rational parse_rational(const std::string& raw) {
    std::string text;
    for (char c : raw)
        if (!std::isspace(static_cast<unsigned char>(c))) text += c;
    auto bad = [&]() { return DomainError("cannot parse '" + raw + "' as an exact rational"); };
    if (text.empty()) throw bad();
    auto parse_int = [&](const std::string& s) -> long long {
        if (s.empty()) throw bad();
        std::size_t start = (s[0] == '-' || s[0] == '+') ? 1 : 0;
        if (start == s.size() || s.size() - start > 17) throw bad();
        for (std::size_t i = start; i < s.size(); ++i)
            if (!std::isdigit(static_cast<unsigned char>(s[i]))) throw bad();
        return std::stoll(s);
    };
    auto slash = text.find('/');
    if (slash != std::string::npos) {
        long long den = parse_int(text.substr(slash + 1));
        if (den == 0) throw bad();
        return Rational(parse_int(text.substr(0, slash)), den);
    }
    auto dot = text.find('.');
    if (dot == std::string::npos) return Rational(parse_int(text));
    std::string whole = text.substr(0, dot), frac = text.substr(dot + 1);
    if (frac.empty() || frac.size() > 15) throw bad();
    for (char c : frac)
        if (!std::isdigit(static_cast<unsigned char>(c))) throw bad();
    bool neg = !whole.empty() && whole[0] == '-';
    if (whole.empty() || whole == "-" || whole == "+") whole += "0";
    long long w = parse_int(whole);
    long long scale = 1;
    for (std::size_t i = 0; i < frac.size(); ++i) scale *= 10;
    Rational f(std::stoll(frac), scale);
    return neg ? Rational(w) - f : Rational(w) + f;
}

double to_double(const Rational& q) {
    return static_cast<double>(q.numerator()) / static_cast<double>(q.denominator());
}

std::string format_rational(const Rational& q) {
    if (q.denominator() == 1) return std::to_string(q.numerator());
    return std::to_string(q.numerator()) + "/" + std::to_string(q.denominator());
}

Interval Interval::closed(Rational a, std::optional<Rational> b) {
    Interval iv;
    iv.lo = a;
    iv.lo_closed = true;
    iv.hi = b;
    iv.hi_closed = b.has_value();
    iv.empty = b.has_value() && *b < a;
    return iv;
}

bool Interval::contains(const Rational& p) const {
    if (empty) return false;
    if (lo_closed ? p < lo : p <= lo) return false;
    if (hi && (hi_closed ? p > *hi : p >= *hi)) return false;
    return true;
}

Interval Interval::above(const Rational& threshold) const {
    if (empty) return *this;
    Interval out = *this;
    if (threshold >= lo) {
        out.lo = threshold;
        out.lo_closed = false;
    }
    if (out.hi) {
        if (out.lo_closed && out.hi_closed) out.empty = *out.hi < out.lo;
        else out.empty = *out.hi <= out.lo;
    }
    return out;
}

std::string Interval::lo_text() const {
    if (empty) return "empty";
    return (lo_closed ? "[" : "(") + format_rational(lo);
}

std::string Interval::hi_text() const {
    if (empty) return "empty";
    if (!hi) return "inf)";
    return format_rational(*hi) + (hi_closed ? "]" : ")");
}

std::string Interval::to_string() const {
    if (empty) return "empty";
    if (is_point()) return "{" + format_rational(lo) + "}";
    return lo_text() + "," + hi_text();
}

bool Interval::operator==(const Interval& o) const {
    if (empty || o.empty) return empty == o.empty;
    return lo == o.lo && lo_closed == o.lo_closed && hi == o.hi && (!hi || hi_closed == o.hi_closed);
}

std::string to_string(RegimeTag r) {
    switch (r) {
        case RegimeTag::half: return "half";
        case RegimeTag::visco: return "visco";
        case RegimeTag::parabolic_like: return "parabolic_like";
        case RegimeTag::hyperbolic_like: return "hyperbolic_like";
    }
    return "?";
}

namespace {

const Rational kHalf(1, 2);

void check_sigma(const Rational& sigma) {
    if (sigma <= 0 || sigma > 1) throw DomainError("sigma must lie in (0,1] (got " + format_rational(sigma) + ")");
}

void check_m(const Rational& sigma, const Rational& m) {
    if (sigma == kHalf) {
        if (m <= 1 || m > 2) throw DomainError("m must lie in (1,2] (got " + format_rational(m) + ")");
    } else if (m != Rational(2)) {
        throw DomainError("m != 2 is only available for sigma = 1/2");
    }
}

// Threshold formula without the dimension hypotheses; requires n >= 2.
Rational threshold_formula(const Rational& sigma, int n) {
    switch (regime_of(sigma)) {
        case RegimeTag::half: return 1 + Rational(2, n - 1);
        case RegimeTag::visco: return 1 + Rational(3, n - 1);
        case RegimeTag::parabolic_like: return 1 + 2 / (Rational(n) - 2 * sigma);
        case RegimeTag::hyperbolic_like: return 1 + (1 + 2 * sigma) / Rational(n - 1);
    }
    return Rational(0);
}

bool dimension_ok(const Rational& sigma, int n) {
    switch (regime_of(sigma)) {
        case RegimeTag::half:
        case RegimeTag::parabolic_like: return n >= 2 && n <= 4;
        case RegimeTag::visco:
        case RegimeTag::hyperbolic_like: return n >= 2;
    }
    return false;
}

std::string hypothesis_text(const Rational& sigma) {
    switch (regime_of(sigma)) {
        case RegimeTag::half: return "sigma = 1/2 requires n in {2,3,4}";
        case RegimeTag::parabolic_like: return "sigma in (0,1/2) requires n in {2,3,4}";
        case RegimeTag::visco: return "sigma = 1 requires n >= 2";
        case RegimeTag::hyperbolic_like: return "sigma in (1/2,1) requires n >= 2";
    }
    return "";
}

// [lo, n/(n - s)], unbounded above when n - s <= 0
Interval gn_interval(const Rational& lo, int n, const Rational& s) {
    Rational den = Rational(n) - s;
    if (den <= 0) return Interval::closed(lo, std::nullopt);
    return Interval::closed(lo, Rational(n) / den);
}

}  // namespace

RegimeTag regime_of(const Rational& sigma) {
    check_sigma(sigma);
    if (sigma == kHalf) return RegimeTag::half;
    if (sigma == Rational(1)) return RegimeTag::visco;
    return sigma < kHalf ? RegimeTag::parabolic_like : RegimeTag::hyperbolic_like;
}

Rational existence_threshold(const Rational& sigma, int n, const Rational& m) {
    check_sigma(sigma);
    check_m(sigma, m);
    if (!dimension_ok(sigma, n)) throw DomainError(hypothesis_text(sigma) + " (got n = " + std::to_string(n) + ")");
    return threshold_formula(sigma, n);
}

RangeReport admissible_range(const Rational& sigma, int n, const Rational& m) {
    check_sigma(sigma);
    check_m(sigma, m);
    if (n < 2) throw DomainError("admissible_range requires n >= 2 (got n = " + std::to_string(n) + ")");
    RangeReport rep;
    rep.sigma = sigma;
    rep.n = n;
    rep.m = m;
    rep.regime_tag = regime_of(sigma);
    rep.existence_threshold = threshold_formula(sigma, n);
    switch (rep.regime_tag) {
        case RegimeTag::half: rep.integrability_interval = gn_interval(m, n, m); break;
        case RegimeTag::visco: rep.integrability_interval = gn_interval(Rational(2), n, Rational(4)); break;
        case RegimeTag::parabolic_like: rep.integrability_interval = gn_interval(Rational(2), n, Rational(2)); break;
        case RegimeTag::hyperbolic_like:
            rep.integrability_interval = gn_interval(Rational(2), n, 4 * sigma);
            break;
    }
    rep.within_hypothesis = dimension_ok(sigma, n);
    if (!rep.within_hypothesis) {
        rep.admissible = Interval::none();
        rep.note = hypothesis_text(sigma);
        return rep;
    }
    rep.admissible = rep.integrability_interval.above(rep.existence_threshold);
    if (rep.admissible.empty) rep.note = "no p satisfies both constraints";
    return rep;
}

BlowupThreshold blowup_threshold(const Rational& sigma, int n) {
    check_sigma(sigma);
    if (n < 1) throw DomainError("blowup_threshold requires n >= 1");
    BlowupThreshold out;
    if (sigma <= kHalf) {
        Rational den = Rational(n) - 2 * sigma;
        if (den > 0) out.low_sigma_branch = 1 + 2 / den;
    }
    if (sigma >= kHalf) {
        if (n > 1) out.high_sigma_branch = 1 + Rational(2, n - 1);
    }
    out.at_junction = (sigma == kHalf);
    out.branches_agree = out.at_junction && out.low_sigma_branch == out.high_sigma_branch;
    out.value = (sigma <= kHalf) ? out.low_sigma_branch : out.high_sigma_branch;
    return out;
}

GapReport gap_report(const Rational& sigma, int n) {
    check_sigma(sigma);
    if (n < 2) throw DomainError("gap_report requires n >= 2");
    GapReport g;
    g.existence = threshold_formula(sigma, n);
    g.blowup = *blowup_threshold(sigma, n).value;
    g.gap = g.existence - g.blowup;
    return g;
}

GnTheta gn_theta(int n, double k, double m, double q) {
    if (n < 1 || !(k > 0.0) || !(m >= 1.0) || !(q >= m)) throw DomainError("gn_theta requires n >= 1, k > 0, 1 <= m <= q");
    GnTheta r;
    r.theta = (static_cast<double>(n) / k) * (1.0 / m - 1.0 / q);
    double den = n - k * m;
    bool q_ok = den <= 0.0 || q <= n * m / den * (1.0 + 1e-15);
    r.admissible = q_ok && r.theta <= 1.0 + 1e-15;
    return r;
}

GnThetaExact gn_theta(int n, const Rational& k, const Rational& m, const Rational& q) {
    if (n < 1 || k <= 0 || m < 1 || q < m) throw DomainError("gn_theta requires n >= 1, k > 0, 1 <= m <= q");
    GnThetaExact r;
    r.theta = (Rational(n) / k) * (1 / m - 1 / q);
    Rational den = Rational(n) - k * m;
    bool q_ok = den <= 0 || q <= Rational(n) * m / den;
    r.admissible = q_ok && r.theta <= 1;
    return r;
}

namespace {

std::string data_class(const Rational& m, const Rational& k) {
    std::string kt = format_rational(k);
    if (k.denominator() != 1) kt = "{" + kt + "}";
    std::string mt = format_rational(m);
    if (m.denominator() != 1) mt = "{" + mt + "}";
    return "D_" + mt + "^" + kt;
}

}  // namespace

RateTable predicted_rates(const Rational& sigma, int n, const Rational& m) {
    check_sigma(sigma);
    check_m(sigma, m);
    RateTable t;
    const auto tag = regime_of(sigma);
    if (tag == RegimeTag::half) {
        if (n < 1) throw DomainError("sigma = 1/2 rates require n >= 1");
        Rational g = -Rational(n) * (1 - 1 / m);
        t["u_Lm"] = {1 + g, false, data_class(m, 0)};
        t["ut_Lm"] = {g, false, data_class(m, 1)};
        t["grad_Lm"] = {g, false, data_class(m, 1)};
        return t;
    }
    if (n < 2) throw DomainError("rates for sigma != 1/2 require n >= 2 (got n = " + std::to_string(n) + ")");
    const Rational N(n);
    switch (tag) {
        case RegimeTag::visco:
            t["u_Lm"] = {-(N - 2) / 4, n == 2, data_class(2, 0)};
            t["ut_Lm"] = {-N / 4, false, data_class(2, 0)};
            t["grad_Lm"] = {-N / 4, false, data_class(2, 1)};
            t["grad2_L2"] = {-(N + 2) / 4, false, data_class(2, 2)};
            t["hdot2sigma"] = {-(N + 2) / 4, false, data_class(2, 2)};
            break;
        case RegimeTag::parabolic_like: {
            Rational u = -(N / 4 - sigma) / (1 - sigma);
            t["u_Lm"] = {u, false, data_class(2, 0)};
            t["ut_Lm"] = {u - 1, false, data_class(2, 1)};
            t["grad_Lm"] = {-((N + 2) / 4 - sigma) / (1 - sigma), false, data_class(2, 1)};
            break;
        }
        case RegimeTag::hyperbolic_like:
            t["u_Lm"] = {-(N - 2) / (4 * sigma), n == 2, data_class(2, 0)};
            t["ut_Lm"] = {-N / (4 * sigma), false, data_class(2, 2 * (1 - sigma))};
            t["grad_Lm"] = {-N / (4 * sigma), false, data_class(2, 1)};
            t["hdot2sigma"] = {-(N - 2) / (4 * sigma) - 1, false, data_class(2, 2 * sigma)};
            break;
        case RegimeTag::half: break;
    }
    return t;
}

double blowdata_value(const ModelSpec& model, const RealField& u0, const RealField& u1) {
    if (u0.grid != u1.grid) throw DomainError("blowdata_value: fields on different grids");
    auto U0 = forward_transform(u0);
    auto U1 = forward_transform(u1);
    auto sym = frac_symbol(u0.grid, model.sigma);
    // only the zero mode survives integration over the box
    cplx c0 = U1.coeffs[0] + model.mu * sym[0] * U0.coeffs[0];
    return u0.grid.volume() * c0.real();
}

double dm_norm(const RealField& u0, const RealField& u1, double m, double k) {
    if (!(m > 1.0 && m <= 2.0)) throw DomainError("dm_norm requires m in (1,2]");
    if (!(k >= 0.0)) throw DomainError("dm_norm requires k >= 0");
    if (u0.grid != u1.grid) throw DomainError("dm_norm: fields on different grids");
    double hk = 0.0;
    if (k == 0.0) {
        // H^{0,m} is L^m, already counted
    } else if (m == 2.0) {
        hk = sobolev_seminorm(forward_transform(u0), k);
    } else {
        if (k != std::floor(k)) throw DomainError("fractional k is only supported for m = 2");
        hk = derivative_tensor_norm(u0, static_cast<int>(k), m);
    }
    return grid_norm(u0, 1.0) + grid_norm(u0, m) + hk + grid_norm(u1, 1.0) + grid_norm(u1, m);
}

}  // namespace dampwave
