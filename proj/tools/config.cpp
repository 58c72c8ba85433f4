#include "config.hpp"

#include "dampwave/errors.hpp"
#include "dampwave/linear.hpp"

#include <boost/algorithm/string.hpp>
#include <boost/program_options/parsers.hpp>

#include <algorithm>
#include <cmath>
#include <functional>
#include <set>
#include <sstream>

namespace po = boost::program_options;

namespace dampwave::cli {

namespace {

std::string format_double_short(double x) {
    std::ostringstream os;
    os.precision(6);
    os << x;
    return os.str();
}

std::string join(const std::vector<std::string>& v, const std::string& sep) { return boost::algorithm::join(v, sep); }

std::string issues_text(const std::vector<std::string>& issues) {
    return "invalid configuration:\n  " + join(issues, "\n  ");
}

// Keys and their defaults. Defaults that depend on other keys are filled in
// after the first pass.
const std::vector<std::pair<std::string, std::string>>& key_table() {
    static const std::vector<std::pair<std::string, std::string>> keys = {
        {"model.n", "2"},
        {"model.sigma", "1/2"},
        {"model.mu", "2"},
        {"series.mode", "grid"},
        {"series.quantities", "u_L2"},
        {"series.times", ""},
        {"series.window", "auto"},
        {"series.tol", "0.05"},
        {"series.sidedness", "two_sided"},
        {"series.include_zero_mode", "false"},
        {"grid.points", ""},
        {"grid.box_length", "64"},
        {"oracle.r_max", "auto"},
        {"u0.kind", "zero"},
        {"u0.amplitude", "1"},
        {"u0.width", "1"},
        {"u0.radius", "1"},
        {"u0.center", ""},
        {"u0.max_mode", "4"},
        {"u0.seed", "1"},
        {"u1.kind", "gaussian"},
        {"u1.amplitude", "1"},
        {"u1.width", "1"},
        {"u1.radius", "1"},
        {"u1.center", ""},
        {"u1.max_mode", "4"},
        {"u1.seed", "2"},
        {"nonlinearity.p", "2"},
        {"nonlinearity.variant", "abs_power"},
        {"stepper.dt", "0.01"},
        {"stepper.T", "10"},
        {"stepper.dealias", "auto"},
        {"stepper.threshold", "auto"},
        {"stepper.max_steps", "10000000"},
        {"stepper.record_every", "1"},
        {"picard.iterations", "8"},
        {"picard.quadrature_points", "101"},
        {"picard.contract_from", "3"},
        {"picard.ratio_max", "0.5"},
        {"picard.etd_check", "true"},
        {"picard.etd_tol", "1e-3"},
        {"probe.p", ""},
        {"probe.amplitudes", ""},
        {"probe.expect", "auto"},
        {"exponents.sigmas", "1/2"},
        {"exponents.n_min", "2"},
        {"exponents.n_max", "5"},
        {"exponents.m", "2"},
        {"compare.times", "0.5,1,2,4"},
        {"compare.tol", "1e-4"},
        {"output.dir", "out"},
    };
    return keys;
}

class Reader {
public:
    Reader(std::map<std::string, std::string>& values, std::vector<std::string>& issues)
        : values_(values), issues_(issues) {}

    const std::string& raw(const std::string& key) const { return values_.at(key); }

    std::optional<double> number(const std::string& key) {
        const std::string& s = raw(key);
        auto v = parse_number(s);
        if (!v) issues_.push_back(key + ": '" + s + "' is not a number");
        return v;
    }

    std::optional<long long> integer(const std::string& key) {
        const std::string& s = raw(key);
        try {
            std::size_t pos = 0;
            long long v = std::stoll(s, &pos);
            if (pos == s.size()) return v;
        } catch (const std::exception&) {
        }
        issues_.push_back(key + ": '" + s + "' is not an integer");
        return std::nullopt;
    }

    std::optional<bool> boolean(const std::string& key) {
        const std::string& s = raw(key);
        if (s == "true") return true;
        if (s == "false") return false;
        issues_.push_back(key + ": expected true or false (got '" + s + "')");
        return std::nullopt;
    }

    std::optional<Rational> rational(const std::string& key) {
        try {
            return parse_rational(raw(key));
        } catch (const DomainError& e) {
            issues_.push_back(key + ": " + e.what());
            return std::nullopt;
        }
    }

    std::vector<std::string> list(const std::string& key) const {
        std::vector<std::string> out;
        const std::string& s = raw(key);
        if (s.empty()) return out;
        boost::algorithm::split(out, s, boost::is_any_of(","));
        for (auto& x : out) boost::algorithm::trim(x);
        return out;
    }

    std::vector<double> numbers(const std::string& key) {
        std::vector<double> out;
        for (const auto& item : list(key)) {
            auto v = parse_number(item);
            if (!v) {
                issues_.push_back(key + ": '" + item + "' is not a number");
                return {};
            }
            out.push_back(*v);
        }
        return out;
    }

    void fail(const std::string& msg) { issues_.push_back(msg); }

    static std::optional<double> parse_number(const std::string& s) {
        if (s.empty()) return std::nullopt;
        try {
            std::size_t pos = 0;
            double v = std::stod(s, &pos);
            if (pos == s.size() && std::isfinite(v)) return v;
        } catch (const std::exception&) {
        }
        return std::nullopt;
    }

private:
    std::map<std::string, std::string>& values_;
    std::vector<std::string>& issues_;
};

// "log:lo:hi:count", "lin:lo:hi:count" or an explicit comma list.
std::vector<double> parse_times(Reader& rd, const std::string& key) {
    const std::string& s = rd.raw(key);
    if (s.rfind("log:", 0) == 0 || s.rfind("lin:", 0) == 0) {
        std::vector<std::string> parts;
        boost::algorithm::split(parts, s, boost::is_any_of(":"));
        if (parts.size() != 4) {
            rd.fail(key + ": expected " + parts[0] + ":lo:hi:count");
            return {};
        }
        auto lo = Reader::parse_number(parts[1]), hi = Reader::parse_number(parts[2]);
        auto cnt = Reader::parse_number(parts[3]);
        if (!lo || !hi || !cnt || *cnt < 2 || *cnt != std::floor(*cnt) || !(*hi > *lo)) {
            rd.fail(key + ": expected lo < hi and an integer count >= 2 in '" + s + "'");
            return {};
        }
        const bool logspace = parts[0] == "log";
        if (logspace && !(*lo > 0.0)) {
            rd.fail(key + ": log spacing needs lo > 0");
            return {};
        }
        const int count = static_cast<int>(*cnt);
        std::vector<double> out;
        for (int i = 0; i < count; ++i) {
            double f = double(i) / (count - 1);
            out.push_back(logspace ? *lo * std::pow(*hi / *lo, f) : *lo + (*hi - *lo) * f);
        }
        out.back() = *hi;
        return out;
    }
    return rd.numbers(key);
}

void read_preset(Reader& rd, const std::string& p, DataPreset& d, int n, SeriesMode mode, double box,
                 std::vector<std::string>& warnings) {
    const std::string kind = rd.raw(p + ".kind");
    if (kind == "zero") d.kind = PresetKind::zero;
    else if (kind == "gaussian") d.kind = PresetKind::gaussian;
    else if (kind == "bump") d.kind = PresetKind::bump;
    else if (kind == "band_limited_random") d.kind = PresetKind::band_limited_random;
    else {
        rd.fail(p + ".kind: unknown preset '" + kind + "' (zero, gaussian, bump, band_limited_random)");
        return;
    }
    if (auto v = rd.number(p + ".amplitude")) d.amplitude = *v;
    if (auto v = rd.number(p + ".width")) {
        if (!(*v > 0.0)) rd.fail(p + ".width must be positive");
        d.width = *v;
    }
    if (auto v = rd.number(p + ".radius")) {
        if (!(*v > 0.0)) rd.fail(p + ".radius must be positive");
        d.radius = *v;
    }
    if (auto v = rd.integer(p + ".max_mode")) {
        if (*v < 1) rd.fail(p + ".max_mode must be at least 1");
        d.max_mode = static_cast<int>(*v);
    }
    if (auto v = rd.integer(p + ".seed")) {
        if (*v < 0) rd.fail(p + ".seed must be nonnegative");
        d.seed = static_cast<std::uint64_t>(*v);
    }
    d.center = rd.numbers(p + ".center");
    if (d.center.empty()) d.center.assign(std::max(n, 1), 0.0);
    if (static_cast<int>(d.center.size()) != n) {
        rd.fail(p + ".center needs " + std::to_string(n) + " coordinates");
        return;
    }
    if (mode == SeriesMode::oracle) {
        if (d.kind == PresetKind::band_limited_random)
            rd.fail(p + ".kind: band_limited_random data is not radial and cannot be used in oracle mode");
        for (double c : d.center)
            if (c != 0.0) {
                rd.fail(p + ".center must be the origin in oracle mode (radial data)");
                break;
            }
        return;
    }
    double edge = box / 2;
    for (double c : d.center) edge = std::min(edge, box / 2 - std::abs(c));
    if (d.kind == PresetKind::bump && !(d.radius < edge))
        rd.fail(p + ": bump support must lie strictly inside the box (radius + |center| < box_length/2)");
    if (d.kind == PresetKind::gaussian && d.amplitude != 0.0) {
        double tail = std::exp(-edge * edge / (2 * d.width * d.width));
        if (!(tail < 1e-10))
            warnings.push_back(p + ": gaussian tail at the box boundary is " + format_double_short(tail) +
                               " of its peak (above 1e-10)");
    }
}

}  // namespace

ConfigError::ConfigError(std::vector<std::string> issues)
    : std::runtime_error(issues_text(issues)), issues_(std::move(issues)) {}

std::string to_string(PresetKind k) {
    switch (k) {
        case PresetKind::zero: return "zero";
        case PresetKind::gaussian: return "gaussian";
        case PresetKind::bump: return "bump";
        case PresetKind::band_limited_random: return "band_limited_random";
    }
    return "?";
}

ExperimentConfig parse_config(const std::string& text, const std::string& command) {
    std::vector<std::string> issues;
    std::map<std::string, std::string> given;

    po::options_description desc;
    for (const auto& [key, def] : key_table()) desc.add_options()(key.c_str(), po::value<std::string>());
    std::istringstream in(text);
    try {
        auto parsed = po::parse_config_file(in, desc, true);
        for (const auto& opt : parsed.options) {
            const std::string& key = opt.string_key;
            if (opt.unregistered) {
                if (std::count(key.begin(), key.end(), '.') != 1)
                    issues.push_back("unknown key '" + key + "' (keys have the form section.key)");
                else
                    issues.push_back("unknown key '" + key + "'");
                continue;
            }
            std::string value = opt.value.empty() ? "" : boost::algorithm::trim_copy(opt.value.front());
            if (!given.emplace(key, value).second) issues.push_back("duplicate key '" + key + "'");
        }
    } catch (const po::error& e) {
        issues.push_back(std::string("syntax error: ") + e.what());
        throw ConfigError(issues);
    }

    std::map<std::string, std::string> values;
    for (const auto& [key, def] : key_table()) values[key] = def;
    for (const auto& [key, v] : given) values[key] = v;

    ExperimentConfig cfg;
    Reader rd(values, issues);

    // model
    int n = 2;
    if (auto v = rd.integer("model.n")) {
        if (*v < 1 || *v > 3) rd.fail("model.n must be 1, 2 or 3 (got " + std::to_string(*v) + ")");
        else n = static_cast<int>(*v);
    }
    cfg.model.n = n;
    if (auto s = rd.rational("model.sigma")) {
        if (*s <= Rational(0) || *s > Rational(1)) rd.fail("model.sigma must lie in (0,1] (got " + format_rational(*s) + ")");
        else {
            cfg.sigma = *s;
            cfg.model.sigma = to_double(*s);
        }
    }
    if (auto v = rd.number("model.mu")) {
        if (!(*v > 0.0)) rd.fail("model.mu must be positive (got " + values["model.mu"] + ")");
        else cfg.model.mu = *v;
    }

    // series
    const std::string mode = values["series.mode"];
    if (mode == "grid") cfg.mode = SeriesMode::grid;
    else if (mode == "oracle") cfg.mode = SeriesMode::oracle;
    else rd.fail("series.mode must be grid or oracle (got '" + mode + "')");

    if (values["series.times"].empty())
        values["series.times"] = cfg.mode == SeriesMode::oracle ? "log:100:10000:25" : "log:1:100:25";
    if (values["grid.points"].empty()) values["grid.points"] = n == 1 ? "4096" : n == 2 ? "512" : "128";

    cfg.quantities = rd.list("series.quantities");
    if (cfg.quantities.empty()) rd.fail("series.quantities must name at least one quantity");
    for (const auto& q : cfg.quantities) {
        try {
            auto parsed = Quantity::parse(q);
            if (cfg.mode == SeriesMode::oracle && (parsed.kind == QuantityKind::u_Lm || parsed.kind == QuantityKind::ut_Lm) &&
                parsed.m != 2.0)
                rd.fail("series.quantities: " + q + " is not available in oracle mode (L^m with m != 2)");
        } catch (const DomainError& e) {
            rd.fail("series.quantities: " + std::string(e.what()));
        }
    }
    cfg.times = parse_times(rd, "series.times");
    for (std::size_t i = 0; i < cfg.times.size(); ++i) {
        if (cfg.times[i] < 0.0 || (cfg.mode == SeriesMode::oracle && !(cfg.times[i] > 0.0))) {
            rd.fail("series.times must be positive");
            break;
        }
        if (i > 0 && !(cfg.times[i] > cfg.times[i - 1])) {
            rd.fail("series.times must be strictly increasing");
            break;
        }
    }
    if (values["series.window"] != "auto") {
        auto w = rd.numbers("series.window");
        if (w.size() != 2 || !(w[1] > w[0])) rd.fail("series.window must be auto or 'lo,hi' with lo < hi");
        else cfg.window = std::make_pair(w[0], w[1]);
    }
    if (auto v = rd.number("series.tol")) {
        if (!(*v > 0.0)) rd.fail("series.tol must be positive");
        cfg.tol = *v;
    }
    const std::string side = values["series.sidedness"];
    if (side == "one_sided") cfg.one_sided = true;
    else if (side != "two_sided") rd.fail("series.sidedness must be two_sided or one_sided");
    if (auto b = rd.boolean("series.include_zero_mode")) cfg.include_zero_mode = *b;

    // grid
    if (auto v = rd.integer("grid.points")) cfg.points = static_cast<int>(*v);
    if (auto v = rd.number("grid.box_length")) cfg.box_length = *v;
    try {
        GridSpec{n, cfg.points, cfg.box_length}.validate();
    } catch (const DomainError& e) {
        rd.fail(std::string("grid: ") + e.what());
    }
    if (values["oracle.r_max"] != "auto") {
        auto v = rd.number("oracle.r_max");
        if (v && !(*v > 0.0)) rd.fail("oracle.r_max must be auto or positive");
        else if (v) cfg.oracle_r_max = *v;
    }

    read_preset(rd, "u0", cfg.u0, n, cfg.mode, cfg.box_length, cfg.warnings);
    read_preset(rd, "u1", cfg.u1, n, cfg.mode, cfg.box_length, cfg.warnings);

    // nonlinearity and stepper
    if (auto v = rd.number("nonlinearity.p")) {
        if (!(*v > 1.0)) rd.fail("nonlinearity.p must exceed 1 (got " + values["nonlinearity.p"] + ")");
        cfg.nl.p = *v;
    }
    try {
        cfg.nl.variant = parse_variant(values["nonlinearity.variant"]);
    } catch (const DomainError& e) {
        rd.fail(std::string("nonlinearity.variant: ") + e.what());
    }
    if (auto v = rd.number("stepper.dt")) {
        if (!(*v > 0.0)) rd.fail("stepper.dt must be positive");
        cfg.stepper.dt = *v;
    }
    if (auto v = rd.number("stepper.T")) {
        if (!(*v > 0.0)) rd.fail("stepper.T must be positive");
        cfg.horizon = *v;
    }
    if (values["stepper.dealias"] == "auto") cfg.stepper.dealias = default_dealias(cfg.nl);
    else if (auto b = rd.boolean("stepper.dealias")) cfg.stepper.dealias = *b;
    if (values["stepper.threshold"] != "auto") {
        if (auto v = rd.number("stepper.threshold")) {
            if (!(*v > 0.0)) rd.fail("stepper.threshold must be auto or positive");
            cfg.stepper.blowup_threshold = *v;
        }
    }
    if (auto v = rd.integer("stepper.max_steps")) {
        if (*v < 1) rd.fail("stepper.max_steps must be positive");
        cfg.stepper.max_steps = static_cast<long>(*v);
    }
    if (auto v = rd.integer("stepper.record_every")) {
        if (*v < 1) rd.fail("stepper.record_every must be positive");
        cfg.record_every = static_cast<long>(*v);
    }

    // picard
    if (auto v = rd.integer("picard.iterations")) {
        if (*v < 2) rd.fail("picard.iterations must be at least 2");
        cfg.picard_iterations = static_cast<int>(*v);
    }
    if (auto v = rd.integer("picard.quadrature_points")) {
        if (*v < 2) rd.fail("picard.quadrature_points must be at least 2");
        cfg.picard_points = static_cast<int>(*v);
    }
    if (auto v = rd.integer("picard.contract_from")) {
        if (*v < 1) rd.fail("picard.contract_from must be at least 1");
        cfg.picard_contract_from = static_cast<int>(*v);
    }
    if (auto v = rd.number("picard.ratio_max")) {
        if (!(*v > 0.0)) rd.fail("picard.ratio_max must be positive");
        cfg.picard_ratio_max = *v;
    }
    if (auto b = rd.boolean("picard.etd_check")) cfg.picard_etd_check = *b;
    if (auto v = rd.number("picard.etd_tol")) {
        if (!(*v > 0.0)) rd.fail("picard.etd_tol must be positive");
        cfg.picard_etd_tol = *v;
    }

    // blow-up probe
    cfg.probe_p = rd.numbers("probe.p");
    for (double p : cfg.probe_p)
        if (!(p > 1.0)) rd.fail("probe.p entries must exceed 1");
    if (cfg.probe_p.empty()) cfg.probe_p = {cfg.nl.p};
    cfg.probe_amplitudes = rd.numbers("probe.amplitudes");
    if (!cfg.probe_amplitudes.empty() && cfg.probe_amplitudes.size() != cfg.probe_p.size())
        rd.fail("probe.amplitudes must have one entry per probe.p value");
    cfg.probe_expect = rd.list("probe.expect");
    bool single = cfg.probe_expect.size() == 1 && (cfg.probe_expect[0] == "auto" || cfg.probe_expect[0] == "none");
    if (!single) {
        if (cfg.probe_expect.size() != cfg.probe_p.size())
            rd.fail("probe.expect must be auto, none, or one status per probe.p value");
        for (const auto& s : cfg.probe_expect)
            if (s != "completed" && s != "blowup_detected")
                rd.fail("probe.expect: unknown status '" + s + "' (completed, blowup_detected)");
    }

    // exponents
    cfg.exp_sigmas.clear();
    for (const auto& s : rd.list("exponents.sigmas")) {
        try {
            Rational q = parse_rational(s);
            if (q <= Rational(0) || q > Rational(1)) rd.fail("exponents.sigmas: sigma must lie in (0,1] (got " + s + ")");
            cfg.exp_sigmas.push_back(q);
        } catch (const DomainError& e) {
            rd.fail(std::string("exponents.sigmas: ") + e.what());
        }
    }
    if (auto v = rd.integer("exponents.n_min")) cfg.exp_n_min = static_cast<int>(*v);
    if (auto v = rd.integer("exponents.n_max")) cfg.exp_n_max = static_cast<int>(*v);
    if (cfg.exp_n_min < 2 || cfg.exp_n_max < cfg.exp_n_min) rd.fail("exponents: need 2 <= n_min <= n_max");
    if (auto m = rd.rational("exponents.m")) {
        if (*m <= Rational(1) || *m > Rational(2)) rd.fail("exponents.m must lie in (1,2]");
        cfg.exp_m = *m;
    }

    // oracle comparison
    cfg.compare_times = rd.numbers("compare.times");
    for (std::size_t i = 0; i < cfg.compare_times.size(); ++i)
        if (!(cfg.compare_times[i] > 0.0) || (i > 0 && !(cfg.compare_times[i] > cfg.compare_times[i - 1]))) {
            rd.fail("compare.times must be positive and strictly increasing");
            break;
        }
    if (auto v = rd.number("compare.tol")) {
        if (!(*v > 0.0)) rd.fail("compare.tol must be positive");
        cfg.compare_tol = *v;
    }

    cfg.output_dir = values["output.dir"];
    if (cfg.output_dir.empty()) rd.fail("output.dir must not be empty");

    // command-specific checks
    if (command == "semilinear" || command == "blowup-probe" || command == "picard") {
        if (n < 2 && command != "semilinear") rd.fail(command + " requires model.n >= 2");
    }
    if (command == "semilinear" || command == "blowup-probe") {
        std::vector<double> ps = command == "semilinear" ? std::vector<double>{cfg.nl.p} : cfg.probe_p;
        try {
            auto b = blowup_threshold(cfg.sigma, n);
            if (b.value)
                for (double p : ps)
                    if (p <= to_double(*b.value))
                        cfg.warnings.push_back("p = " + format_double_short(p) + " is at or below the blow-up threshold " +
                                               format_rational(*b.value) + " for sigma = " + format_rational(cfg.sigma) +
                                               ", n = " + std::to_string(n));
        } catch (const DomainError&) {
        }
    }
    if (command == "oracle-compare") {
        if (cfg.compare_times.empty()) rd.fail("compare.times must list at least one time");
        for (const DataPreset* d : {&cfg.u0, &cfg.u1}) {
            if (d->kind == PresetKind::band_limited_random) {
                rd.fail("oracle-compare needs radial data (gaussian, bump or zero presets)");
                break;
            }
            bool centered = true;
            for (double c : d->center) centered = centered && c == 0.0;
            if (!centered) {
                rd.fail("oracle-compare needs data centred at the origin");
                break;
            }
        }
    }

    if (!issues.empty()) throw ConfigError(issues);
    cfg.resolved = values;
    return cfg;
}

std::string manifest_text(const ExperimentConfig& cfg, const std::string& command) {
    std::ostringstream os;
    os << "# dampwave " << command << "\n";
    for (const auto& [key, value] : cfg.resolved) os << key << " = " << value << "\n";
    return os.str();
}

void override_seed(ExperimentConfig& cfg, std::uint64_t seed) {
    cfg.u0.seed = seed;
    cfg.u1.seed = seed + 1;
    cfg.resolved["u0.seed"] = std::to_string(seed);
    cfg.resolved["u1.seed"] = std::to_string(seed + 1);
}

}  // namespace dampwave::cli
