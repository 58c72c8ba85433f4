#include "dampwave/analysis.hpp"
#include "dampwave/errors.hpp"
#include "dampwave/semilinear.hpp"
#include "dampwave/spectral.hpp"

#include <cmath>
#include <limits>

namespace dampwave {

namespace {

struct NodeField {
    std::vector<std::vector<cplx>> u, ut;  // spectral, per node
};

SeriesBundle measure_nodes(const NodeField& d, const GridSpec& g, const std::vector<double>& nodes, double sigma) {
    const auto x2 = xi_squared(g);
    const double vol = g.volume();
    SeriesBundle b;
    for (std::size_t q = 0; q < nodes.size(); ++q) {
        double u2 = 0, ut2 = 0, g1 = 0, g2 = 0, hs = 0;
        for (std::size_t i = 0; i < x2.size(); ++i) {
            double a = std::norm(d.u[q][i]);
            u2 += a;
            ut2 += std::norm(d.ut[q][i]);
            g1 += x2[i] * a;
            g2 += x2[i] * x2[i] * a;
            if (x2[i] > 0.0) hs += std::pow(x2[i], 2.0 * sigma) * a;
        }
        b["u_L2"].push(nodes[q], std::sqrt(vol * u2));
        b["ut_L2"].push(nodes[q], std::sqrt(vol * ut2));
        b["grad_L2"].push(nodes[q], std::sqrt(vol * g1));
        b["grad2_L2"].push(nodes[q], std::sqrt(vol * g2));
        b["hdot2sigma"].push(nodes[q], std::sqrt(vol * hs));
    }
    for (auto& [k, s] : b) s.quantity = k;
    return b;
}

}  // namespace

PicardResult picard_iterate(const ModelSpec& model, const Nonlinearity& nl, const State& initial, double T, int j_max,
                            int quadrature_points, const PicardOptions& opts) {
    model.validate();
    nl.validate();
    if (!(T > 0.0)) throw DomainError("picard_iterate requires T > 0");
    if (j_max < 2) throw DomainError("picard_iterate requires j_max >= 2");
    if (quadrature_points < 2) throw DomainError("picard_iterate requires at least 2 quadrature points");
    const Rational sigma = sigma_rational(model.sigma);
    const auto& g = initial.u.grid;
    const std::size_t sz = g.size();
    const int Q = quadrature_points;
    const double h = T / (Q - 1);

    PicardResult res;
    for (int q = 0; q < Q; ++q) res.nodes.push_back(h * q);

    // K(t_q) doubles as the lag table K(t_i - t_l) with q = i - l
    std::vector<KernelTable> tabs;
    tabs.reserve(Q);
    for (int q = 0; q < Q; ++q) tabs.emplace_back(model, g, res.nodes[q]);
    const auto ksq = ksq_map(g);
    const auto mask = two_thirds_mask(g);

    // increment 0 is the linear solution
    auto S0 = to_spectral(initial);
    NodeField delta;
    delta.u.assign(Q, std::vector<cplx>(sz));
    delta.ut.assign(Q, std::vector<cplx>(sz));
    for (int q = 0; q < Q; ++q)
        for (std::size_t i = 0; i < sz; ++i) {
            const auto& kv = tabs[q].at(ksq[i]);
            delta.u[q][i] = kv.k0 * S0.u.coeffs[i] + kv.k1 * S0.ut.coeffs[i];
            delta.ut[q][i] = kv.dtk0 * S0.u.coeffs[i] + kv.dtk1 * S0.ut.coeffs[i];
        }

    std::vector<cplx> work(sz);
    auto to_phys = [&](const std::vector<cplx>& c, std::vector<double>& out) {
        out.resize(sz);
        work = c;
        inverse_inplace(g, work.data(), out.data());
    };

    std::vector<std::vector<double>> base(Q, std::vector<double>(sz, 0.0));  // u_{j-2}
    std::vector<std::vector<double>> dphys(Q);                               // delta_{j-1}
    for (int q = 0; q < Q; ++q) to_phys(delta.u[q], dphys[q]);

    std::vector<cplx> acc_u(sz), acc_ut(sz);
    for (std::size_t i = 0; i < sz; ++i) {
        acc_u[i] = delta.u[Q - 1][i];
        acc_ut[i] = delta.ut[Q - 1][i];
    }

    auto bundle = measure_nodes(delta, g, res.nodes, model.sigma);
    double prev = xt_norm(bundle, sigma, model.n, Rational(2));
    res.records.push_back({0, prev, std::numeric_limits<double>::quiet_NaN()});

    std::vector<std::vector<cplx>> G(Q, std::vector<cplx>(sz));
    std::vector<double> gvals(sz);
    int over_one = 0;
    for (int j = 1; j <= j_max - 1; ++j) {
        for (int q = 0; q < Q; ++q) {
            for (std::size_t i = 0; i < sz; ++i) gvals[i] = nl.difference(base[q][i], dphys[q][i]);
            forward_inplace(g, gvals.data(), G[q].data());
            if (opts.dealias)
                for (std::size_t i = 0; i < sz; ++i)
                    if (!mask[i]) G[q][i] = cplx(0.0, 0.0);
        }
        // composite trapezoid of the Duhamel integral; K1(0) = 0, d_t K1(0) = 1
        for (int q = 0; q < Q; ++q) {
            auto& du = delta.u[q];
            auto& dut = delta.ut[q];
            std::fill(du.begin(), du.end(), cplx(0.0, 0.0));
            std::fill(dut.begin(), dut.end(), cplx(0.0, 0.0));
            for (int l = 0; l <= q && q > 0; ++l) {
                const double w = (l == 0 || l == q) ? 0.5 * h : h;
                const auto& tab = tabs[q - l];
                const auto& Gl = G[l];
                for (std::size_t i = 0; i < sz; ++i) {
                    const auto& kv = tab.at(ksq[i]);
                    du[i] += (w * kv.k1) * Gl[i];
                    dut[i] += (w * kv.dtk1) * Gl[i];
                }
            }
        }
        for (int q = 0; q < Q; ++q) {
            for (std::size_t i = 0; i < sz; ++i) base[q][i] += dphys[q][i];
            to_phys(delta.u[q], dphys[q]);
        }
        for (std::size_t i = 0; i < sz; ++i) {
            acc_u[i] += delta.u[Q - 1][i];
            acc_ut[i] += delta.ut[Q - 1][i];
        }
        bundle = measure_nodes(delta, g, res.nodes, model.sigma);
        double cur = xt_norm(bundle, sigma, model.n, Rational(2));
        double ratio = (prev > 0.0) ? cur / prev : (cur == 0.0 ? 0.0 : std::numeric_limits<double>::infinity());
        res.records.push_back({j, cur, ratio});
        over_one = (ratio > 1.0) ? over_one + 1 : 0;
        prev = cur;
    }
    if (over_one >= 3) {
        res.diverging = true;
        res.note = "increment ratios exceeded 1 for the last " + std::to_string(over_one) + " iterates";
    }
    SpectralState fin{SpectralField(g), SpectralField(g), T};
    fin.u.coeffs = acc_u;
    fin.ut.coeffs = acc_ut;
    res.final_state = to_physical(fin);
    res.last_increment = std::move(bundle);
    return res;
}

}  // namespace dampwave
