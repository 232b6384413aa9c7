#include <algorithm>
#include <cmath>

#include "ovalkit/diffeo.hpp"
#include "ovalkit/error.hpp"

namespace ovalkit {

double balance_defect(const CircleDiffeo& phi, double theta) {
    return phi(theta + kPi) - phi(theta) - kPi;
}

namespace {

double bisect_root(const CircleDiffeo& phi, double lo, double hi) {
    double glo = balance_defect(phi, lo);
    for (int i = 0; i < 80 && hi - lo > 1e-14; ++i) {
        const double mid = 0.5 * (lo + hi);
        const double gm = balance_defect(phi, mid);
        if (gm == 0.0) return mid;
        if ((gm < 0.0) == (glo < 0.0)) {
            lo = mid;
            glo = gm;
        } else {
            hi = mid;
        }
    }
    return 0.5 * (lo + hi);
}

double wrap(double t) {
    t = std::fmod(t, kTwoPi);
    return t < 0.0 ? t + kTwoPi : t;
}

}  // namespace

BalanceReport balance_points(const CircleDiffeo& phi, const BalanceOptions& options) {
    if (!(options.tol > 0.0)) throw InvalidInput("balance tolerance must be > 0");
    const std::size_t n = phi.size();
    const std::size_t half = n / 2;
    const std::vector<double> vals = phi.node_values();
    const GridFunction& u = phi.log_slope();

    std::vector<double> g(n), du(n);
    double max_phi = 0.0, max_g = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
        const std::size_t k = (j + half) % n;
        const double lifted = vals[k] + (j + half >= n ? kTwoPi : 0.0);
        g[j] = lifted - vals[j] - kPi;
        du[j] = u[k] - u[j];
        max_phi = std::max(max_phi, std::abs(vals[j]));
        max_g = std::max(max_g, std::abs(g[j]));
    }
    const double thr = options.tol * (1.0 + max_phi);

    BalanceReport report{{}, std::nullopt, 0, max_g, false, {}};
    if (max_g < thr) {
        report.saturated = true;
        return report;
    }

    auto sign = [&](std::size_t j) { return std::abs(g[j]) <= thr ? 0 : (g[j] > 0 ? 1 : -1); };
    const double stability_tol = options.stability_tol.value_or(
        spectral_tail(u) < 1e-8 ? 1e-6 : 1e-2);
    const TrigInterpolant u_at(u);
    auto add_pair = [&](double p) {
        const bool stable = std::abs(u_at(p + kPi) - u_at(p)) > stability_tol;
        report.points.push_back({wrap(p), stable});
        report.points.push_back({wrap(p + kPi), stable});
    };

    // Each event is keyed by the last nonzero node before it; an event and its
    // antipodal image have keys N/2 apart, so keys in [0, N/2) list each pair once.
    for (std::size_t j = 0; j < half; ++j) {
        const int sj = sign(j);
        if (sj == 0) continue;
        std::size_t r = 0;
        while (r < n && sign((j + 1 + r) % n) == 0) ++r;
        const std::size_t next = j + 1 + r;
        const int sn = sign(next % n);
        const double a = GridFunction::node(n, j);
        const double b = a + static_cast<double>(r + 1) * phi.log_slope().spacing();
        if (r == 0) {
            if (sn != sj) add_pair(bisect_root(phi, a, b));
            continue;
        }
        // Longest stretch of the run on which the slopes also agree.
        std::size_t best_len = 0, best_start = 0, len = 0;
        for (std::size_t i = 1; i <= r; ++i) {
            len = std::abs(du[(j + i) % n]) <= thr ? len + 1 : 0;
            if (len > best_len) {
                best_len = len;
                best_start = i + 1 - len;
            }
        }
        if (best_len >= options.arc_nodes) {
            const double h = phi.log_slope().spacing();
            const double lo = a + static_cast<double>(best_start) * h;
            const double hi = lo + static_cast<double>(best_len - 1) * h;
            report.saturated = true;
            report.arcs.push_back({wrap(lo), wrap(hi), best_len});
            report.arcs.push_back({wrap(lo + kPi), wrap(hi + kPi), best_len});
            add_pair(0.5 * (lo + hi));
            continue;
        }
        if (sn != sj) {
            add_pair(bisect_root(phi, a, b));
        } else {
            // Touching zero: take the node where |g| is smallest.
            std::size_t best = (j + 1) % n;
            for (std::size_t i = 1; i <= r; ++i) {
                if (std::abs(g[(j + i) % n]) < std::abs(g[best])) best = (j + i) % n;
            }
            add_pair(GridFunction::node(n, best));
        }
    }

    std::sort(report.points.begin(), report.points.end(),
              [](const BalancePoint& x, const BalancePoint& y) { return x.theta < y.theta; });
    for (const auto& p : report.points) report.n_SB += p.stable ? 1 : 0;
    if (!report.saturated) report.n_B = report.points.size();
    return report;
}

SymmetrizeResult symmetrize(const CircleDiffeo& phi, double p0, double tol) {
    if (std::abs(balance_defect(phi, p0)) > tol) {
        throw PreconditionError("symmetrize: p0 is not a balance point within tolerance");
    }
    const GridFunction& u = phi.log_slope();
    const std::size_t n = u.size();
    const GridFunction du = derivative(u);
    const GridFunction e2u = u.map([](double v) { return std::exp(2.0 * v); });
    const Antiderivative gint = antiderivative(0.25 * (du * du));
    const Antiderivative mint = antiderivative(e2u);
    const double g0 = gint.at(p0 + kPi) - gint.at(p0);
    const double m0 = mint.at(p0 + kPi) - mint.at(p0);
    const double gh[2] = {g0, integrate(0.25 * (du * du)) - g0};
    const double mh[2] = {m0, integrate(e2u) - m0};
    const double e0 = gh[0] - mh[0];
    const double e1 = gh[1] - mh[1];

    // Ties (within tol) go to the half with the smaller ∫e^{2u}, i.e. the one nearer the identity.
    int kept;
    if (std::abs(e0 - e1) <= tol * std::max(1.0, std::abs(e0 + e1))) {
        kept = mh[0] <= mh[1] ? 0 : 1;
    } else {
        kept = e0 < e1 ? 0 : 1;
    }

    const TrigInterpolant u_at(u);
    std::vector<double> ut(n);
    for (std::size_t j = 0; j < n; ++j) {
        const double t = GridFunction::node(n, j);
        double rel = std::fmod(t - p0, kTwoPi);
        if (rel < 0) rel += kTwoPi;
        const int side = rel < kPi ? 0 : 1;
        ut[j] = u_at(side == kept ? t : t + kPi);
    }
    const GridFunction raw(std::move(ut));
    CircleDiffeo out = CircleDiffeo::from_log_slope(raw, 0.0);
    out = CircleDiffeo::from_log_slope(out.log_slope(), phi(p0) - out(p0));
    // ũ is only Lipschitz at p₀, so its energy comes from the kept half, shifted by the
    // normalization constant c the constructor added to raw.
    const double c = out.log_slope()[0] - raw[0];
    const double energy = 2.0 * (gh[kept] - std::exp(2.0 * c) * mh[kept]);
    return {out, energy, {e0, e1}, kept};
}

}  // namespace ovalkit
