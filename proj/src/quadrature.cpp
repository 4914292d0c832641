#include "polariton/quadrature.hpp"

#include <algorithm>
#include <boost/math/quadrature/gauss.hpp>
#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <cmath>
#include <queue>
#include <sstream>

#include "polariton/error.hpp"

namespace polariton {

namespace {

using cplx = std::complex<double>;

enum class Map { Plain, RightTail, LeftTail };

struct Segment {
    double a, b;
    Map map;
    cplx value;
    double err;
    bool operator<(const Segment& o) const { return err < o.err; }
};

struct Rule {
    std::vector<double> x;   // Kronrod abscissae, x[0] = 0
    std::vector<double> wk;  // Kronrod weights
    std::vector<double> wg;  // Gauss weights aligned with x (0 where not a Gauss node)

    Rule() {
        using GK = boost::math::quadrature::gauss_kronrod<double, 15>;
        using G = boost::math::quadrature::gauss<double, 7>;
        x.assign(GK::abscissa().begin(), GK::abscissa().end());
        wk.assign(GK::weights().begin(), GK::weights().end());
        wg.assign(x.size(), 0.0);
        const auto& gx = G::abscissa();
        const auto& gw = G::weights();
        for (std::size_t j = 0; j < gx.size(); ++j)
            for (std::size_t i = 0; i < x.size(); ++i)
                if (std::abs(x[i] - gx[j]) < 1e-14) wg[i] = gw[j];
    }
};

const Rule& rule() {
    static const Rule r;
    return r;
}

class Integrator {
public:
    Integrator(const std::function<cplx(double)>& f, double V) : f_(f), V_(V) {}

    Segment eval(double a, double b, Map m) {
        const Rule& R = rule();
        const double c = 0.5 * (a + b), h = 0.5 * (b - a);
        cplx k{}, g{};
        for (std::size_t i = 0; i < R.x.size(); ++i) {
            const bool centre = i == 0;
            const cplx s = centre ? mapped(c, m) : mapped(c - h * R.x[i], m) + mapped(c + h * R.x[i], m);
            k += R.wk[i] * s;
            g += R.wg[i] * s;
        }
        evals_ += 15;
        return {a, b, m, k * h, std::abs((k - g) * h)};
    }

    long evaluations() const { return evals_; }

private:
    cplx mapped(double t, Map m) {
        switch (m) {
        case Map::Plain:
            return f_(t);
        case Map::RightTail:
            return f_(V_ / t) * (V_ / (t * t));
        case Map::LeftTail:
            return f_(-V_ / t) * (V_ / (t * t));
        }
        return {};
    }

    const std::function<cplx(double)>& f_;
    double V_;
    long evals_ = 0;
};

}  // namespace

QuadResult integrate_real_line(const std::function<cplx(double)>& f, std::vector<double> breakpoints, double V,
                               const QuadOptions& opt) {
    if (!(V > 0)) throw NumericalError("integration half-range must be positive");
    std::vector<double> pts{-V, V};
    for (double p : breakpoints)
        if (std::isfinite(p) && p > -V && p < V) pts.push_back(p);
    std::sort(pts.begin(), pts.end());
    pts.erase(std::unique(pts.begin(), pts.end(), [V](double a, double b) { return b - a < 1e-12 * V; }),
              pts.end());

    Integrator in(f, V);
    std::priority_queue<Segment> heap;
    cplx total{};
    double err = 0.0;
    auto push = [&](Segment s) {
        total += s.value;
        err += s.err;
        heap.push(s);
    };
    for (std::size_t i = 0; i + 1 < pts.size(); ++i) push(in.eval(pts[i], pts[i + 1], Map::Plain));
    push(in.eval(0.0, 1.0, Map::LeftTail));
    push(in.eval(0.0, 1.0, Map::RightTail));

    auto done = [&] { return err <= std::max(opt.abs_tol, opt.rel_tol * std::abs(total)); };
    while (!done()) {
        if (in.evaluations() + 30 > opt.max_evals) {
            std::ostringstream os;
            os << "quadrature did not converge: error " << err << " after " << in.evaluations() << " evaluations";
            throw QuadratureError(os.str(), err, std::max(opt.abs_tol, opt.rel_tol * std::abs(total)));
        }
        Segment s = heap.top();
        heap.pop();
        total -= s.value;
        err -= s.err;
        const double m = 0.5 * (s.a + s.b);
        push(in.eval(s.a, m, s.map));
        push(in.eval(m, s.b, s.map));
    }
    // recompute sums to drop accumulated cancellation in the running totals
    cplx sum{};
    double esum = 0.0;
    while (!heap.empty()) {
        sum += heap.top().value;
        esum += heap.top().err;
        heap.pop();
    }
    return {sum, esum, in.evaluations()};
}

}  // namespace polariton
