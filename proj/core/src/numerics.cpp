#include "bpv/numerics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "bpv/acceptance.hpp"
#include "bpv/errors.hpp"

namespace bpv {

void QuadratureSpec::validate() const {
    if (!(rel_tol > 0.0) || !(abs_tol > 0.0)) {
        throw DomainError("quadrature tolerances must be positive");
    }
    if (max_depth < 1) {
        throw DomainError("quadrature max_depth must be at least 1");
    }
}

void RootSpec::validate() const {
    if (!(x_tol > 0.0)) {
        throw DomainError("root x_tol must be positive");
    }
    if (max_iter < 1) {
        throw DomainError("root max_iter must be at least 1");
    }
}

namespace {

struct Piece {
    double a;
    double b;
    double fa;
    double fm;
    double fb;
    double whole;
    bool tiny;  // no room for interior samples
};

double simpson(double a, double b, double fa, double fm, double fb) {
    return (b - a) / 6.0 * (fa + 4.0 * fm + fb);
}

class AdaptiveSimpson {
public:
    AdaptiveSimpson(const RealFunction& f, const QuadratureSpec& spec) : f_(f), spec_(spec) {}

    double refine(double a, double b, double fa, double fm, double fb, double whole, double eps,
                  int depth) const {
        const double m = 0.5 * (a + b);
        const double lm = 0.5 * (a + m);
        const double rm = 0.5 * (m + b);
        const double flm = f_(lm);
        const double frm = f_(rm);
        const double left = simpson(a, m, fa, flm, fm);
        const double right = simpson(m, b, fm, frm, fb);
        const double diff = left + right - whole;
        constexpr double noise = 64.0 * std::numeric_limits<double>::epsilon();
        if (std::abs(diff) <= 15.0 * eps || std::abs(diff) <= noise * std::abs(left + right)) {
            return left + right + diff / 15.0;
        }
        if (depth >= spec_.max_depth || !(a < lm && rm < b)) {
            std::ostringstream os;
            os << "adaptive quadrature did not converge on [" << a << ", " << b << "]";
            throw ConvergenceError(os.str(), a, b);
        }
        return refine(a, m, fa, flm, fm, left, 0.5 * eps, depth + 1) +
               refine(m, b, fm, frm, fb, right, 0.5 * eps, depth + 1);
    }

private:
    const RealFunction& f_;
    const QuadratureSpec& spec_;
};

}  // namespace

double integrate(const RealFunction& f, double a, double b, std::span<const double> breakpoints,
                 const QuadratureSpec& spec) {
    spec.validate();
    if (!(a <= b)) {
        throw DomainError("integration bounds must satisfy a <= b");
    }
    if (a == b) {
        return 0.0;
    }
    std::vector<double> cuts{a};
    for (double x : breakpoints) {
        if (x > a && x < b) cuts.push_back(x);
    }
    cuts.push_back(b);
    std::sort(cuts.begin(), cuts.end());
    cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());

    std::vector<Piece> pieces;
    pieces.reserve(cuts.size() - 1);
    double scale = 0.0;
    for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
        const double lo = cuts[i];
        const double hi = cuts[i + 1];
        const double inner_lo = std::nextafter(lo, hi);
        const double inner_hi = std::nextafter(hi, lo);
        Piece p{lo, hi, 0.0, f(0.5 * (lo + hi)), 0.0, 0.0, !(inner_lo < inner_hi)};
        if (!p.tiny) {
            p.fa = f(inner_lo);
            p.fb = f(inner_hi);
        } else {
            p.fa = p.fm;
            p.fb = p.fm;
        }
        p.whole = simpson(lo, hi, p.fa, p.fm, p.fb);
        scale += std::abs(p.whole);
        pieces.push_back(p);
    }

    const double total_eps = std::max(spec.abs_tol, spec.rel_tol * scale);
    const AdaptiveSimpson engine(f, spec);
    double sum = 0.0;
    for (const auto& p : pieces) {
        const double eps = total_eps * (p.b - p.a) / (b - a);
        if (p.tiny) {
            sum += p.whole;
            continue;
        }
        sum += engine.refine(p.a, p.b, p.fa, p.fm, p.fb, p.whole, eps, 1);
    }
    return sum;
}

BisectionResult bisect_bracket(const RealFunction& f, double a, double b, const RootSpec& spec) {
    spec.validate();
    if (a > b) std::swap(a, b);
    double fa = f(a);
    const double fb = f(b);
    if (!(fa * fb < 0.0)) {
        std::ostringstream os;
        os << "bisection needs a sign change on [" << a << ", " << b << "], got f(a)=" << fa
           << ", f(b)=" << fb;
        throw InvalidBracketError(os.str());
    }
    int iter = 0;
    while (b - a > spec.x_tol) {
        if (iter >= spec.max_iter) {
            throw ConvergenceError("bisection exhausted max_iter", a, b);
        }
        ++iter;
        const double m = 0.5 * (a + b);
        if (m <= a || m >= b) break;
        const double fm = f(m);
        if (fm == 0.0) {
            return {m, {m, m}, iter};
        }
        if ((fm < 0.0) == (fa < 0.0)) {
            a = m;
            fa = fm;
        } else {
            b = m;
        }
    }
    return {0.5 * (a + b), {a, b}, iter};
}

namespace {

struct Moments {
    double anchor;
    double mass;
    double moment;  // first moment about the anchor
};

Moments membership_moments(const InvestorProfile& profile, const MarketContext& ctx,
                           const QuadratureSpec& spec) {
    validate_pairing(profile, ctx.c0());
    const ScopeInterval s = scope(profile, ctx);
    const std::vector<double> cuts = membership_breakpoints(profile, ctx);
    const double delta = ctx.deviation();
    const auto& reference = profile.reference();
    auto mu = [&](double p) {
        if (!s.contains(p)) return 0.0;
        return acceptance(reference, delta, standardize(s, p));
    };
    const double mass = integrate(mu, s.lo, s.hi, cuts, spec);
    const double moment =
        integrate([&](double p) { return (p - s.anchor) * mu(p); }, s.lo, s.hi, cuts, spec);
    if (!(mass >= spec.abs_tol)) {
        throw DegenerateMassError("membership mass below abs_tol; centroid undefined");
    }
    return {s.anchor, mass, moment};
}

}  // namespace

double average_ppv(const InvestorProfile& profile, const MarketContext& ctx, const QuadratureSpec& spec) {
    const Moments m = membership_moments(profile, ctx, spec);
    return m.anchor + m.moment / m.mass;
}

double stance_gap(const InvestorProfile& profile, const MarketContext& ctx, const QuadratureSpec& spec) {
    const Moments m = membership_moments(profile, ctx, spec);
    return m.moment / m.mass;
}

double stance_gap(const InvestorProfile& profile, double c0, double delta, const QuadratureSpec& spec) {
    return stance_gap(profile, MarketContext::at_deviation(c0, delta), spec);
}

Bracket threshold_scan_range(const InvestorProfile& profile, double c0, const ThresholdScan& scan) {
    if (!(scan.step > 0.0)) {
        throw DomainError("threshold scan step must be positive");
    }
    const RegimeBounds bounds = regime_bounds(profile, c0);
    double lo = bounds.lower;
    if (!(c0 + lo > 0.0)) {
        lo = -c0 + scan.step;
    }
    const double hi = std::isfinite(bounds.upper) ? bounds.upper : scan.unbounded_upper.value_or(c0);
    return {lo, hi};
}

std::vector<StanceThreshold> find_stance_thresholds(const InvestorProfile& profile, double c0,
                                                    const RootSpec& root_spec,
                                                    const QuadratureSpec& quad_spec,
                                                    const ThresholdScan& scan) {
    root_spec.validate();
    quad_spec.validate();
    const Bracket range = threshold_scan_range(profile, c0, scan);
    if (!(range.lo < range.hi)) {
        return {};
    }
    auto gap = [&](double delta) { return stance_gap(profile, c0, delta, quad_spec); };

    const auto cells = static_cast<std::size_t>(std::ceil((range.hi - range.lo) / scan.step));
    std::vector<double> xs(cells + 1);
    for (std::size_t i = 0; i < cells; ++i) {
        xs[i] = range.lo + scan.step * static_cast<double>(i);
    }
    xs[cells] = range.hi;
    std::vector<double> gs(xs.size());
    std::transform(xs.begin(), xs.end(), gs.begin(), gap);

    std::vector<StanceThreshold> roots;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        if (gs[i] == 0.0) {
            roots.push_back({xs[i], 0.0, {xs[i], xs[i]}});
            continue;
        }
        if (i + 1 < xs.size() && gs[i] * gs[i + 1] < 0.0) {
            const BisectionResult r = bisect_bracket(gap, xs[i], xs[i + 1], root_spec);
            roots.push_back({r.root, gap(r.root), r.bracket});
        }
    }
    return roots;
}

double solve_stance_threshold(const InvestorProfile& profile, double c0, std::optional<Bracket> bracket,
                              const RootSpec& root_spec, const QuadratureSpec& quad_spec,
                              const ThresholdScan& scan) {
    if (bracket) {
        auto gap = [&](double delta) { return stance_gap(profile, c0, delta, quad_spec); };
        return bisect(gap, bracket->lo, bracket->hi, root_spec);
    }
    const auto roots = find_stance_thresholds(profile, c0, root_spec, quad_spec, scan);
    if (roots.empty()) {
        throw NoSignChangeError("stance gap keeps one sign over the scanned deviation range");
    }
    return roots.front().delta;
}

}  // namespace bpv
