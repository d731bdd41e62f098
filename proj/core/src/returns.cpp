#include "bpv/returns.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>

#include "bpv/errors.hpp"

namespace bpv {

const char* to_string(ReturnKind kind) noexcept {
    switch (kind) {
        case ReturnKind::Simple: return "simple";
        case ReturnKind::Logarithmic: return "logarithmic";
    }
    return "unknown";
}

double return_rate(ReturnKind kind, double v0, double vt) {
    if (!(v0 > 0.0) || !(vt > 0.0)) {
        throw DomainError("return rate needs positive present and future values");
    }
    switch (kind) {
        case ReturnKind::Simple: return vt / v0 - 1.0;
        case ReturnKind::Logarithmic: return std::log(vt / v0);
    }
    throw DomainError("unknown return kind");
}

double invert_present_value(ReturnKind kind, double r, double vt) {
    if (!(vt > 0.0)) {
        throw DomainError("future value must be positive");
    }
    switch (kind) {
        case ReturnKind::Simple:
            if (!(r > -1.0)) {
                throw DomainError("simple return rate must exceed -1");
            }
            return vt / (1.0 + r);
        case ReturnKind::Logarithmic:
            if (!std::isfinite(r)) {
                throw DomainError("logarithmic return rate must be finite");
            }
            return vt * std::exp(-r);
    }
    throw DomainError("unknown return kind");
}

double hiroto_membership(const MembershipCurve& curve, ReturnKind kind, double vt, double r) {
    double present = invert_present_value(kind, r, vt);
    if (!(present > 0.0) || !std::isfinite(present)) {
        return 0.0;
    }
    // rate and inversion round-trip only to a few ulps, while the anchor can
    // be an isolated point of full membership (jump on the unboosted side).
    const double anchor = curve.scope().anchor;
    if (std::abs(present - anchor) <= 4.0 * std::numeric_limits<double>::epsilon() * anchor) {
        present = anchor;
    }
    return curve(present);
}

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

}  // namespace

std::mt19937_64 scenario_stream(std::uint64_t seed, std::size_t index) {
    return std::mt19937_64(splitmix64(seed ^ splitmix64(static_cast<std::uint64_t>(index))));
}

FutureValueModel::FutureValueModel(Sampler sampler, std::optional<Cdf> cdf)
    : sampler_(std::move(sampler)), cdf_(std::move(cdf)) {
    if (!sampler_) {
        throw DomainError("future value model needs a sampler");
    }
}

FutureValueModel FutureValueModel::point_mass(double value) {
    if (!(value > 0.0) || !std::isfinite(value)) {
        throw DomainError("point mass future value must be positive");
    }
    return FutureValueModel([value](std::mt19937_64&) { return value; },
                            [value](double x) { return x >= value ? 1.0 : 0.0; });
}

FutureValueModel FutureValueModel::lognormal(double location, double scale) {
    if (!std::isfinite(location) || !(scale > 0.0) || !std::isfinite(scale)) {
        throw DomainError("lognormal needs a finite location and a positive scale");
    }
    auto sampler = [location, scale](std::mt19937_64& rng) {
        std::normal_distribution<double> z(0.0, 1.0);
        return std::exp(location + scale * z(rng));
    };
    auto cdf = [location, scale](double x) {
        if (!(x > 0.0)) return 0.0;
        return 0.5 * std::erfc(-(std::log(x) - location) / (scale * std::sqrt(2.0)));
    };
    return FutureValueModel(sampler, cdf);
}

FutureValueModel FutureValueModel::empirical(std::vector<std::pair<double, double>> atoms) {
    if (atoms.empty()) {
        throw DomainError("empirical future value model needs at least one atom");
    }
    double total = 0.0;
    for (const auto& [value, weight] : atoms) {
        if (!(value > 0.0) || !std::isfinite(value) || !(weight >= 0.0) || !std::isfinite(weight)) {
            throw DomainError("empirical atoms need positive values and non-negative weights");
        }
        total += weight;
    }
    if (!(total > 0.0)) {
        throw DomainError("empirical weights must have a positive total");
    }
    std::vector<double> weights;
    weights.reserve(atoms.size());
    for (const auto& atom : atoms) weights.push_back(atom.second);

    auto sampler = [atoms, weights](std::mt19937_64& rng) {
        std::discrete_distribution<std::size_t> pick(weights.begin(), weights.end());
        return atoms[pick(rng)].first;
    };
    auto cdf = [atoms, total](double x) {
        double below = 0.0;
        for (const auto& [value, weight] : atoms) {
            if (value <= x) below += weight;
        }
        return below / total;
    };
    return FutureValueModel(sampler, cdf);
}

HirotoSet sample_hiroto(const MembershipCurve& curve, const FutureValueModel& model, ReturnKind kind,
                        std::span<const double> r_grid, std::size_t n_scenarios, std::uint64_t seed) {
    if (n_scenarios == 0) {
        throw DomainError("at least one scenario is required");
    }
    if (r_grid.empty()) {
        throw DomainError("return grid must not be empty");
    }
    for (std::size_t i = 1; i < r_grid.size(); ++i) {
        if (!(r_grid[i - 1] < r_grid[i])) {
            throw DomainError("return grid must be strictly increasing");
        }
    }
    if (kind == ReturnKind::Simple && !(r_grid.front() > -1.0)) {
        throw DomainError("simple return grid must lie above -1");
    }

    HirotoSet out;
    out.r_grid.assign(r_grid.begin(), r_grid.end());
    out.seed = seed;
    out.scenarios.reserve(n_scenarios);
    for (std::size_t i = 0; i < n_scenarios; ++i) {
        auto rng = scenario_stream(seed, i);
        double vt = 0.0;
        try {
            vt = model.sample(rng);
        } catch (const std::exception& e) {
            throw SamplingError("scenario " + std::to_string(i) + ": sampler failed: " + e.what(), i);
        }
        if (!(vt > 0.0) || !std::isfinite(vt)) {
            throw SamplingError("scenario " + std::to_string(i) + ": future value must be positive", i);
        }
        HirotoScenario scenario{vt, {}};
        scenario.membership.reserve(r_grid.size());
        for (double r : r_grid) {
            scenario.membership.push_back(hiroto_membership(curve, kind, vt, r));
        }
        out.scenarios.push_back(std::move(scenario));
    }
    return out;
}

HirotoSet sample_hiroto(const InvestorProfile& profile, const MarketContext& ctx,
                        const FutureValueModel& model, ReturnKind kind, std::span<const double> r_grid,
                        std::size_t n_scenarios, std::uint64_t seed) {
    return sample_hiroto(MembershipCurve::from_profile(profile, ctx, 2), model, kind, r_grid, n_scenarios,
                         seed);
}

std::vector<double> expected_membership(const HirotoSet& set) {
    if (set.scenarios.empty()) {
        throw DomainError("expected membership of an empty Hiroto set");
    }
    std::vector<double> mean(set.r_grid.size(), 0.0);
    for (const auto& scenario : set.scenarios) {
        for (std::size_t j = 0; j < mean.size(); ++j) {
            mean[j] += scenario.membership[j];
        }
    }
    const auto n = static_cast<double>(set.scenarios.size());
    for (double& m : mean) {
        m = std::clamp(m / n, 0.0, 1.0);
    }
    return mean;
}

std::function<double(double)> future_value_cdf(std::function<double(double)> return_cdf,
                                               double market_price, ReturnKind kind) {
    if (!return_cdf) {
        throw DomainError("return-rate CDF is required");
    }
    if (!(market_price > 0.0) || !std::isfinite(market_price)) {
        throw DomainError("market price must be positive");
    }
    return [cdf = std::move(return_cdf), market_price, kind](double x) {
        if (!(x > 0.0)) {
            throw DomainError("future value must be positive");
        }
        return cdf(return_rate(kind, market_price, x));
    };
}

}  // namespace bpv
