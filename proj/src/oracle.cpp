#include "cvac/oracle.hpp"

#include "cvac/errors.hpp"
#include "cvac/normal.hpp"

#include <cmath>
#include <vector>

namespace cvac {

namespace {

struct Moments {
    double n = 0.0;
    double mean = 0.0;
    double m2 = 0.0;

    void add(double x) {
        n += 1.0;
        const double delta = x - mean;
        mean += delta / n;
        m2 += delta * (x - mean);
    }

    void merge(const Moments& o) {
        if (o.n == 0.0) return;
        if (n == 0.0) {
            *this = o;
            return;
        }
        const double total = n + o.n;
        const double delta = o.mean - mean;
        mean += delta * (o.n / total);
        m2 += o.m2 + delta * delta * (n * o.n / total);
        n = total;
    }
};

// Runs path_value(stream) for every path, one independent stream per block.
template <class PathFn>
McEstimate simulate(const SimConfig& cfg, Execution exec, PathFn&& path_value) {
    cfg.validate();
    const auto n_blocks = static_cast<long>((cfg.n_paths + kPathsPerBlock - 1) / kPathsPerBlock);
    std::vector<Moments> blocks(static_cast<std::size_t>(n_blocks));

    auto run_block = [&](long b) {
        const auto first = static_cast<std::uint64_t>(b) * kPathsPerBlock;
        const auto count = std::min(kPathsPerBlock, cfg.n_paths - first);
        NormalStream stream(cfg.seed, static_cast<std::uint64_t>(b));
        Moments m;
        for (std::uint64_t i = 0; i < count; ++i) {
            m.add(path_value(stream));
        }
        blocks[static_cast<std::size_t>(b)] = m;
    };

    if (exec == Execution::serial) {
        for (long b = 0; b < n_blocks; ++b) run_block(b);
    } else {
#pragma omp parallel for schedule(static)
        for (long b = 0; b < n_blocks; ++b) run_block(b);
    }

    Moments total;
    for (const auto& m : blocks) total.merge(m);

    McEstimate out;
    out.n_paths = cfg.n_paths;
    out.estimate = total.mean;
    out.std_error = total.n > 1.0 ? std::sqrt(total.m2 / (total.n - 1.0) / total.n) : 0.0;
    return out;
}

} // namespace

void SimConfig::validate() const {
    if (n_paths < 1) {
        throw ConfigError("simulation: n_paths must be >= 1");
    }
    if (!(std::abs(correlation) <= 1.0)) {
        throw ConfigError("simulation: correlation must be in [-1, 1]");
    }
    if (!(spread_vol >= 0.0) || (rate_vol && !(*rate_vol >= 0.0))) {
        throw ConfigError("simulation: vols must be >= 0");
    }
}

std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

NormalStream::NormalStream(std::uint64_t seed, std::uint64_t block)
    : engine_(splitmix64(seed + block * 0x9e3779b97f4a7c15ULL)) {}

double NormalStream::next() {
    // 53-bit uniform on the open interval (0, 1)
    const double u = (static_cast<double>(engine_() >> 11) + 0.5) * 0x1.0p-53;
    return norm_inv_cdf(u);
}

McEstimate mc_expected_positive_part(double forward, double strike, double vol, double expiry,
                                     const SimConfig& cfg, OptionSide side, Execution exec) {
    if (!(forward > 0.0) || !(strike >= 0.0) || !(vol >= 0.0) || !(expiry >= 0.0)) {
        throw DomainError("mc_expected_positive_part: need F > 0, K >= 0, vol >= 0, expiry >= 0");
    }
    const double drift = -0.5 * vol * vol * expiry;
    const double diffusion = vol * std::sqrt(expiry);
    return simulate(cfg, exec, [&](NormalStream& z) {
        const double s = forward * std::exp(drift + diffusion * z.next());
        return side == OptionSide::payer ? std::max(s - strike, 0.0) : std::max(strike - s, 0.0);
    });
}

McEstimate mc_swap_funding_exact(const SwapSpec& spec, const CurveSet& curves, const VolCube& cube,
                                 const FundingCurve& funding, const SimConfig& cfg, Direction side,
                                 bool atm_only, Execution exec) {
    struct Roll {
        double weight;  // tau * A
        double forward;
        double strike;
        double foo;
        double rate_drift, rate_diffusion;
        double spread_drift, spread_diffusion;
    };
    const OptionSide exposure = collateral_option(side);
    std::vector<Roll> rolls;
    for (const auto& r : roll_exposures(spec, curves, cube, atm_only)) {
        const double vol = cfg.rate_vol.value_or(r.vol);
        Roll x;
        x.weight = spec.tenor * r.annuity;
        x.forward = r.forward;
        x.strike = spec.fixed_rate;
        x.foo = funding.foo(r.time);
        x.rate_drift = -0.5 * vol * vol * r.time;
        x.rate_diffusion = vol * std::sqrt(r.time);
        x.spread_drift = -0.5 * cfg.spread_vol * cfg.spread_vol * r.time;
        x.spread_diffusion = cfg.spread_vol * std::sqrt(r.time);
        rolls.push_back(x);
    }
    const double rho = cfg.correlation;
    const double rho_perp = std::sqrt(std::max(0.0, 1.0 - rho * rho));

    return simulate(cfg, exec, [&](NormalStream& z) {
        double total = 0.0;
        for (const auto& r : rolls) {
            const double z1 = z.next();
            const double z2 = z.next();
            const double s = r.forward * std::exp(r.rate_drift + r.rate_diffusion * z1);
            const double foo = r.foo * std::exp(r.spread_drift + r.spread_diffusion * (rho * z1 + rho_perp * z2));
            const double payoff =
                exposure == OptionSide::payer ? std::max(s - r.strike, 0.0) : std::max(r.strike - s, 0.0);
            total += r.weight * foo * payoff;
        }
        return total;
    });
}

} // namespace cvac
