#pragma once

#include "cvac/curves.hpp"
#include "cvac/funding.hpp"
#include "cvac/volatility.hpp"

#include <cstdint>
#include <optional>
#include <random>

namespace cvac {

/// Monte Carlo configuration.
///
/// Paths are generated in fixed blocks of kPathsPerBlock. Block b draws from
/// std::mt19937_64 seeded with splitmix64(seed + b * golden_gamma), and
/// uniforms are mapped to normals with norm_inv_cdf. Block statistics are
/// merged in block order, so estimates are bit-identical for any thread count.
struct SimConfig {
    std::uint64_t n_paths = 100000;
    std::uint64_t seed = 42;
    double correlation = 0.0;  // swap-rate driver vs funding-spread driver
    std::optional<double> rate_vol;  // overrides the cube vol when set
    double spread_vol = 0.0;

    void validate() const;
};

inline constexpr std::uint64_t kPathsPerBlock = 4096;

struct McEstimate {
    double estimate = 0.0;
    double std_error = 0.0;
    std::uint64_t n_paths = 0;
};

/// Deterministic normal stream for one block.
class NormalStream {
public:
    NormalStream(std::uint64_t seed, std::uint64_t block);
    double next();

private:
    std::mt19937_64 engine_;
};

std::uint64_t splitmix64(std::uint64_t x);

/// E[(S_T - K)+] (or (K - S_T)+) with S_T = F exp(-vol^2 T / 2 + vol sqrt(T) Z).
McEstimate mc_expected_positive_part(double forward, double strike, double vol, double expiry,
                                     const SimConfig& cfg, OptionSide side = OptionSide::payer,
                                     Execution exec = Execution::parallel);

/// Exact funding cost: sum over roll dates of tau * A * E[FOO(T_a) * exposure(S(T_a))]
/// with S and FOO jointly lognormal around their forwards, correlated by
/// cfg.correlation. Roll dates are simulated independently.
McEstimate mc_swap_funding_exact(const SwapSpec& spec, const CurveSet& curves, const VolCube& cube,
                                 const FundingCurve& funding, const SimConfig& cfg, Direction side,
                                 bool atm_only = false, Execution exec = Execution::parallel);

} // namespace cvac
