#pragma once

namespace vkg {

inline constexpr int kMaxBesselOrder = 3;
inline constexpr double kBesselSeriesSwitch = 8.0;
inline constexpr int kBesselSeriesTerms = 30;

/// J_k(ξ)/ξ^k for k ∈ {0,1,2,3} and ξ ≥ 0. The removable singularity at
/// ξ = 0 takes the value 1/(2^k k!); k = 0 gives J₀(ξ).
/// Throws std::domain_error for ξ < 0 or an unsupported order.
double bessel_ratio(int k, double xi);

/// Same as bessel_ratio but taking z = ξ². J_k(√z)/√z^k is an entire
/// function of z, which is what the retarded integrals actually need.
double bessel_ratio_sq(int k, double xi_sq);

}  // namespace vkg
