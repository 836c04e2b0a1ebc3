#ifndef OUTERLAB_CONFIG_HPP
#define OUTERLAB_CONFIG_HPP

namespace outerlab {

/// Size caps. Values are configuration, not hard limits of the algorithms.
struct Config {
  /// Largest group order accepted by group construction (including
  /// permutation closure and automorphism enumeration).
  int group_order_cap = 48;
  /// Largest base-group order accepted by the automorphism-dependent
  /// analyses (A_K search, beta search, outer-class enumeration).
  int analysis_order_cap = 24;
};

/// Mutable process-wide configuration.
Config& config();

/// Applies the OUTERLAB_MAX_ORDER environment variable, if set, to both caps.
void apply_env_config();

} // namespace outerlab

#endif
