#include "outerlab/config.hpp"

#include <cstdlib>
#include <string>

namespace outerlab {

Config& config() {
  static Config cfg;
  return cfg;
}

void apply_env_config() {
  if (const char* env = std::getenv("OUTERLAB_MAX_ORDER")) {
    try {
      int v = std::stoi(env);
      if (v > 0) {
        config().group_order_cap = v;
        config().analysis_order_cap = v;
      }
    } catch (...) {
      // ignore unparseable values
    }
  }
}

} // namespace outerlab
