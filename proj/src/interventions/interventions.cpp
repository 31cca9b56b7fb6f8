#include "csac/interventions/interventions.hpp"

namespace csac::interventions {

void network_reset(SacAgent& agent, NetResetVariant variant, Rng& init_rng) {
  if (variant == NetResetVariant::None) return;
  agent.reinit_networks(init_rng);
  switch (variant) {
    case NetResetVariant::ResetAlpha:
      agent.log_alpha = std::log(init_rng.uniform(0.01, 1.0));
      agent.alpha_opt = agent::ScalarAdam{};
      agent.alpha_tuning_paused = true;
      break;
    case NetResetVariant::ResetTargetEntropy: {
      const auto dim = static_cast<double>(agent.cfg.action_dim);
      agent.target_entropy = init_rng.uniform(-dim, 0.675 * dim);
      break;
    }
    default:
      break;  // Plain: temperature untouched
  }
}

}  // namespace csac::interventions
