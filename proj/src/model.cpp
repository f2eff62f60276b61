#include "cscool/model.hpp"

#include <cmath>

namespace cscool {

Model build_model(const SystemConfig& cfg) {
    cfg.validate();

    Model m;
    m.cfg = cfg;
    m.prm = derive_params(cfg);
    m.pv = pv_constants(m.prm);

    DetuningSolution sol =
        cfg.detuning_mode == DetuningMode::Target
            ? invert_detuning(m.prm, m.pv, cfg.detuning)
            : solve_at_bare_detuning(m.prm, m.pv, cfg.detuning);
    m.delta_tilde = sol.delta_tilde;
    m.detuning_iterations = sol.iterations;
    m.disp = sol.disp;
    m.mc = sol.mc;

    m.nr = heating_rates(m.prm, m.mc);
    m.mc.gamma_gas = m.nr.gamma;

    if (!m.pv.pole_inside)
        m.warnings.push_back("PoleOutsideCutoff");
    if (m.disp.ambiguous_root)
        m.warnings.push_back("AmbiguousRoot");
    if (!m.mc.include_upsilon &&
        std::abs(m.mc.Upsilon) > 0.01 * std::abs(m.mc.g_prime[2]))
        m.warnings.push_back("UpsilonTruncated");

    return m;
}

} // namespace cscool
