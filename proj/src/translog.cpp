#include "dlgrowth/translog.hpp"

#include <cmath>

#include "dlgrowth/errors.hpp"

namespace dlgrowth::econ {

TranslogResult translog_sigma(std::span<const ExperimentRecord> records,
                              const RegressionSpec& spec) {
    RegressionSpec quad_spec = spec;
    quad_spec.translog = true;
    const Design design = build_design(records, quad_spec);

    TranslogResult out;
    out.fit = ols_robust(design.y, design.X, design.names);
    out.fit.warnings.insert(out.fit.warnings.end(), design.warnings.begin(),
                            design.warnings.end());

    const double curvature = out.fit.coefficient(kQuad);
    const double gb = out.fit.coefficient(kLogS) * out.fit.coefficient(kLogC);
    if (gb <= 0.0) {
        out.sigma_defined = false;
        out.flags.push_back("gammahat * betahat <= 0: sigma undefined");
        return out;
    }
    out.rho = curvature / gb;
    if (std::abs(out.rho) > 0.9)
        out.flags.push_back("|rho| near 1: sigma estimate unstable");
    if (std::abs(1.0 - out.rho) < 1e-8) {
        out.sigma_defined = false;
        out.flags.push_back("rho at the sigma pole: sigma undefined");
        return out;
    }
    out.sigma = 1.0 / (1.0 - out.rho);
    return out;
}

}  // namespace dlgrowth::econ
