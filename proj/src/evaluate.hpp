#pragma once

#include "laplace.hpp"
#include "params.hpp"

namespace ccnorm {

struct EvalOptions {
    InversionSettings inversion;
    double tie_tol = 0.0;
    double quadrature_tol = 1e-8;
};

/// C(eta) by the named backend. Inversion methods ignore options.inversion.method.
EvalResult evaluate(const NaturalParams& eta, Method method, const EvalOptions& options = {});

} // namespace ccnorm
