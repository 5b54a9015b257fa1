#include "evaluate.hpp"

#include "closed_form.hpp"
#include "errors.hpp"
#include "inductive.hpp"
#include "oracle.hpp"
#include "repeated.hpp"

namespace ccnorm {

namespace {

EvalResult via_laplace(const NaturalParams& eta, InversionMethod m, InversionSettings settings)
{
    settings.method = m;
    return norm_const_laplace(eta, settings);
}

} // namespace

EvalResult evaluate(const NaturalParams& eta, Method method, const EvalOptions& options)
{
    switch (method) {
    case Method::closed_binary32: return norm_const_closed(eta, Precision::binary32);
    case Method::closed_binary64: return norm_const_closed(eta, Precision::binary64);
    case Method::logsumexp: {
        const SignedLog s = log_norm_const_signed(eta);
        EvalResult r = make_result(s.log_abs, s.sign, Method::logsumexp, PrecisionTag::of(Precision::binary64));
        r.diagnostics = cancellation_diagnostics(eta);
        return r;
    }
    case Method::inductive:
        return norm_const_inductive(eta, OrderingStrategy::as_given(), Precision::binary64);
    case Method::dehoog: return via_laplace(eta, InversionMethod::dehoog, options.inversion);
    case Method::stehfest: return via_laplace(eta, InversionMethod::stehfest, options.inversion);
    case Method::talbot: return via_laplace(eta, InversionMethod::talbot, options.inversion);
    case Method::oracle: return norm_const_oracle(eta);
    case Method::quadrature:
        return make_result(norm_const_quadrature(eta, options.quadrature_tol), Method::quadrature,
                           PrecisionTag::of(Precision::binary64));
    case Method::repeated: {
        const auto full = eta.full();
        return norm_const_repeated(collapse_params(full, options.tie_tol));
    }
    }
    fail(ErrorCode::invalid_argument, "unknown method");
}

} // namespace ccnorm
