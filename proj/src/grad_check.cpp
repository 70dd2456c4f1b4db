#include "sdcn/grad_check.hpp"

#include <cmath>

#include "sdcn/errors.hpp"

namespace sdcn {

namespace {

double evaluate(const LossBuilder& build, const std::vector<DenseMatrix>& params) {
    GradTape tape;
    std::vector<GradTape::Var> vars;
    vars.reserve(params.size());
    for (const DenseMatrix& p : params) vars.push_back(tape.leaf(p));
    const GradTape::Var loss = build(tape, vars);
    const double v = tape.value(loss)(0, 0);
    if (!std::isfinite(v)) throw NumericError("grad_check: non-finite loss");
    return v;
}

}  // namespace

double grad_check(const LossBuilder& build, std::vector<DenseMatrix> params, double step) {
    if (!(step >= 1e-6 && step <= 1e-4))
        throw ParameterError("grad_check: step must lie in [1e-6, 1e-4]");

    std::vector<DenseMatrix> analytic;
    {
        GradTape tape;
        std::vector<GradTape::Var> vars;
        vars.reserve(params.size());
        for (const DenseMatrix& p : params) vars.push_back(tape.leaf(p));
        const GradTape::Var loss = build(tape, vars);
        if (!std::isfinite(tape.value(loss)(0, 0)))
            throw NumericError("grad_check: non-finite loss");
        tape.backward(loss);
        for (const GradTape::Var v : vars) analytic.push_back(tape.grad(v));
    }

    double max_rel_err = 0.0;
    for (std::size_t p = 0; p < params.size(); ++p) {
        for (std::size_t i = 0; i < params[p].size(); ++i) {
            const double saved = params[p].data()[i];
            params[p].data()[i] = saved + step;
            const double plus = evaluate(build, params);
            params[p].data()[i] = saved - step;
            const double minus = evaluate(build, params);
            params[p].data()[i] = saved;

            const double central = (plus - minus) / (2.0 * step);
            const double rel =
                std::abs(analytic[p].data()[i] - central) / std::max(1.0, std::abs(central));
            max_rel_err = std::max(max_rel_err, rel);
        }
    }
    return max_rel_err;
}

}  // namespace sdcn
