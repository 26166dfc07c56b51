#include "quad.hpp"

#include <gsl/gsl_errno.h>
#include <gsl/gsl_integration.h>

#include <cmath>
#include <memory>
#include <mutex>
#include <vector>

namespace duplexem::detail {

namespace {

struct GlRule {
    std::vector<double> x, w;  // on [-1, 1]
};

const GlRule& rule(int order) {
    static std::mutex mu;
    static std::vector<std::unique_ptr<GlRule>> cache(64);
    std::lock_guard<std::mutex> lock(mu);
    auto& slot = cache[static_cast<std::size_t>(order)];
    if (!slot) {
        auto r = std::make_unique<GlRule>();
        gsl_integration_glfixed_table* t = gsl_integration_glfixed_table_alloc(static_cast<std::size_t>(order));
        for (int i = 0; i < order; ++i) {
            double xi = 0, wi = 0;
            gsl_integration_glfixed_point(-1.0, 1.0, static_cast<std::size_t>(i), &xi, &wi, t);
            r->x.push_back(xi);
            r->w.push_back(wi);
        }
        gsl_integration_glfixed_table_free(t);
        slot = std::move(r);
    }
    return *slot;
}

cplx composite(const std::function<cplx(double)>& f, double a, double b, int panels, const GlRule& r) {
    cplx sum = 0.0;
    const double h = (b - a) / panels;
    for (int p = 0; p < panels; ++p) {
        const double lo = a + p * h;
        const double mid = lo + 0.5 * h;
        for (std::size_t i = 0; i < r.x.size(); ++i) sum += r.w[i] * f(mid + 0.5 * h * r.x[i]);
    }
    return sum * (0.5 * h);
}

double trampoline(double x, void* p) { return (*static_cast<const std::function<double(double)>*>(p))(x); }

}  // namespace

cplx gl_integrate(const std::function<cplx(double)>& f, double a, double b, int min_panels, double tol, int order) {
    if (a == b) return 0.0;
    const GlRule& r = rule(order);
    int panels = std::max(1, min_panels);
    cplx prev = composite(f, a, b, panels, r);
    for (int it = 0; it < 200; ++it) {
        ++panels;
        const cplx next = composite(f, a, b, panels, r);
        if (std::abs(next - prev) <= tol * std::max(1.0, std::abs(next))) return next;
        prev = next;
    }
    throw NumericError("gl_integrate: no convergence");
}

double adaptive_integrate(const std::function<double(double)>& f, double a, double b, double epsabs, double epsrel) {
    static thread_local std::unique_ptr<gsl_integration_workspace, decltype(&gsl_integration_workspace_free)> ws(
        gsl_integration_workspace_alloc(2000), &gsl_integration_workspace_free);
    gsl_error_handler_t* old = gsl_set_error_handler_off();
    gsl_function F;
    F.function = &trampoline;
    F.params = const_cast<std::function<double(double)>*>(&f);
    double result = 0, err = 0;
    int status = gsl_integration_qags(&F, a, b, epsabs, epsrel, 2000, ws.get(), &result, &err);
    gsl_set_error_handler(old);
    if (status != GSL_SUCCESS && status != GSL_EROUND)
        throw NumericError(std::string("adaptive_integrate: ") + gsl_strerror(status));
    return result;
}

}  // namespace duplexem::detail
