#include "latq/metrics.hpp"

#include <cmath>
#include <stdexcept>

namespace latq {

double rho(double x, double y, int q) {
    double d = std::fabs(x - y);
    double a = d * d;
    double b = (d - q) * (d - q);
    return a < b ? a : b;
}

ScalarQuant scalar_index(double x, int c, int q) {
    double t = (x - c) / q;
    long long b = std::llround(t);  // rounds half away from zero
    double e = x - c - static_cast<double>(q) * b;
    return {b, e * e};
}

double ezz_transform(double x, double delta) {
    if (x > delta) return x - delta;
    if (x < -delta) return x + delta;
    return 0.0;
}

CostTable build_metric_table(const std::vector<double>& x, int q, double delta) {
    if (delta < 0) throw std::invalid_argument("delta must be >= 0");
    CostTable t;
    t.q = q;
    t.n = static_cast<int>(x.size());
    t.cost.resize(x.size() * q);
    t.bidx.resize(x.size() * q);
    for (size_t i = 0; i < x.size(); ++i) {
        double xi = ezz_transform(x[i], delta);
        for (int c = 0; c < q; ++c) {
            ScalarQuant s = scalar_index(xi, c, q);
            t.cost[i * q + c] = s.mu;
            t.bidx[i * q + c] = static_cast<int32_t>(s.b);
        }
    }
    return t;
}

CostTable build_rho_table(const std::vector<double>& x, int q) {
    CostTable t;
    t.q = q;
    t.n = static_cast<int>(x.size());
    t.cost.resize(x.size() * q);
    for (size_t i = 0; i < x.size(); ++i)
        for (int c = 0; c < q; ++c) t.cost[i * q + c] = rho(x[i], c, q);
    return t;
}

}  // namespace latq
