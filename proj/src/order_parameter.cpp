#include "ksync/order_parameter.hpp"

#include <cmath>
#include <stdexcept>

namespace ksync {

OrderParameter order_parameter(std::span<const double> phases) {
    if (phases.empty()) throw std::invalid_argument("order_parameter requires a nonempty phase vector");
    double c = 0.0;
    double s = 0.0;
    for (const double theta : phases) {
        c += std::cos(theta);
        s += std::sin(theta);
    }
    const double inv_n = 1.0 / static_cast<double>(phases.size());
    c *= inv_n;
    s *= inv_n;
    OrderParameter op;
    op.R = std::hypot(c, s);
    op.psi = (op.R < 1e-12) ? 0.0 : std::atan2(s, c);
    if (op.psi <= -3.14159265358979323846 && op.R >= 1e-12) op.psi = 3.14159265358979323846;
    return op;
}

}  // namespace ksync
