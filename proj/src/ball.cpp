#include "plcap/ball.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace plcap {

double unit_ball_volume(int k) {
    if (k <= 0) throw std::domain_error("unit_ball_volume: k >= 1 required");
    return std::pow(std::numbers::pi, 0.5 * k) / std::tgamma(0.5 * k + 1.0);
}

double unit_sphere_area(int k) {
    if (k <= 0) throw std::domain_error("unit_sphere_area: k >= 1 required");
    return 2.0 * std::pow(std::numbers::pi, 0.5 * k) / std::tgamma(0.5 * k);
}

}  // namespace plcap
