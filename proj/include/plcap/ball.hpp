#pragma once

#include <cmath>

#include "plcap/ambient.hpp"

namespace plcap {

// Volume of the unit euclidean ball in R^k.
double unit_ball_volume(int k);

// Surface measure of the unit sphere S^{k-1} in R^k.
double unit_sphere_area(int k);

// Closed euclidean ball inside a generic subspace G (all of C^n when m = n).
struct Ball {
    RVec center;
    double radius = 1.0;
    AmbientSpace space;

    Ball() = default;
    Ball(RVec c, double r, AmbientSpace sp) : center(std::move(c)), radius(r), space(sp) {
        if (radius <= 0.0) throw std::invalid_argument("Ball: radius must be positive");
        if ((int)center.size() != space.real_dim())
            throw std::invalid_argument("Ball: center dimension mismatch");
    }

    static Ball unit(AmbientSpace sp) {
        return Ball(RVec((size_t)sp.real_dim(), 0.0), 1.0, sp);
    }

    double volume() const {
        return unit_ball_volume(space.real_dim()) *
               std::pow(radius, (double)space.real_dim());
    }

    bool contains(std::span<const double> x) const {
        return sq_dist(x, center) <= radius * radius;
    }
};

}  // namespace plcap
