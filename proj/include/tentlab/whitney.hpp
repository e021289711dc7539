#pragma once

#include "tentlab/balls.hpp"

#include <vector>

namespace tentlab {

/// Torus distance from every grid point to the nearest point of the set,
/// via a separable exact squared-distance transform. +inf if the set is empty.
std::vector<double> distance_to_set(const Grid& grid, const std::vector<char>& set);

/// Periodic dyadic cube: side grid points per axis starting at corner.
struct WhitneyCube {
    Index corner{};
    int side = 1;
    double diameter = 0.0;  ///< ((side−1)√n + 1)·h
    double distance = 0.0;  ///< distance from the cube to the complement
    Ball ball;              ///< circumscribed ball scaled by 3
};

struct WhitneyCover {
    std::vector<WhitneyCube> cubes;
    std::vector<int> owner;  ///< cube index per grid point, −1 outside the set
    int violations = 0;      ///< cubes failing diam ≤ dist ≤ 4·diam

    std::vector<std::size_t> members(const Grid& grid, std::size_t cube) const;
};

/// Greedy largest-first partition of a proper nonempty set into periodic
/// dyadic cubes with diam(Q) ≤ dist(Q, complement) ≤ 4·diam(Q).
///
/// Single points left after the smallest scale are always taken; any
/// that miss the sandwich are counted in violations.
WhitneyCover whitney_decompose(const Grid& grid, const std::vector<char>& mask);

}  // namespace tentlab
