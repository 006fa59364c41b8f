#pragma once

// Hand-built configurations with a known cluster structure.

#include <vector>

#include "ot12/configuration.hpp"

namespace ot12::fixtures {

/// Every a- and b-edge present: all vertices have degree 2 and code {011}.
/// Removing any set of b-edges keeps it valid; the {001} vertices are then
/// exactly the endpoints of the removed b-edges.
Configuration ab_background(GeometryPtr g);

/// Removes the b-edge of W(x, y), turning W(x, y) and B(x, y-1) into {001}.
void cut_b(Configuration& cfg, int x, int y);

/// Cuts the b-edges of the whole column x, giving a {001} line W(x,.), B(x,.).
void cut_column(Configuration& cfg, int x);

/// B_1 at (cx, cy) inside one {001} cluster whose complement of B_3 has three
/// arms: column cx upwards, column cx downwards, and column cx + 2, joined
/// to the core through W(cx+1, cy) and W(cx+1, cy+1). Needs a torus of side
/// >= 8.
Configuration three_arm(GeometryPtr g, int cx, int cy);

}  // namespace ot12::fixtures
