#pragma once

#include <string>
#include <vector>

#include "hyperband/bloch.hpp"
#include "hyperband/tiling.hpp"

namespace hyperband {

/// Cayley transform w = (z - i)/(z + i) onto the unit disk.
complex cayley(const HPoint& z);

/// SVG 1.1 drawing of γD for every tile, edges as geodesic arcs in the Poincare disk.
std::string tiling_svg(const FundamentalDomain& dom, const std::vector<Tile>& tiles);

/// "phi,energy" CSV, one row per eigenvalue, rows sorted by (phi, energy).
std::string butterfly_csv(const std::vector<SpectrumSample>& samples);

}  // namespace hyperband
