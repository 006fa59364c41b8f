#pragma once

#include <optional>
#include <string>

#include "ot12/census.hpp"
#include "ot12/configuration.hpp"

namespace ot12 {

struct CropWindow {
  int x0 = 0;
  int y0 = 0;
  int width = 0;
  int height = 0;
};

struct RenderOptions {
  std::optional<CropWindow> crop;
  std::size_t max_cells = 128 * 128;
  bool shade_clusters = true;
  std::optional<LocalCode> code;  // shade only this code; all codes when empty
  std::size_t min_cluster_size = 2;
  Adjacency adjacency = Adjacency::Lattice;
  double scale = 14.0;
};

/// SVG drawing of a configuration. Present edges are solid, absent ones a
/// faint outline; a-edges are horizontal and b/c edges run at +-120 degrees.
/// Homogeneous clusters get one fill each. Throws std::invalid_argument when
/// the drawing would exceed max_cells, suggesting a crop.
std::string render_svg(const Configuration& cfg, const RenderOptions& options = {});

}  // namespace ot12
