#pragma once

/// \file
/// Section-based manifold definition files.
///
///     # comment
///     [chart]
///     dim = 3
///     coords = "x,y,z"
///     domain = "y in (0, inf)"
///     [metric]
///     g_11 = "1"          # or g_1_1; upper triangle suffices
///     [phi]
///     phi^1_2 = "-1"
///     [xi]
///     xi^3 = "1"
///     [eta]
///     eta_3 = "1"
///
/// A [hermitian] section with J^i_j entries replaces [phi]/[xi]/[eta]. A
/// [frame] section (dim, labels, c[k][i][j], g[i][j], phi[i][j], xi[i],
/// eta[i], rational values) describes a left-invariant structure instead of a
/// chart. Indices are 1-based; missing entries are 0 (the frame metric is
/// filled symmetrically, structure constants antisymmetrically). Unknown
/// sections and keys are errors.

#include "curvlab/frame.hpp"
#include "curvlab/structures.hpp"

#include <filesystem>
#include <stdexcept>
#include <string>
#include <string_view>
#include <variant>

namespace curvlab {

class ManifoldFileError : public std::runtime_error {
 public:
  ManifoldFileError(const std::string& message, std::size_t offset)
      : std::runtime_error(message + " at byte " + std::to_string(offset)), offset_(offset) {}
  std::size_t offset() const { return offset_; }

 private:
  std::size_t offset_;
};

using Carrier = std::variant<AlmostContactStructure, AlmostHermitianStructure, FrameStructure>;

/// Throws ManifoldFileError with the byte offset of the offending text.
Carrier parse_manifold(std::string_view text, const std::string& name);

/// Reads and parses a file; the structure is named after the file stem.
Carrier load_manifold_file(const std::filesystem::path& path);

}  // namespace curvlab
