#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "arrzeta/arrangement.hpp"

namespace arrzeta {

struct LoadedArrangement {
  Arrangement arrangement;
  std::vector<std::string> warnings;
};

// Line-oriented format:
//   # comment
//   dim: 3
//   hyperplane: 1 0 -1/2 x 2 label=H1
// Coefficients may also be written as [1, 0, -1/2]; "x <mult>" and the label are optional.
LoadedArrangement parse_arrangement(std::string_view text);
LoadedArrangement load_arrangement(const std::string& path);

std::string emit_arrangement(const Arrangement& a);

// Writes through a temporary file in the same directory and renames it into place.
void write_file_atomic(const std::string& path, const std::string& contents);

}  // namespace arrzeta
