#pragma once

#include <string>

#include "varibase/core/image.hpp"

namespace varibase::io {

/// Flat binary grid dump, bit-exact across platforms:
///
///   VBGRID 1\n
///   <width> <height>\n
///   units <string>\n
///   <width*height little-endian float64 values>
///   <width*height uint8 validity bytes (0/1)>
///
/// Invalid pixels store value 0 (the in-memory invariant).
void write_grid(const std::string& path, const Image<double>& grid,
                const std::string& units);

struct LoadedGrid {
  Image<double> grid;
  std::string units;
};

/// Throws ConfigError on malformed headers or truncated payloads.
LoadedGrid read_grid(const std::string& path);

}  // namespace varibase::io
