#include "varibase/io/grid_io.hpp"

#include <bit>
#include <cstring>
#include <fstream>

#include "varibase/core/errors.hpp"

static_assert(std::endian::native == std::endian::little,
              "grid dumps are little-endian; a byte-swapping reader is "
              "needed on big-endian targets");

namespace varibase::io {

void write_grid(const std::string& path, const Image<double>& grid,
                const std::string& units) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ConfigError("cannot open grid file for writing: " + path);
  out << "VBGRID 1\n" << grid.width() << ' ' << grid.height() << "\nunits "
      << units << "\n";
  out.write(reinterpret_cast<const char*>(grid.data()),
            static_cast<std::streamsize>(grid.pixel_count() * sizeof(double)));
  out.write(reinterpret_cast<const char*>(grid.valid_data()),
            static_cast<std::streamsize>(grid.pixel_count()));
}

LoadedGrid read_grid(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot open grid file: " + path);
  std::string magic;
  int version = 0;
  int width = 0;
  int height = 0;
  std::string units_key;
  LoadedGrid loaded;
  in >> magic >> version >> width >> height >> units_key >> loaded.units;
  if (magic != "VBGRID" || version != 1 || units_key != "units") {
    throw ConfigError("malformed grid header in " + path);
  }
  if (width <= 0 || height <= 0) {
    throw ConfigError("invalid grid dimensions in " + path);
  }
  in.ignore(1);  // newline after the header

  Image<double> grid(width, height);
  const std::streamsize value_bytes =
      static_cast<std::streamsize>(grid.pixel_count() * sizeof(double));
  in.read(reinterpret_cast<char*>(grid.data()), value_bytes);
  in.read(reinterpret_cast<char*>(grid.valid_data()),
          static_cast<std::streamsize>(grid.pixel_count()));
  if (!in) throw ConfigError("truncated grid payload in " + path);
  loaded.grid = std::move(grid);
  return loaded;
}

}  // namespace varibase::io
