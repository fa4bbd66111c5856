#pragma once

#include <filesystem>
#include <string>

#include "oica/basis.hpp"

namespace oica {

struct IoError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// CSV matrix format: optional first line "# k=<rows> n=<cols>", then one
// comma-separated line per row. Readers accept files with or without the
// header line.
void write_matrix_csv(const std::filesystem::path& path, const Matrix& m);
Matrix read_matrix_csv(const std::filesystem::path& path);

// Writes to <path>.tmp then renames, so readers never see partial files.
void atomic_write_text(const std::filesystem::path& path,
                       const std::string& contents);

}  // namespace oica
