#pragma once

#include <Eigen/Dense>
#include <string>

#include "jetlab/kernel.hpp"

namespace jetlab {

// Matrices go out as RFC-4180 CSV with quoted "re,im" cells, rows in graded
// colexicographic order (the only order used anywhere).
std::string complex_cell(Cx v);
std::string matrix_to_csv(const Eigen::MatrixXcd& m);

void write_text_file(const std::string& path, const std::string& content);

}  // namespace jetlab
