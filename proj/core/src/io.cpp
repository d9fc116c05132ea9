#include "jetlab/io.hpp"

#include <cstdio>
#include <fstream>
#include <stdexcept>

namespace jetlab {

namespace {

std::string fmt_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

}  // namespace

std::string complex_cell(Cx v) {
  return "\"" + fmt_double(v.real()) + "," + fmt_double(v.imag()) + "\"";
}

std::string matrix_to_csv(const Eigen::MatrixXcd& m) {
  std::string out;
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    for (Eigen::Index c = 0; c < m.cols(); ++c) {
      if (c) out += ",";
      out += complex_cell(m(r, c));
    }
    out += "\n";
  }
  return out;
}

void write_text_file(const std::string& path, const std::string& content) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("cannot open for writing: " + path);
  f << content;
  if (!f) throw std::runtime_error("write failed: " + path);
}

}  // namespace jetlab
