#include "nmfkit/matrix_io.hpp"

#include <charconv>
#include <fstream>
#include <nlohmann/json.hpp>
#include <sstream>
#include <vector>

namespace nmfkit {

std::string format_double(double v) {
  char buf[32];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  (void)ec;
  return std::string(buf, ptr);
}

DenseMatrix read_matrix_csv(std::istream& in) {
  std::vector<double> data;
  Index cols = -1;
  Index rows = 0;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    if (line[0] == '#') continue;  // "# rows cols" header or comments
    Index this_cols = 0;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) {
      size_t pos = 0;
      double v = 0.0;
      try {
        v = std::stod(cell, &pos);
      } catch (const std::exception&) {
        throw ValidationError("matrix CSV: cannot parse value '" + cell + "'");
      }
      data.push_back(v);
      ++this_cols;
    }
    if (cols < 0)
      cols = this_cols;
    else if (this_cols != cols)
      throw ValidationError("matrix CSV: ragged row " + std::to_string(rows) +
                            " has " + std::to_string(this_cols) +
                            " values, expected " + std::to_string(cols));
    ++rows;
  }
  if (rows == 0) throw ValidationError("matrix CSV: no data rows");
  DenseMatrix M(rows, cols);
  std::copy(data.begin(), data.end(), M.data());
  return M;
}

DenseMatrix read_matrix_csv_file(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw ValidationError("cannot open '" + path + "' for reading");
  return read_matrix_csv(f);
}

void write_matrix_csv(std::ostream& out, const DenseMatrix& M) {
  out << "# " << M.rows() << " " << M.cols() << "\n";
  for (Index i = 0; i < M.rows(); ++i) {
    for (Index j = 0; j < M.cols(); ++j) {
      if (j) out << ",";
      out << format_double(M(i, j));
    }
    out << "\n";
  }
}

void write_matrix_csv_file(const std::string& path, const DenseMatrix& M) {
  std::ofstream f(path);
  if (!f) throw ValidationError("cannot open '" + path + "' for writing");
  write_matrix_csv(f, M);
}

DenseMatrix matrix_from_json(const nlohmann::json& j) {
  const Index rows = j.at("rows").get<Index>();
  const Index cols = j.at("cols").get<Index>();
  const auto& data = j.at("data");
  if (rows < 0 || cols < 0 ||
      static_cast<Index>(data.size()) != rows * cols)
    throw ValidationError("matrix JSON: data length does not match rows*cols");
  DenseMatrix M(rows, cols);
  for (Index i = 0; i < rows * cols; ++i)
    M.data()[i] = data.at(static_cast<size_t>(i)).get<double>();
  return M;
}

nlohmann::json matrix_to_json(const DenseMatrix& M) {
  nlohmann::json j;
  j["rows"] = M.rows();
  j["cols"] = M.cols();
  std::vector<double> data(M.data(), M.data() + M.size());
  j["data"] = data;
  return j;
}

}  // namespace nmfkit
