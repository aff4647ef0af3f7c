#include "proxpoint/io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

namespace proxpoint::io {

std::string format_double(double x) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.15g", x);
  return buf;
}

void write_trace_csv(std::ostream& os, const std::vector<TraceRow>& rows) {
  os << "n,inner_iters,psi,norm_v,norm_eps,mu\n";
  for (const TraceRow& r : rows) {
    os << r.n << ',' << r.inner_iters << ',' << format_double(r.psi) << ','
       << format_double(r.norm_v) << ',' << format_double(r.norm_eps) << ','
       << format_double(r.mu) << '\n';
  }
}

void write_trace_csv(const std::string& path, const std::vector<TraceRow>& rows) {
  std::ofstream os(path, std::ios::binary);
  if (!os) throw std::runtime_error("cannot open for writing: " + path);
  write_trace_csv(os, rows);
}

std::vector<TraceRow> ista_trace_rows(const IstaResult& result, double step_size) {
  std::vector<TraceRow> rows;
  rows.reserve(result.psi_trace.size());
  for (std::size_t k = 0; k < result.psi_trace.size(); ++k) {
    TraceRow row;
    row.n = static_cast<int>(k);
    row.inner_iters = 1;
    row.psi = result.psi_trace[k];
    row.norm_v = result.step_norms[k] / step_size;
    row.norm_eps = 0.0;
    row.mu = 0.0;
    rows.push_back(row);
  }
  return rows;
}

void write_vector_csv(const std::string& path, const Vector& v) {
  std::ofstream os(path, std::ios::binary);
  if (!os) throw std::runtime_error("cannot open for writing: " + path);
  for (Index i = 0; i < v.size(); ++i) os << format_double(v[i]) << '\n';
}

Vector read_vector_csv(const std::string& path) {
  std::ifstream is(path);
  if (!is) throw std::runtime_error("cannot open for reading: " + path);
  std::vector<double> values;
  std::string line;
  while (std::getline(is, line)) {
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) {
      if (cell.find_first_not_of(" \t\r") == std::string::npos) continue;
      values.push_back(std::stod(cell));
    }
  }
  Vector v(static_cast<Index>(values.size()));
  for (std::size_t i = 0; i < values.size(); ++i) v[static_cast<Index>(i)] = values[i];
  return v;
}

Matrix read_dense_csv(const std::string& path) {
  std::ifstream is(path);
  if (!is) throw std::runtime_error("cannot open for reading: " + path);
  std::vector<std::vector<double>> rows;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(is, line)) {
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    std::vector<double> row;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) {
      try {
        row.push_back(std::stod(cell));
      } catch (const std::exception&) {
        throw std::runtime_error(path + ":" + std::to_string(line_no) +
                                 ": not a number: '" + cell + "'");
      }
    }
    if (!rows.empty() && row.size() != rows.front().size())
      throw std::runtime_error(path + ":" + std::to_string(line_no) + ": ragged row");
    rows.push_back(std::move(row));
  }
  if (rows.empty()) throw std::runtime_error(path + ": empty matrix");
  Matrix m(static_cast<Index>(rows.size()), static_cast<Index>(rows.front().size()));
  for (std::size_t r = 0; r < rows.size(); ++r)
    for (std::size_t c = 0; c < rows[r].size(); ++c)
      m(static_cast<Index>(r), static_cast<Index>(c)) = rows[r][c];
  return m;
}

void write_pgm(const std::string& path, const Vector& image, Index rows, Index cols) {
  if (image.size() != rows * cols)
    throw DimensionError("write_pgm", rows * cols, image.size());
  std::ofstream os(path, std::ios::binary);
  if (!os) throw std::runtime_error("cannot open for writing: " + path);
  os << "P5\n" << cols << ' ' << rows << "\n255\n";
  const double max = image.maxCoeff();
  const double scale = max > 0.0 ? 255.0 / max : 0.0;
  for (Index i = 0; i < image.size(); ++i) {
    const double v = image[i] * scale;
    const int byte = v <= 0.0 ? 0 : (v >= 255.0 ? 255 : static_cast<int>(v + 0.5));
    os.put(static_cast<char>(byte));
  }
}

}  // namespace proxpoint::io
