#include "corrcs/csv.hpp"

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>

namespace corrcs {

namespace {

std::vector<std::string> split_lines(const std::string& text) {
  std::vector<std::string> lines;
  std::string line;
  std::istringstream in(text);
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (!line.empty()) lines.push_back(line);
  }
  return lines;
}

double parse_real(const std::string& token) {
  const char* begin = token.c_str();
  char* end = nullptr;
  const double value = std::strtod(begin, &end);
  while (end && *end == ' ') ++end;
  if (end == begin || (end && *end != '\0'))
    throw std::runtime_error("csv: cannot parse number '" + token + "'");
  return value;
}

std::vector<std::string> split_fields(const std::string& line) {
  std::vector<std::string> fields;
  std::string field;
  std::istringstream in(line);
  while (std::getline(in, field, ',')) fields.push_back(field);
  return fields;
}

}  // namespace

std::string format_real(double x) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.17g", x);  // 17 digits round-trip exactly
  return buf;
}

std::string vector_csv(const Vec& v) {
  std::string out;
  for (Index i = 0; i < v.size(); ++i) {
    out += format_real(v[i]);
    out += '\n';
  }
  return out;
}

Vec parse_vector_csv(const std::string& text) {
  const auto lines = split_lines(text);
  Vec v(static_cast<Index>(lines.size()));
  for (std::size_t i = 0; i < lines.size(); ++i) {
    const auto fields = split_fields(lines[i]);
    if (fields.size() != 1)
      throw std::runtime_error("csv: expected one value per line in vector file");
    v[static_cast<Index>(i)] = parse_real(fields[0]);
  }
  return v;
}

std::string matrix_csv(const Mat& a) {
  std::string out;
  for (Index i = 0; i < a.rows(); ++i) {
    for (Index j = 0; j < a.cols(); ++j) {
      if (j > 0) out += ',';
      out += format_real(a(i, j));
    }
    out += '\n';
  }
  return out;
}

Mat parse_matrix_csv(const std::string& text) {
  const auto lines = split_lines(text);
  if (lines.empty()) return Mat(0, 0);
  const auto first = split_fields(lines[0]);
  Mat a(static_cast<Index>(lines.size()), static_cast<Index>(first.size()));
  for (std::size_t i = 0; i < lines.size(); ++i) {
    const auto fields = split_fields(lines[i]);
    if (fields.size() != first.size())
      throw std::runtime_error("csv: ragged matrix rows");
    for (std::size_t j = 0; j < fields.size(); ++j)
      a(static_cast<Index>(i), static_cast<Index>(j)) = parse_real(fields[j]);
  }
  return a;
}

void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open '" + path + "' for writing");
  out << text;
  if (!out) throw std::runtime_error("write to '" + path + "' failed");
}

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_vector_csv(const std::string& path, const Vec& v) {
  write_text_file(path, vector_csv(v));
}

Vec read_vector_csv(const std::string& path) {
  return parse_vector_csv(read_text_file(path));
}

void write_matrix_csv(const std::string& path, const Mat& a) {
  write_text_file(path, matrix_csv(a));
}

Mat read_matrix_csv(const std::string& path) {
  return parse_matrix_csv(read_text_file(path));
}

std::string sidecar_text(const KeyValues& kv) {
  std::string out;
  for (const auto& [key, value] : kv) {
    out += key;
    out += '=';
    out += value;
    out += '\n';
  }
  return out;
}

void write_sidecar(const std::string& path, const KeyValues& kv) {
  write_text_file(path, sidecar_text(kv));
}

}  // namespace corrcs
