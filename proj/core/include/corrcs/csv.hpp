#ifndef CORRCS_CSV_HPP
#define CORRCS_CSV_HPP

#include <string>
#include <utility>
#include <vector>

#include "corrcs/types.hpp"

namespace corrcs {

/// Decimal form with 17 significant digits; round-trips every double.
std::string format_real(double x);

/// Vectors: one value per line, no header.
std::string vector_csv(const Vec& v);
Vec parse_vector_csv(const std::string& text);
void write_vector_csv(const std::string& path, const Vec& v);
Vec read_vector_csv(const std::string& path);

/// Matrices: one row per line, comma separated, no header.
std::string matrix_csv(const Mat& a);
Mat parse_matrix_csv(const std::string& text);
void write_matrix_csv(const std::string& path, const Mat& a);
Mat read_matrix_csv(const std::string& path);

/// Plain-text key=value sidecar, one pair per line in the given order.
using KeyValues = std::vector<std::pair<std::string, std::string>>;
std::string sidecar_text(const KeyValues& kv);
void write_sidecar(const std::string& path, const KeyValues& kv);

void write_text_file(const std::string& path, const std::string& text);
std::string read_text_file(const std::string& path);

}  // namespace corrcs

#endif  // CORRCS_CSV_HPP
