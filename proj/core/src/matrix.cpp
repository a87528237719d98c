#include "lpsparse/matrix.hpp"

#include <algorithm>

#include "lpsparse/errors.hpp"

namespace lpsparse {

Matrix::Matrix(std::size_t rows, std::size_t cols, double fill)
    : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

Matrix Matrix::from_rows(const std::vector<std::vector<double>>& rows, std::size_t cols) {
  Matrix m(0, cols);
  m.reserve_rows(rows.size());
  for (const auto& r : rows) m.append_row(r);
  return m;
}

void Matrix::append_row(std::span<const double> values) {
  if (values.size() != cols_) {
    throw ContractError("row has " + std::to_string(values.size()) + " entries, matrix has " +
                        std::to_string(cols_) + " columns");
  }
  data_.insert(data_.end(), values.begin(), values.end());
  ++rows_;
}

Matrix Matrix::select_rows(std::span<const std::size_t> indices) const {
  Matrix out(0, cols_);
  out.reserve_rows(indices.size());
  for (std::size_t i : indices) out.append_row(row(i));
  return out;
}

double dot(std::span<const double> a, std::span<const double> b) {
  double sum = 0.0;
  for (std::size_t j = 0; j < a.size(); ++j) sum += a[j] * b[j];
  return sum;
}

}  // namespace lpsparse
