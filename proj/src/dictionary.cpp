#include "pwsparse/dictionary.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

namespace pwsparse {

SupportPartition SupportPartition::from_global(const std::vector<int>& global,
                                               const BlockPartition& p) {
  SupportPartition sp;
  sp.partition = p;
  sp.supports.assign(p.block_count(), {});
  for (int j : global) {
    if (j < 0 || j >= p.total_columns())
      throw UsageError("support index out of range");
    const int i = p.block_of(j);
    sp.supports[i].push_back(j - p.offset(i));
  }
  for (auto& s : sp.supports) std::sort(s.begin(), s.end());
  return sp;
}

Dictionary::Dictionary(Eigen::MatrixXd matrix, BlockPartition partition)
    : matrix_(std::move(matrix)), partition_(std::move(partition)) {
  partition_.validate();
  if (matrix_.rows() < 1 || matrix_.cols() < 1)
    throw UsageError("empty dictionary matrix");
  if (partition_.total_columns() != matrix_.cols())
    throw UsageError("partition widths sum to " +
                     std::to_string(partition_.total_columns()) +
                     " but matrix has " + std::to_string(matrix_.cols()) +
                     " columns");
  if (!matrix_.allFinite())
    throw UsageError("dictionary matrix has non-finite entries");
  for (int j = 0; j < matrix_.cols(); ++j) {
    const double nrm = matrix_.col(j).norm();
    if (std::abs(nrm - 1.0) > kUnitNormTol)
      throw UsageError("column " + std::to_string(j) + " has norm " +
                       std::to_string(nrm) +
                       "; normalize the matrix or pass normalize");
  }
}

LoadedDictionary make_dictionary(Eigen::MatrixXd matrix,
                                 BlockPartition partition, bool normalize) {
  if (!normalize) return {Dictionary(std::move(matrix), std::move(partition)), {}};
  NormalizationRecord record;
  record.scales.resize(matrix.cols());
  for (int j = 0; j < matrix.cols(); ++j) {
    const double nrm = matrix.col(j).norm();
    if (nrm == 0.0 || !std::isfinite(nrm))
      throw UsageError("cannot normalize zero column " + std::to_string(j));
    record.scales[j] = nrm;
    matrix.col(j) /= nrm;
  }
  return {Dictionary(std::move(matrix), std::move(partition)), record};
}

LoadedDictionary load_dictionary(const std::string& matrix_path,
                                 BlockPartition partition, bool normalize) {
  return make_dictionary(read_matrix_csv(matrix_path), std::move(partition),
                         normalize);
}

Eigen::MatrixXd gram(const Dictionary& d) {
  Eigen::MatrixXd g = d.matrix().transpose() * d.matrix();
  // force exact symmetry as stored
  for (int i = 0; i < g.rows(); ++i)
    for (int j = 0; j < i; ++j) g(j, i) = g(i, j);
  return g;
}

Eigen::MatrixXd columns(const Dictionary& d, const std::vector<int>& indices) {
  std::vector<int> sorted = indices;
  std::sort(sorted.begin(), sorted.end());
  for (size_t k = 0; k < sorted.size(); ++k) {
    if (sorted[k] < 0 || sorted[k] >= d.cols())
      throw UsageError("column index out of range");
    if (k > 0 && sorted[k] == sorted[k - 1])
      throw UsageError("duplicate column index");
  }
  Eigen::MatrixXd out(d.rows(), sorted.size());
  for (size_t k = 0; k < sorted.size(); ++k) out.col(k) = d.column(sorted[k]);
  return out;
}

namespace {

std::string format_entry(double v) {
  char buf[32];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  if (ec != std::errc{}) throw NumericalError("number formatting failed");
  return std::string(buf, ptr);
}

std::vector<std::vector<double>> read_rows(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot open " + path);
  std::vector<std::vector<double>> rows;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    std::vector<double> row;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) {
      try {
        size_t pos = 0;
        row.push_back(std::stod(cell, &pos));
        while (pos < cell.size() && std::isspace(static_cast<unsigned char>(cell[pos])))
          ++pos;
        if (pos != cell.size()) throw std::invalid_argument(cell);
      } catch (const std::exception&) {
        throw UsageError(path + ":" + std::to_string(lineno) +
                         ": cannot parse '" + cell + "' as a number");
      }
    }
    rows.push_back(std::move(row));
  }
  if (rows.empty()) throw UsageError(path + ": empty matrix file");
  for (const auto& r : rows)
    if (r.size() != rows.front().size())
      throw UsageError(path + ": ragged rows");
  return rows;
}

}  // namespace

Eigen::MatrixXd read_matrix_csv(const std::string& path) {
  const auto rows = read_rows(path);
  Eigen::MatrixXd m(rows.size(), rows.front().size());
  for (size_t i = 0; i < rows.size(); ++i)
    for (size_t j = 0; j < rows[i].size(); ++j) m(i, j) = rows[i][j];
  return m;
}

void write_matrix_csv(const std::string& path, const Eigen::MatrixXd& m) {
  std::ofstream out(path);
  if (!out) throw UsageError("cannot write " + path);
  for (int i = 0; i < m.rows(); ++i) {
    for (int j = 0; j < m.cols(); ++j) {
      if (j) out << ',';
      out << format_entry(m(i, j));
    }
    out << '\n';
  }
}

Eigen::VectorXd read_vector_csv(const std::string& path) {
  const Eigen::MatrixXd m = read_matrix_csv(path);
  if (m.cols() == 1) return m.col(0);
  if (m.rows() == 1) return m.row(0).transpose();
  throw UsageError(path + ": expected a one-column or one-row vector");
}

void write_vector_csv(const std::string& path, const Eigen::VectorXd& v) {
  write_matrix_csv(path, v);
}

}  // namespace pwsparse
