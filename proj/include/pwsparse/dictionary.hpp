#pragma once

#include <Eigen/Dense>
#include <optional>
#include <string>

#include "pwsparse/types.hpp"

namespace pwsparse {

inline constexpr double kUnitNormTol = 1e-12;

struct NormalizationRecord {
  std::vector<double> scales;  // original norm of each column
};

/// Column-normalized measurement matrix with its block partition.
/// Immutable after construction; safe to share across threads.
class Dictionary {
 public:
  Dictionary(Eigen::MatrixXd matrix, BlockPartition partition);

  int rows() const { return static_cast<int>(matrix_.rows()); }
  int cols() const { return static_cast<int>(matrix_.cols()); }
  int block_count() const { return partition_.block_count(); }

  const Eigen::MatrixXd& matrix() const { return matrix_; }
  const BlockPartition& partition() const { return partition_; }

  Eigen::VectorXd column(int j) const { return matrix_.col(j); }

  /// m x n_i view of sub-basis i.
  Eigen::Block<const Eigen::MatrixXd, Eigen::Dynamic, Eigen::Dynamic, true>
  block(int i) const {
    return matrix_.middleCols(partition_.offset(i), partition_.widths[i]);
  }

 private:
  Eigen::MatrixXd matrix_;
  BlockPartition partition_;
};

struct LoadedDictionary {
  Dictionary dictionary;
  std::optional<NormalizationRecord> normalization;
};

/// Builds a Dictionary from an in-memory matrix, normalizing columns when
/// requested. Rejects zero columns and, with normalize off, any column whose
/// norm deviates from 1 by more than 1e-12.
LoadedDictionary make_dictionary(Eigen::MatrixXd matrix,
                                 BlockPartition partition, bool normalize);

/// Reads a dense CSV matrix (one row per line) and builds a Dictionary.
LoadedDictionary load_dictionary(const std::string& matrix_path,
                                 BlockPartition partition, bool normalize);

/// Gram matrix A^T A, symmetrized so it equals its transpose bit-exactly.
Eigen::MatrixXd gram(const Dictionary& d);

/// Submatrix of the columns at the given indices, ascending order enforced.
Eigen::MatrixXd columns(const Dictionary& d, const std::vector<int>& indices);

Eigen::MatrixXd read_matrix_csv(const std::string& path);
void write_matrix_csv(const std::string& path, const Eigen::MatrixXd& m);
Eigen::VectorXd read_vector_csv(const std::string& path);
void write_vector_csv(const std::string& path, const Eigen::VectorXd& v);

}  // namespace pwsparse
