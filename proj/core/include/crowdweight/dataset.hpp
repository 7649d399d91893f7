#pragma once

#include <Eigen/Dense>
#include <Eigen/Sparse>

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace crowdweight {

/// Examples with one binary label (+/-1) each. Precursor of a multi-annotator
/// dataset: the simulator turns this into a MultiLabelDataset.
struct LabeledData {
  Eigen::MatrixXd features;  // m x n
  Eigen::VectorXi labels;    // entries in {-1,+1}
};

/// m examples, n features, L annotator label columns in {-1,+1}.
/// Immutable by convention once built; cheap to share read-only.
struct MultiLabelDataset {
  Eigen::MatrixXd features;          // m x n
  Eigen::MatrixXi annotator_labels;  // m x L
  std::optional<Eigen::VectorXi> true_labels;
  std::vector<std::string> feature_names;  // empty = unnamed

  int num_examples() const { return static_cast<int>(features.rows()); }
  int num_features() const { return static_cast<int>(features.cols()); }
  int num_annotators() const { return static_cast<int>(annotator_labels.cols()); }

  /// Throws std::invalid_argument on any structural violation.
  void validate() const;
};

struct SplitSpec {
  double train_fraction = 0.5;  // in (0,1]
  int fold_count = 10;
  std::uint64_t seed = 0;
};

struct LibsvmData {
  Eigen::SparseMatrix<double> features;  // m x n, n = max index seen
  Eigen::VectorXi labels;                // mapped to {-1,+1}
};

/// Parse LibSVM text: `<label> <idx>:<value> ...`, 1-based strictly
/// increasing indices. Any two distinct raw labels are accepted; the smaller
/// maps to -1. Throws ParseError / UnsupportedDatasetError.
LibsvmData parse_libsvm(std::istream& in);
LibsvmData parse_libsvm(const std::string& text);

/// Inverse of parse_libsvm, shortest-round-trip number formatting.
std::string write_libsvm(const Eigen::SparseMatrix<double>& features,
                         const Eigen::VectorXi& labels);

/// Seed-deterministic disjoint train/test partition.
std::pair<MultiLabelDataset, MultiLabelDataset> split(const MultiLabelDataset& ds,
                                                      const SplitSpec& spec);

/// k disjoint validation index sets partitioning {0..m-1}, sizes differ by
/// at most one. Throws std::invalid_argument when k > m or k < 1.
std::vector<std::vector<int>> kfold_indices(int m, int k, std::uint64_t seed);

/// Per-feature min-max scaling to [-1,+1]; constant features map to 0.
/// Off by default everywhere; callers opt in.
void scale_features_minmax(Eigen::MatrixXd& features);

/// CSV with header `x1,..,xn,y_true,a1,..,aL` (y_true column omitted when
/// true labels are absent). '.' decimal separator regardless of locale.
void write_csv(const MultiLabelDataset& ds, std::ostream& out);
std::string write_csv(const MultiLabelDataset& ds);
MultiLabelDataset read_csv(std::istream& in);
MultiLabelDataset read_csv(const std::string& text);

/// Dense view of parsed LibSVM content, as training code wants it.
LabeledData densify(const LibsvmData& data);

}  // namespace crowdweight
