#include "crowdweight/dataset.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <istream>
#include <ostream>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string_view>

#include "crowdweight/errors.hpp"
#include "crowdweight/rng.hpp"

namespace crowdweight {

namespace {

std::string format_double(double v) {
  char buf[32];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, ptr);
}

double parse_double(std::string_view tok, int line, const char* what) {
  double v = 0.0;
  auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
  if (ec != std::errc{} || ptr != tok.data() + tok.size())
    throw ParseError(std::string("bad ") + what + " '" + std::string(tok) + "'", line);
  return v;
}

bool is_binary_label(int v) { return v == -1 || v == 1; }

}  // namespace

void MultiLabelDataset::validate() const {
  const int m = num_examples();
  const int n = num_features();
  const int L = num_annotators();
  if (m < 1 || n < 1 || L < 1)
    throw std::invalid_argument("dataset requires m >= 1, n >= 1, L >= 1");
  if (annotator_labels.rows() != m)
    throw std::invalid_argument("annotator label rows do not match example count");
  for (int i = 0; i < m; ++i)
    for (int l = 0; l < L; ++l)
      if (!is_binary_label(annotator_labels(i, l)))
        throw std::invalid_argument("annotator labels must be -1 or +1");
  if (true_labels) {
    if (true_labels->size() != m)
      throw std::invalid_argument("true label count does not match example count");
    for (int i = 0; i < m; ++i)
      if (!is_binary_label((*true_labels)(i)))
        throw std::invalid_argument("true labels must be -1 or +1");
  }
  if (!feature_names.empty() && static_cast<int>(feature_names.size()) != n)
    throw std::invalid_argument("feature name count does not match feature count");
}

LibsvmData parse_libsvm(std::istream& in) {
  struct Entry {
    int col;
    double value;
  };
  std::vector<std::vector<Entry>> rows;
  std::vector<double> raw_labels;
  int max_index = 0;

  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    // Strip trailing CR and an optional '#' comment.
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (auto hash = line.find('#'); hash != std::string::npos) line.resize(hash);

    std::string_view sv(line);
    auto next_token = [&sv]() -> std::string_view {
      while (!sv.empty() && (sv.front() == ' ' || sv.front() == '\t')) sv.remove_prefix(1);
      std::size_t end = 0;
      while (end < sv.size() && sv[end] != ' ' && sv[end] != '\t') ++end;
      std::string_view tok = sv.substr(0, end);
      sv.remove_prefix(end);
      return tok;
    };

    std::string_view label_tok = next_token();
    if (label_tok.empty()) continue;  // blank line
    raw_labels.push_back(parse_double(label_tok, line_no, "label"));

    std::vector<Entry> row;
    int prev_index = 0;
    for (std::string_view tok = next_token(); !tok.empty(); tok = next_token()) {
      const auto colon = tok.find(':');
      if (colon == std::string_view::npos)
        throw ParseError("expected index:value, got '" + std::string(tok) + "'", line_no);
      int index = 0;
      auto idx_tok = tok.substr(0, colon);
      auto [ptr, ec] = std::from_chars(idx_tok.data(), idx_tok.data() + idx_tok.size(), index);
      if (ec != std::errc{} || ptr != idx_tok.data() + idx_tok.size() || index < 1)
        throw ParseError("bad feature index '" + std::string(idx_tok) + "'", line_no);
      if (index <= prev_index)
        throw ParseError("feature indices must be strictly increasing", line_no);
      prev_index = index;
      row.push_back({index - 1, parse_double(tok.substr(colon + 1), line_no, "feature value")});
      max_index = std::max(max_index, index);
    }
    rows.push_back(std::move(row));
  }

  const int m = static_cast<int>(rows.size());
  if (m == 0) throw ParseError("no examples", line_no == 0 ? 1 : line_no);

  // Map raw labels onto {-1,+1}: smaller raw value -> -1. A single distinct
  // raw value is accepted only if it is already -1 or +1.
  std::set<double> distinct(raw_labels.begin(), raw_labels.end());
  if (distinct.size() > 2)
    throw UnsupportedDatasetError("more than two distinct labels; only binary datasets are supported");
  Eigen::VectorXi labels(m);
  if (distinct.size() == 2) {
    const double lo = *distinct.begin();
    for (int i = 0; i < m; ++i) labels(i) = raw_labels[i] == lo ? -1 : 1;
  } else {
    const double only = *distinct.begin();
    if (only != -1.0 && only != 1.0)
      throw UnsupportedDatasetError("single non-binary label value; cannot infer class mapping");
    labels.setConstant(static_cast<int>(only));
  }

  Eigen::SparseMatrix<double> features(m, max_index == 0 ? 1 : max_index);
  std::vector<Eigen::Triplet<double>> triplets;
  for (int i = 0; i < m; ++i)
    for (const auto& e : rows[i]) triplets.emplace_back(i, e.col, e.value);
  features.setFromTriplets(triplets.begin(), triplets.end());
  return {std::move(features), std::move(labels)};
}

LibsvmData parse_libsvm(const std::string& text) {
  std::istringstream in(text);
  return parse_libsvm(in);
}

std::string write_libsvm(const Eigen::SparseMatrix<double>& features,
                         const Eigen::VectorXi& labels) {
  if (features.rows() != labels.size())
    throw std::invalid_argument("feature rows and label count differ");
  // Row-wise emission wants row-major iteration order.
  Eigen::SparseMatrix<double, Eigen::RowMajor> rm(features);
  std::string out;
  for (int i = 0; i < rm.rows(); ++i) {
    out += labels(i) > 0 ? "+1" : "-1";
    for (Eigen::SparseMatrix<double, Eigen::RowMajor>::InnerIterator it(rm, i); it; ++it) {
      out += ' ';
      out += std::to_string(it.col() + 1);
      out += ':';
      out += format_double(it.value());
    }
    out += '\n';
  }
  return out;
}

std::pair<MultiLabelDataset, MultiLabelDataset> split(const MultiLabelDataset& ds,
                                                      const SplitSpec& spec) {
  ds.validate();
  if (!(spec.train_fraction > 0.0 && spec.train_fraction <= 1.0))
    throw std::invalid_argument("train_fraction must lie in (0,1]");
  const int m = ds.num_examples();
  const int train_count = static_cast<int>(std::floor(spec.train_fraction * m));
  if (train_count < 1 || train_count >= m)
    throw std::invalid_argument("train fraction yields an empty train or test set");

  auto eng = make_engine(spec.seed, 0x5b17u);
  const std::vector<int> perm = shuffled_indices(m, eng);

  auto take = [&](int begin, int count) {
    MultiLabelDataset part;
    part.features.resize(count, ds.num_features());
    part.annotator_labels.resize(count, ds.num_annotators());
    if (ds.true_labels) part.true_labels.emplace(count);
    for (int i = 0; i < count; ++i) {
      const int src = perm[begin + i];
      part.features.row(i) = ds.features.row(src);
      part.annotator_labels.row(i) = ds.annotator_labels.row(src);
      if (ds.true_labels) (*part.true_labels)(i) = (*ds.true_labels)(src);
    }
    part.feature_names = ds.feature_names;
    return part;
  };
  return {take(0, train_count), take(train_count, m - train_count)};
}

std::vector<std::vector<int>> kfold_indices(int m, int k, std::uint64_t seed) {
  if (k < 1) throw std::invalid_argument("fold count must be positive");
  if (k > m) throw std::invalid_argument("fold count exceeds example count");
  auto eng = make_engine(seed, 0xf01d5u);
  const std::vector<int> perm = shuffled_indices(m, eng);
  std::vector<std::vector<int>> folds(k);
  for (int i = 0; i < m; ++i) folds[i % k].push_back(perm[i]);
  return folds;
}

void scale_features_minmax(Eigen::MatrixXd& features) {
  for (int j = 0; j < features.cols(); ++j) {
    const double lo = features.col(j).minCoeff();
    const double hi = features.col(j).maxCoeff();
    if (hi > lo)
      features.col(j) = (2.0 * (features.col(j).array() - lo) / (hi - lo) - 1.0).matrix();
    else
      features.col(j).setZero();
  }
}

void write_csv(const MultiLabelDataset& ds, std::ostream& out) {
  ds.validate();
  const int n = ds.num_features();
  const int L = ds.num_annotators();
  for (int j = 0; j < n; ++j) out << 'x' << (j + 1) << ',';
  if (ds.true_labels) out << "y_true,";
  for (int l = 0; l < L; ++l) out << 'a' << (l + 1) << (l + 1 < L ? "," : "");
  out << '\n';
  for (int i = 0; i < ds.num_examples(); ++i) {
    for (int j = 0; j < n; ++j) out << format_double(ds.features(i, j)) << ',';
    if (ds.true_labels) out << (*ds.true_labels)(i) << ',';
    for (int l = 0; l < L; ++l) out << ds.annotator_labels(i, l) << (l + 1 < L ? "," : "");
    out << '\n';
  }
}

std::string write_csv(const MultiLabelDataset& ds) {
  std::ostringstream out;
  write_csv(ds, out);
  return out.str();
}

MultiLabelDataset read_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) throw ParseError("no examples", 1);
  if (!line.empty() && line.back() == '\r') line.pop_back();

  std::vector<std::string> names;
  {
    std::stringstream header(line);
    std::string cell;
    while (std::getline(header, cell, ',')) names.push_back(cell);
  }
  int n = 0;
  while (n < static_cast<int>(names.size()) && names[n] == "x" + std::to_string(n + 1)) ++n;
  if (n == 0) throw ParseError("header must start with feature columns x1,x2,...", 1);
  int pos = n;
  bool has_truth = pos < static_cast<int>(names.size()) && names[pos] == "y_true";
  if (has_truth) ++pos;
  int L = 0;
  while (pos + L < static_cast<int>(names.size()) && names[pos + L] == "a" + std::to_string(L + 1)) ++L;
  if (L == 0 || pos + L != static_cast<int>(names.size()))
    throw ParseError("header must end with annotator columns a1,a2,...", 1);

  std::vector<std::vector<double>> rows;
  int line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    std::vector<double> row;
    std::size_t start = 0;
    while (true) {
      const std::size_t comma = line.find(',', start);
      const std::string_view cell(line.data() + start,
                                  (comma == std::string::npos ? line.size() : comma) - start);
      row.push_back(parse_double(cell, line_no, "cell"));
      if (comma == std::string::npos) break;
      start = comma + 1;
    }
    if (static_cast<int>(row.size()) != n + (has_truth ? 1 : 0) + L)
      throw ParseError("wrong number of columns", line_no);
    rows.push_back(std::move(row));
  }
  const int m = static_cast<int>(rows.size());
  if (m == 0) throw ParseError("no examples", line_no);

  MultiLabelDataset ds;
  ds.features.resize(m, n);
  ds.annotator_labels.resize(m, L);
  if (has_truth) ds.true_labels.emplace(m);
  for (int i = 0; i < m; ++i) {
    for (int j = 0; j < n; ++j) ds.features(i, j) = rows[i][j];
    if (has_truth) (*ds.true_labels)(i) = static_cast<int>(rows[i][n]);
    for (int l = 0; l < L; ++l)
      ds.annotator_labels(i, l) = static_cast<int>(rows[i][n + (has_truth ? 1 : 0) + l]);
  }
  ds.validate();
  return ds;
}

MultiLabelDataset read_csv(const std::string& text) {
  std::istringstream in(text);
  return read_csv(in);
}

LabeledData densify(const LibsvmData& data) {
  LabeledData out;
  out.features = Eigen::MatrixXd(data.features);
  out.labels = data.labels;
  return out;
}

}  // namespace crowdweight
