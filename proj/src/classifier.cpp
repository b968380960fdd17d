#include "graphrank/classifier.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <unordered_set>

#include "graphrank/error.hpp"

namespace graphrank {

double sigmoid(double margin) {
  const double m = std::clamp(margin, -kMaxScoreMargin, kMaxScoreMargin);
  return 1.0 / (1.0 + std::exp(-m));
}

void LabeledPool::append(const DenseMatrix& attributes, std::span<const std::size_t> new_ids,
                         std::span<const int> new_labels) {
  require(new_ids.size() == new_labels.size(), ErrorCode::InvalidParameter,
          "ids and labels differ in length");
  const DenseMatrix extra = attributes.select_rows(new_ids);
  if (rows.rows() == 0 && rows.cols() == 0) {
    rows = extra;
  } else {
    require(rows.cols() == extra.cols(), ErrorCode::WidthMismatch, "pool width changed");
    std::vector<double> values(rows.values().begin(), rows.values().end());
    values.insert(values.end(), extra.values().begin(), extra.values().end());
    rows = DenseMatrix(rows.rows() + extra.rows(), rows.cols(), std::move(values));
  }
  ids.insert(ids.end(), new_ids.begin(), new_ids.end());
  labels.insert(labels.end(), new_labels.begin(), new_labels.end());
}

void LabeledPool::validate() const {
  require(rows.rows() == ids.size() && labels.size() == ids.size(), ErrorCode::InvalidParameter,
          "pool row count inconsistent");
  std::unordered_set<std::size_t> seen;
  for (const std::size_t id : ids) {
    require(seen.insert(id).second, ErrorCode::InvalidParameter,
            "duplicate pool id " + std::to_string(id));
  }
  for (const int y : labels) {
    require(y == 0 || y == 1, ErrorCode::InvalidParameter, "pool labels must be 0 or 1");
  }
}

std::vector<double> Classifier::score(const DenseMatrix& rows) const {
  std::vector<double> out = decision_function(rows);
  for (double& v : out) v = sigmoid(v);
  return out;
}

void Classifier::check_width(const DenseMatrix& rows) const {
  require(rows.cols() == width(), ErrorCode::WidthMismatch,
          "rows have " + std::to_string(rows.cols()) + " columns, classifier expects " +
              std::to_string(width()));
}

}  // namespace graphrank
