#include "graphrank/repair.hpp"

#include <string>
#include <unordered_set>

#include "graphrank/error.hpp"

namespace graphrank {

RepairResult repair_retrain(const Graph& g, std::span<const std::size_t> selection,
                            const TrainConfig& cfg) {
  std::unordered_set<std::size_t> seen;
  for (const std::size_t id : selection) {
    require(id < g.num_nodes() && g.splits()[id] == Split::Test, ErrorCode::InvalidParameter,
            "node " + std::to_string(id) + " is not in the test split");
    require(seen.insert(id).second, ErrorCode::DuplicateSelection,
            "node " + std::to_string(id) + " selected twice");
  }
  const std::vector<std::size_t> validation = g.nodes_in(Split::Validation);
  std::vector<std::size_t> train = g.nodes_in(Split::Train);

  RepairResult result;
  result.added = selection.size();
  const GcnModel baseline = train_gcn(g, cfg, train);
  result.baseline_accuracy = accuracy(gcn_forward_deterministic(baseline, g), g, validation);

  train.insert(train.end(), selection.begin(), selection.end());
  const GcnModel retrained = train_gcn(g, cfg, train);
  result.retrained_accuracy = accuracy(gcn_forward_deterministic(retrained, g), g, validation);
  result.delta = result.retrained_accuracy - result.baseline_accuracy;
  return result;
}

}  // namespace graphrank
