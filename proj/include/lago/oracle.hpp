#pragma once
// Exhaustive ground truth for tiny instances: enumerate every set partition
// of the active elements (restricted growth strings, lexicographic order),
// induce the corresponding structure and keep the best score.  Ties keep the
// first partition found.

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "lago/induce.hpp"
#include "lago/quality.hpp"
#include "lago/segmentation.hpp"

namespace lago {

class GuardExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct OracleResult {
  DynamicCommunityStructure structure;
  double q = 0.0;
  std::size_t partitions = 0;
};

inline OracleResult enumerate_optimal(const LinkStream& stream,
                                      const QualityParams& params,
                                      std::size_t max_elements = 12) {
  params.validate();
  std::optional<SegmentedStream> seg;
  if (stream.modality() == Modality::interval) seg = segment(stream);
  const LinkStream& eval = seg ? seg->stream : stream;
  ElementContext ctx = seg ? make_context(*seg) : make_context(stream);
  std::size_t n = ctx.size();
  if (n == 0) throw std::invalid_argument("oracle requires a non-empty stream");
  if (n > max_elements)
    throw GuardExceeded("oracle guard exceeded: " + std::to_string(n) +
                        " active elements, limit " + std::to_string(max_elements));

  std::vector<CommunityId> rgs(n, 0), caps(n, 0), best_labels;
  double best_q = 0.0;
  bool have_best = false;
  std::size_t count = 0;
  std::size_t node_count = eval.nodes().size();
  while (true) {
    ++count;
    auto structure = induce_structure(ctx, eval.domain(), node_count, rgs);
    double q = lmodularity(eval, structure, params);
    if (!have_best || q > best_q) {
      best_q = q;
      best_labels = rgs;
      have_best = true;
    }
    // Next restricted growth string: position i may rise to caps[i] + 1,
    // where caps[i] is the maximum over the prefix rgs[0..i-1].
    bool advanced = false;
    for (std::size_t i = n; i-- > 1;) {
      if (rgs[i] <= caps[i]) {
        ++rgs[i];
        for (std::size_t j = i + 1; j < n; ++j) {
          rgs[j] = 0;
          caps[j] = std::max(caps[j - 1], rgs[j - 1]);
        }
        advanced = true;
        break;
      }
    }
    if (!advanced) break;
  }
  return {induce_structure(ctx, eval.domain(), node_count, best_labels), best_q,
          count};
}

}  // namespace lago
