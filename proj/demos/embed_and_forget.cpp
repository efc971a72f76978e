// Walks one configuration through the maps between the instances: a pair of
// disjoint intervals is embedded into the causal plane, checked there, and
// then re-read as a plain interior-disjoint configuration one dimension up.

#include <cstdio>

#include "cdops/instances.hpp"

namespace {

void show(const char* label, const cdops::MultiMorphism& m) {
  std::printf("%-22s %-6s n=%zu  pair margin %+.6f  containment %+.6f\n", label,
              m.instance.name.c_str(), m.instance.dimension,
              m.detail.min_pair_margin, m.detail.min_containment_margin);
}

}  // namespace

int main() {
  using namespace cdops;

  const MultiMorphism intervals = multi_validate(
      disc_instance(1),
      {RectMapD(0.4, Point(-0.5, {})), RectMapD(0.4, Point(0.5, {}))});
  show("intervals", intervals);

  const MultiMorphism balls = epsilon_embed(intervals);
  show("embedded balls", balls);

  const MultiMorphism diamonds = epsilon_embed_diamond(intervals);
  show("embedded diamonds", diamonds);

  const MultiMorphism forgotten = forget_omega(balls);
  show("causal forgotten", forgotten);

  const EpsilonExtraction back = extract_epsilon_preimage(balls);
  std::printf("extraction: in image = %s, error = %.2e\n",
              back.in_image ? "yes" : "no", back.max_coordinate_error);
  return 0;
}
