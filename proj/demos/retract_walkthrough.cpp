// Samples a causally disjoint configuration in dimension 2, runs the full
// retraction onto the time-zero slice, and writes two SVG files next to the
// working directory: the start configuration with its light cones, and the
// same picture with the certified path overlaid.
//
//   retract_walkthrough [seed]

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <string>

#include "cdops/homotopy.hpp"
#include "cdops/render.hpp"

int main(int argc, char** argv) {
  const std::uint64_t seed = argc > 1 ? std::strtoull(argv[1], nullptr, 10) : 7;

  const cdops::OrthoInstance inst = cdops::cd_instance(2);
  const cdops::MultiMorphism psi = cdops::sample_multimorphism(inst, 3, seed, 0.02);
  std::printf("configuration (seed %llu):\n", static_cast<unsigned long long>(seed));
  for (const auto& f : psi.maps)
    std::printf("  ball  r = %.4f  center = (%.4f, %.4f)\n", f.scale, f.translate.t,
                f.translate.x[0]);
  std::printf("worst pairwise margin   %.6f\n", psi.detail.min_pair_margin);
  std::printf("worst containment       %.6f\n", psi.detail.min_containment_margin);

  const cdops::HomotopyPath path = cdops::retract_full(psi, 65);
  std::printf("slide span              %.6f\n", path.slide_span);
  std::printf("shrink floor            %.6f\n", path.shrink_floor);

  double floor = path.samples.front().margin;
  for (const auto& s : path.samples) floor = std::min(floor, s.margin);
  std::printf("margin floor on path    %.6f\n", floor);

  const cdops::EpsilonExtraction ex = cdops::extract_epsilon_preimage(
      cdops::multi_validate(inst, path.endpoint().maps));
  std::printf("endpoint in image:      %s (error %.2e)\n", ex.in_image ? "yes" : "no",
              ex.max_coordinate_error);

  cdops::RenderOptions start_opt;
  start_opt.cones = true;
  std::ofstream("walkthrough_start.svg") << cdops::render_svg(inst, psi.maps, start_opt);

  cdops::RenderOptions path_opt;
  path_opt.path = &path.samples;
  std::ofstream("walkthrough_path.svg")
      << cdops::render_svg(inst, psi.maps, path_opt);
  std::puts("wrote walkthrough_start.svg and walkthrough_path.svg");
  return 0;
}
