#ifndef CHOICELAB_SVG_HPP
#define CHOICELAB_SVG_HPP

#include "choicelab/random_utility.hpp"

#include <iosfwd>

namespace choicelab {

struct RenderOptions {
    int width = 640;
    int height = 560;
    int n_curves = 7;  // indifference lines per preference
    int n_samples = 14; // sampled pivots for distribution figures
    uint64_t seed = 20250807;
};

/// Triangle, indifference lines through a grid of anchor lotteries, pivot
/// marks, and an arrow showing the direction of increasing preference.
void render_preference_svg(std::ostream& os, const Preference& pref, const RenderOptions& opt = {});

/// For the parametric kinds: the triangle plus sampled pivots / gradients and
/// the generating circle where there is one. Finite mixtures draw every
/// component's indifference map.
void render_distribution_svg(std::ostream& os, const RandomPreference& mu,
                             const RenderOptions& opt = {});

} // namespace choicelab

#endif
