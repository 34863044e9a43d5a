#ifndef CHOICELAB_JOINT_CHOICE_HPP
#define CHOICELAB_JOINT_CHOICE_HPP

#include "choicelab/random_utility.hpp"
#include "choicelab/region.hpp"

#include <array>
#include <string>

namespace choicelab {

struct joint_choice_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

enum class Rel { strict, weak, indiff };

/// Binary-menu choice event "p rel q" over weighted-utility preferences.
struct BinaryEvent {
    Lottery p, q;
    Rel rel = Rel::strict;

    BinaryEvent(Lottery p_, Lottery q_, Rel r = Rel::strict);
};

/// Conjunction of at most three binary events.
struct Cell {
    std::vector<BinaryEvent> events;
};

struct Decomposition {
    std::vector<Cell> cells;
    std::vector<std::pair<Lottery, Lottery>> tie_witnesses;
    std::vector<std::string> case_trace; // dispatch labels, e.g. "2-4", "2-3"
};

/// Decomposes the conjunction of four binary weighted-utility events into
/// cells of at most three events, equal to the input event up to ties and
/// pairwise disjoint off the recorded tie witnesses. Strict/weak input
/// relations are treated geometrically; output cells are weak.
Decomposition decompose4(const std::array<BinaryEvent, 4>& events);

/// Repeated four-event reduction until every cell has at most three events.
Decomposition reduce_joint_event(const std::vector<BinaryEvent>& events, int max_depth = 32);

/// Case labels actually constructed by the dispatcher (Appendix-style ids).
const std::vector<std::string>& decomposition_leaf_cases();

struct OracleOptions {
    uint64_t n = 100000;
    uint64_t seed = 20250807;
    unsigned threads = 0;
    D2 center{0.5, 0.5};
    double radius_a = 0.9;
    double radius_b = 1.7;
};

struct OracleReport {
    uint64_t samples = 0;
    uint64_t ties_skipped = 0;
    uint64_t mismatches = 0;
    uint64_t double_fires = 0; // cells firing together off the tie witnesses

    bool passed() const { return mismatches == 0 && double_fires == 0; }
};

/// Samples weighted-utility preferences (circle pivots, fair rotation coin,
/// two radii) and checks indicator(∧ events) == indicator(∨ cells) plus
/// single-firing, skipping the measure-zero tie samples.
OracleReport oracle_validate(const Decomposition& d, const std::vector<BinaryEvent>& events,
                             const OracleOptions& opt = {});

/// Joint probability that every (menu, chosen-subset) event realizes
/// simultaneously. Exact for finite mixtures, Monte Carlo for parametric.
ProbValue joint_choice_prob(const RandomPreference& mu,
                            const std::vector<std::pair<Menu, std::vector<size_t>>>& events,
                            const McOptions& opt = {});

/// The independence-violating pattern: p chosen from {p,q} while
/// q' = 1/2 q + 1/2 r is chosen from {p', q'} with p' = 1/2 p + 1/2 r.
ProbValue footnote_counterexample(const RandomPreference& mu, const Lottery& p, const Lottery& q,
                                  const Lottery& r, const McOptions& opt = {});

} // namespace choicelab

#endif
