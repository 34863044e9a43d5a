#ifndef CHOICELAB_JSON_IO_HPP
#define CHOICELAB_JSON_IO_HPP

#include "choicelab/axioms.hpp"
#include "choicelab/joint_choice.hpp"

#include <json.hpp>

namespace choicelab {

using json = nlohmann::json;

struct io_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Lotteries: {"x": "1/2", "y": "0.25", "chart": "MM"}. Coordinates are
// rational strings or decimal strings; both parse exactly.
json lottery_to_json(const Lottery& l);
Lottery lottery_from_json(const json& j);

json menu_to_json(const Menu& m);
Menu menu_from_json(const json& j);
std::vector<Menu> menus_from_json(const json& j);

// Preferences: tagged by "kind" in
// eu | wu_pivot | wu_functional | semi_weighted | implicit.
// The implicit kind is parse-only (families "eu" and "wu").
json preference_to_json(const Preference& p);
Preference preference_from_json(const json& j);

// Distributions: finite_mixture | circle_rwu | uniform_eu | slope_pair.
json random_preference_to_json(const RandomPreference& mu);
RandomPreference random_preference_from_json(const json& j);

json slope_law_to_json(const SlopeLaw& law);
SlopeLaw slope_law_from_json(const json& j);

// RCC files: a list of {"menu": [...], "rows": [{"subset": [0,1],
// "prob": "1/2" | 0.25, "stderr": ...}]}, or an object {"menus": [...],
// "companions": [...]} when companion metadata is present.
json rcc_to_json(const RCC& rcc);
RCC rcc_from_json(const json& j);

json binary_events_to_json(const std::vector<BinaryEvent>& events);
std::vector<BinaryEvent> binary_events_from_json(const json& j);

// Joint-choice tables: a list of {"events": [{"menu": [...], "chosen": [i,..]}],
// "prob": ...} rows, one per joint event queried.
struct JointTableRow {
    std::vector<std::pair<Menu, std::vector<size_t>>> events;
    ProbValue prob;
};
json joint_table_to_json(const std::vector<JointTableRow>& rows);
std::vector<JointTableRow> joint_table_from_json(const json& j);

json decomposition_to_json(const Decomposition& d);

json axiom_report_to_json(const AxiomReport& r);

json prob_value_to_json(const ProbValue& p);

} // namespace choicelab

#endif
