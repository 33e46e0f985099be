#pragma once

#include <string>
#include <vector>

#include "json.hpp"
#include "kamnf/diophantine.hpp"
#include "kamnf/kam.hpp"

namespace kamnf {

// Shortest decimal that round-trips a double (17 significant digits).
std::string fmt17(double x);

// Per-step CSV of an iteration run.  Header:
//   nu,s,n_min,norm_R,norm_F,norm_P_next,lemma41_bound,margin
// where margin = lemma41_bound - norm_F.
std::string run_csv(const std::vector<StepReport>& steps);

// Per-step CSV of a schedule.  Header: nu,s,delta,sigma,eps,th1_margin
// where th1_margin = 1 - th1.
std::string schedule_csv(const KamSchedule& schedule);

nlohmann::ordered_json steps_json(const std::vector<StepReport>& steps);
nlohmann::ordered_json schedule_json(const KamSchedule& schedule,
                                     const ScheduleReport& report);
nlohmann::ordered_json diophantine_json(const DiophantineParams& params);

void write_text_file(const std::string& path, const std::string& content);

}  // namespace kamnf
