// Serialization of run and schedule records to CSV and JSON.

#include "kamnf/report.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

namespace kamnf {

std::string fmt17(double x) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

std::string run_csv(const std::vector<StepReport>& steps) {
    std::ostringstream out;
    out << "nu,s,n_min,norm_R,norm_F,norm_P_next,lemma41_bound,margin\n";
    for (const StepReport& r : steps) {
        out << r.nu << ',' << r.s << ',' << r.n_min << ',' << fmt17(r.norm_R)
            << ',' << fmt17(r.norm_F) << ',' << fmt17(r.norm_P_next) << ','
            << fmt17(r.lemma41_bound) << ','
            << fmt17(r.lemma41_bound - r.norm_F) << '\n';
    }
    return out.str();
}

std::string schedule_csv(const KamSchedule& schedule) {
    std::ostringstream out;
    out << "nu,s,delta,sigma,eps,th1_margin\n";
    for (const StepParams& p : schedule.steps) {
        out << p.nu << ',' << fmt17(p.s) << ',' << fmt17(p.delta) << ','
            << fmt17(p.sigma) << ',' << fmt17(p.eps) << ','
            << fmt17(1.0 - p.th1) << '\n';
    }
    return out.str();
}

nlohmann::ordered_json steps_json(const std::vector<StepReport>& steps) {
    nlohmann::ordered_json arr = nlohmann::ordered_json::array();
    for (const StepReport& r : steps) {
        arr.push_back({{"nu", r.nu},
                       {"s", r.s},
                       {"n_min", r.n_min},
                       {"truncation", {r.truncation_range.first,
                                       r.truncation_range.second}},
                       {"kernel_mass", r.kernel_mass},
                       {"norm_R", r.norm_R},
                       {"norm_F", r.norm_F},
                       {"norm_P_next", r.norm_P_next},
                       {"lemma41_bound", r.lemma41_bound},
                       {"bound_satisfied", r.bound_satisfied}});
    }
    return arr;
}

nlohmann::ordered_json schedule_json(const KamSchedule& schedule,
                                     const ScheduleReport& report) {
    nlohmann::ordered_json j;
    j["q"] = schedule.q;
    j["tau"] = schedule.tau;
    j["c1"] = schedule.c1;
    j["c2"] = schedule.c2;
    j["c3"] = schedule.c3;
    j["steps"] = static_cast<int>(schedule.steps.size());
    j["rho_end"] = schedule.rho_end;
    j["gamma_end"] = schedule.gamma_end;
    j["sum_delta"] = report.sum_delta;
    j["delta_tail"] = report.delta_tail;
    j["sum_sigma"] = report.sum_sigma;
    j["sigma_tail"] = report.sigma_tail;
    j["sum_eps"] = report.sum_eps;
    j["eps_tail"] = report.eps_tail;
    j["tails_bounded"] = report.tails_bounded;
    j["pf3"] = report.pf3;
    j["pf4"] = report.pf4;
    j["th1_ok"] = report.th1_ok;
    j["th1_worst_margin"] = report.th1_worst_margin;
    j["feasible"] = report.feasible;
    return j;
}

nlohmann::ordered_json diophantine_json(const DiophantineParams& params) {
    nlohmann::ordered_json j;
    j["omega"] = params.omega;
    j["alpha"] = params.alpha;
    j["tau"] = params.tau;
    j["K_verified"] = params.K_verified;
    return j;
}

void write_text_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error("cannot open " + path + " for writing");
    out << content;
    if (!out) throw Error("write to " + path + " failed");
}

}  // namespace kamnf
