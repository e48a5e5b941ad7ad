#include "locus/report.hpp"

#include "json.hpp"

namespace locus {

using nlohmann::json;

static json rat_json(const Rat& r) {
    return json{{"num", r.numerator()}, {"den", r.denominator()}, {"float", to_double(r)}};
}

std::string report_line(const std::string& kind,
                        const std::vector<std::pair<std::string, ReportValue>>& fields) {
    json j;
    j["schema"] = 1;
    j["kind"] = kind;
    for (const auto& [key, value] : fields) {
        std::visit(
            [&](const auto& v) {
                using T = std::decay_t<decltype(v)>;
                if constexpr (std::is_same_v<T, Rat>)
                    j[key] = rat_json(v);
                else
                    j[key] = v;
            },
            value);
    }
    return j.dump();
}

std::string eval_report_line(const std::string& kind, const EvalReport& rep) {
    json j;
    j["schema"] = 1;
    j["kind"] = kind;
    j["exact"] = rep.exact;
    j["completeness"] = rat_json(rep.completeness);
    j["soundness_error"] = rat_json(rep.soundness_error);
    j["q_max"] = rep.q_max;
    j["trials"] = rep.trials;
    j["seed"] = rep.seed;
    if (!rep.exact) {
        j["mean_error"] = rep.mean_error;
        j["mean_halfwidth"] = rep.mean_halfwidth;
    }
    if (rep.witness) {
        j["witness"] = {{"target", rep.witness->target.str()},
                        {"b", rep.witness->b},
                        {"y", rep.witness->y}};
    }
    return j.dump();
}

}  // namespace locus
