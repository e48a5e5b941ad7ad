#pragma once

#include "locus/decoder.hpp"
#include "locus/rational.hpp"

#include <map>
#include <string>
#include <variant>
#include <vector>

namespace locus {

/// Flat JSON-lines emission. Every report line carries "schema": 1;
/// probabilities appear as {"num": .., "den": .., "float": ..}.
using ReportValue = std::variant<long long, double, bool, std::string, Rat, std::vector<int>>;

std::string report_line(const std::string& kind,
                        const std::vector<std::pair<std::string, ReportValue>>& fields);

std::string eval_report_line(const std::string& kind, const EvalReport& rep);

}  // namespace locus
