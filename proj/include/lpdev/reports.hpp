#pragma once

#include <nlohmann/json_fwd.hpp>

#include <map>
#include <string>
#include <vector>

#include "lpdev/deviation.hpp"
#include "lpdev/jl_embed.hpp"
#include "lpdev/orlicz.hpp"

namespace lpdev::reports {

using Json = nlohmann::ordered_json;

inline constexpr int kSchemaVersion = 1;

// All report payloads are canonical: field order is fixed, no timestamps or
// host data, so identical runs are byte-identical.
Json make_envelope(const std::string& command,
                   const std::map<std::string, std::string>& config);

Json to_json(const orlicz::PsiEstimate& est);
Json to_json(const deviation::TailCurve& curve);
Json to_json(const deviation::DeviationReport& report, bool include_samples);
Json to_json(const jl::EmbeddingPlan& plan);
Json to_json(const jl::DistortionReport& report, bool include_ratios);

void write_json(const std::string& path, const Json& payload);

// (threshold, empirical, ci_low, ci_high, theory) rows
void write_tail_csv(const std::string& path, const deviation::TailCurve& curve);

// Minimal line chart of the tail curve (log-y), for quick inspection.
void write_tail_svg(const std::string& path, const deviation::TailCurve& curve);

}  // namespace lpdev::reports
