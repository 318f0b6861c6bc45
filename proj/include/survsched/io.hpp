#pragma once

#include <filesystem>
#include <optional>
#include <string>

#include "json.hpp"
#include "survsched/allocation.hpp"
#include "survsched/dynamic.hpp"
#include "survsched/oracle.hpp"

namespace survsched {

// Documents keep insertion order so output is stable and diffable.
using Json = nlohmann::ordered_json;

// All camera, object, sub-band and RB indices in documents are 1-based.
// Schemas are described in docs/formats.md.

Json to_json(const Scenario& scenario);
Scenario scenario_from_json(const Json& j);

Json to_json(const ScenarioParams& params);
// Fields absent from `j` keep the value from `defaults`.
ScenarioParams scenario_params_from_json(const Json& j, ScenarioParams defaults = {});

Json to_json(const SpectrumConfig& cfg);
SpectrumConfig spectrum_from_json(const Json& j, SpectrumConfig defaults = {});

Json to_json(const ChannelEnv& env);
ChannelEnv env_from_json(const Json& j, ChannelEnv defaults = {});

Json mcs_table_to_json(const std::vector<McsLevel>& table);
std::vector<McsLevel> mcs_table_from_json(const Json& j);

Json to_json(const ChannelState& channel);
ChannelState channel_from_json(const Json& j);

// Instance document: {"spectrum", "scenario", "channel"} where "channel" is
// either an explicit {"rb_req": ...} table or absent, in which case it is
// derived from the optional "env" and "mcs_table" members.
Json instance_to_json(const ScheduleInstance& inst,
                      const std::optional<ChannelEnv>& env = std::nullopt,
                      const std::optional<ScenarioParams>& generator = std::nullopt);
ScheduleInstance instance_from_json(const Json& j);

Json to_json(const AllocationMap& alloc, const Scenario& scenario);
AllocationMap allocation_from_json(const Json& j, const SpectrumConfig& cfg, int num_cameras);

Json to_json(const ExactSolution& solution, const Scenario& scenario);
Json to_json(const AdmitOutcome& outcome);
Json to_json(const BackgroundFlow& flow);
BackgroundFlow flow_from_json(const Json& j);

Json read_json_file(const std::filesystem::path& path);
void write_text_file(const std::filesystem::path& path, const std::string& text);

}  // namespace survsched
