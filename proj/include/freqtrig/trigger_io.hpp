#pragma once

#include <filesystem>

#include <json.hpp>

#include "freqtrig/trigger.hpp"

namespace freqtrig {

/// Insertion-ordered JSON, so documents serialize in a stable field order.
using Json = nlohmann::ordered_json;

inline constexpr int kTriggerFormatVersion = 1;

Json trigger_to_json(const FrequencyTrigger& trigger);

/// Accepts and ignores unknown top-level fields (CLI headers). Throws
/// ParseError on missing or mistyped fields and InvalidInput when the
/// trigger fails validation.
FrequencyTrigger trigger_from_json(const Json& doc);

/// Writes a JSON document, pretty-printed, newline-terminated.
void write_json(const Json& doc, const std::filesystem::path& path);
Json read_json(const std::filesystem::path& path);

void save_trigger(const FrequencyTrigger& trigger, const std::filesystem::path& path);
FrequencyTrigger load_trigger(const std::filesystem::path& path);

}  // namespace freqtrig
