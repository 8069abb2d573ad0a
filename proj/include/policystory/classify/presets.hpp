#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "policystory/corpus/types.hpp"

namespace policystory::classify {

inline constexpr const char* kFallbackTopicId = "unclassified";

// Built-in events: "union-budget" (8 substantive topics, 2019-2024) and
// "farmers-protests" (5 substantive topics, Aug 2020-2024). Keyword queries
// are the ones the original collection used. A config may take a preset
// whole or override any part of it.
std::optional<corpus::PolicyEvent> preset_event(std::string_view event_id);
std::optional<corpus::TopicTaxonomy> preset_taxonomy(std::string_view event_id);
std::vector<std::string> preset_ids();

}  // namespace policystory::classify
