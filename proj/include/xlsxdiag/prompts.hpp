#pragma once

#include "xlsxdiag/diagnostics.hpp"

#include <optional>
#include <string>

namespace xlsxdiag {

enum class PromptTask { entities, relations };

// Renders a prompt template with the diagram JSON and the attribute
// glossary substituted. The relations task additionally embeds the
// entity-analysis text; omitting it throws ExtractionError
// ("missing_entity_block").
std::string render_prompt(PromptTask task, const std::string& diagram_json,
                          const std::optional<std::string>& entity_block);

// The glossary text shared by both templates.
const char* attribute_glossary();

} // namespace xlsxdiag
