#include "xlsxdiag/prompts.hpp"

#include "prompt_assets.inc"

namespace xlsxdiag {

namespace {

void replace_slot(std::string& text, const std::string& slot, const std::string& value) {
    std::string needle = "{{" + slot + "}}";
    std::size_t pos = 0;
    while ((pos = text.find(needle, pos)) != std::string::npos) {
        text.replace(pos, needle.size(), value);
        pos += value.size();
    }
}

} // namespace

const char* attribute_glossary() { return kAttributeGlossary; }

std::string render_prompt(PromptTask task, const std::string& diagram_json,
                          const std::optional<std::string>& entity_block) {
    std::string text;
    if (task == PromptTask::entities) {
        text = kEntitiesTemplate;
    } else {
        if (!entity_block)
            throw ExtractionError("missing_entity_block",
                                  "the relations prompt requires an entity analysis block");
        text = kRelationsTemplate;
        replace_slot(text, "entity_analysis", *entity_block);
    }
    replace_slot(text, "attribute_glossary", kAttributeGlossary);
    replace_slot(text, "diagram_json", diagram_json);
    return text;
}

} // namespace xlsxdiag
