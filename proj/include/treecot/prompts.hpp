#pragma once

#include <filesystem>
#include <string>
#include <vector>

namespace treecot::prompts {

// Few-shot prompt bodies shipped under assets/prompts; each ends with empty
// labeled slots ("Problem: ", "Solution: ", ...) that fill_slots completes.
std::string load_prompt(const std::filesystem::path& prompt_dir, const std::string& name);

// For each (label, value) pair, finds the LAST line starting with `label`
// and appends `value` at the end of that line. Labels must exist.
std::string fill_slots(std::string prompt,
                       const std::vector<std::pair<std::string, std::string>>& slots);

}  // namespace treecot::prompts
