#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include <json.hpp>

namespace treecot {

// One parsed object per non-empty line; parse failures throw InputError
// naming the line number.
std::vector<nlohmann::json> read_jsonl(const std::filesystem::path& path);

// Writes via temp file + rename so readers never observe a half-written
// file and reruns are byte-atomic.
void write_jsonl_atomic(const std::filesystem::path& path,
                        const std::vector<nlohmann::json>& lines);

void write_text_atomic(const std::filesystem::path& path, const std::string& text);

}  // namespace treecot
