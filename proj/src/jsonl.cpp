#include "treecot/jsonl.hpp"

#include <fstream>

#include "treecot/types.hpp"

namespace treecot {

std::vector<nlohmann::json> read_jsonl(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw InputError("cannot open " + path.string());
    std::vector<nlohmann::json> out;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
        try {
            out.push_back(nlohmann::json::parse(line));
        } catch (const nlohmann::json::exception& e) {
            throw InputError(path.string() + ":" + std::to_string(lineno) + ": " + e.what());
        }
    }
    return out;
}

void write_text_atomic(const std::filesystem::path& path, const std::string& text) {
    if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
    std::filesystem::path tmp = path;
    tmp += ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw InputError("cannot write " + tmp.string());
        out << text;
        if (!out.flush()) throw InputError("write failed for " + tmp.string());
    }
    std::filesystem::rename(tmp, path);
}

void write_jsonl_atomic(const std::filesystem::path& path,
                        const std::vector<nlohmann::json>& lines) {
    std::string buf;
    for (const auto& j : lines) {
        buf += j.dump();
        buf += '\n';
    }
    write_text_atomic(path, buf);
}

}  // namespace treecot
