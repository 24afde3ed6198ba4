#include "treecot/prompts.hpp"

#include <fstream>
#include <sstream>

#include "treecot/types.hpp"

namespace treecot::prompts {

std::string load_prompt(const std::filesystem::path& prompt_dir, const std::string& name) {
    std::filesystem::path path = prompt_dir / (name + ".txt");
    std::ifstream in(path, std::ios::binary);
    if (!in) throw InputError("cannot open prompt " + path.string());
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

std::string fill_slots(std::string prompt,
                       const std::vector<std::pair<std::string, std::string>>& slots) {
    for (const auto& [label, value] : slots) {
        // Last line that begins with the label (the fill-in slot at the tail;
        // earlier occurrences belong to few-shot examples).
        std::size_t pos = std::string::npos;
        for (std::size_t at = prompt.find(label); at != std::string::npos;
             at = prompt.find(label, at + 1))
            if (at == 0 || prompt[at - 1] == '\n') pos = at;
        if (pos == std::string::npos)
            throw InputError("prompt slot not found: " + label);
        std::size_t eol = prompt.find('\n', pos);
        if (eol == std::string::npos) eol = prompt.size();
        prompt.insert(eol, value);
    }
    return prompt;
}

}  // namespace treecot::prompts
