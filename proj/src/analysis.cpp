#include "treecot/analysis.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdio>

namespace treecot::analysis {
namespace {

std::string lower(const std::string& s) {
    std::string out = s;
    for (char& c : out) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    return out;
}

int count_occurrences(const std::string& haystack, const std::string& needle) {
    if (needle.empty()) return 0;
    int count = 0;
    for (std::size_t pos = haystack.find(needle); pos != std::string::npos;
         pos = haystack.find(needle, pos + needle.size()))
        ++count;
    return count;
}

std::string dot_escape(const std::string& s, std::size_t limit) {
    std::string out;
    std::size_t taken = 0;
    for (char c : s) {
        if (taken >= limit) {
            out += "...";
            break;
        }
        if (c == '"' || c == '\\') out += '\\';
        if (c == '\n') {
            out += "\\n";
        } else {
            out += c;
        }
        ++taken;
    }
    return out;
}

std::int64_t whitespace_tokens(const std::string& text) {
    std::int64_t count = 0;
    bool in_token = false;
    for (char c : text) {
        bool space = std::isspace(static_cast<unsigned char>(c)) != 0;
        if (!space && !in_token) ++count;
        in_token = !space;
    }
    return count;
}

}  // namespace

std::pair<int, int> count_text_backtracks(const std::string& text,
                                          const BacktrackMarkers& markers) {
    std::string hay = lower(text);
    int backtracks = 0, restarts = 0;
    for (const std::string& m : markers.backtrack) backtracks += count_occurrences(hay, lower(m));
    for (const std::string& m : markers.restart) restarts += count_occurrences(hay, lower(m));
    return {backtracks, restarts};
}

double pearson(const std::vector<double>& xs, const std::vector<double>& ys) {
    if (xs.size() != ys.size()) throw InputError("pearson: length mismatch");
    if (xs.size() < 2) throw InputError("pearson: need at least two points");
    double n = static_cast<double>(xs.size());
    double mx = 0.0, my = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        mx += xs[i];
        my += ys[i];
    }
    mx /= n;
    my /= n;
    double sxy = 0.0, sxx = 0.0, syy = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        double dx = xs[i] - mx, dy = ys[i] - my;
        sxy += dx * dy;
        sxx += dx * dx;
        syy += dy * dy;
    }
    if (sxx == 0.0 || syy == 0.0)
        throw InputError("pearson: undefined for zero-variance input");
    return sxy / std::sqrt(sxx * syy);
}

std::string export_tree_dot(const SearchTree& tree,
                            const std::optional<LinearSequence>& overlay) {
    std::string out = "digraph search_tree {\n";
    out += "  node [shape=box, fontsize=9];\n";
    char buf[64];
    for (const TreeNode& n : tree.nodes) {
        std::string label = "#" + std::to_string(n.node_id) + " ";
        label += n.step ? dot_escape(n.step->text, 40) : "root";
        std::snprintf(buf, sizeof buf, "\\nQ=%.3f N=%lld", n.q_value,
                      static_cast<long long>(n.visit_count));
        label += buf;
        std::string attrs;
        if (n.terminal_verdict == TerminalVerdict::correct)
            attrs = ", color=green, penwidth=2";
        else if (n.terminal_verdict == TerminalVerdict::incorrect)
            attrs = ", color=red, penwidth=2";
        out += "  n" + std::to_string(n.node_id) + " [label=\"" + label + "\"" + attrs + "];\n";
    }
    for (const TreeNode& n : tree.nodes)
        if (n.parent)
            out += "  n" + std::to_string(*n.parent) + " -> n" + std::to_string(n.node_id) +
                   ";\n";
    if (overlay) {
        for (std::size_t i = 1; i < overlay->entries.size(); ++i) {
            const SequenceEntry& e = overlay->entries[i];
            if (e.kind == JunctionKind::advance) continue;
            const char* tag = e.kind == JunctionKind::restart ? "restart" : "backtrack";
            out += "  n" + std::to_string(overlay->entries[i - 1].node) + " -> n" +
                   std::to_string(e.node) + " [style=dashed, color=blue, constraint=false, label=\"" +
                   tag + "\"];\n";
        }
    }
    out += "}\n";
    return out;
}

LengthStats length_stats(const std::vector<CotRecord>& records) {
    LengthStats s;
    s.count = records.size();
    if (records.empty()) return s;
    std::vector<std::int64_t> tokens;
    tokens.reserve(records.size());
    for (const CotRecord& r : records) {
        std::int64_t t = whitespace_tokens(r.response);
        tokens.push_back(t);
        s.token_total += t;
        s.token_max = std::max(s.token_max, t);
    }
    s.token_mean = static_cast<double>(s.token_total) / static_cast<double>(tokens.size());
    std::sort(tokens.begin(), tokens.end());
    std::size_t mid = tokens.size() / 2;
    s.token_median = tokens.size() % 2 == 1
                         ? static_cast<double>(tokens[mid])
                         : (static_cast<double>(tokens[mid - 1]) +
                            static_cast<double>(tokens[mid])) /
                               2.0;
    return s;
}

CorpusMetrics corpus_metrics(const std::vector<CotRecord>& records,
                             const BacktrackMarkers& markers) {
    CorpusMetrics m;
    m.lengths = length_stats(records);
    for (const CotRecord& r : records) {
        auto [b, rs] = count_text_backtracks(r.response, markers);
        m.backtracks += b;
        m.restarts += rs;
    }
    return m;
}

nlohmann::json to_json(const CorpusMetrics& m) {
    return {{"count", m.lengths.count},
            {"token_mean", m.lengths.token_mean},
            {"token_median", m.lengths.token_median},
            {"token_max", m.lengths.token_max},
            {"token_total", m.lengths.token_total},
            {"backtracks", m.backtracks},
            {"restarts", m.restarts}};
}

}  // namespace treecot::analysis
