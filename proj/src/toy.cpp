#include "treecot/toy.hpp"

#include <algorithm>
#include <charconv>
#include <cstdio>

#include "treecot/hash.hpp"

namespace treecot::toy {
namespace {

constexpr std::int64_t kValueCap = 1'000'000'000'000;  // keeps corpora sane

std::optional<std::int64_t> parse_int(std::string_view s) {
    while (!s.empty() && s.front() == ' ') s.remove_prefix(1);
    while (!s.empty() && s.back() == ' ') s.remove_suffix(1);
    std::int64_t v = 0;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc{} || ptr != s.data() + s.size()) return std::nullopt;
    return v;
}

// Expects `text` to continue with `lit` at `pos`; advances pos past it.
bool eat(std::string_view text, std::size_t& pos, std::string_view lit) {
    if (text.substr(pos, lit.size()) != lit) return false;
    pos += lit.size();
    return true;
}

std::optional<std::int64_t> eat_int(std::string_view text, std::size_t& pos) {
    std::size_t end = pos;
    if (end < text.size() && text[end] == '-') ++end;
    while (end < text.size() && text[end] >= '0' && text[end] <= '9') ++end;
    auto v = parse_int(text.substr(pos, end - pos));
    if (v) pos = end;
    return v;
}

void insert_sorted(std::vector<std::int64_t>& vals, std::int64_t v) {
    vals.insert(std::upper_bound(vals.begin(), vals.end(), v), v);
}

bool remove_one(std::vector<std::int64_t>& vals, std::int64_t v) {
    auto it = std::lower_bound(vals.begin(), vals.end(), v);
    if (it == vals.end() || *it != v) return false;
    vals.erase(it);
    return true;
}

std::optional<std::int64_t> apply_op(std::int64_t a, std::int64_t b, char op) {
    switch (op) {
        case '+': return a + b;
        case '-': return a >= b ? std::optional<std::int64_t>(a - b) : std::nullopt;
        case '*': {
            if (a != 0 && b != 0 && (a > kValueCap / b)) return std::nullopt;
            return a * b;
        }
        case '/': return (b != 0 && a % b == 0) ? std::optional<std::int64_t>(a / b) : std::nullopt;
        default: return std::nullopt;
    }
}

}  // namespace

std::string make_statement(const std::vector<std::int64_t>& numbers, std::int64_t target) {
    std::string s = "Combine the numbers [";
    for (std::size_t i = 0; i < numbers.size(); ++i) {
        if (i) s += ", ";
        s += std::to_string(numbers[i]);
    }
    s += "] using the operations +, -, *, / to reach the target ";
    s += std::to_string(target);
    s += '.';
    return s;
}

Problem make_problem(std::string id, const std::vector<std::int64_t>& numbers,
                     std::int64_t target) {
    Problem p;
    p.id = std::move(id);
    p.statement = make_statement(numbers, target);
    p.reference_answer = std::to_string(target);
    p.source_tag = "toy";
    return p;
}

std::optional<ToyState> parse_statement(const std::string& statement) {
    std::size_t open = statement.find('[');
    std::size_t close = statement.find(']', open == std::string::npos ? 0 : open);
    std::size_t tgt = statement.rfind("target ");
    if (open == std::string::npos || close == std::string::npos || tgt == std::string::npos)
        return std::nullopt;

    ToyState st;
    std::string_view body(statement.data() + open + 1, close - open - 1);
    while (!body.empty()) {
        std::size_t comma = body.find(',');
        auto v = parse_int(body.substr(0, comma));
        if (!v) return std::nullopt;
        st.values.push_back(*v);
        if (comma == std::string_view::npos) break;
        body.remove_prefix(comma + 1);
    }
    if (st.values.empty()) return std::nullopt;
    std::sort(st.values.begin(), st.values.end());

    std::size_t pos = tgt + 7;
    std::string_view rest(statement.data() + pos, statement.size() - pos);
    if (!rest.empty() && rest.back() == '.') rest.remove_suffix(1);
    auto t = parse_int(rest);
    if (!t) return std::nullopt;
    st.target = *t;
    return st;
}

std::vector<Move> legal_moves(const ToyState& state) {
    std::vector<Move> moves;
    if (state.answered || state.values.size() < 2) return moves;
    static constexpr char kOps[] = {'+', '-', '*', '/'};
    const auto& v = state.values;  // sorted, so (v[i], v[j]) pairs come out ordered
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (i > 0 && v[i] == v[i - 1]) continue;  // duplicate small operand
        for (std::size_t j = i + 1; j < v.size(); ++j) {
            if (j > i + 1 && v[j] == v[j - 1]) continue;  // duplicate large operand
            for (char op : kOps) {
                auto r = apply_op(v[j], v[i], op);
                if (!r) continue;
                moves.push_back({v[j], v[i], op, *r});
            }
        }
    }
    std::sort(moves.begin(), moves.end(), [](const Move& x, const Move& y) {
        if (x.a != y.a) return x.a < y.a;
        if (x.b != y.b) return x.b < y.b;
        return x.op < y.op;
    });
    return moves;
}

std::string combine_text(std::int64_t a, std::int64_t b, char op, std::int64_t stated) {
    std::string s = "Combine ";
    s += std::to_string(a);
    s += " and ";
    s += std::to_string(b);
    s += " using ";
    s += op;
    s += " to get ";
    s += std::to_string(stated);
    s += '.';
    return s;
}

std::string answer_text(std::int64_t value) {
    return "The final answer is $\\boxed{" + std::to_string(value) + "}$.";
}

std::optional<ParsedStep> parse_step(const std::string& text) {
    std::size_t pos = 0;
    ParsedStep p;
    if (eat(text, pos, "Combine ")) {
        auto a = eat_int(text, pos);
        if (!a || !eat(text, pos, " and ")) return std::nullopt;
        auto b = eat_int(text, pos);
        if (!b || !eat(text, pos, " using ")) return std::nullopt;
        if (pos >= text.size()) return std::nullopt;
        p.op = text[pos++];
        if (p.op != '+' && p.op != '-' && p.op != '*' && p.op != '/') return std::nullopt;
        if (!eat(text, pos, " to get ")) return std::nullopt;
        auto r = eat_int(text, pos);
        if (!r || !eat(text, pos, ".") || pos != text.size()) return std::nullopt;
        p.kind = ParsedStep::combine;
        p.a = *a;
        p.b = *b;
        p.stated = *r;
        return p;
    }
    if (eat(text, pos, "The final answer is $\\boxed{")) {
        auto v = eat_int(text, pos);
        if (!v || !eat(text, pos, "}$.") || pos != text.size()) return std::nullopt;
        p.kind = ParsedStep::answer;
        p.stated = *v;
        return p;
    }
    return std::nullopt;
}

bool apply_step(ToyState& state, const ParsedStep& step, bool check_arithmetic) {
    if (state.answered) return false;
    if (step.kind == ParsedStep::answer) {
        if (state.values.size() != 1 || state.values[0] != step.stated) return false;
        state.answered = true;
        state.stated_answer = step.stated;
        return true;
    }
    if (step.a < step.b) return false;
    auto truth = apply_op(step.a, step.b, step.op);
    if (!truth) return false;  // op itself illegal (bad subtraction/division)
    if (check_arithmetic && *truth != step.stated) return false;
    std::vector<std::int64_t>& vals = state.values;
    if (!remove_one(vals, step.a)) return false;
    if (!remove_one(vals, step.b)) {
        insert_sorted(vals, step.a);
        return false;
    }
    insert_sorted(vals, step.stated);
    return true;
}

std::optional<ToyState> replay(const Problem& problem, const std::vector<std::string>& steps,
                               bool check_arithmetic) {
    auto st = parse_statement(problem.statement);
    if (!st) return std::nullopt;
    for (const auto& line : steps) {
        auto p = parse_step(line);
        if (!p || !apply_step(*st, *p, check_arithmetic)) return std::nullopt;
    }
    return st;
}

bool judge_solution(const Problem& problem, const std::string& solution_text) {
    std::vector<std::string> lines;
    std::size_t start = 0;
    while (start <= solution_text.size()) {
        std::size_t nl = solution_text.find('\n', start);
        std::string line = solution_text.substr(
            start, nl == std::string::npos ? std::string::npos : nl - start);
        if (!line.empty()) lines.push_back(std::move(line));
        if (nl == std::string::npos) break;
        start = nl + 1;
    }
    if (lines.empty()) return false;
    auto st = replay(problem, lines, /*check_arithmetic=*/true);
    return st && st->answered && st->stated_answer &&
           std::to_string(*st->stated_answer) == problem.reference_answer;
}

std::vector<Problem> gen_corpus(const CorpusConfig& cfg) {
    std::vector<Problem> out;
    out.reserve(static_cast<std::size_t>(cfg.count));
    for (int i = 0; i < cfg.count; ++i) {
        SplitMix64 rng(derive_seed(cfg.seed, "gen-toy", cfg.id_prefix, {},
                                   static_cast<std::uint64_t>(i)));
        int n = cfg.min_numbers +
                static_cast<int>(rng.next_below(
                    static_cast<std::uint64_t>(cfg.max_numbers - cfg.min_numbers + 1)));
        std::vector<std::int64_t> numbers;
        for (int j = 0; j < n; ++j)
            numbers.push_back(cfg.value_lo +
                              static_cast<std::int64_t>(rng.next_below(
                                  static_cast<std::uint64_t>(cfg.value_hi - cfg.value_lo + 1))));

        ToyState st;
        st.values = numbers;
        std::sort(st.values.begin(), st.values.end());
        while (st.values.size() > 1) {
            auto moves = legal_moves(st);
            const Move& m = moves[rng.next_below(moves.size())];  // '+' always legal
            remove_one(st.values, m.a);
            remove_one(st.values, m.b);
            insert_sorted(st.values, m.result);
        }
        char idbuf[32];
        std::snprintf(idbuf, sizeof idbuf, "%s-%04d", cfg.id_prefix.c_str(), i);
        out.push_back(make_problem(idbuf, numbers, st.values[0]));
    }
    return out;
}

}  // namespace treecot::toy
