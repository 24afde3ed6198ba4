#include "treecot/verifier.hpp"

#include <cctype>
#include <cstdint>

namespace treecot::verifier {
namespace {

constexpr std::string_view kBoxed = "\\boxed{";

// Scan a balanced {...} body starting just after the opening brace.
std::optional<std::string> read_balanced(std::string_view text, std::size_t open) {
    int depth = 1;
    for (std::size_t i = open; i < text.size(); ++i) {
        if (text[i] == '{') ++depth;
        else if (text[i] == '}' && --depth == 0)
            return std::string(text.substr(open, i - open));
    }
    return std::nullopt;  // ran off the end unbalanced
}

bool is_space(char c) { return std::isspace(static_cast<unsigned char>(c)) != 0; }

struct Rational {
    __int128 num = 0;
    __int128 den = 1;  // > 0
};

// Integers, fractions ("a/b") and plain decimals; no exponents, no symbols.
std::optional<Rational> parse_rational(std::string_view s) {
    std::string compact;
    for (char c : s)
        if (!is_space(c)) compact += c;
    if (compact.empty() || compact.size() > 40) return std::nullopt;

    std::size_t i = 0;
    auto read_signed_int = [&](bool allow_dot, bool* saw_dot, int* frac_digits) -> std::optional<__int128> {
        bool neg = false;
        if (i < compact.size() && (compact[i] == '+' || compact[i] == '-')) {
            neg = compact[i] == '-';
            ++i;
        }
        __int128 v = 0;
        int digits = 0;
        *saw_dot = false;
        *frac_digits = 0;
        while (i < compact.size()) {
            char c = compact[i];
            if (c >= '0' && c <= '9') {
                v = v * 10 + (c - '0');
                ++digits;
                if (*saw_dot) ++*frac_digits;
                ++i;
            } else if (c == '.' && allow_dot && !*saw_dot) {
                *saw_dot = true;
                ++i;
            } else {
                break;
            }
        }
        if (digits == 0 || digits > 18) return std::nullopt;
        return neg ? -v : v;
    };

    bool dot = false;
    int frac = 0;
    auto head = read_signed_int(true, &dot, &frac);
    if (!head) return std::nullopt;

    Rational r;
    if (i == compact.size()) {
        r.num = *head;
        r.den = 1;
        for (int k = 0; k < frac; ++k) r.den *= 10;
        return r;
    }
    if (compact[i] == '/' && !dot) {
        ++i;
        bool d2 = false;
        int f2 = 0;
        auto tail = read_signed_int(false, &d2, &f2);
        if (!tail || i != compact.size() || *tail == 0) return std::nullopt;
        r.num = *head;
        r.den = *tail;
        if (r.den < 0) {
            r.den = -r.den;
            r.num = -r.num;
        }
        return r;
    }
    return std::nullopt;
}

}  // namespace

std::optional<std::string> extract_answer(std::string_view solution_text) {
    // Last balanced occurrence wins; unbalanced ones are skipped.
    std::size_t pos = solution_text.rfind(kBoxed);
    while (pos != std::string_view::npos) {
        if (auto body = read_balanced(solution_text, pos + kBoxed.size())) return body;
        if (pos == 0) break;
        pos = solution_text.rfind(kBoxed, pos - 1);
    }
    return std::nullopt;
}

std::string canonical_answer(std::string_view raw) {
    std::size_t b = 0, e = raw.size();
    while (b < e && is_space(raw[b])) ++b;
    while (e > b && is_space(raw[e - 1])) --e;
    while (e - b >= 2 && raw[b] == '$' && raw[e - 1] == '$') {
        ++b;
        --e;
        while (b < e && is_space(raw[b])) ++b;
        while (e > b && is_space(raw[e - 1])) --e;
    }
    std::string out;
    bool pending_space = false;
    for (std::size_t i = b; i < e; ++i) {
        if (is_space(raw[i])) {
            pending_space = true;
            continue;
        }
        if (pending_space && !out.empty()) out += ' ';
        pending_space = false;
        out += raw[i];
    }
    return out;
}

Verdict score(const std::optional<std::string>& predicted_answer,
              const std::string& reference_answer) {
    Verdict v;
    v.canonical_reference = canonical_answer(reference_answer);
    if (!predicted_answer) return v;
    v.canonical_predicted = canonical_answer(*predicted_answer);

    auto p = parse_rational(v.canonical_predicted);
    auto r = parse_rational(v.canonical_reference);
    if (p && r)
        v.is_correct = p->num * r->den == r->num * p->den;
    else
        v.is_correct = !v.canonical_predicted.empty() &&
                       v.canonical_predicted == v.canonical_reference;
    return v;
}

}  // namespace treecot::verifier
