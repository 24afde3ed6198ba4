#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "treecot/types.hpp"

namespace treecot::toy {

// Countdown-style arithmetic: combine the given integers two at a time with
// + - * / until one value remains, then box it. Division must be exact,
// subtraction is ordered large-minus-small, so every intermediate value is a
// non-negative integer and everything is brute-forceable.

struct ToyState {
    std::vector<std::int64_t> values;  // sorted ascending
    std::int64_t target = 0;
    bool answered = false;
    std::optional<std::int64_t> stated_answer;
};

struct Move {
    std::int64_t a = 0;  // a >= b
    std::int64_t b = 0;
    char op = '+';
    std::int64_t result = 0;
};

struct ParsedStep {
    enum Kind { combine, answer } kind = combine;
    std::int64_t a = 0;
    std::int64_t b = 0;
    char op = '+';
    std::int64_t stated = 0;  // stated result, or the boxed value for answers
};

std::string make_statement(const std::vector<std::int64_t>& numbers, std::int64_t target);
Problem make_problem(std::string id, const std::vector<std::int64_t>& numbers,
                     std::int64_t target);

std::optional<ToyState> parse_statement(const std::string& statement);

// Distinct (a, b, op) moves, deterministically ordered.
std::vector<Move> legal_moves(const ToyState& state);

std::string combine_text(std::int64_t a, std::int64_t b, char op, std::int64_t stated);
std::string answer_text(std::int64_t value);

std::optional<ParsedStep> parse_step(const std::string& text);

// Applies one step, trusting its stated result (how a policy continues a
// prefix that may contain mis-stated arithmetic). Returns false when the
// step is structurally illegal for the state. check_arithmetic additionally
// rejects steps whose stated result is not the true result.
bool apply_step(ToyState& state, const ParsedStep& step, bool check_arithmetic);

// Replays problem + given step texts; nullopt when any line fails to parse
// or apply.
std::optional<ToyState> replay(const Problem& problem, const std::vector<std::string>& steps,
                               bool check_arithmetic);

// True iff the solution replays with exact arithmetic, ends with a boxed
// answer equal to the single remaining value, and hits the reference target.
bool judge_solution(const Problem& problem, const std::string& solution_text);

struct CorpusConfig {
    int count = 20;
    std::uint64_t seed = 0;
    int min_numbers = 3;
    int max_numbers = 4;
    std::int64_t value_lo = 1;
    std::int64_t value_hi = 9;
    std::string id_prefix = "toy";
};

// Problems are built by actually playing random legal moves, so every one is
// solvable by construction.
std::vector<Problem> gen_corpus(const CorpusConfig& cfg);

}  // namespace treecot::toy
