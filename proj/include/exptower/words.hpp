#ifndef EXPTOWER_WORDS_HPP
#define EXPTOWER_WORDS_HPP

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "exptower/xreal.hpp"

namespace exptower {

// Finite sequence of signs.  Indexing is 1-based throughout: sign_at(1) is
// the outermost sign of a tower.
class FiniteWord {
public:
    FiniteWord() = default;
    explicit FiniteWord(std::vector<Sign> signs) : signs_(std::move(signs)) {}

    std::size_t size() const { return signs_.size(); }
    bool empty() const { return signs_.empty(); }

    Sign sign_at(std::size_t n) const; // 1-based, throws std::out_of_range

    const std::vector<Sign>& signs() const { return signs_; }
    void push_back(Sign s) { signs_.push_back(s); }

    bool operator==(const FiniteWord&) const = default;

private:
    std::vector<Sign> signs_;
};

// Eventually periodic infinite sequence of signs: a finite prefix followed by
// a nonempty cycle repeated forever.
class InfiniteWord {
public:
    InfiniteWord(FiniteWord prefix, FiniteWord cycle);

    const FiniteWord& prefix() const { return prefix_; }
    const FiniteWord& cycle() const { return cycle_; }

    Sign sign_at(std::size_t n) const; // 1-based

    bool operator==(const InfiniteWord&) const = default; // structural, not semantic

private:
    FiniteWord prefix_;
    FiniteWord cycle_;
};

using Word = std::variant<FiniteWord, InfiniteWord>;

// Parses the word grammar
//     WORD  := SIGNS | SIGNS '(' SIGNS+ ')'
//     SIGNS := ('+' | '-')*
// plus the aliases "all+" = "(+)" and "all-" = "(-)".
// Throws ParseError on anything else (empty cycle, stray characters,
// text after the closing parenthesis).
Word parse_word(std::string_view text);

std::string format_word(const FiniteWord& w);
std::string format_word(const InfiniteWord& w);
std::string format_word(const Word& w);

// Parity of the composed map: true when the word contains an even number of
// minus signs, i.e. the composition is increasing.
bool is_increasing(const FiniteWord& w);

FiniteWord concat(const FiniteWord& gamma, const FiniteWord& w);
InfiniteWord concat(const FiniteWord& gamma, const InfiniteWord& w);
Word concat(const FiniteWord& gamma, const Word& w);

// 1-based lookup on either kind of word; out_of_range past a finite end.
Sign sign_at(const Word& w, std::size_t n);

bool has_at_least(const Word& w, std::size_t n);

// First n signs as a finite word.
FiniteWord prefix_of(const InfiniteWord& w, std::size_t n);
FiniteWord prefix_of(const Word& w, std::size_t n); // InsufficientSignsError if too short

// True when the two eventually periodic sequences agree at every index.
// Distinguishes sequences, not representations: "+(+)" equals "(+)".
bool same_sequence(const InfiniteWord& a, const InfiniteWord& b);

// Smallest index where the sequences differ, scanning up to max_n.
std::optional<std::size_t> first_difference(const InfiniteWord& a, const InfiniteWord& b,
                                            std::size_t max_n);

} // namespace exptower

#endif
