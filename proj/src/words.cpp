#include "exptower/words.hpp"

#include <numeric>
#include <stdexcept>

#include "exptower/errors.hpp"

namespace exptower {

Sign FiniteWord::sign_at(std::size_t n) const {
    if (n < 1 || n > signs_.size())
        throw std::out_of_range("FiniteWord::sign_at: index is 1-based and bounded by size()");
    return signs_[n - 1];
}

InfiniteWord::InfiniteWord(FiniteWord prefix, FiniteWord cycle)
    : prefix_(std::move(prefix)), cycle_(std::move(cycle)) {
    if (cycle_.empty())
        throw DomainError("InfiniteWord: cycle must be nonempty");
}

Sign InfiniteWord::sign_at(std::size_t n) const {
    if (n < 1) throw std::out_of_range("InfiniteWord::sign_at: index is 1-based");
    if (n <= prefix_.size()) return prefix_.sign_at(n);
    return cycle_.signs()[(n - prefix_.size() - 1) % cycle_.size()];
}

namespace {

std::vector<Sign> scan_signs(std::string_view text, std::size_t& pos) {
    std::vector<Sign> out;
    while (pos < text.size() && (text[pos] == '+' || text[pos] == '-')) {
        out.push_back(text[pos] == '+' ? Sign::plus : Sign::minus);
        ++pos;
    }
    return out;
}

} // namespace

Word parse_word(std::string_view text) {
    if (text == "all+") return InfiniteWord(FiniteWord{}, FiniteWord({Sign::plus}));
    if (text == "all-") return InfiniteWord(FiniteWord{}, FiniteWord({Sign::minus}));

    std::size_t pos = 0;
    std::vector<Sign> prefix = scan_signs(text, pos);
    if (pos == text.size()) return FiniteWord(std::move(prefix));

    if (text[pos] != '(')
        throw ParseError("word: unexpected character '" + std::string(1, text[pos]) +
                         "' at position " + std::to_string(pos + 1));
    ++pos;
    std::vector<Sign> cycle = scan_signs(text, pos);
    if (cycle.empty())
        throw ParseError("word: cycle between '(' and ')' must contain at least one sign");
    if (pos == text.size() || text[pos] != ')')
        throw ParseError("word: expected ')' at position " + std::to_string(pos + 1));
    ++pos;
    if (pos != text.size())
        throw ParseError("word: trailing text after ')' at position " + std::to_string(pos + 1));
    return InfiniteWord(FiniteWord(std::move(prefix)), FiniteWord(std::move(cycle)));
}

std::string format_word(const FiniteWord& w) {
    std::string out;
    out.reserve(w.size());
    for (Sign s : w.signs()) out.push_back(to_char(s));
    return out;
}

std::string format_word(const InfiniteWord& w) {
    return format_word(w.prefix()) + "(" + format_word(w.cycle()) + ")";
}

std::string format_word(const Word& w) {
    return std::visit([](const auto& v) { return format_word(v); }, w);
}

bool is_increasing(const FiniteWord& w) {
    std::size_t minuses = 0;
    for (Sign s : w.signs())
        if (s == Sign::minus) ++minuses;
    return minuses % 2 == 0;
}

FiniteWord concat(const FiniteWord& gamma, const FiniteWord& w) {
    std::vector<Sign> signs = gamma.signs();
    signs.insert(signs.end(), w.signs().begin(), w.signs().end());
    return FiniteWord(std::move(signs));
}

InfiniteWord concat(const FiniteWord& gamma, const InfiniteWord& w) {
    return InfiniteWord(concat(gamma, w.prefix()), w.cycle());
}

Word concat(const FiniteWord& gamma, const Word& w) {
    return std::visit([&](const auto& v) -> Word { return concat(gamma, v); }, w);
}

Sign sign_at(const Word& w, std::size_t n) {
    return std::visit([n](const auto& v) { return v.sign_at(n); }, w);
}

bool has_at_least(const Word& w, std::size_t n) {
    if (const auto* f = std::get_if<FiniteWord>(&w)) return f->size() >= n;
    return true;
}

FiniteWord prefix_of(const InfiniteWord& w, std::size_t n) {
    std::vector<Sign> signs;
    signs.reserve(n);
    for (std::size_t k = 1; k <= n; ++k) signs.push_back(w.sign_at(k));
    return FiniteWord(std::move(signs));
}

FiniteWord prefix_of(const Word& w, std::size_t n) {
    if (!has_at_least(w, n))
        throw InsufficientSignsError("prefix_of: word supplies fewer than the requested signs");
    if (const auto* f = std::get_if<FiniteWord>(&w))
        return FiniteWord(std::vector<Sign>(f->signs().begin(), f->signs().begin() + n));
    return prefix_of(std::get<InfiniteWord>(w), n);
}

bool same_sequence(const InfiniteWord& a, const InfiniteWord& b) {
    // Beyond both prefixes the sequences are periodic, so agreement on one
    // common period after the longer prefix pins them forever.
    const std::size_t bound = std::max(a.prefix().size(), b.prefix().size()) +
                              std::lcm(a.cycle().size(), b.cycle().size());
    for (std::size_t n = 1; n <= bound; ++n)
        if (a.sign_at(n) != b.sign_at(n)) return false;
    return true;
}

std::optional<std::size_t> first_difference(const InfiniteWord& a, const InfiniteWord& b,
                                            std::size_t max_n) {
    for (std::size_t n = 1; n <= max_n; ++n)
        if (a.sign_at(n) != b.sign_at(n)) return n;
    return std::nullopt;
}

} // namespace exptower
