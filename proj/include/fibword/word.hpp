#pragma once

#include <cstddef>
#include <cstdint>
#include <algorithm>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace fibword {

using Symbol = std::uint8_t;  // always 0 or 1

/// A finite binary word. Immutable by convention once built; the mutating
/// members exist for the generators and for flatten buffers.
class Word {
public:
    Word() = default;

    explicit Word(std::vector<Symbol> symbols) : symbols_(std::move(symbols)) {
        for (Symbol s : symbols_) check_symbol(s);
    }

    static Word from_string(std::string_view text) {
        Word w;
        w.symbols_.reserve(text.size());
        for (char c : text) {
            if (c != '0' && c != '1') {
                throw std::invalid_argument("Word::from_string: symbol must be '0' or '1'");
            }
            w.symbols_.push_back(static_cast<Symbol>(c - '0'));
        }
        return w;
    }

    std::size_t size() const { return symbols_.size(); }
    bool empty() const { return symbols_.empty(); }
    const Symbol* data() const { return symbols_.data(); }
    Symbol* data() { return symbols_.data(); }
    Symbol operator[](std::size_t i) const { return symbols_[i]; }
    std::span<const Symbol> view() const { return {symbols_.data(), symbols_.size()}; }

    void reserve(std::size_t n) { symbols_.reserve(n); }

    void push_back(Symbol s) {
        check_symbol(s);
        symbols_.push_back(s);
    }

    void append(const Word& other) {
        symbols_.insert(symbols_.end(), other.symbols_.begin(), other.symbols_.end());
    }

    /// Appends `other` with its first `skip` symbols dropped.
    void append_from(const Word& other, std::size_t skip) {
        if (skip > other.size()) throw std::out_of_range("Word::append_from: skip > size");
        symbols_.insert(symbols_.end(), other.symbols_.begin() + static_cast<std::ptrdiff_t>(skip),
                        other.symbols_.end());
    }

    void append_repeat(const Word& other, int times) {
        for (int i = 0; i < times; ++i) append(other);
    }

    Word prefix(std::size_t n) const {
        if (n > size()) throw std::out_of_range("Word::prefix: n > size");
        return Word(std::vector<Symbol>(symbols_.begin(), symbols_.begin() + static_cast<std::ptrdiff_t>(n)));
    }

    Word suffix(std::size_t n) const {
        if (n > size()) throw std::out_of_range("Word::suffix: n > size");
        return Word(std::vector<Symbol>(symbols_.end() - static_cast<std::ptrdiff_t>(n), symbols_.end()));
    }

    Word drop_last(std::size_t n) const { return prefix(size() - n); }

    bool is_palindrome() const {
        return std::equal(symbols_.begin(), symbols_.begin() + static_cast<std::ptrdiff_t>(size() / 2),
                          symbols_.rbegin());
    }

    std::string to_string() const {
        std::string out(size(), '0');
        for (std::size_t i = 0; i < size(); ++i) out[i] += symbols_[i];
        return out;
    }

    bool operator==(const Word&) const = default;

private:
    static void check_symbol(Symbol s) {
        if (s > 1) throw std::invalid_argument("Word: symbol must be 0 or 1");
    }

    std::vector<Symbol> symbols_;
};

/// Index of the first position where two words differ, if any. A length
/// mismatch reports the shorter length as the position.
struct Mismatch {
    std::size_t position;
    int lhs;  // -1 when past the end
    int rhs;
};

inline std::optional<Mismatch> first_mismatch(const Word& lhs, const Word& rhs) {
    const std::size_t common = std::min(lhs.size(), rhs.size());
    for (std::size_t i = 0; i < common; ++i) {
        if (lhs[i] != rhs[i]) return Mismatch{i, lhs[i], rhs[i]};
    }
    if (lhs.size() != rhs.size()) {
        return Mismatch{common, common < lhs.size() ? lhs[common] : -1,
                        common < rhs.size() ? rhs[common] : -1};
    }
    return std::nullopt;
}

}  // namespace fibword
