#pragma once

#include <compare>
#include <cstddef>
#include <string>
#include <string_view>

#include "sturmjsr/errors.hpp"

namespace sturmjsr {

// Finite word over {0,1}; ordered lexicographically with 0 < 1.
class BinaryWord {
public:
    BinaryWord() = default;

    explicit BinaryWord(std::string_view symbols) : symbols_(symbols) {
        for (char ch : symbols_)
            if (ch != '0' && ch != '1')
                throw error(errc::invalid_argument, "binary word contains '" + std::string(1, ch) + "'");
    }

    std::size_t size() const { return symbols_.size(); }
    bool empty() const { return symbols_.empty(); }
    int operator[](std::size_t i) const { return symbols_[i] - '0'; }
    const std::string& str() const { return symbols_; }

    std::size_t ones() const {
        std::size_t n = 0;
        for (char ch : symbols_) n += ch == '1';
        return n;
    }

    void push_back(int symbol) { symbols_.push_back(symbol ? '1' : '0'); }

    BinaryWord rotated(std::size_t k) const {
        if (symbols_.empty()) return {};
        k %= symbols_.size();
        BinaryWord out;
        out.symbols_ = symbols_.substr(k) + symbols_.substr(0, k);
        return out;
    }

    BinaryWord repeated(std::size_t times) const {
        BinaryWord out;
        out.symbols_.reserve(symbols_.size() * times);
        for (std::size_t i = 0; i < times; ++i) out.symbols_ += symbols_;
        return out;
    }

    friend auto operator<=>(const BinaryWord&, const BinaryWord&) = default;
    friend bool operator==(const BinaryWord&, const BinaryWord&) = default;

private:
    std::string symbols_;
};

}  // namespace sturmjsr
