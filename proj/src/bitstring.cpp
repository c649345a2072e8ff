#include "siglogic/bitstring.hpp"

#include <algorithm>

#include "siglogic/errors.hpp"

namespace siglogic {

BitString::BitString(std::vector<std::uint8_t> bits) : bits_(std::move(bits)) {
    for (auto& b : bits_) b = b ? 1 : 0;
}

BitString BitString::zeros(std::size_t n) {
    return BitString(std::vector<std::uint8_t>(n, 0));
}

BitString BitString::ones(std::size_t n) {
    return BitString(std::vector<std::uint8_t>(n, 1));
}

BitString BitString::from_string(const std::string& text) {
    std::vector<std::uint8_t> bits;
    bits.reserve(text.size());
    for (char c : text) {
        if (c == '0')
            bits.push_back(0);
        else if (c == '1')
            bits.push_back(1);
        else
            throw UsageError("bitstring may only contain '0' and '1'");
    }
    return BitString(std::move(bits));
}

std::size_t BitString::count() const {
    return static_cast<std::size_t>(std::count(bits_.begin(), bits_.end(), 1));
}

std::string BitString::to_string() const {
    std::string s;
    s.reserve(bits_.size());
    for (auto b : bits_) s += b ? '1' : '0';
    return s;
}

}  // namespace siglogic
