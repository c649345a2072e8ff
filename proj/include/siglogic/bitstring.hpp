#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace siglogic {

/// Fixed-length inclusion vector over the canonical reaction list of a
/// model: bit i decides whether reaction i is kept.
class BitString {
public:
    BitString() = default;
    explicit BitString(std::vector<std::uint8_t> bits);

    static BitString zeros(std::size_t n);
    static BitString ones(std::size_t n);
    /// From a string of '0'/'1' characters.
    static BitString from_string(const std::string& text);

    std::size_t size() const noexcept { return bits_.size(); }
    bool test(std::size_t i) const { return bits_.at(i) != 0; }
    void set(std::size_t i, bool v) { bits_.at(i) = v ? 1 : 0; }
    std::size_t count() const;

    const std::vector<std::uint8_t>& bits() const noexcept { return bits_; }
    std::string to_string() const;

    bool operator==(const BitString&) const = default;
    auto operator<=>(const BitString&) const = default;

private:
    std::vector<std::uint8_t> bits_;
};

}  // namespace siglogic
