#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <string_view>

namespace nvxbar {

/// The four programmable resistance levels of a 2-bit OxRRAM cell,
/// ordered by increasing resistance.
enum class StateLabel : std::uint8_t
{
    LRS1 = 0,
    LRS2 = 1,
    LRS3 = 2,
    HRS = 3,
};

inline constexpr std::array<StateLabel, 4> kAllStates{
        StateLabel::LRS1, StateLabel::LRS2, StateLabel::LRS3, StateLabel::HRS};

constexpr std::size_t index_of(StateLabel s) noexcept
{
    return static_cast<std::size_t>(s);
}

constexpr bool is_lrs(StateLabel s) noexcept { return s != StateLabel::HRS; }

std::string_view to_string(StateLabel s) noexcept;

/// Throws ParseError on an unknown label.
StateLabel parse_state(std::string_view text);

/// Small set of state labels.
class StateSet
{
public:
    constexpr StateSet() = default;
    constexpr StateSet(std::initializer_list<StateLabel> states)
    {
        for (auto s : states)
        {
            bits_ |= bit(s);
        }
    }

    static constexpr StateSet all()
    {
        return {StateLabel::LRS1, StateLabel::LRS2, StateLabel::LRS3,
                StateLabel::HRS};
    }

    constexpr bool contains(StateLabel s) const noexcept
    {
        return (bits_ & bit(s)) != 0;
    }
    constexpr std::size_t size() const noexcept
    {
        std::size_t count = 0;
        for (auto s : kAllStates)
        {
            count += contains(s) ? 1 : 0;
        }
        return count;
    }
    constexpr bool operator==(const StateSet &) const = default;

private:
    static constexpr std::uint8_t bit(StateLabel s)
    {
        return static_cast<std::uint8_t>(1U << index_of(s));
    }
    std::uint8_t bits_{0};
};

} // namespace nvxbar
