#pragma once

/// @file failure_mode.hpp
/// Failure modes, typed values and the direction operators.
///
/// A failure mode abstracts the deviation between the value a variable
/// reports and the value it should carry. Real-valued variables deviate
/// high or low; Boolean ones by commission (reported true, intended false)
/// or omission. Match means no deviation and applies to both types.

#include <array>
#include <optional>
#include <string>
#include <string_view>
#include <variant>

namespace fmr {

enum class ValueType { Real, Boolean };

enum class FailureMode {
  High,        // h
  Low,         // l
  Commission,  // t
  Omission,    // f
  Match,       // m
};

inline constexpr std::array<FailureMode, 5> kAllModes = {
    FailureMode::High, FailureMode::Low, FailureMode::Commission,
    FailureMode::Omission, FailureMode::Match};

/// Single-letter spelling used in reports and model files.
char to_char(FailureMode mode) noexcept;
std::string to_string(FailureMode mode);
std::optional<FailureMode> mode_from_char(char c) noexcept;
/// Throws TypeError on anything other than one of "hltfm".
FailureMode parse_mode(std::string_view text);

std::string to_string(ValueType type);

/// True when `mode` may be carried by a variable of `type`.
bool compatible(FailureMode mode, ValueType type) noexcept;

/// The three modes a variable of `type` can be in; their disjunction is the
/// "any failure mode" wildcard.
std::array<FailureMode, 3> family(ValueType type) noexcept;

/// Swaps the deviation direction: h<->l, t<->f, m fixed.
FailureMode invert(FailureMode mode) noexcept;

enum class Direction { Identity, Invert };

Direction compose(Direction a, Direction b) noexcept;
FailureMode apply(Direction d, FailureMode mode) noexcept;

/// Invert for strictly negative `s`, identity otherwise (including zero).
Direction direction_of_sign(double s) noexcept;

enum class Sign { Negative, Zero, Positive };

Sign sign_of(double v) noexcept;
std::string to_string(Sign s);
std::optional<Sign> sign_from_string(std::string_view text) noexcept;

/// A concrete value carried by a variable in one of the two worlds.
using Value = std::variant<double, bool>;

ValueType type_of(const Value& v) noexcept;
std::string to_string(const Value& v);

/// Classifies a reported/intended pair. Throws TypeError when the two
/// values are of different types.
FailureMode md(const Value& reported, const Value& intended);

}  // namespace fmr
