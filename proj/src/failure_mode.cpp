#include "fmr/failure_mode.hpp"

#include <sstream>

#include "fmr/error.hpp"

namespace fmr {

char to_char(FailureMode mode) noexcept {
  switch (mode) {
    case FailureMode::High: return 'h';
    case FailureMode::Low: return 'l';
    case FailureMode::Commission: return 't';
    case FailureMode::Omission: return 'f';
    case FailureMode::Match: return 'm';
  }
  return '?';
}

std::string to_string(FailureMode mode) { return std::string(1, to_char(mode)); }

std::optional<FailureMode> mode_from_char(char c) noexcept {
  switch (c) {
    case 'h': return FailureMode::High;
    case 'l': return FailureMode::Low;
    case 't': return FailureMode::Commission;
    case 'f': return FailureMode::Omission;
    case 'm': return FailureMode::Match;
    default: return std::nullopt;
  }
}

FailureMode parse_mode(std::string_view text) {
  if (text.size() == 1) {
    if (auto mode = mode_from_char(text.front())) return *mode;
  }
  throw TypeError("unknown failure mode '" + std::string(text) + "'");
}

std::string to_string(ValueType type) {
  return type == ValueType::Real ? "real" : "bool";
}

bool compatible(FailureMode mode, ValueType type) noexcept {
  switch (mode) {
    case FailureMode::High:
    case FailureMode::Low: return type == ValueType::Real;
    case FailureMode::Commission:
    case FailureMode::Omission: return type == ValueType::Boolean;
    case FailureMode::Match: return true;
  }
  return false;
}

std::array<FailureMode, 3> family(ValueType type) noexcept {
  if (type == ValueType::Real)
    return {FailureMode::High, FailureMode::Match, FailureMode::Low};
  return {FailureMode::Commission, FailureMode::Match, FailureMode::Omission};
}

FailureMode invert(FailureMode mode) noexcept {
  switch (mode) {
    case FailureMode::High: return FailureMode::Low;
    case FailureMode::Low: return FailureMode::High;
    case FailureMode::Commission: return FailureMode::Omission;
    case FailureMode::Omission: return FailureMode::Commission;
    case FailureMode::Match: return FailureMode::Match;
  }
  return mode;
}

Direction compose(Direction a, Direction b) noexcept {
  return a == b ? Direction::Identity : Direction::Invert;
}

FailureMode apply(Direction d, FailureMode mode) noexcept {
  return d == Direction::Invert ? invert(mode) : mode;
}

Direction direction_of_sign(double s) noexcept {
  return s < 0 ? Direction::Invert : Direction::Identity;
}

Sign sign_of(double v) noexcept {
  if (v < 0) return Sign::Negative;
  if (v > 0) return Sign::Positive;
  return Sign::Zero;
}

std::string to_string(Sign s) {
  switch (s) {
    case Sign::Negative: return "neg";
    case Sign::Zero: return "zero";
    case Sign::Positive: return "pos";
  }
  return "?";
}

std::optional<Sign> sign_from_string(std::string_view text) noexcept {
  if (text == "neg") return Sign::Negative;
  if (text == "zero") return Sign::Zero;
  if (text == "pos") return Sign::Positive;
  return std::nullopt;
}

ValueType type_of(const Value& v) noexcept {
  return std::holds_alternative<bool>(v) ? ValueType::Boolean : ValueType::Real;
}

std::string to_string(const Value& v) {
  if (const bool* b = std::get_if<bool>(&v)) return *b ? "T" : "F";
  std::ostringstream os;
  os << std::get<double>(v);
  return os.str();
}

FailureMode md(const Value& reported, const Value& intended) {
  if (type_of(reported) != type_of(intended)) {
    throw TypeError("cannot compare " + to_string(type_of(reported)) +
                    " reported value with " + to_string(type_of(intended)) +
                    " intended value");
  }
  if (const bool* r = std::get_if<bool>(&reported)) {
    bool i = std::get<bool>(intended);
    if (*r == i) return FailureMode::Match;
    return *r ? FailureMode::Commission : FailureMode::Omission;
  }
  double r = std::get<double>(reported);
  double i = std::get<double>(intended);
  if (r > i) return FailureMode::High;
  if (r < i) return FailureMode::Low;
  return FailureMode::Match;
}

}  // namespace fmr
