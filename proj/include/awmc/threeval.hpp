#pragma once

#include <string_view>

namespace awmc {

/// Truth value of a formula at an evaluation point. A formula is Undefined
/// exactly when it mentions atoms the point's vocabulary cannot express.
enum class ThreeVal : unsigned char { False = 0, True = 1, Undefined = 2 };

constexpr ThreeVal to_threeval(bool b) { return b ? ThreeVal::True : ThreeVal::False; }

constexpr bool is_true(ThreeVal v) { return v == ThreeVal::True; }
constexpr bool is_false(ThreeVal v) { return v == ThreeVal::False; }
constexpr bool is_defined(ThreeVal v) { return v != ThreeVal::Undefined; }

constexpr std::string_view to_string(ThreeVal v) {
  switch (v) {
    case ThreeVal::True: return "true";
    case ThreeVal::False: return "false";
    default: return "undefined";
  }
}

}  // namespace awmc
