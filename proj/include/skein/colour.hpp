#pragma once

#include <compare>
#include <string>

#include "skein/common.hpp"

namespace skein {

// Colours form the set {0+, 0-} union {1, 2, 3, ...}.  A disc of colour
// n >= 1 carries 2n marked boundary points; the two zero colours carry none
// and differ only in the shade of the region touching the boundary.
class Colour {
 public:
  Colour() : code_(1) {}

  static Colour num(int n) {
    SKEIN_CHECK_MSG(n >= 1, "numeric colour must be >= 1, got " << n);
    return Colour(n);
  }
  static Colour zero_plus() { return Colour(0); }
  static Colour zero_minus() { return Colour(-1); }

  bool is_zero() const { return code_ <= 0; }
  bool is_zero_plus() const { return code_ == 0; }
  bool is_zero_minus() const { return code_ == -1; }
  bool is_numeric() const { return code_ >= 1; }

  int n() const {
    SKEIN_CHECK(is_numeric());
    return code_;
  }
  // Number of marked points on the disc boundary.
  int points() const { return code_ >= 1 ? 2 * code_ : 0; }

  // Shade of the boundary-adjacent region next to the star arc: colour 0-
  // anchors black there, every other colour anchors white.
  bool star_face_white() const { return code_ != -1; }

  std::string str() const {
    if (code_ == 0) return "0+";
    if (code_ == -1) return "0-";
    return std::to_string(code_);
  }

  static Colour parse(const std::string& s) {
    if (s == "0+") return zero_plus();
    if (s == "0-") return zero_minus();
    size_t pos = 0;
    int v = std::stoi(s, &pos);
    SKEIN_CHECK_MSG(pos == s.size() && v >= 1, "bad colour '" << s << "'");
    return num(v);
  }

  friend bool operator==(const Colour&, const Colour&) = default;
  friend auto operator<=>(const Colour&, const Colour&) = default;

  // Stable integer key: 0- -> -1, 0+ -> 0, n -> n.
  int key() const { return code_; }

 private:
  explicit Colour(int code) : code_(code) {}
  int code_;
};

inline std::ostream& operator<<(std::ostream& os, const Colour& c) {
  return os << c.str();
}

}  // namespace skein
