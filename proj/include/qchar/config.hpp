#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>

#include "qchar/qscalar.hpp"

namespace qchar {

// Hard bounds on spectral exponents and multiplicities.
struct Limits {
  int max_spectral = 64;
  int max_degree = 32;
};

Limits& limits();
void check_spectral(int r);
void check_multiplicity(long e);

struct Window {
  int rmin = -64;
  int rmax = 64;
  bool contains(int r) const { return r >= rmin && r <= rmax; }
  friend bool operator==(const Window&, const Window&) = default;
};

// Tracked region of a q-character: A-index window plus total degree cap.
struct Region {
  Window window;
  int degcap = 32;
  friend bool operator==(const Region&, const Region&) = default;
};

enum class QMode { Symbolic, Rational };
enum class OutputFormat { Json, Text };

struct RunConfig {
  Window window{-8, 0};
  int degcap = 4;
  int depth = 2;
  QMode qmode = QMode::Symbolic;
  Rational q0a = 2, q0b = 3;
  std::uint64_t seed = 1;
  OutputFormat format = OutputFormat::Text;
};

// Parses "a:b"; throws std::invalid_argument.
Window parse_window(const std::string& s);
// Parses "symbolic" or "a,b" with rationals a,b not in {0,1,-1}.
void parse_qmode(const std::string& s, RunConfig& cfg);
// Applies QCHAR_WINDOW, QCHAR_DEGCAP, QCHAR_DEPTH, QCHAR_Q, QCHAR_SEED, QCHAR_FORMAT.
void apply_env(RunConfig& cfg);

struct ParseError : std::invalid_argument {
  ParseError(const std::string& what, size_t pos)
      : std::invalid_argument(what + " at position " + std::to_string(pos)), pos(pos) {}
  size_t pos;
};

// Minimal cursor for the factor syntaxes `Name[args]^e * ...`.
class TextCursor {
 public:
  explicit TextCursor(const std::string& s) : s_(s) {}
  void skip_ws();
  bool at_end();
  bool eat(char c);
  void expect(char c);
  long integer();
  std::string rational_text();
  std::string word();
  size_t pos() const { return p_; }
  [[noreturn]] void fail(const std::string& what) const { throw ParseError(what, p_); }

 private:
  const std::string& s_;
  size_t p_ = 0;
};

}  // namespace qchar
