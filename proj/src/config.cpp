#include "qchar/config.hpp"

#include <cctype>
#include <cstdlib>
#include <stdexcept>

namespace qchar {

Limits& limits() {
  static Limits l;
  return l;
}

void check_spectral(int r) {
  if (r > limits().max_spectral || r < -limits().max_spectral)
    throw std::overflow_error("spectral exponent " + std::to_string(r) + " exceeds bound");
}

void check_multiplicity(long e) {
  if (e > limits().max_degree || e < -limits().max_degree)
    throw std::overflow_error("multiplicity " + std::to_string(e) + " exceeds bound");
}

namespace {

int parse_int(const std::string& s) {
  size_t pos = 0;
  int v = std::stoi(s, &pos);
  if (pos != s.size()) throw std::invalid_argument("bad integer: " + s);
  return v;
}

Rational parse_rational(const std::string& s) {
  Rational r;
  if (r.set_str(s, 10) != 0) throw std::invalid_argument("bad rational: " + s);
  r.canonicalize();
  return r;
}

}  // namespace

Window parse_window(const std::string& s) {
  if (s.empty()) throw std::invalid_argument("window must be a:b");
  auto colon = s.find(':', 1);
  if (colon == std::string::npos) throw std::invalid_argument("window must be a:b");
  Window w{parse_int(s.substr(0, colon)), parse_int(s.substr(colon + 1))};
  if (w.rmin > w.rmax) throw std::invalid_argument("empty window");
  check_spectral(w.rmin);
  check_spectral(w.rmax);
  return w;
}

void parse_qmode(const std::string& s, RunConfig& cfg) {
  if (s == "symbolic") {
    cfg.qmode = QMode::Symbolic;
    return;
  }
  auto comma = s.find(',');
  if (comma == std::string::npos) throw std::invalid_argument("q mode must be 'symbolic' or 'a,b'");
  Rational a = parse_rational(s.substr(0, comma)), b = parse_rational(s.substr(comma + 1));
  for (const Rational& x : {a, b})
    if (x == 0 || x == 1 || x == -1) throw std::invalid_argument("specialization point must avoid 0 and +-1");
  if (a == b) throw std::invalid_argument("specialization points must differ");
  cfg.qmode = QMode::Rational;
  cfg.q0a = a;
  cfg.q0b = b;
}

void apply_env(RunConfig& cfg) {
  auto get = [](const char* k) -> std::optional<std::string> {
    const char* v = std::getenv(k);
    if (!v || !*v) return std::nullopt;
    return std::string(v);
  };
  if (auto v = get("QCHAR_WINDOW")) cfg.window = parse_window(*v);
  if (auto v = get("QCHAR_DEGCAP")) cfg.degcap = parse_int(*v);
  if (auto v = get("QCHAR_DEPTH")) cfg.depth = parse_int(*v);
  if (auto v = get("QCHAR_Q")) parse_qmode(*v, cfg);
  if (auto v = get("QCHAR_SEED")) cfg.seed = std::stoull(*v);
  if (auto v = get("QCHAR_FORMAT")) {
    if (*v == "json")
      cfg.format = OutputFormat::Json;
    else if (*v == "text")
      cfg.format = OutputFormat::Text;
    else
      throw std::invalid_argument("format must be json or text");
  }
}

void TextCursor::skip_ws() {
  while (p_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[p_]))) ++p_;
}

bool TextCursor::at_end() {
  skip_ws();
  return p_ >= s_.size();
}

bool TextCursor::eat(char c) {
  skip_ws();
  if (p_ < s_.size() && s_[p_] == c) {
    ++p_;
    return true;
  }
  return false;
}

void TextCursor::expect(char c) {
  if (!eat(c)) fail(std::string("expected '") + c + "'");
}

long TextCursor::integer() {
  skip_ws();
  size_t start = p_;
  if (p_ < s_.size() && (s_[p_] == '-' || s_[p_] == '+')) ++p_;
  size_t digits = p_;
  while (p_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[p_]))) ++p_;
  if (p_ == digits) {
    p_ = start;
    fail("expected integer");
  }
  std::string t = s_.substr(start, p_ - start);
  if (t.size() > 9) fail("integer out of range");
  return std::stol(t);
}

std::string TextCursor::rational_text() {
  skip_ws();
  size_t start = p_;
  integer();
  if (p_ < s_.size() && s_[p_] == '/') {
    ++p_;
    integer();
  }
  return s_.substr(start, p_ - start);
}

std::string TextCursor::word() {
  skip_ws();
  size_t start = p_;
  while (p_ < s_.size() && std::isalpha(static_cast<unsigned char>(s_[p_]))) ++p_;
  return s_.substr(start, p_ - start);
}

}  // namespace qchar
