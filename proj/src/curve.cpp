#include <cctype>
#include <sstream>

#include "frobcount/ecpoint.hpp"
#include "frobcount/error.hpp"

namespace frobcount {

namespace {

std::string coeff_string(const FieldElem& e) {
  if (e.b == 0) return std::to_string(e.a);
  std::string s = std::to_string(e.a);
  s += e.b < 0 ? "-" : "+";
  std::int64_t mag = e.b < 0 ? -e.b : e.b;
  s += std::to_string(mag) + "*w";
  return s;
}

class CurveParser {
 public:
  CurveParser(const std::string& text, const NumberField& field) : text_(text), field_(field) {}

  std::array<FieldElem, 5> parse() {
    std::array<FieldElem, 5> out{};
    skip_ws();
    expect('[');
    for (int i = 0; i < 5; ++i) {
      out[static_cast<std::size_t>(i)] = coefficient();
      skip_ws();
      expect(i < 4 ? ',' : ']');
    }
    skip_ws();
    if (pos_ != text_.size()) fail("trailing characters");
    return out;
  }

 private:
  [[noreturn]] void fail(const std::string& why) const {
    throw Error(ErrorCode::ParseError,
                "curve '" + text_ + "' column " + std::to_string(pos_ + 1) + ": " + why);
  }

  void skip_ws() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  void expect(char c) {
    if (pos_ >= text_.size() || text_[pos_] != c) fail(std::string("expected '") + c + "'");
    ++pos_;
  }

  bool peek(char c) const { return pos_ < text_.size() && text_[pos_] == c; }

  std::optional<std::int64_t> digits() {
    std::size_t start = pos_;
    std::int64_t v = 0;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
      if (__builtin_mul_overflow(v, 10, &v) || __builtin_add_overflow(v, text_[pos_] - '0', &v)) {
        fail("coefficient out of 64-bit range");
      }
      ++pos_;
    }
    if (pos_ == start) return std::nullopt;
    return v;
  }

  // [sign] [digits '*'] 'w'  or  [sign] digits
  std::pair<std::int64_t, bool> term() {
    skip_ws();
    std::int64_t sign = 1;
    if (peek('+') || peek('-')) {
      sign = peek('-') ? -1 : 1;
      ++pos_;
      skip_ws();
    }
    auto n = digits();
    skip_ws();
    if (n && peek('*')) {
      ++pos_;
      skip_ws();
      if (!peek('w')) fail("expected 'w' after '*'");
    }
    if (peek('w')) {
      if (field_.kind() == FieldKind::Rational) fail("'w' is only valid over a quadratic field");
      ++pos_;
      return {sign * n.value_or(1), true};
    }
    if (!n) fail("expected an integer coefficient");
    return {sign * *n, false};
  }

  FieldElem coefficient() {
    FieldElem e;
    auto [v, is_w] = term();
    (is_w ? e.b : e.a) = v;
    skip_ws();
    if (!is_w && (peek('+') || peek('-'))) {
      auto [v2, is_w2] = term();
      if (!is_w2) fail("second term must be a multiple of w");
      e.b = v2;
    }
    return e;
  }

  const std::string& text_;
  const NumberField& field_;
  std::size_t pos_ = 0;
};

}  // namespace

std::string Curve::to_string() const {
  std::ostringstream os;
  os << '[';
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (i) os << ',';
    os << coeff_string(a[i]);
  }
  os << ']';
  return os.str();
}

WideElem model_discriminant(const NumberField& field, const std::array<FieldElem, 5>& a) {
  const WideElem a1 = widen(a[0]), a2 = widen(a[1]), a3 = widen(a[2]), a4 = widen(a[3]), a6 = widen(a[4]);
  auto m = [&](const WideElem& x, const WideElem& y) { return mul(field, x, y); };
  const WideElem b2 = add(m(a1, a1), scale(4, a2));
  const WideElem b4 = add(scale(2, a4), m(a1, a3));
  const WideElem b6 = add(m(a3, a3), scale(4, a6));
  const WideElem b8 = sub(add(add(m(m(a1, a1), a6), scale(4, m(a2, a6))), m(a2, m(a3, a3))),
                          add(m(a1, m(a3, a4)), m(a4, a4)));
  // -b2^2 b8 - 8 b4^3 - 27 b6^2 + 9 b2 b4 b6
  WideElem d = scale(-1, m(m(b2, b2), b8));
  d = sub(d, scale(8, m(b4, m(b4, b4))));
  d = sub(d, scale(27, m(b6, b6)));
  d = add(d, scale(9, m(b2, m(b4, b6))));
  return d;
}

Curve make_curve(const NumberField& field, const std::array<FieldElem, 5>& coeffs, std::optional<i128> hint) {
  Curve c;
  c.field = field;
  c.a = coeffs;
  if (field.kind() == FieldKind::Rational) {
    for (auto& e : c.a) e.b = 0;
  }
  c.disc = model_discriminant(field, c.a);
  c.disc_norm = norm(field, c.disc);
  if (c.disc_norm == 0) throw Error(ErrorCode::InvalidArgument, "singular model " + c.to_string());
  if (hint && *hint <= 0) throw Error(ErrorCode::InvalidArgument, "conductor norm hint must be positive");
  c.cond_norm_hint = hint;
  return c;
}

Curve parse_curve(const std::string& text, const NumberField& field, std::optional<i128> hint) {
  CurveParser parser(text, field);
  return make_curve(field, parser.parse(), hint);
}

}  // namespace frobcount
