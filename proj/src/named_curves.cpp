#include "frobcount/named_curves.hpp"

#include "frobcount/error.hpp"

namespace frobcount {

const std::vector<NamedCurve>& named_curves() {
  static const std::vector<NamedCurve> table = {
      {"11a1", {0, -1, 1, -10, -20}, 11, -161051},
      {"11a2", {0, -1, 1, -7820, -263580}, 11, -11},
      {"11a3", {0, -1, 1, 0, 0}, 11, -11},
      {"14a1", {1, 0, 1, 4, -6}, 14, -21952},
      {"15a1", {1, 1, 1, -10, -10}, 15, 50625},
      {"17a1", {1, -1, 1, -1, -14}, 17, -83521},
      {"19a1", {0, 1, 1, -9, -15}, 19, -6859},
      {"20a1", {0, 1, 0, 4, 4}, 20, -6400},
      {"21a1", {1, 0, 0, -4, -1}, 21, 3969},
      {"24a1", {0, -1, 0, -4, 4}, 24, 2304},
      {"26a1", {1, 0, 1, -5, -8}, 26, -17576},
      {"26b1", {1, -1, 1, -3, 3}, 26, -1664},
      {"30a1", {1, 0, 1, 1, 2}, 30, -2160},
      {"33a1", {1, 1, 0, -11, 0}, 33, 88209},
      {"34a1", {1, 0, 0, -3, 1}, 34, 1088},
      {"35a1", {0, 1, 1, 9, 1}, 35, -42875},
      {"37a1", {0, 0, 1, -1, 0}, 37, 37},
      {"37b1", {0, 1, 1, -23, -50}, 37, 50653},
      {"38a1", {1, 0, 1, 9, 90}, 38, -3511808},
      {"39a1", {1, 1, 0, -4, -5}, 39, 1521},
      {"40a1", {0, 0, 0, -7, -6}, 40, 6400},
      {"42a1", {1, 1, 1, -4, 5}, 42, -16128},
      {"43a1", {0, 1, 1, 0, 0}, 43, -43},
      {"44a1", {0, 1, 0, 3, -1}, 44, -2816},
      {"389a1", {0, 1, 1, -2, 0}, 389, 389},
      {"5077a1", {0, 0, 1, -7, 6}, 5077, 5077},
  };
  return table;
}

std::optional<Curve> named_curve(const std::string& label) {
  for (const auto& nc : named_curves()) {
    if (nc.label != label) continue;
    std::array<FieldElem, 5> coeffs{};
    for (int i = 0; i < 5; ++i) coeffs[static_cast<std::size_t>(i)] = FieldElem{nc.a[static_cast<std::size_t>(i)], 0};
    return make_curve(NumberField::rational(), coeffs, static_cast<i128>(nc.conductor));
  }
  return std::nullopt;
}

Curve resolve_curve(const std::string& text, const NumberField& field, std::optional<i128> cond_hint) {
  if (!text.empty() && text.front() == '[') return parse_curve(text, field, cond_hint);
  auto named = named_curve(text);
  if (!named) throw Error(ErrorCode::ParseError, "column 1: unknown curve label '" + text + "'");
  if (field.kind() != FieldKind::Rational) {
    throw Error(ErrorCode::FieldMismatch, "curve label '" + text + "' is defined over Q, not " + field.to_string());
  }
  if (cond_hint) named->cond_norm_hint = cond_hint;
  return *named;
}

}  // namespace frobcount
