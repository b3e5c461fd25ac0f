#pragma once

// JSON encodings. Integers are JSON numbers when they fit in int64 and
// decimal strings otherwise; rationals are {"num":…, "den":…}.

#include <nlohmann/json.hpp>

#include <string>

#include "toeplitz/algebra_element.hpp"
#include "toeplitz/repr.hpp"

namespace toeplitz {

using Json = nlohmann::json;

namespace detail {

[[noreturn]] inline void bad_json(const std::string& what) { throw Error(Errc::parse_error, what); }

inline const Json& field(const Json& j, const char* key) {
  if (!j.is_object()) bad_json("expected an object with field '" + std::string(key) + "'");
  auto it = j.find(key);
  if (it == j.end()) bad_json("missing field '" + std::string(key) + "'");
  return *it;
}

inline double number(const Json& j) {
  if (!j.is_number()) bad_json("expected a number, got " + j.dump());
  return j.get<double>();
}

}  // namespace detail

inline Json integer_to_json(const Integer& v) {
  if (fits_int64(v)) return Json(to_int64(v));
  return Json(v.str());
}

inline Integer integer_from_json(const Json& j) {
  if (j.is_number_integer()) return Integer(j.get<std::int64_t>());
  if (j.is_number_unsigned()) return Integer(j.get<std::uint64_t>());
  if (j.is_string()) {
    const std::string s = j.get<std::string>();
    const std::size_t start = (!s.empty() && (s[0] == '-' || s[0] == '+')) ? 1 : 0;
    if (s.size() == start || s.find_first_not_of("0123456789", start) != std::string::npos)
      detail::bad_json("not an integer: " + s);
    return Integer(s);
  }
  detail::bad_json("expected an integer, got " + j.dump());
}

inline void to_json(Json& j, const Rational& x) {
  j = Json{{"num", integer_to_json(x.num())}, {"den", integer_to_json(x.den())}};
}
inline void from_json(const Json& j, Rational& x) {
  if (j.is_string()) {
    const std::string s = j.get<std::string>();
    const auto slash = s.find('/');
    if (slash == std::string::npos) {
      x = Rational(integer_from_json(j));
    } else {
      const Integer den = integer_from_json(Json(s.substr(slash + 1)));
      if (den == 0) detail::bad_json("zero denominator");
      x = Rational(integer_from_json(Json(s.substr(0, slash))), den);
    }
    return;
  }
  if (j.is_number_integer() || j.is_number_unsigned()) {
    x = Rational(integer_from_json(j));
    return;
  }
  const Integer den = integer_from_json(detail::field(j, "den"));
  if (den == 0) detail::bad_json("zero denominator");
  x = Rational(integer_from_json(detail::field(j, "num")), den);
}

inline void to_json(Json& j, const AffinePoint& x) { j = Json{{"a", x.a}, {"r", x.r}}; }
inline void from_json(const Json& j, AffinePoint& x) {
  x = AffinePoint(detail::field(j, "a").get<Rational>(), detail::field(j, "r").get<Rational>());
}

inline void to_json(Json& j, const ConePoint& x) {
  j = Json{{"a", integer_to_json(x.a)}, {"m", integer_to_json(x.m)}};
}
inline void from_json(const Json& j, ConePoint& x) {
  x = ConePoint(integer_from_json(detail::field(j, "a")), integer_from_json(detail::field(j, "m")));
}

inline void to_json(Json& j, const Monomial& x) {
  j = Json{{"a", integer_to_json(x.a)},
           {"m", integer_to_json(x.m)},
           {"n", integer_to_json(x.n)},
           {"b", integer_to_json(x.b)}};
}
inline void from_json(const Json& j, Monomial& x) {
  x = Monomial(integer_from_json(detail::field(j, "a")), integer_from_json(detail::field(j, "m")),
               integer_from_json(detail::field(j, "n")), integer_from_json(detail::field(j, "b")));
}

inline void to_json(Json& j, const AddMonomial& x) {
  j = Json{{"a", integer_to_json(x.a)}, {"k", integer_to_json(x.k)}, {"b", integer_to_json(x.b)}};
}
inline void from_json(const Json& j, AddMonomial& x) {
  x = AddMonomial(integer_from_json(detail::field(j, "a")), integer_from_json(detail::field(j, "k")),
                  integer_from_json(detail::field(j, "b")));
}

inline void to_json(Json& j, const MultMonomial& x) { j = Json{{"r", x.r}, {"s", x.s}, {"g", x.g}}; }
inline void from_json(const Json& j, MultMonomial& x) {
  x = MultMonomial(detail::field(j, "r").get<Rational>(), detail::field(j, "s").get<Rational>(),
                   detail::field(j, "g").get<Rational>());
}

inline void to_json(Json& j, const ClMonomial& x) { j = Json{{"t", x.t}, {"g", x.g}}; }
inline void from_json(const Json& j, ClMonomial& x) {
  x = ClMonomial(detail::field(j, "t").get<Rational>(), detail::field(j, "g").get<Rational>());
}

template <MonomialType Mono>
void to_json(Json& j, const AlgebraElement<Mono>& x) {
  j = Json::array();
  for (const auto& [mono, c] : x.terms())
    j.push_back(Json{{"mono", mono}, {"re", c.real()}, {"im", c.imag()}});
}
template <MonomialType Mono>
void from_json(const Json& j, AlgebraElement<Mono>& x) {
  if (!j.is_array()) detail::bad_json("algebra element must be a list of terms");
  x = AlgebraElement<Mono>();
  for (const auto& term : j) {
    const double im = term.contains("im") ? detail::number(term["im"]) : 0.0;
    x.add_term(detail::field(term, "mono").get<Mono>(),
               Complex{detail::number(detail::field(term, "re")), im});
  }
}

inline void to_json(Json& j, const Measure& mu) {
  switch (mu.kind()) {
    case Measure::Kind::lebesgue: j = Json{{"kind", "lebesgue"}}; return;
    case Measure::Kind::atoms: {
      Json atoms = Json::array();
      for (const auto& atom : mu.atoms())
        atoms.push_back(Json{{"turns", atom.turns}, {"weight", atom.weight}});
      j = Json{{"kind", "atoms"}, {"atoms", atoms}};
      return;
    }
    case Measure::Kind::mixture: {
      Json parts = Json::array();
      for (const auto& part : mu.parts()) {
        Json inner;
        to_json(inner, part.measure);
        parts.push_back(Json{{"measure", inner}, {"weight", part.weight}});
      }
      j = Json{{"kind", "mixture"}, {"parts", parts}};
      return;
    }
  }
}

inline Measure measure_from_json(const Json& j) {
  const Json& kind = detail::field(j, "kind");
  if (!kind.is_string()) detail::bad_json("measure kind must be a string");
  const std::string k = kind.get<std::string>();
  if (k == "lebesgue") return Measure::lebesgue();
  if (k == "atoms") {
    const Json& list = detail::field(j, "atoms");
    if (!list.is_array()) detail::bad_json("atoms must be a list");
    std::vector<Atom> atoms;
    for (const auto& a : list)
      atoms.push_back(
          {detail::field(a, "turns").get<Rational>(), detail::field(a, "weight").get<Rational>()});
    return Measure::from_atoms(std::move(atoms));
  }
  if (k == "mixture") {
    const Json& list = detail::field(j, "parts");
    if (!list.is_array()) detail::bad_json("parts must be a list");
    std::vector<MixturePart> parts;
    for (const auto& p : list)
      parts.push_back(
          {measure_from_json(detail::field(p, "measure")), detail::field(p, "weight").get<Rational>()});
    return Measure::mixture(std::move(parts));
  }
  detail::bad_json("unknown measure kind '" + k + "'");
}

inline Json complex_to_json(Complex c) { return Json{{"re", c.real()}, {"im", c.imag()}}; }

inline void to_json(Json& j, const Evaluation& e) {
  j = Json{{"value", complex_to_json(e.value)}, {"error_bound", e.error_bound}};
}
inline void from_json(const Json& j, Evaluation& e) {
  const Json& v = detail::field(j, "value");
  e.value = {detail::number(detail::field(v, "re")), detail::number(detail::field(v, "im"))};
  e.error_bound = detail::number(detail::field(j, "error_bound"));
}

inline void to_json(Json& j, const VerificationReport& r) {
  Json failures = Json::array();
  for (const auto& f : r.failures)
    failures.push_back(Json{{"input", f.input},
                            {"lhs", complex_to_json(f.lhs)},
                            {"rhs", complex_to_json(f.rhs)},
                            {"residual", f.residual}});
  j = Json{{"checked", r.checked},
           {"max_residual", r.max_residual},
           {"failure_count", r.failure_count},
           {"failures", failures},
           {"seed", r.seed},
           {"ok", r.ok()}};
  if (r.tolerance) j["tolerance"] = *r.tolerance;
}

inline void to_json(Json& j, const RelationReport& r) {
  Json rows = Json::array();
  for (const auto& name : r.relations()) {
    const auto [worst, seen] = r.summary(name);
    rows.push_back(Json{{"relation", name}, {"max_residual", worst}, {"interior_vectors", seen}});
  }
  j = Json{{"relations", rows}, {"max_residual", r.max_residual()}};
}

}  // namespace toeplitz
