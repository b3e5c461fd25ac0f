#pragma once

// Probability measures on the circle, specified through their moments
// k ↦ ∫ z^k dμ. Atoms sit at rational "turns" t (the point e^{2πit}) so that
// moments at roots of unity are exact.

#include <cmath>
#include <complex>
#include <numbers>
#include <string>
#include <vector>

#include "toeplitz/rational.hpp"

namespace toeplitz {

using Complex = std::complex<double>;

/// e^{2πi x} for rational x, exact for x ∈ ¼Z.
inline Complex unit_root(const Rational& x) {
  const Rational f = x.frac();
  if (f.den() == 1) return {1.0, 0.0};
  if (f.den() == 2) return {-1.0, 0.0};
  if (f.den() == 4) return f.num() == 1 ? Complex{0.0, 1.0} : Complex{0.0, -1.0};
  const double angle = 2.0 * std::numbers::pi * f.to_double();
  return {std::cos(angle), std::sin(angle)};
}

struct Atom {
  Rational turns;
  Rational weight;
};

struct MixturePart;

class Measure {
 public:
  enum class Kind { atoms, lebesgue, mixture };

  static Measure lebesgue() { return Measure(Kind::lebesgue); }
  static Measure delta1() { return from_atoms({{Rational(0), Rational(1)}}); }
  static Measure delta_minus1() { return from_atoms({{Rational(1, 2), Rational(1)}}); }

  static Measure from_atoms(std::vector<Atom> atoms);
  static Measure mixture(std::vector<MixturePart> parts);

  Kind kind() const noexcept { return kind_; }
  const std::vector<Atom>& atoms() const noexcept { return atoms_; }
  const std::vector<MixturePart>& parts() const noexcept { return parts_; }

  bool is_atomic() const;

  /// Flattened form: weighted atoms plus the total weight carried by Lebesgue.
  struct Flat {
    std::vector<Atom> atoms;
    Rational lebesgue_weight;
  };
  Flat flatten() const;

 private:
  explicit Measure(Kind kind) : kind_(kind) {}

  Kind kind_;
  std::vector<Atom> atoms_;
  std::vector<MixturePart> parts_;
};

struct MixturePart {
  Measure measure;
  Rational weight;
};

namespace detail {

inline void check_weights(const std::vector<Rational>& weights) {
  if (weights.empty()) throw Error(Errc::invalid_argument, "measure has no components");
  Rational total;
  for (const auto& w : weights) {
    if (w.sign() <= 0) throw Error(Errc::invalid_argument, "weights must be positive");
    total += w;
  }
  if (total != Rational(1))
    throw Error(Errc::invalid_argument, "weights sum to " + total.str() + ", not 1");
}

}  // namespace detail

inline Measure Measure::from_atoms(std::vector<Atom> atoms) {
  std::vector<Rational> weights;
  for (const auto& atom : atoms) {
    if (atom.turns.sign() < 0 || atom.turns >= Rational(1))
      throw Error(Errc::invalid_argument, "atom turns must lie in [0,1)");
    weights.push_back(atom.weight);
  }
  detail::check_weights(weights);
  Measure out(Kind::atoms);
  out.atoms_ = std::move(atoms);
  return out;
}

inline Measure Measure::mixture(std::vector<MixturePart> parts) {
  std::vector<Rational> weights;
  for (const auto& part : parts) weights.push_back(part.weight);
  detail::check_weights(weights);
  Measure out(Kind::mixture);
  out.parts_ = std::move(parts);
  return out;
}

inline bool Measure::is_atomic() const {
  switch (kind_) {
    case Kind::atoms: return true;
    case Kind::lebesgue: return false;
    case Kind::mixture:
      for (const auto& part : parts_)
        if (!part.measure.is_atomic()) return false;
      return true;
  }
  return false;
}

inline Measure::Flat Measure::flatten() const {
  Flat out;
  switch (kind_) {
    case Kind::atoms: out.atoms = atoms_; break;
    case Kind::lebesgue: out.lebesgue_weight = 1; break;
    case Kind::mixture:
      for (const auto& part : parts_) {
        Flat inner = part.measure.flatten();
        for (auto& atom : inner.atoms)
          out.atoms.push_back({atom.turns, atom.weight * part.weight});
        out.lebesgue_weight += inner.lebesgue_weight * part.weight;
      }
      break;
  }
  return out;
}

/// ∫ z^k dμ.
inline Complex moment(const Measure& mu, const Integer& k) {
  switch (mu.kind()) {
    case Measure::Kind::lebesgue: return k == 0 ? 1.0 : 0.0;
    case Measure::Kind::atoms: {
      Complex sum;
      for (const auto& atom : mu.atoms())
        sum += atom.weight.to_double() * unit_root(atom.turns * Rational(k));
      return sum;
    }
    case Measure::Kind::mixture: {
      Complex sum;
      for (const auto& part : mu.parts()) sum += part.weight.to_double() * moment(part.measure, k);
      return sum;
    }
  }
  return {};
}

}  // namespace toeplitz
