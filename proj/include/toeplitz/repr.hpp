#pragma once

// Truncated models of concrete representations: the left regular
// representation on ℓ²(N^x ⋉ N), the multiplicative-quotient representation
// on ℓ²(Q+), the additive-quotient representation on ℓ²(N^x × Z), and the
// spatial realization of KMS states on ℓ²(N^x) ⊗ L²(μ) for atomic μ.
//
// Generators act on basis vectors as partial maps. Applying one yields the
// zero vector, another basis label, or a vector outside the truncation
// ("escaped"). Exactness claims are made only where no escape occurs.

#include <array>
#include <cstdint>
#include <functional>
#include <map>
#include <numeric>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "toeplitz/kms_verifier.hpp"

namespace toeplitz {

struct Generator {
  enum class Kind { S, S_star, V, V_star };
  Kind kind;
  std::int64_t a = 1;

  static Generator S() { return {Kind::S, 1}; }
  static Generator S_star() { return {Kind::S_star, 1}; }
  static Generator V(std::int64_t a) { return {Kind::V, a}; }
  static Generator V_star(std::int64_t a) { return {Kind::V_star, a}; }

  Generator adjoint() const {
    switch (kind) {
      case Kind::S: return S_star();
      case Kind::S_star: return S();
      case Kind::V: return V_star(a);
      case Kind::V_star: return V(a);
    }
    return *this;
  }
};

/// Operator product g_0 g_1 ... g_k; the rightmost generator acts first.
using Word = std::vector<Generator>;

inline Word concat(Word x, const Word& y) {
  x.insert(x.end(), y.begin(), y.end());
  return x;
}

inline Word repeat(const Generator& g, std::int64_t times) { return Word(times, g); }

/// V_a S^m S^{*n} V_b^*.
inline Word word_of(const Monomial& x) {
  Word w{Generator::V(to_int64(x.a))};
  w = concat(std::move(w), repeat(Generator::S(), to_int64(x.m)));
  w = concat(std::move(w), repeat(Generator::S_star(), to_int64(x.n)));
  w.push_back(Generator::V_star(to_int64(x.b)));
  return w;
}

inline Word adjoint(const Word& w) {
  Word out;
  for (auto it = w.rbegin(); it != w.rend(); ++it) out.push_back(it->adjoint());
  return out;
}

using Label = std::array<std::int64_t, 2>;

struct Image {
  enum class Kind { zero, label, escaped };
  Kind kind = Kind::zero;
  Label label{};

  static Image zero() { return {Kind::zero, {}}; }
  static Image escaped() { return {Kind::escaped, {}}; }
  static Image at(Label l) { return {Kind::label, l}; }

  friend bool operator==(const Image&, const Image&) = default;
};

/// ε_{(b,n)} on ℓ²(N^x ⋉ N): V_a ε_{(b,n)} = ε_{(ab,n)}, S ε_{(b,n)} = ε_{(b,b+n)}.
struct RegularModel {
  std::int64_t bound_a;
  std::int64_t bound_m;

  std::vector<Label> basis() const {
    std::vector<Label> out;
    for (std::int64_t b = 1; b <= bound_a; ++b)
      for (std::int64_t n = 0; n <= bound_m; ++n) out.push_back({b, n});
    return out;
  }
  bool contains(const Label& l) const {
    return l[0] >= 1 && l[0] <= bound_a && l[1] >= 0 && l[1] <= bound_m;
  }
  Image raw(const Generator& g, const Label& l) const {
    const auto [b, n] = l;
    switch (g.kind) {
      case Generator::Kind::S: return Image::at({b, b + n});
      case Generator::Kind::S_star: return n >= b ? Image::at({b, n - b}) : Image::zero();
      case Generator::Kind::V: return Image::at({g.a * b, n});
      case Generator::Kind::V_star:
        return b % g.a == 0 ? Image::at({b / g.a, n}) : Image::zero();
    }
    return Image::zero();
  }
};

/// e_x on ℓ²(Q+) for x = k/L: S e_x = e_{x+1}, V_a e_x = e_{x/a}.
struct QplusModel {
  std::int64_t denominator_lcm;
  std::int64_t height;

  std::vector<Label> basis() const {
    std::vector<Label> out;
    for (std::int64_t k = 0; k <= height * denominator_lcm; ++k) out.push_back({k, 0});
    return out;
  }
  bool contains(const Label& l) const {
    return l[0] >= 0 && l[0] <= height * denominator_lcm && l[1] == 0;
  }
  Image raw(const Generator& g, const Label& l) const {
    const std::int64_t k = l[0];
    const std::int64_t L = denominator_lcm;
    switch (g.kind) {
      case Generator::Kind::S: return Image::at({k + L, 0});
      case Generator::Kind::S_star: return k >= L ? Image::at({k - L, 0}) : Image::zero();
      case Generator::Kind::V:
        if (L % g.a != 0)
          throw Error(Errc::grid_mismatch,
                      std::to_string(g.a) + " does not divide grid " + std::to_string(L));
        // k/(aL) lies on the grid iff a | k; otherwise it leaves the model.
        return k % g.a == 0 ? Image::at({k / g.a, 0}) : Image::escaped();
      case Generator::Kind::V_star: return Image::at({g.a * k, 0});
    }
    return Image::zero();
  }
};

/// e_{b,m} on ℓ²(N^x × Z): S e_{b,m} = e_{b,b+m}, V_a e_{b,m} = e_{ab,m}.
struct NxzModel {
  std::int64_t bound_b;
  std::int64_t bound_m;

  std::vector<Label> basis() const {
    std::vector<Label> out;
    for (std::int64_t b = 1; b <= bound_b; ++b)
      for (std::int64_t m = -bound_m; m <= bound_m; ++m) out.push_back({b, m});
    return out;
  }
  bool contains(const Label& l) const {
    return l[0] >= 1 && l[0] <= bound_b && l[1] >= -bound_m && l[1] <= bound_m;
  }
  Image raw(const Generator& g, const Label& l) const {
    const auto [b, m] = l;
    switch (g.kind) {
      case Generator::Kind::S: return Image::at({b, b + m});
      case Generator::Kind::S_star: return Image::at({b, m - b});
      case Generator::Kind::V: return Image::at({g.a * b, m});
      case Generator::Kind::V_star:
        return b % g.a == 0 ? Image::at({b / g.a, m}) : Image::zero();
    }
    return Image::zero();
  }
};

/// Square matrix with unique (row, col) entries.
template <class T>
class SparseMatrix {
 public:
  explicit SparseMatrix(std::size_t dimension = 0) : dimension_(dimension) {}

  std::size_t dimension() const noexcept { return dimension_; }
  const std::map<std::pair<std::size_t, std::size_t>, T>& entries() const noexcept {
    return entries_;
  }

  void set(std::size_t row, std::size_t col, T value) {
    if (row >= dimension_ || col >= dimension_)
      throw Error(Errc::invalid_argument, "matrix index out of range");
    if (value == T{})
      entries_.erase({row, col});
    else
      entries_[{row, col}] = value;
  }
  T at(std::size_t row, std::size_t col) const {
    auto it = entries_.find({row, col});
    return it == entries_.end() ? T{} : it->second;
  }

  static SparseMatrix identity(std::size_t dimension) {
    SparseMatrix out(dimension);
    for (std::size_t i = 0; i < dimension; ++i) out.set(i, i, T{1});
    return out;
  }

  SparseMatrix transpose() const {
    SparseMatrix out(dimension_);
    for (const auto& [rc, v] : entries_) out.entries_[{rc.second, rc.first}] = v;
    return out;
  }

  friend SparseMatrix operator*(const SparseMatrix& x, const SparseMatrix& y) {
    if (x.dimension_ != y.dimension_) throw Error(Errc::invalid_argument, "dimension mismatch");
    std::vector<std::vector<std::pair<std::size_t, T>>> rows_of_y(y.dimension_);
    for (const auto& [rc, v] : y.entries_) rows_of_y[rc.first].push_back({rc.second, v});
    std::map<std::pair<std::size_t, std::size_t>, T> acc;
    for (const auto& [rc, v] : x.entries_)
      for (const auto& [col, w] : rows_of_y[rc.second]) acc[{rc.first, col}] += v * w;
    SparseMatrix out(x.dimension_);
    for (const auto& [rc, v] : acc)
      if (v != T{}) out.entries_.emplace(rc, v);
    return out;
  }

  friend bool operator==(const SparseMatrix&, const SparseMatrix&) = default;

  /// Entries of the given columns only.
  SparseMatrix restrict_columns(const std::vector<std::size_t>& cols) const {
    std::vector<bool> keep(dimension_, false);
    for (auto c : cols) keep.at(c) = true;
    SparseMatrix out(dimension_);
    for (const auto& [rc, v] : entries_)
      if (keep[rc.second]) out.entries_.emplace(rc, v);
    return out;
  }

  /// "dimension\nrow col value" lines, zero-based.
  std::string to_coordinate_text() const {
    std::ostringstream os;
    os << dimension_ << ' ' << dimension_ << ' ' << entries_.size() << '\n';
    for (const auto& [rc, v] : entries_) os << rc.first << ' ' << rc.second << ' ' << v << '\n';
    return os.str();
  }

 private:
  std::size_t dimension_;
  std::map<std::pair<std::size_t, std::size_t>, T> entries_;
};

template <class Model>
class TruncatedRep {
 public:
  explicit TruncatedRep(Model model) : model_(std::move(model)), basis_(model_.basis()) {
    for (std::size_t i = 0; i < basis_.size(); ++i) index_.emplace(basis_[i], i);
  }

  const Model& model() const noexcept { return model_; }
  const std::vector<Label>& basis() const noexcept { return basis_; }
  std::size_t dimension() const noexcept { return basis_.size(); }
  std::optional<std::size_t> index_of(const Label& l) const {
    auto it = index_.find(l);
    if (it == index_.end()) return std::nullopt;
    return it->second;
  }

  Image apply(const Generator& g, const Label& l) const {
    Image out = model_.raw(g, l);
    if (out.kind == Image::Kind::label && !model_.contains(out.label)) return Image::escaped();
    return out;
  }

  Image apply(const Word& w, const Label& l) const {
    Image current = Image::at(l);
    for (auto it = w.rbegin(); it != w.rend(); ++it) {
      if (current.kind != Image::Kind::label) return current;
      current = apply(*it, current.label);
    }
    return current;
  }

  /// Labels from which no word in `words` leaves the truncation.
  std::vector<std::size_t> interior(const std::vector<Word>& words) const {
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < basis_.size(); ++i) {
      bool inside = true;
      for (const auto& w : words)
        if (apply(w, basis_[i]).kind == Image::Kind::escaped) {
          inside = false;
          break;
        }
      if (inside) out.push_back(i);
    }
    return out;
  }

  SparseMatrix<std::int64_t> matrix(const Word& w) const {
    SparseMatrix<std::int64_t> out(basis_.size());
    for (std::size_t i = 0; i < basis_.size(); ++i) {
      const Image img = apply(w, basis_[i]);
      if (img.kind == Image::Kind::label) out.set(index_.at(img.label), i, 1);
    }
    return out;
  }

 private:
  Model model_;
  std::vector<Label> basis_;
  std::map<Label, std::size_t> index_;
};

inline TruncatedRep<RegularModel> build_regular(std::int64_t bound_a, std::int64_t bound_m) {
  if (bound_a < 1 || bound_m < 1) throw Error(Errc::invalid_argument, "bounds must be >= 1");
  return TruncatedRep<RegularModel>(RegularModel{bound_a, bound_m});
}

inline TruncatedRep<QplusModel> build_qplus(std::int64_t denominator_lcm, std::int64_t height) {
  if (denominator_lcm < 1 || height < 1)
    throw Error(Errc::invalid_argument, "grid parameters must be >= 1");
  return TruncatedRep<QplusModel>(QplusModel{denominator_lcm, height});
}

inline TruncatedRep<NxzModel> build_nxz(std::int64_t bound_b, std::int64_t bound_m) {
  if (bound_b < 1 || bound_m < 1) throw Error(Errc::invalid_argument, "bounds must be >= 1");
  return TruncatedRep<NxzModel>(NxzModel{bound_b, bound_m});
}

template <class Model>
SparseMatrix<std::int64_t> monomial_matrix(const TruncatedRep<Model>& rep, const Monomial& x) {
  return rep.matrix(word_of(x));
}

/// Columns on which matrix(x)·matrix(y) must equal matrix(xy) exactly.
template <class Model>
std::vector<std::size_t> interior_columns(const TruncatedRep<Model>& rep, const Monomial& x,
                                          const Monomial& y) {
  return rep.interior({concat(word_of(x), word_of(y)), word_of(full_mul(x, y))});
}

struct RelationResidual {
  std::string relation;
  std::string instance;
  double residual = 0.0;
  std::size_t interior_checked = 0;
};

struct RelationReport {
  std::vector<RelationResidual> rows;

  double max_residual() const {
    double out = 0.0;
    for (const auto& r : rows) out = std::max(out, r.residual);
    return out;
  }
  /// Max residual among rows of one relation, with the number of vectors seen.
  std::pair<double, std::size_t> summary(const std::string& relation) const {
    double worst = 0.0;
    std::size_t seen = 0;
    for (const auto& r : rows)
      if (r.relation == relation) {
        worst = std::max(worst, r.residual);
        seen += r.interior_checked;
      }
    return {worst, seen};
  }
  std::vector<std::string> relations() const {
    std::vector<std::string> out;
    for (const auto& r : rows)
      if (std::find(out.begin(), out.end(), r.relation) == out.end()) out.push_back(r.relation);
    return out;
  }
};

/// Largest entry of (lhs - rhs) over basis vectors where neither word escapes.
template <class Model>
RelationResidual word_residual(const TruncatedRep<Model>& rep, std::string relation,
                               std::string instance, const Word& lhs, const Word& rhs) {
  RelationResidual out{std::move(relation), std::move(instance), 0.0, 0};
  for (std::size_t i : rep.interior({lhs, rhs})) {
    ++out.interior_checked;
    if (!(rep.apply(lhs, rep.basis()[i]) == rep.apply(rhs, rep.basis()[i]))) out.residual = 1.0;
  }
  return out;
}

namespace detail {

using G = Generator;

inline Word one() { return {}; }

template <class Model>
void isometry_relations(const TruncatedRep<Model>& rep, const std::vector<std::int64_t>& legs,
                        RelationReport& report,
                        const std::function<bool(std::int64_t)>& usable = {}) {
  const auto s = [](std::int64_t v) { return std::to_string(v); };
  report.rows.push_back(word_residual(rep, "T0", "S*S", {G::S_star(), G::S()}, one()));
  for (auto a : legs)
    report.rows.push_back(word_residual(rep, "T0", "V" + s(a) + "*V" + s(a),
                                        {G::V_star(a), G::V(a)}, one()));
  for (auto a : legs)
    report.rows.push_back(word_residual(rep, "T1", "a=" + s(a), {G::S(), G::V(a)},
                                        concat({G::V(a)}, repeat(G::S(), a))));
  for (auto a : legs)
    for (auto b : legs)
      if (!usable || usable(a * b))
        report.rows.push_back(word_residual(rep, "T2", "a=" + s(a) + ",b=" + s(b),
                                            {G::V(a), G::V(b)}, {G::V(a * b)}));
  for (auto a : legs)
    for (auto b : legs)
      if (std::gcd(a, b) == 1)
        report.rows.push_back(word_residual(rep, "T3", "a=" + s(a) + ",b=" + s(b),
                                            {G::V_star(a), G::V(b)}, {G::V(b), G::V_star(a)}));
  for (auto a : legs)
    report.rows.push_back(word_residual(rep, "T4", "a=" + s(a), {G::S_star(), G::V(a)},
                                        concat({G::V(a)}, repeat(G::S_star(), a))));
}

inline std::vector<std::int64_t> legs_up_to(std::int64_t bound_a) {
  std::vector<std::int64_t> out(static_cast<std::size_t>(std::max<std::int64_t>(bound_a, 0)));
  std::iota(out.begin(), out.end(), 1);
  return out;
}

}  // namespace detail

/// (T0)–(T4) on the regular representation.
inline RelationReport relation_residuals(const TruncatedRep<RegularModel>& rep,
                                         std::int64_t bound_a) {
  RelationReport report;
  detail::isometry_relations(rep, detail::legs_up_to(bound_a), report);
  return report;
}

/// (T0)–(T5) on ℓ²(Q+); only legs dividing the grid denominator are used.
inline RelationReport relation_residuals(const TruncatedRep<QplusModel>& rep,
                                         std::int64_t bound_a) {
  const auto on_grid = [L = rep.model().denominator_lcm](std::int64_t a) { return L % a == 0; };
  std::vector<std::int64_t> legs;
  for (auto a : detail::legs_up_to(bound_a))
    if (on_grid(a)) legs.push_back(a);
  RelationReport report;
  detail::isometry_relations(rep, legs, report, on_grid);
  for (auto a : legs)
    report.rows.push_back(word_residual(rep, "T5", "a=" + std::to_string(a),
                                        {detail::G::V(a), detail::G::V_star(a)}, detail::one()));
  return report;
}

/// (T0)–(T4), (T6) and (A1)–(A3) on ℓ²(N^x × Z).
inline RelationReport relation_residuals(const TruncatedRep<NxzModel>& rep, std::int64_t bound_a) {
  using detail::G;
  const auto legs = detail::legs_up_to(bound_a);
  const auto s = [](std::int64_t v) { return std::to_string(v); };
  RelationReport report;
  detail::isometry_relations(rep, legs, report);
  report.rows.push_back(word_residual(rep, "T6", "SS*", {G::S(), G::S_star()}, detail::one()));
  for (auto a : legs)
    report.rows.push_back(word_residual(rep, "A1", "a=" + s(a), {G::S(), G::V(a)},
                                        concat({G::V(a)}, repeat(G::S(), a))));
  for (auto a : legs) {
    report.rows.push_back(word_residual(rep, "A2", "V" + s(a) + "*V" + s(a),
                                        {G::V_star(a), G::V(a)}, detail::one()));
    for (auto b : legs) {
      report.rows.push_back(word_residual(rep, "A2", "a=" + s(a) + ",b=" + s(b),
                                            {G::V(a), G::V(b)}, {G::V(a * b)}));
      const std::int64_t l = std::lcm(a, b);
      report.rows.push_back(word_residual(rep, "A2", "Nica a=" + s(a) + ",b=" + s(b),
                                          {G::V(a), G::V_star(a), G::V(b), G::V_star(b)},
                                          {G::V(l), G::V_star(l)}));
    }
  }
  report.rows.push_back(word_residual(rep, "A3", "SS*", {G::S(), G::S_star()}, detail::one()));
  return report;
}

/// ψ(T) = ζ(β)^{-1} Σ_{d <= depth} d^{-β} ⟨π_μ(T) 1e_d, 1e_d⟩ on ℓ²(N^x) ⊗ L²(μ)
/// with S(f e_d) = (M^d f) e_d and V_a(f e_d) = f e_{ad}. The error bound
/// covers the tail past `depth`.
inline StateOracle spatial_kms(double beta, const Measure& mu, std::int64_t depth) {
  if (!mu.is_atomic()) throw Error(Errc::non_atomic_measure, "spatial model needs atoms");
  if (!(beta > 1.0)) throw Error(Errc::invalid_argument, "beta must be > 1");
  if (depth < 1) throw Error(Errc::invalid_argument, "depth must be >= 1");
  const auto atoms = mu.flatten().atoms;
  const RealEvaluation zeta = riemann_zeta(beta);
  const double tail = std::pow(static_cast<double>(depth), 1.0 - beta) / (beta - 1.0) / zeta.value;

  return {[atoms, zeta, tail, beta, depth](const Monomial& x) -> Evaluation {
            const std::int64_t a = to_int64(x.a), b = to_int64(x.b);
            const std::int64_t m = to_int64(x.m), n = to_int64(x.n);
            Complex sum;
            for (std::int64_t d = 1; d <= depth; ++d) {
              // V_b^*: f e_d ↦ f e_{d/b}, or 0.
              if (d % b != 0) continue;
              std::int64_t index = d / b;
              std::vector<Complex> f(atoms.size(), Complex{1.0, 0.0});
              // S^{*n} then S^m: multiply by conj(z)^{index n}, then z^{index m}.
              for (std::size_t j = 0; j < atoms.size(); ++j) {
                f[j] *= std::conj(unit_root(atoms[j].turns * Rational(Integer(index) * n)));
                f[j] *= unit_root(atoms[j].turns * Rational(Integer(index) * m));
              }
              index *= a;  // V_a
              if (index != d) continue;
              Complex inner;
              for (std::size_t j = 0; j < atoms.size(); ++j)
                inner += atoms[j].weight.to_double() * f[j];
              sum += std::pow(static_cast<double>(d), -beta) * inner;
            }
            const Complex value = sum / zeta.value;
            return {value, tail + zeta.error_bound * std::abs(value) / zeta.value +
                               8.0 * kUnitRoundoff * static_cast<double>(depth)};
          },
          "spatial(beta=" + std::to_string(beta) + ")"};
}

}  // namespace toeplitz
