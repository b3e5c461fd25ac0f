#pragma once

#include <CLI11.hpp>

#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "toeplitz/toeplitz.hpp"

namespace toeplitz::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitFailure = 1;
inline constexpr int kExitUsage = 2;

inline Json parse_json_text(const std::string& text) {
  try {
    return Json::parse(text);
  } catch (const Json::exception& e) {
    throw Error(Errc::parse_error, "invalid JSON '" + text + "': " + e.what());
  }
}

/// Named shortcut, inline JSON, or path to a JSON file.
inline Measure parse_measure(const std::string& spec) {
  if (spec == "delta1") return Measure::delta1();
  if (spec == "delta-1") return Measure::delta_minus1();
  if (spec == "lebesgue") return Measure::lebesgue();
  if (!spec.empty() && spec.front() == '{') return measure_from_json(parse_json_text(spec));
  std::ifstream in(spec);
  if (!in) throw Error(Errc::parse_error, "unknown measure '" + spec + "'");
  std::stringstream buffer;
  buffer << in.rdbuf();
  return measure_from_json(parse_json_text(buffer.str()));
}

inline std::optional<Kms1Measure> kms1_label(const std::string& spec) {
  if (spec == "delta1") return Kms1Measure::delta_plus1;
  if (spec == "delta-1") return Kms1Measure::delta_minus1;
  if (spec == "lebesgue") return Kms1Measure::lebesgue;
  return std::nullopt;
}

inline std::vector<Integer> parse_integer_list(const std::string& text) {
  std::vector<Integer> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) out.push_back(integer_from_json(Json(item)));
  if (out.empty()) throw Error(Errc::parse_error, "empty list '" + text + "'");
  return out;
}

inline std::pair<std::int64_t, std::int64_t> parse_bounds(const std::string& text) {
  const auto v = parse_integer_list(text);
  if (v.size() != 2) throw Error(Errc::parse_error, "bounds must look like A,M");
  return {to_int64(v[0]), to_int64(v[1])};
}

template <class T>
T parse_value(const std::string& text) {
  try {
    return parse_json_text(text).get<T>();
  } catch (const Json::exception& e) {
    throw Error(Errc::parse_error, "cannot read '" + text + "': " + e.what());
  }
}

inline std::string format_double(double v) {
  std::ostringstream os;
  os << std::setprecision(17) << v;
  return os.str();
}

inline std::string csv_header() { return "a,m,n,b,beta,measure,value_re,value_im,error_bound"; }

inline std::string csv_row(const Monomial& x, double beta, const std::string& measure,
                           const Evaluation& e) {
  return x.a.str() + "," + x.m.str() + "," + x.n.str() + "," + x.b.str() + "," +
         format_double(beta) + "," + measure + "," + format_double(e.value.real()) + "," +
         format_double(e.value.imag()) + "," + format_double(e.error_bound);
}

struct Options {
  double beta = 2.0;
  double tol = 1e-10;
  std::uint64_t seed = 0;
  std::size_t count = 1000;
  std::string bounds;
  std::string measure = "delta1";
  std::string quotient = "full";
  std::string output = "json";
  std::string prime_set;
  std::string kind;
  std::string state = "kms";
  std::string rep = "regular";
  std::string matrix;
  std::int64_t depth = 2000;
  std::int64_t leg_bound = 5;
  std::optional<double> residual_tol;
  bool check = false;
  std::vector<std::string> args;
};

inline double default_tolerance() {
  if (const char* env = std::getenv("TOEPLITZ_TOL")) {
    char* end = nullptr;
    const double v = std::strtod(env, &end);
    if (end != env && *end == '\0' && v > 0.0) return v;
    throw Error(Errc::parse_error, std::string("bad TOEPLITZ_TOL '") + env + "'");
  }
  return 1e-10;
}

inline KmsParams kms_params(const Options& o) {
  KmsParams p;
  p.beta = o.beta;
  p.tol = o.tol;
  if (!o.prime_set.empty()) p.prime_set = parse_integer_list(o.prime_set);
  return p;
}

inline StateOracle make_state(const Options& o) {
  if (o.state == "kms") {
    const KmsParams p = kms_params(o);
    return p.prime_set ? finite_prime_kms_state(p, parse_measure(o.measure))
                       : kms_state(p, parse_measure(o.measure));
  }
  if (o.state == "ground")
    return ground_state(ToeplitzStateSpec::trace_from_measure(parse_measure(o.measure), o.measure));
  if (o.state == "vacuum-ground") return ground_state(ToeplitzStateSpec::vacuum());
  if (o.state == "spatial") return spatial_kms(o.beta, parse_measure(o.measure), o.depth);
  if (o.state == "kms1") {
    const auto label = kms1_label(o.measure);
    if (!label) throw Error(Errc::invalid_argument, "kms1 needs delta1, delta-1 or lebesgue");
    return {[mu = *label](const Monomial& x) { return Evaluation{kms1_limit(mu, x), 0.0}; },
            "kms1"};
  }
  throw Error(Errc::parse_error, "unknown state '" + o.state + "'");
}

inline void require_args(const Options& o, std::size_t n, const std::string& what) {
  if (o.args.size() != n)
    throw Error(Errc::parse_error, "expected " + std::to_string(n) + " argument(s): " + what);
}

template <MonomialType Mono>
Json product_of(const std::vector<std::string>& args) {
  const bool elements = !args.empty() && !args.front().empty() && args.front().front() == '[';
  if (elements) {
    AlgebraElement<Mono> acc = AlgebraElement<Mono>::one();
    for (const auto& a : args) acc = acc * parse_value<AlgebraElement<Mono>>(a);
    return acc;
  }
  Mono acc = Mono::identity();
  for (const auto& a : args) acc = acc * parse_value<Mono>(a);
  return acc;
}

inline int cmd_product(const Options& o, std::ostream& out) {
  if (o.args.empty()) throw Error(Errc::parse_error, "product needs operands");
  Json result;
  if (o.quotient == "full") result = product_of<Monomial>(o.args);
  else if (o.quotient == "add") result = product_of<AddMonomial>(o.args);
  else if (o.quotient == "mult") result = product_of<MultMonomial>(o.args);
  else if (o.quotient == "cl") result = product_of<ClMonomial>(o.args);
  else throw Error(Errc::parse_error, "unknown quotient '" + o.quotient + "'");
  out << result.dump() << '\n';
  return kExitOk;
}

inline int cmd_reduce(const Options& o, std::ostream& out) {
  require_args(o, 1, "a monomial");
  const Monomial x = parse_value<Monomial>(o.args[0]);
  Json result;
  if (o.quotient == "add") result = reduce_add(x);
  else if (o.quotient == "mult") result = reduce_mult(x);
  else if (o.quotient == "cl") result = reduce_cl(x);
  else if (o.quotient == "full") result = x;
  else throw Error(Errc::parse_error, "unknown quotient '" + o.quotient + "'");
  out << result.dump() << '\n';
  return kExitOk;
}

inline int cmd_join(const Options& o, std::ostream& out) {
  require_args(o, 2, "two cone points");
  const ConePoint x = parse_value<ConePoint>(o.args[0]);
  const ConePoint y = parse_value<ConePoint>(o.args[1]);
  const ConePoint j = join_cone(x, y);
  Json result = j;
  if (o.check) {
    const auto [ba, bm] = o.bounds.empty() ? std::pair<std::int64_t, std::int64_t>{
                                                 to_int64(j.a), std::max<std::int64_t>(to_int64(j.m), 1)}
                                           : parse_bounds(o.bounds);
    const auto brute = brute_join(x, y, ba, bm);
    result = Json{{"join", j}, {"brute", brute ? Json(*brute) : Json(nullptr)},
                  {"agree", brute && *brute == j}};
    out << result.dump() << '\n';
    return brute && *brute == j ? kExitOk : kExitFailure;
  }
  out << result.dump() << '\n';
  return kExitOk;
}

inline int cmd_lub(const Options& o, std::ostream& out) {
  require_args(o, 1, "an affine point");
  const AffinePoint x = parse_value<AffinePoint>(o.args[0]);
  const ConePoint l = lub(x);
  if (o.check) {
    const auto [ba, bm] = o.bounds.empty() ? std::pair<std::int64_t, std::int64_t>{
                                                 to_int64(l.a), std::max<std::int64_t>(to_int64(l.m), 1)}
                                           : parse_bounds(o.bounds);
    const auto brute = brute_lub(x, ba, bm);
    const bool agree = brute && *brute == l;
    out << Json{{"lub", l}, {"brute", brute ? Json(*brute) : Json(nullptr)}, {"agree", agree}}.dump()
        << '\n';
    return agree ? kExitOk : kExitFailure;
  }
  out << Json(l).dump() << '\n';
  return kExitOk;
}

inline int cmd_eval_state(const Options& o, std::ostream& out) {
  if (o.args.empty()) throw Error(Errc::parse_error, "eval-state needs monomials");
  const StateOracle phi = make_state(o);
  if (o.output == "csv") {
    out << csv_header() << '\n';
    for (const auto& a : o.args) {
      const Monomial x = parse_value<Monomial>(a);
      out << csv_row(x, o.beta, o.measure, phi(x)) << '\n';
    }
    return kExitOk;
  }
  Json rows = Json::array();
  for (const auto& a : o.args) {
    const Monomial x = parse_value<Monomial>(a);
    Json row = phi(x);
    row["mono"] = x;
    rows.push_back(row);
  }
  out << (rows.size() == 1 ? rows[0] : rows).dump() << '\n';
  return kExitOk;
}

inline int cmd_verify(const Options& o, std::ostream& out) {
  SweepOptions s;
  if (o.kind == "char") s.kind = SweepKind::char_;
  else if (o.kind == "kms" || o.kind.empty()) s.kind = SweepKind::kms;
  else if (o.kind == "ground") s.kind = SweepKind::ground;
  else throw Error(Errc::parse_error, "unknown sweep kind '" + o.kind + "'");
  s.beta = o.beta;
  s.count = o.count;
  s.seed = o.seed;
  s.tolerance = o.residual_tol;
  if (!o.bounds.empty()) {
    const auto [ba, bm] = parse_bounds(o.bounds);
    s.bound_a = ba;
    s.bound_m = bm;
  }
  const VerificationReport report = sweep(make_state(o), s);
  out << Json(report).dump(2) << '\n';
  return report.ok() ? kExitOk : kExitFailure;
}

template <class Model>
int report_rep(const TruncatedRep<Model>& rep, const Options& o, std::ostream& out) {
  if (!o.matrix.empty()) {
    out << monomial_matrix(rep, parse_value<Monomial>(o.matrix)).to_coordinate_text();
    return kExitOk;
  }
  const RelationReport report = relation_residuals(rep, o.leg_bound);
  out << Json(report).dump(2) << '\n';
  return report.max_residual() == 0.0 ? kExitOk : kExitFailure;
}

inline int cmd_repr_check(const Options& o, std::ostream& out) {
  if (o.rep == "regular") {
    const auto [a, m] = o.bounds.empty() ? std::pair<std::int64_t, std::int64_t>{64, 200}
                                         : parse_bounds(o.bounds);
    return report_rep(build_regular(a, m), o, out);
  }
  if (o.rep == "qplus") {
    const auto [l, h] = o.bounds.empty() ? std::pair<std::int64_t, std::int64_t>{60, 20}
                                         : parse_bounds(o.bounds);
    return report_rep(build_qplus(l, h), o, out);
  }
  if (o.rep == "nxz") {
    const auto [b, m] = o.bounds.empty() ? std::pair<std::int64_t, std::int64_t>{64, 200}
                                         : parse_bounds(o.bounds);
    return report_rep(build_nxz(b, m), o, out);
  }
  throw Error(Errc::parse_error, "unknown representation '" + o.rep + "'");
}

/// Grid of β values approaching 1 from above.
inline std::vector<double> table_betas() {
  return {3.0, 2.0, 1.5, 1.25, 1.125, 1.0625, 1.0 + std::ldexp(1.0, -10)};
}

inline std::vector<Monomial> table_monomials(const std::vector<std::int64_t>& legs) {
  std::vector<Monomial> out;
  const std::vector<std::pair<int, int>> gaps = {{0, 0}, {1, 1}, {1, 0}, {2, 0}, {3, 0}, {0, 1}};
  for (auto a : legs)
    for (const auto& [m, n] : gaps) out.push_back({a, m, n, a});
  return out;
}

inline int cmd_table(const Options& o, std::ostream& out) {
  const std::vector<std::string> measures = {"lebesgue", "delta1", "delta-1"};
  std::vector<std::pair<Monomial, std::pair<double, std::pair<std::string, Evaluation>>>> rows;
  auto add = [&](const Monomial& x, double beta, const std::string& label, const Evaluation& e) {
    rows.push_back({x, {beta, {label, e}}});
  };

  if (o.kind.empty() || o.kind == "kms") {
    for (const auto& name : measures) {
      const Measure mu = parse_measure(name);
      for (double beta : table_betas()) {
        KmsParams p;
        p.beta = beta;
        p.tol = o.tol;
        const StateOracle psi = kms_state(p, mu);
        for (const auto& x : table_monomials({1, 2, 3})) add(x, beta, name, psi(x));
      }
      for (const auto& x : table_monomials({1, 2, 3}))
        add(x, 1.0, name, {kms1_limit(*kms1_label(name), x), 0.0});
    }
  } else if (o.kind == "finite") {
    const std::vector<Integer> primes =
        o.prime_set.empty() ? std::vector<Integer>{2, 3} : parse_integer_list(o.prime_set);
    std::string tag = " [E=";
    for (std::size_t i = 0; i < primes.size(); ++i) tag += (i ? " " : "") + primes[i].str();
    tag += "]";
    std::vector<std::int64_t> legs = {1};
    for (const auto& p : primes) legs.push_back(to_int64(p));
    legs.push_back(to_int64(primes.front() * primes.back()));
    std::sort(legs.begin(), legs.end());
    legs.erase(std::unique(legs.begin(), legs.end()), legs.end());
    for (const auto& name : measures) {
      const Measure mu = parse_measure(name);
      for (double beta : {0.5, 1.0, 2.0}) {
        KmsParams p;
        p.beta = beta;
        p.tol = o.tol;
        p.prime_set = primes;
        const StateOracle psi = finite_prime_kms_state(p, mu);
        for (const auto& x : table_monomials(legs)) add(x, beta, name + tag, psi(x));
      }
    }
  } else {
    throw Error(Errc::parse_error, "unknown table '" + o.kind + "'");
  }

  if (o.output == "json") {
    Json list = Json::array();
    for (const auto& [x, rest] : rows) {
      Json row = rest.second.second;
      row["mono"] = x;
      row["beta"] = rest.first;
      row["measure"] = rest.second.first;
      list.push_back(row);
    }
    out << list.dump() << '\n';
    return kExitOk;
  }
  out << csv_header() << '\n';
  for (const auto& [x, rest] : rows)
    out << csv_row(x, rest.first, rest.second.first, rest.second.second) << '\n';
  return kExitOk;
}

inline int run(const std::vector<std::string>& argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Exact computations in the Toeplitz algebra of N^x ⋉ N and its quotients"};
  app.require_subcommand(1);
  Options o;
  try {
    o.tol = default_tolerance();
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  }
  std::optional<double> residual_tol;

  auto common = [&](CLI::App* sub, bool state_flags) {
    // Operands are collected from the leftovers so CLI11 does not split "[...]" on commas.
    sub->allow_extras();
    sub->footer("Operands: JSON values, one per argument.");
    sub->add_option("--tol", o.tol, "series tolerance (default TOEPLITZ_TOL or 1e-10)");
    sub->add_option("--output", o.output, "json or csv")->check(CLI::IsMember({"json", "csv"}));
    if (state_flags) {
      sub->add_option("--beta", o.beta, "inverse temperature");
      sub->add_option("--measure", o.measure, "delta1, delta-1, lebesgue, JSON or file");
      sub->add_option("--prime-set", o.prime_set, "comma-separated primes");
      sub->add_option("--state", o.state, "kms, ground, vacuum-ground, spatial or kms1");
      sub->add_option("--depth", o.depth, "truncation depth for the spatial state");
    }
  };

  auto* product = app.add_subcommand("product", "multiply monomials or algebra elements");
  common(product, false);
  product->add_option("--quotient", o.quotient, "full, add, mult or cl");
  auto* reduce = app.add_subcommand("reduce", "image of a monomial in a quotient");
  common(reduce, false);
  reduce->add_option("--quotient", o.quotient, "add, mult or cl");
  auto* join = app.add_subcommand("join", "least common upper bound of two cone points");
  common(join, false);
  join->add_flag("--check", o.check, "compare against exhaustive search");
  join->add_option("--bounds", o.bounds, "search box A,M");
  auto* lubc = app.add_subcommand("lub", "least upper bound of a group element in the cone");
  common(lubc, false);
  lubc->add_flag("--check", o.check, "compare against exhaustive search");
  lubc->add_option("--bounds", o.bounds, "search box A,M");
  auto* eval = app.add_subcommand("eval-state", "evaluate a state on monomials");
  common(eval, true);
  auto* verify = app.add_subcommand("verify", "seeded sweep of a state check");
  common(verify, true);
  verify->add_option("--kind", o.kind, "char, kms or ground");
  verify->add_option("--seed", o.seed, "random seed");
  verify->add_option("--count", o.count, "number of instances");
  verify->add_option("--bounds", o.bounds, "A,M with a,b <= A and m,n <= M");
  verify->add_option("--residual-tol", residual_tol, "fixed residual tolerance");
  auto* repr = app.add_subcommand("repr-check", "relation residuals on a truncated representation");
  common(repr, false);
  repr->add_option("--rep", o.rep, "regular, qplus or nxz");
  repr->add_option("--bounds", o.bounds, "truncation parameters");
  repr->add_option("--leg-bound", o.leg_bound, "largest a used in relations");
  repr->add_option("--matrix", o.matrix, "print the matrix of this monomial instead");
  auto* table = app.add_subcommand("table", "tabulate state values");
  common(table, false);
  table->add_option("--kind", o.kind, "kms or finite");
  table->add_option("--prime-set", o.prime_set, "primes for the finite table");

  std::vector<const char*> raw{"toeplitz"};
  for (const auto& a : argv) raw.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(raw.size()), raw.data());
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }
  o.residual_tol = residual_tol;
  for (auto* sub : app.get_subcommands()) o.args = sub->remaining();
  if (!o.args.empty() && o.args.front() == "--") o.args.erase(o.args.begin());
  for (const auto& a : o.args)
    if (a.rfind("--", 0) == 0) {
      err << "unknown option " << a << '\n';
      return kExitUsage;
    }
  if (table->parsed() && table->count("--output") == 0) o.output = "csv";

  try {
    if (product->parsed()) return cmd_product(o, out);
    if (reduce->parsed()) return cmd_reduce(o, out);
    if (join->parsed()) return cmd_join(o, out);
    if (lubc->parsed()) return cmd_lub(o, out);
    if (eval->parsed()) return cmd_eval_state(o, out);
    if (verify->parsed()) return cmd_verify(o, out);
    if (repr->parsed()) return cmd_repr_check(o, out);
    if (table->parsed()) return cmd_table(o, out);
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return (e.code() == Errc::parse_error || e.code() == Errc::invalid_argument) ? kExitUsage
                                                                                 : kExitFailure;
  }
  return kExitUsage;
}

}  // namespace toeplitz::cli
