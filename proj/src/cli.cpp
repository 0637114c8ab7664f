/* Copyright 2026 The niho Authors.

Licensed under the Apache License, Version 2.0 (the "License");
you may not use this file except in compliance with the License.
You may obtain a copy of the License at

    http://www.apache.org/licenses/LICENSE-2.0

Unless required by applicable law or agreed to in writing, software
distributed under the License is distributed on an "AS IS" BASIS,
WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
See the License for the specific language governing permissions and
limitations under the License.
==============================================================================*/

#include "niho/cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <ostream>
#include <sstream>

#include "niho/equivalence.hpp"
#include "niho/identities.hpp"
#include "niho/numtheory.hpp"
#include "niho/perm.hpp"
#include "niho/poly.hpp"

namespace niho::cli {
namespace {

using Json = nlohmann::ordered_json;

struct RunConfig {
  std::int64_t p = 0;
  std::int64_t k = 0;
  std::int64_t l = 0;
  std::string builtin;
  std::string poly;
  std::string cap;
  std::string t_range;
  std::string coeff_range;
  bool verify = false;
  bool tsv = false;
};

// One report line per record. TSV repeats the header whenever the key set
// changes.
class Emitter {
 public:
  Emitter(std::ostream& out, bool tsv) : out_(out), tsv_(tsv) {}

  void emit(const Json& record) {
    if (!tsv_) {
      out_ << record.dump() << '\n';
      return;
    }
    std::string header;
    std::string row;
    for (const auto& [key, value] : record.items()) {
      header += (header.empty() ? "" : "\t") + key;
      row += (row.empty() ? "" : "\t") + (value.is_string() ? value.get<std::string>() : value.dump());
    }
    if (header != header_) {
      out_ << '#' << header << '\n';
      header_ = header;
    }
    out_ << row << '\n';
  }

 private:
  std::ostream& out_;
  bool tsv_;
  std::string header_;
};

std::optional<ParamRange> parse_range(const std::string& text) {
  if (text.empty()) return std::nullopt;
  const auto colon = text.find(':');
  if (colon == std::string::npos) throw Error(ErrorCode::kInvalidArgument, "range must look like a:b, got " + text);
  const Bindings none;
  const std::int64_t lo = ExponentExpr::parse(text.substr(0, colon)).evaluate(none);
  const std::int64_t hi = ExponentExpr::parse(text.substr(colon + 1)).evaluate(none);
  if (lo > hi) throw Error(ErrorCode::kInvalidArgument, "empty range " + text);
  return ParamRange{lo, hi};
}

Caps make_caps(const RunConfig& cfg) {
  Caps caps;
  if (!cfg.cap.empty()) {
    const std::int64_t v = ExponentExpr::parse(cfg.cap).evaluate(Bindings{});
    if (v <= 0) throw Error(ErrorCode::kInvalidArgument, "--cap must be positive");
    caps.exhaustive = static_cast<std::uint64_t>(v);
  }
  return caps;
}

void validate_pk(const RunConfig& cfg) {
  if (cfg.p < 2 || !is_prime(static_cast<std::uint64_t>(cfg.p))) {
    throw Error(ErrorCode::kNotPrime, "--p must be a prime, got " + std::to_string(cfg.p));
  }
  if (cfg.k < 1) throw Error(ErrorCode::kInvalidArgument, "--k must be at least 1");
}

Json verdict_json(const PermutationVerdict& v) {
  Json j;
  j["is_permutation"] = v.is_permutation;
  if (v.witness) j["witness"] = {v.witness->first.to_string(), v.witness->second.to_string()};
  if (!v.note.empty()) j["note"] = v.note;
  return j;
}

Json cross_json(const CrossReport& report) {
  Json runs = Json::array();
  for (const MethodRun& run : report.runs) {
    Json j;
    j["method"] = std::string(to_string(run.method));
    if (run.verdict) {
      j.update(verdict_json(*run.verdict));
    } else {
      j["skipped"] = run.skipped;
    }
    runs.push_back(std::move(j));
  }
  return runs;
}

Json checks_json(const IdentityReport& report) {
  Json out = Json::array();
  for (const IdentityCheck& c : report.checks) {
    out.push_back({{"name", c.name}, {"checked", c.checked}, {"violations", c.violations}});
  }
  return out;
}

// Prime-field elements print as signed integers, the rest as coefficient lists.
Json element_json(const Element& x) {
  const auto c = x.coeffs();
  if (std::all_of(c.begin() + 1, c.end(), [](std::uint32_t v) { return v == 0; })) {
    const auto p = static_cast<std::int64_t>(x.field().p());
    const auto v = static_cast<std::int64_t>(c[0]);
    return v > p / 2 ? v - p : v;
  }
  return x.to_string();
}

SparsePolynomial builtin_poly(const RunConfig& cfg) {
  if (!cfg.poly.empty()) return SparsePolynomial::parse(cfg.poly).bound(Bindings{cfg.p, cfg.k, cfg.l, std::nullopt});
  if (cfg.builtin == "g") return build_g(cfg.p, cfg.k, cfg.l);
  return build_f(cfg.p, cfg.k);
}

// ---------------------------------------------------------------------------

int cmd_check(const RunConfig& cfg, Emitter& em) {
  validate_pk(cfg);
  const Caps caps = make_caps(cfg);
  const SparsePolynomial poly = builtin_poly(cfg);
  const FieldPtr f = make_field(static_cast<std::uint64_t>(cfg.p), static_cast<unsigned>(2 * cfg.k), caps);
  Json line;
  line["command"] = "check";
  line["field"] = f->describe();
  line["poly"] = poly.render_bound();
  for (const auto& w : poly.warnings()) line["warnings"].push_back(w);
  try {
    const CrossReport report = cross_validate(FieldPolynomial::from(poly, *f), static_cast<unsigned>(cfg.k), caps);
    line["is_permutation"] = *report.is_permutation;
    line["methods"] = cross_json(report);
    em.emit(line);
    return kExitOk;
  } catch (const MethodDisagreement& e) {
    line["is_permutation"] = nullptr;
    line["methods"] = cross_json(e.report());
    line["error"] = e.what();
    em.emit(line);
    return kExitDisagreement;
  }
}

int cmd_table1(const RunConfig& cfg, Emitter& em) {
  const Caps caps = make_caps(cfg);
  int code = kExitOk;
  std::size_t matched = 0;
  for (const Table1Row& row : table1_reference()) {
    const FieldPtr f = make_field(static_cast<std::uint64_t>(row.p), static_cast<unsigned>(2 * row.k), caps);
    const FieldPolynomial poly = FieldPolynomial::from(build_f(row.p, row.k), *f);
    Json line;
    line["command"] = "table1";
    line["field"] = f->describe();
    line["p"] = row.p;
    line["k"] = row.k;
    line["expected"] = row.expected ? "Yes" : "No";
    try {
      const CrossReport report = cross_validate(poly, static_cast<unsigned>(row.k), caps);
      line["computed"] = *report.is_permutation ? "Yes" : "No";
      line["match"] = *report.is_permutation == row.expected;
      line["methods"] = cross_json(report);
      if (*report.is_permutation == row.expected) {
        ++matched;
      } else {
        code = std::max(code, kExitMismatch);
      }
    } catch (const MethodDisagreement& e) {
      line["computed"] = nullptr;
      line["match"] = false;
      line["methods"] = cross_json(e.report());
      code = kExitDisagreement;
    }
    em.emit(line);
  }
  em.emit(Json{{"command", "table1"}, {"field", nullptr}, {"rows", table1_reference().size()}, {"matched", matched}});
  return code;
}

int cmd_identities(const RunConfig& cfg, Emitter& em) {
  validate_pk(cfg);
  if (cfg.p != 3 && cfg.p != 5) throw Error(ErrorCode::kUnsupportedCharacteristic, "identities need p = 3 or 5");
  const Caps caps = make_caps(cfg);
  bool ok = true;
  auto suite = [&](const std::string& name, const IdentityReport& r) {
    ok = ok && r.ok();
    em.emit(Json{{"command", "identities"}, {"field", r.field}, {"suite", name}, {"checks", checks_json(r)}});
  };
  suite("trace", verify_trace_identities(cfg.p, cfg.k, caps));
  suite("tf_nf", verify_tf_nf(cfg.p, cfg.k, caps));

  const FieldPtr big = make_field(static_cast<std::uint64_t>(cfg.p), static_cast<unsigned>(2 * cfg.k), caps);
  const std::array<std::int64_t, 3> quad = cfg.p == 3 ? std::array<std::int64_t, 3>{1, 0, 1}
                                                      : std::array<std::int64_t, 3>{1, -1, 1};
  const std::uint64_t roots = count_roots_in_U(quad, cfg.p, cfg.k, caps);
  const std::uint64_t expected_roots = cfg.k % 2 == 0 ? 0 : 2;
  ok = ok && roots == expected_roots;
  em.emit(Json{{"command", "identities"},
               {"field", big->describe()},
               {"suite", "roots_in_U"},
               {"quadratic", cfg.p == 3 ? "y^2 + 1" : "y^2 - y + 1"},
               {"roots", roots},
               {"expected", expected_roots}});

  const FieldPtr small = make_field(static_cast<std::uint64_t>(cfg.p), static_cast<unsigned>(cfg.k), caps);
  const std::uint64_t as = artin_schreier_sweep(cfg.p, cfg.k, caps);
  ok = ok && as == 0;
  em.emit(Json{{"command", "identities"}, {"field", small->describe()}, {"suite", "artin_schreier"}, {"disagreements", as}});

  const CorollaryReport cor = verify_corollary_fraction(cfg.p, cfg.k, caps);
  ok = ok && cor.permutes_U == (cfg.k % 2 == 0) && cor.agreement_violations == 0;
  em.emit(Json{{"command", "identities"},
               {"field", cor.field},
               {"suite", "fraction_on_U"},
               {"permutes_U", cor.permutes_U},
               {"denominator_zeros", cor.denominator_zeros},
               {"agreement_checked", cor.agreement_checked},
               {"agreement_violations", cor.agreement_violations}});

  const std::uint64_t leaks =
      count_image_in_subfield(FieldPolynomial::from(build_f(cfg.p, cfg.k), *big), static_cast<unsigned>(cfg.k), caps);
  const std::uint64_t q = checked_pow(static_cast<std::uint64_t>(cfg.p), static_cast<unsigned>(cfg.k));
  ok = ok && leaks == (cfg.k % 2 == 0 ? 0 : 2 * (q - 1));
  em.emit(Json{{"command", "identities"}, {"field", big->describe()}, {"suite", "subfield_leaks"}, {"count", leaks}});

  if (cfg.p == 5) {
    const ReductionReport red = verify_reduction_chain(cfg.p, cfg.k, caps);
    Json line{{"command", "identities"}, {"field", red.identities.field}, {"suite", "reduction_chain"},
              {"checks", checks_json(red.identities)}, {"traces", red.traces},
              {"fourth_power_hits", red.fourth_power_hits}, {"subfield_hits", red.subfield_hits}};
    if (!red.note.empty()) line["note"] = red.note;
    // For odd k the chain is expected to break; only the identities must hold.
    ok = ok && red.identities.ok() && (cfg.k % 2 == 1 || red.fourth_power_hits == 0);
    em.emit(line);
  }
  return ok ? kExitOk : kExitMismatch;
}

int cmd_registry(const RunConfig& cfg, Emitter& em) {
  if (cfg.p != 3 && cfg.p != 5) throw Error(ErrorCode::kUnsupportedCharacteristic, "registry exists for p = 3 and 5");
  const Caps caps = make_caps(cfg);
  const auto range = parse_range(cfg.t_range);
  const auto& rows = registry(cfg.p);
  if (!cfg.verify) {
    for (std::size_t i = 0; i < rows.size(); ++i) {
      const FamilyEntry& r = rows[i];
      em.emit(Json{{"command", "registry"},
                   {"field", nullptr},
                   {"row", i},
                   {"tuple", r.tuple_text()},
                   {"k_condition", std::string(to_string(r.k_condition))},
                   {"fraction", "(" + r.fractional.numerator.render() + ") / (" + r.fractional.denominator.render() + ")"},
                   {"source", r.source},
                   {"parametrized", r.parametrized}});
    }
    return kExitOk;
  }
  bool ok = true;
  for (const RowVerification& v : registry_verify(cfg.p, caps, range)) {
    Json line{{"command", "registry"}, {"field", nullptr}, {"row", v.row}, {"tuple", rows[v.row].tuple_text()},
              {"source", rows[v.row].source}};
    if (v.k) {
      line["field"] = make_field(static_cast<std::uint64_t>(cfg.p), static_cast<unsigned>(2 * *v.k), caps)->describe();
      line["k"] = *v.k;
    }
    Json instances = Json::array();
    for (const InstanceCheck& c : v.instances) {
      Json j{{"tuple", c.instance.tuple.render()},
             {"permutes_field", c.permutes_field},
             {"fraction_permutes_U", c.fraction_permutes_U},
             {"fraction_matches", c.fraction_matches}};
      if (!c.note.empty()) j["note"] = c.note;
      instances.push_back(std::move(j));
    }
    line["instances"] = std::move(instances);
    line["ok"] = v.ok();
    if (!v.notes.empty()) line["notes"] = v.notes;
    ok = ok && v.ok();
    em.emit(line);
  }
  return ok ? kExitOk : kExitMismatch;
}

int cmd_equiv(const RunConfig& cfg, Emitter& em) {
  validate_pk(cfg);
  const Caps caps = make_caps(cfg);
  const SparsePolynomial candidate = builtin_poly(cfg);
  const ClassifyReport report = classify(candidate, caps, parse_range(cfg.t_range));
  const auto& rows = registry(cfg.p);
  Json matches = Json::array();
  for (const ClassifyMatch& m : report.matches) {
    matches.push_back({{"row", m.instance.row},
                       {"tuple", m.instance.tuple.render()},
                       {"source", rows[m.instance.row].source},
                       {"a", m.witness.a.to_string()},
                       {"d", m.witness.d}});
  }
  Json line{{"command", "equiv"},
            {"field", report.field->describe()},
            {"poly", candidate.render_bound()},
            {"instances_tested", report.instances_tested},
            {"matches", matches}};
  if (report.matches.empty()) line["result"] = "no matches";
  if (!report.notes.empty()) line["notes"] = report.notes;
  em.emit(line);
  return kExitOk;
}

int cmd_search(const RunConfig& cfg, Emitter& em) {
  validate_pk(cfg);
  const Caps caps = make_caps(cfg);
  const auto p = static_cast<std::uint64_t>(cfg.p);
  const auto kk = static_cast<unsigned>(cfg.k);
  const FieldPtr f = make_field(p, 2 * kk, caps);
  const std::uint64_t q = checked_pow(p, kk);
  // lambda = w^j with w = g^{q+1} generating GF(q)*.
  const auto range = parse_range(cfg.coeff_range).value_or(ParamRange{0, static_cast<std::int64_t>(q) - 2});
  if (range.first < 0 || range.second > static_cast<std::int64_t>(q) - 2) {
    throw Error(ErrorCode::kInvalidArgument, "--coeff-range must lie in [0, q-2]");
  }
  const auto span = static_cast<std::uint64_t>(range.second - range.first + 1);
  if (span * span > caps.equivalence_work / f->order()) {
    throw Error(ErrorCode::kSizeCapExceeded, "search over " + std::to_string(span * span) + " coefficient pairs");
  }
  const Element w = f->primitive_element().pow(q + 1);
  const std::uint64_t e0 = (p - 1) * q + 1;
  const std::uint64_t e1 = p * q;
  const std::uint64_t e2 = q + p - 1;

  Json head{{"command", "search"},
            {"field", f->describe()},
            {"family", "x^" + std::to_string(e0) + " + l1*x^" + std::to_string(e1) + " + l2*x^" + std::to_string(e2)},
            {"coefficients", "l = w^j, w = g^(q+1), j in [" + std::to_string(range.first) + ", " +
                                 std::to_string(range.second) + "]"}};
  if (p == 2) {
    head["note"] = "for p = 2 the exponents (p-1)q+1 and q+p-1 coincide; with l2 = 1 the polynomial is x^(pq)";
  }
  em.emit(head);

  std::uint64_t hits = 0;
  int code = kExitOk;
  for (auto j1 = range.first; j1 <= range.second; ++j1) {
    const Element l1 = w.pow(static_cast<std::uint64_t>(j1));
    for (auto j2 = range.first; j2 <= range.second; ++j2) {
      const Element l2 = w.pow(static_cast<std::uint64_t>(j2));
      const FieldPolynomial poly(*f, {{f->one(), e0}, {l1, e1}, {l2, e2}});
      Json line{{"command", "search"}, {"field", f->describe()}, {"j1", j1}, {"j2", j2},
                {"lambda1", element_json(l1)}, {"lambda2", element_json(l2)}, {"poly", poly.render()}};
      try {
        const CrossReport report = cross_validate(poly, kk, caps);
        if (!*report.is_permutation) continue;
        ++hits;
        line["methods"] = cross_json(report);
      } catch (const MethodDisagreement& e) {
        line["methods"] = cross_json(e.report());
        line["error"] = e.what();
        code = kExitDisagreement;
      }
      em.emit(line);
    }
  }
  em.emit(Json{{"command", "search"}, {"field", f->describe()}, {"pairs", span * span}, {"hits", hits}});
  return code;
}

int cmd_field(const RunConfig& cfg, Emitter& em) {
  validate_pk(cfg);
  const Caps caps = make_caps(cfg);
  const FieldPtr f = make_field(static_cast<std::uint64_t>(cfg.p), static_cast<unsigned>(cfg.k), caps);
  em.emit(Json{{"command", "field"},
               {"field", f->describe()},
               {"p", f->p()},
               {"degree", f->degree()},
               {"order", f->order()},
               {"primitive_element", f->primitive_element().to_string()}});
  return kExitOk;
}

int exit_code(const Error& e) {
  switch (e.code()) {
    case ErrorCode::kSizeCapExceeded:
      return kExitCap;
    case ErrorCode::kMethodDisagreement:
      return kExitDisagreement;
    default:
      return kExitUsage;
  }
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Niho-exponent permutation trinomials over GF(p^2k)", "niho"};
  app.require_subcommand(1);
  app.footer(
      "Exit codes: 0 success, 1 result differs from the published one, 2 methods disagree,\n"
      "64 usage error, 65 size cap exceeded.");
  RunConfig cfg;
  app.add_flag("--tsv", cfg.tsv, "Tab-separated output instead of JSON lines");
  app.add_flag("--json", [&](std::int64_t) { cfg.tsv = false; }, "JSON lines (default)");
  app.add_option("--cap", cfg.cap, "Cap on full-field sweeps, e.g. 2^27");

  auto pk = [&](CLI::App* sub, bool need_k = true) {
    sub->add_option("--p", cfg.p, "Characteristic")->required();
    auto* k = sub->add_option("--k", cfg.k, "q = p^k");
    if (need_k) k->required();
  };
  auto poly_opts = [&](CLI::App* sub) {
    sub->add_option("--builtin", cfg.builtin, "f or g")->check(CLI::IsMember({"f", "g"}));
    sub->add_option("--poly", cfg.poly, "Polynomial text in x with exponents over p, k, q, l");
    sub->add_option("--l", cfg.l, "Parameter l of g");
  };

  auto* check = app.add_subcommand("check", "Decide whether a polynomial permutes GF(p^2k)");
  pk(check);
  poly_opts(check);
  auto* table1 = app.add_subcommand("table1", "Recompute the published p = 7, 11, 13 table");
  auto* identities = app.add_subcommand("identities", "Sweep the trace, norm and root-count identities");
  pk(identities);
  auto* reg = app.add_subcommand("registry", "List or verify the known permutation trinomials");
  reg->add_option("--p", cfg.p, "Characteristic (3 or 5)")->required();
  reg->add_flag("--verify", cfg.verify, "Instantiate and check every row");
  reg->add_option("--t-range", cfg.t_range, "Parameter range a:b for parametrized rows");
  auto* equiv = app.add_subcommand("equiv", "Classify a permutation up to multiplicative equivalence");
  pk(equiv);
  poly_opts(equiv);
  equiv->add_option("--t-range", cfg.t_range, "Parameter range a:b for parametrized rows");
  auto* search = app.add_subcommand("search", "Sweep coefficients of x^((p-1)q+1) + l1 x^(pq) + l2 x^(q+p-1)");
  pk(search);
  search->add_option("--coeff-range", cfg.coeff_range, "Exponent range a:b for l = w^j");
  auto* field = app.add_subcommand("field", "Describe GF(p^k)");
  pk(field);

  for (auto* sub : {check, table1, identities, reg, equiv, search, field}) {
    sub->add_flag("--tsv", cfg.tsv, "Tab-separated output");
    sub->add_flag("--json", [&](std::int64_t) { cfg.tsv = false; }, "JSON lines");
    sub->add_option("--cap", cfg.cap, "Cap on full-field sweeps");
  }

  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }
  if (check->parsed() && !cfg.poly.empty() && !cfg.builtin.empty()) {
    err << "--poly and --builtin are exclusive\n";
    return kExitUsage;
  }

  Emitter em(out, cfg.tsv);
  try {
    if (check->parsed()) return cmd_check(cfg, em);
    if (table1->parsed()) return cmd_table1(cfg, em);
    if (identities->parsed()) return cmd_identities(cfg, em);
    if (reg->parsed()) return cmd_registry(cfg, em);
    if (equiv->parsed()) return cmd_equiv(cfg, em);
    if (search->parsed()) return cmd_search(cfg, em);
    return cmd_field(cfg, em);
  } catch (const MethodDisagreement& e) {
    err << e.what() << '\n';
    return kExitDisagreement;
  } catch (const Error& e) {
    err << e.what() << '\n';
    return exit_code(e);
  }
}

}  // namespace niho::cli
